import numpy as np
import pytest

from tbmclust.bounds import (
    bennett_beta,
    kmeans_misclass_bound,
    kmeans_size_hypothesis,
    separation_lower_bound,
    tail_bounds,
)
from tbmclust.experiments import INFORMATIVE_CORE
from tbmclust.model import TbmSpec, signal_tensor
from tbmclust.rng import generator
from tbmclust.tensor import matricize


def test_beta_at_zero_is_one():
    for s2 in (0.01, 0.5, 1.0, 7.3):
        assert bennett_beta(0.0, s2) == 1.0


def test_beta_strictly_decreasing_and_in_unit_interval():
    t = np.linspace(0.0, 50.0, 400)
    for s2 in (0.05, 1.0, 4.0):
        vals = bennett_beta(t, s2)
        assert np.all(np.diff(vals) < 0)
        assert np.all(vals > 0)
        assert np.all(vals <= 1.0)


def test_beta_upper_bound():
    rng = np.random.default_rng(0)
    for _ in range(100):
        t = float(rng.uniform(0.01, 30))
        s2 = float(rng.uniform(0.01, 10))
        assert bennett_beta(t, s2) <= (np.e * s2 / t) ** t * (1 + 1e-12)


def test_beta_input_validation():
    with pytest.raises(ValueError):
        bennett_beta(-1.0, 1.0)
    with pytest.raises(ValueError):
        bennett_beta(1.0, 0.0)


def test_tail_bounds_at_zero():
    assert tail_bounds(0.0, 2.0) == (1.0, 1.0, 1.0)


def test_tail_bounds_ordering_on_grid():
    t = np.linspace(0.0, 40.0, 100)
    s2 = np.geomspace(0.01, 20.0, 100)
    tt, ss = np.meshgrid(t, s2)
    bennett, b1, b2 = tail_bounds(tt, ss)
    assert np.all(bennett <= b1 * (1 + 1e-12))
    assert np.all(b1 <= b2 * (1 + 1e-12))


def test_poisson_tail_below_bennett():
    # empirical upper tail of Poisson(s2) - s2 never exceeds the bound
    rng = generator(99)
    n = 100_000
    for s2, t in [(0.5, 2.0), (1.0, 3.0), (2.0, 4.0), (5.0, 7.0), (10.0, 9.0)]:
        draws = rng.poisson(s2, size=n) - s2
        emp = np.mean(draws >= t)
        assert emp <= bennett_beta(t, s2)


def balanced_informative_spec(n=20, rho=0.1):
    z = np.repeat([1, 2], n // 2)
    return TbmSpec(rho=rho, core=INFORMATIVE_CORE, memberships=(z, z, z))


def test_separation_bound_zero_density():
    assert separation_lower_bound(balanced_informative_spec(rho=0.0), 1) == 0.0


def test_separation_bound_hand_value_and_gram_oracle():
    n, rho = 20, 0.1
    spec = balanced_informative_spec(n=n, rho=rho)
    # alpha_k = 1 everywhere, delta = sqrt(2)/2, r = 2:
    # bound = (1 / sqrt(2)) * (1/2) / sqrt(2n) * n^3 * rho^2
    expected = (1 / np.sqrt(2)) * 0.5 / np.sqrt(n * 2) * n**3 * rho**2
    bound = separation_lower_bound(spec, 1)
    assert bound == pytest.approx(expected, rel=1e-12)
    x = matricize(signal_tensor(spec), 1)
    gram = x @ x.T
    z = spec.memberships[0]
    dists = [
        np.linalg.norm(gram[i] - gram[j])
        for i in range(n)
        for j in range(n)
        if z[i] != z[j]
    ]
    assert min(dists) >= bound * (1 - 1e-12)


def test_separation_bound_scales_with_rho_squared():
    b1 = separation_lower_bound(balanced_informative_spec(rho=0.05), 1)
    b2 = separation_lower_bound(balanced_informative_spec(rho=0.10), 1)
    assert b2 == pytest.approx(4 * b1, rel=1e-12)


def test_separation_bound_degenerate_spec():
    z = np.repeat([1, 2], 2)
    flat = TbmSpec(rho=0.1, core=np.ones((2, 2)) * 0.5, memberships=(z, z))
    with pytest.raises(ValueError):
        separation_lower_bound(flat, 1)


def test_kmeans_bound_formula():
    assert kmeans_misclass_bound(0.0, 2, 100, 1.0, 2.0) == 0.0
    assert kmeans_misclass_bound(3.0, 4, 50, 0.5, 2.0) == pytest.approx(
        128 * 2.0 * 4 * 9.0 / (50 * 0.25)
    )
    with pytest.raises(ValueError):
        kmeans_misclass_bound(1.0, 2, 10, 0.0, 2.0)


def test_kmeans_size_hypothesis():
    z = np.repeat([1, 2], 50)
    assert kmeans_size_hypothesis(z, 2, noise_norm=0.1, delta=1.0, q=2.0)
    assert not kmeans_size_hypothesis(z, 2, noise_norm=10.0, delta=1.0, q=2.0)
