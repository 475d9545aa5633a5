import numpy as np
import pytest

from tbmclust.linalg import (
    EigenPairs,
    PowerIterationError,
    best_rank_r,
    spectral_norm,
    sym_eigen,
    top_by_abs,
)


def random_symmetric(rng, n):
    a = rng.normal(size=(n, n))
    return 0.5 * (a + a.T)


def test_identity_eigenvalues():
    pairs = sym_eigen(np.eye(4))
    assert np.allclose(pairs.values, 1.0)


def test_diagonal_matrix():
    pairs = sym_eigen(np.diag([3.0, -5.0, 2.0]))
    assert sorted(pairs.values) == pytest.approx([-5.0, 2.0, 3.0])
    # eigenvectors are coordinate vectors with positive leading sign
    for j in range(3):
        col = pairs.vectors[:, j]
        assert np.count_nonzero(np.abs(col) > 1e-12) == 1
        assert col.max() == pytest.approx(1.0)


def test_two_by_two_exchange():
    # characteristic polynomial lambda^2 - 1 by hand
    pairs = sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert sorted(pairs.values) == pytest.approx([-1.0, 1.0])


def test_rejects_asymmetric_and_nonfinite():
    with pytest.raises(ValueError):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eigen(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_top_by_abs_full_is_permutation():
    rng = np.random.default_rng(0)
    pairs = sym_eigen(random_symmetric(rng, 6))
    vals, vecs = top_by_abs(pairs, 6)
    assert sorted(vals) == pytest.approx(sorted(pairs.values))
    assert vecs.shape == (6, 6)


def test_top_by_abs_ordering():
    pairs = EigenPairs(values=np.array([3.0, -5.0, 2.0]), vectors=np.eye(3))
    vals, _ = top_by_abs(pairs, 2)
    assert vals.tolist() == [-5.0, 3.0]


def test_top_by_abs_tie_break_prefers_positive():
    pairs = EigenPairs(values=np.array([2.0, -2.0]), vectors=np.eye(2))
    vals, _ = top_by_abs(pairs, 1)
    assert vals.tolist() == [2.0]


def test_top_by_abs_range_check():
    pairs = sym_eigen(np.eye(3))
    for bad in (0, 4):
        with pytest.raises(ValueError):
            top_by_abs(pairs, bad)


def test_best_rank_full_reproduces_input():
    rng = np.random.default_rng(1)
    a = random_symmetric(rng, 5)
    assert np.allclose(best_rank_r(a, 5), a, atol=1e-10)


def test_best_rank_one_of_rank_one():
    u = np.array([1.0, -2.0, 0.5])
    a = np.outer(u, u)
    assert np.allclose(best_rank_r(a, 1), a, atol=1e-12)


def test_best_rank_error_matches_discarded_spectrum():
    rng = np.random.default_rng(2)
    a = random_symmetric(rng, 6)
    vals = np.sort(np.abs(np.linalg.eigvalsh(a)))[::-1]
    for r in (1, 2, 4):
        err = np.linalg.norm(a - best_rank_r(a, r), "fro")
        assert err == pytest.approx(np.sqrt(np.sum(vals[r:] ** 2)), rel=1e-10)


def test_best_rank_error_non_increasing():
    rng = np.random.default_rng(3)
    a = random_symmetric(rng, 8)
    errs = [np.linalg.norm(a - best_rank_r(a, r), "fro") for r in range(1, 9)]
    assert all(e1 >= e2 - 1e-12 for e1, e2 in zip(errs, errs[1:]))


def test_spectral_norm_diagonal():
    assert spectral_norm(np.diag([1.0, 2.0, 3.0])) == pytest.approx(3.0, rel=1e-10)


def test_spectral_norm_zero():
    assert spectral_norm(np.zeros((4, 6))) == 0.0


def test_spectral_norm_matches_eigensolver():
    rng = np.random.default_rng(4)
    for _ in range(10):
        a = rng.normal(size=(8, 5))
        pairs = sym_eigen(a.T @ a)
        expected = np.sqrt(max(pairs.values))
        assert spectral_norm(a, tol=1e-12) == pytest.approx(expected, rel=1e-9)


def test_spectral_norm_nonconvergence_carries_estimate():
    # a slow-gap matrix cannot stagnate to tol=0 in a handful of iterations
    with pytest.raises(PowerIterationError) as exc:
        spectral_norm(np.diag([1.0, 0.999]), tol=0.0, max_iter=5)
    assert exc.value.estimate == pytest.approx(1.0, rel=1e-2)


def test_eigen_residuals_up_to_200():
    rng = np.random.default_rng(5)
    for n in (20, 100, 200):
        a = random_symmetric(rng, n)
        pairs = sym_eigen(a)
        recon = (pairs.vectors * pairs.values) @ pairs.vectors.T
        assert np.linalg.norm(a - recon, "fro") <= 1e-8 * max(1.0, np.linalg.norm(a, "fro"))
        gram = pairs.vectors.T @ pairs.vectors
        assert np.max(np.abs(gram - np.eye(n))) <= 1e-10
        av = a @ pairs.vectors
        vl = pairs.vectors * pairs.values
        assert np.max(np.abs(av - vl)) <= 1e-8 * max(1.0, spectral_norm(a))


def test_norm_sandwich_on_low_rank():
    rng = np.random.default_rng(6)
    for rank in (1, 2, 3):
        u = rng.normal(size=(30, rank))
        a = u @ u.T
        spec = spectral_norm(a, tol=1e-12)
        fro = np.linalg.norm(a, "fro")
        assert spec <= fro * (1 + 1e-10)
        assert fro <= np.sqrt(rank) * spec * (1 + 1e-10)
