import time
import numpy as np
from tbmclust.experiments import (
    SweepGrid, UNINFORMATIVE_CORE, INFORMATIVE_CORE, run_sweep,
    write_results_csv, fit_boundary, log_spaced_ints,
)

def band_fraction(results, fit_a, fit_b, alg_a, alg_b):
    """fraction of (n, rho) cells between the two fitted boundary lines
    where mean accuracy of alg_a >= alg_b"""
    import collections
    acc = collections.defaultdict(dict)
    for r in results:
        acc[(r.n, r.rho)].setdefault(r.algorithm, []).append(r.accuracy)
    wins = total = 0
    for (n, rho), per_alg in acc.items():
        lo = min(fit_a.intercept - fit_a.gamma_hat*np.log(n),
                 fit_b.intercept - fit_b.gamma_hat*np.log(n))
        hi = max(fit_a.intercept - fit_a.gamma_hat*np.log(n),
                 fit_b.intercept - fit_b.gamma_hat*np.log(n))
        if lo <= np.log(rho) <= hi:
            total += 1
            if np.mean(per_alg[alg_a]) >= np.mean(per_alg[alg_b]):
                wins += 1
    return wins, total

n_vals = log_spaced_ints(30, 180, 10, multiple_of=2)
for seed in (20260810, 7, 424242, 1234):
    t0 = time.time()
    g1 = SweepGrid(
        n_values=n_vals, rho_values=np.geomspace(0.002, 0.027, 10),
        core=UNINFORMATIVE_CORE, algorithms=("hollow-svd", "vanilla-svd", "hsc"),
        replicates=10, master_seed=seed,
    )
    res1 = run_sweep(g1)
    fits = {alg: fit_boundary(res1, alg) for alg in g1.algorithms}
    msg = [f"fig3 seed={seed} ({time.time()-t0:.0f}s)"]
    msg += [f"{a}:{f.gamma_hat:.3f}" for a, f in fits.items()]
    w, t = band_fraction(res1, fits["hsc"], fits["vanilla-svd"], "hsc", "vanilla-svd")
    msg.append(f"hsc>=vanilla band: {w}/{t}")
    print("  ".join(msg), flush=True)

    t0 = time.time()
    g2 = SweepGrid(
        n_values=n_vals, rho_values=np.geomspace(0.001, 0.019, 10),
        core=INFORMATIVE_CORE, algorithms=("hollow-svd", "aggregate-svd"),
        replicates=10, master_seed=seed,
    )
    res2 = run_sweep(g2)
    msg = [f"fig4 seed={seed} ({time.time()-t0:.0f}s)"]
    for alg in g2.algorithms:
        fit = fit_boundary(res2, alg)
        msg.append(f"{alg}:{fit.gamma_hat:.3f}")
    print("  ".join(msg), flush=True)
