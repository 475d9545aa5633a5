import time
import numpy as np
from tbmclust.experiments import (
    SweepGrid, UNINFORMATIVE_CORE, INFORMATIVE_CORE, run_sweep,
    write_results_csv, fit_boundary, log_spaced_ints,
)

for seed in (20260810, 7, 424242):
    t0 = time.time()
    g2 = SweepGrid(
        n_values=log_spaced_ints(30, 180, 10, multiple_of=2),
        rho_values=np.geomspace(0.001, 0.019, 10),
        core=INFORMATIVE_CORE,
        algorithms=("hollow-svd", "aggregate-svd"),
        replicates=10,
        master_seed=seed,
    )
    res2 = run_sweep(g2)
    msg = [f"fig4 seed={seed} reps=10 ({time.time()-t0:.0f}s)"]
    for alg in g2.algorithms:
        fit = fit_boundary(res2, alg)
        msg.append(f"{alg}: {fit.gamma_hat:.3f}")
    print("  ".join(msg), flush=True)

t0 = time.time()
g1 = SweepGrid(
    n_values=log_spaced_ints(30, 180, 10, multiple_of=2),
    rho_values=np.geomspace(0.002, 0.027, 10),
    core=UNINFORMATIVE_CORE,
    algorithms=("hollow-svd", "vanilla-svd", "hsc"),
    replicates=10,
    master_seed=20260810,
)
res1 = run_sweep(g1)
msg = [f"fig3 seed=20260810 reps=10 ({time.time()-t0:.0f}s)"]
for alg in g1.algorithms:
    fit = fit_boundary(res1, alg)
    msg.append(f"{alg}: {fit.gamma_hat:.3f}")
print("  ".join(msg), flush=True)
