import time
import numpy as np
from tbmclust.experiments import (
    SweepGrid, UNINFORMATIVE_CORE, INFORMATIVE_CORE, run_sweep,
    write_results_csv, fit_boundary, log_spaced_ints,
)

t0 = time.time()
g1 = SweepGrid(
    n_values=log_spaced_ints(30, 180, 10, multiple_of=2),
    rho_values=np.geomspace(0.002, 0.027, 10),
    core=UNINFORMATIVE_CORE,
    algorithms=("hollow-svd", "vanilla-svd", "hsc"),
    replicates=5,
    master_seed=20260810,
)
res1 = run_sweep(g1)
write_results_csv(res1, ".pilot/fig3.csv")
print(f"fig3 sweep done in {time.time()-t0:.0f}s  n_values={g1.n_values}")
for alg in g1.algorithms:
    fit = fit_boundary(res1, alg)
    print(f"  fig3 {alg:13s} gamma={fit.gamma_hat:.3f} intercept={fit.intercept:.3f} iters={fit.iterations} reliable={fit.reliable}")

t0 = time.time()
g2 = SweepGrid(
    n_values=log_spaced_ints(30, 180, 10, multiple_of=2),
    rho_values=np.geomspace(0.001, 0.019, 10),
    core=INFORMATIVE_CORE,
    algorithms=("hollow-svd", "aggregate-svd"),
    replicates=5,
    master_seed=20260810,
)
res2 = run_sweep(g2)
write_results_csv(res2, ".pilot/fig4.csv")
print(f"fig4 sweep done in {time.time()-t0:.0f}s")
for alg in g2.algorithms:
    fit = fit_boundary(res2, alg)
    print(f"  fig4 {alg:13s} gamma={fit.gamma_hat:.3f} intercept={fit.intercept:.3f} iters={fit.iterations} reliable={fit.reliable}")
