"""Which lower bound wins where.

For small gamma the Beckner-derived bound ln(e pi / gamma) is the best one;
for larger gamma the bounds built from lambda0 take over.
"""

# %%
import numpy as np

from locuncert import find_crossover, sweep_bounds

gammas = np.geomspace(0.05, 30, 12)
sweep = sweep_bounds(gammas, [1.0, 2.0], crossovers=False)

# %%
print(f"{'gamma':>8} {'alpha':>5} {'mu':>10} {'deutsch':>10} {'beckner':>10} {'best_qp':>10} branch")
for r in sweep.reports:
    beckner = f"{r.bound_beckner_raw:10.4g}" if r.beckner_valid else f"{'-':>10}"
    print(f"{r.gamma:8.4g} {r.alpha:5g} {r.bound_mu:10.4g} {r.bound_deutsch:10.4g} {beckner} {r.best_qp:10.4g} {r.qp_branch}")

# %% [markdown]
# Crossovers are located by bisection; at the crossover both branches give the
# same value.

# %%
for alpha in (1.0, 2.0, float("inf")):
    for kind in ("ab", "qp"):
        c = find_crossover(alpha, kind)
        where = "never" if c.gamma is None else f"{c.gamma:.10f}"
        print(f"alpha={alpha:g} {kind}: gamma* = {where}")
