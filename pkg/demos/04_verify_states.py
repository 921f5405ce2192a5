"""Check every applicable inequality on the built-in catalog of test states."""

# %%
import math
import time

from locuncert import verify_catalog, width_scan

start = time.perf_counter()
cases = verify_catalog([0.1, 1.0, 2 * math.pi, 20.0], (1.0, 2.0))
print(f"{len(cases)} cases in {time.perf_counter() - start:.1f} s")

# %%
for gamma in sorted({c.gamma for c in cases}):
    sub = [c for c in cases if math.isclose(c.gamma, gamma)]
    tight = min(sub, key=lambda c: c.min_slack)
    print(
        f"gamma={gamma:.4g}: all passed={all(c.passed for c in sub)}, "
        f"smallest slack {tight.min_slack:.3e} ({tight.descriptor['name']}, alpha={tight.orders.alpha:g})"
    )

# %% [markdown]
# Gaussians of varying width probe how tight the best bound is. The gap to the
# Beckner branch shrinks as the bins get smaller.

# %%
for gamma in (1.0, 0.1, 0.01):
    scan = width_scan(gamma, [0.25, 0.5, 1.0, 2.0, 4.0])
    print(f"gamma={gamma:g}: min sum {scan.minimum:.6f} at width {scan.argmin:g}, bound {scan.bound:.6f}, gap {scan.gap:.2e}")
