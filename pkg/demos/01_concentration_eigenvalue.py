"""How much of a momentum-bin-limited state can sit in one position bin?

The answer is the top eigenvalue lambda0 of a sinc kernel on [-1, 1], which
depends on the bins only through gamma = delta_x delta_p / hbar.
"""

# %%
import math

from locuncert import lambda0, solve_concentration

# %% [markdown]
# For small gamma the eigenvalue is close to gamma / (2 pi): the bins are so
# small that the cell can hold only a fraction of one phase-space state.

# %%
print(f"{'gamma':>8} {'lambda0':>16} {'ratio to gamma/2pi':>20}")
for gamma in (0.01, 0.1, 0.5, 1.0, 2.0, math.pi, 2 * math.pi, 10.0, 20.0):
    sol = solve_concentration(gamma)
    print(f"{gamma:8.4g} {sol.lambda0:16.12f} {sol.asymptote_ratio:20.6f}")

# %% [markdown]
# Gauss-Legendre nodes converge spectrally; 64 nodes already agree with 256 to
# roundoff in this range.

# %%
for gamma in (1.0, 20.0):
    print(gamma, abs(lambda0(gamma, 256) - lambda0(gamma, 64)))

# %% [markdown]
# At large gamma lambda0 rounds to 1 in double precision. The solver switches to
# extended precision and keeps the deficit 1 - lambda0, which is what every
# lambda0-based bound needs.

# %%
for gamma in (60.0, 100.0, 200.0):
    sol = solve_concentration(gamma)
    print(f"gamma={gamma:g}  lambda0={sol.lambda0!r}  deficit={sol.deficit:.6e}  digits={sol.precision_digits}")
