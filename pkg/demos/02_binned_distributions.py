"""Binning a Gaussian wave packet in position and momentum."""

# %%
import numpy as np

from locuncert import (
    BinningScheme,
    bin_coefficients,
    joint_entropy_distribution,
    localization_distributions,
    make_gaussian,
    renyi_entropy,
)
from locuncert.harness import default_grid
from locuncert.state import fourier_transform

grid = default_grid()
state = make_gaussian(center=0.3, momentum_shift=0.0, width=1.0, grid=grid)
scheme = BinningScheme(delta_x=1.0, delta_p=1.0)

# %% [markdown]
# Bin probabilities are exact integrals of the band-limited interpolant of the
# samples, so they agree with error-function values to roundoff.

# %%
q, p = localization_distributions(state, scheme)
for k in range(-3, 4):
    print(f"bin {k:+d}: q = {q[k]:.10f}   p = {p[k]:.10f}")

# %%
for alpha in (1.0, 2.0, np.inf):
    beta = 0.5 if np.isinf(alpha) else alpha / (2 * alpha - 1)
    total = renyi_entropy(q, alpha) + renyi_entropy(p, beta)
    print(f"alpha={alpha:g}: H_alpha(q) + H_beta(p) = {total:.6f}")

# %% [markdown]
# Inside a bin the state is resolved further by an orthonormal basis. The
# squared coefficients add back up to the bin probability. Plane waves converge
# slowly when the packet takes different values at the two bin edges, as it
# does here off center; Legendre polynomials do not care.

# %%
for basis in ("legendre", "fourier"):
    coeffs = bin_coefficients(state, scheme, 0, 32, basis=basis)
    print(f"{basis:>8}: captured {coeffs.captured_mass():.12f} of q_0 = {q[0]:.12f}")

# %%
a = joint_entropy_distribution(state, scheme, 32)
b = joint_entropy_distribution(fourier_transform(state), scheme, 32)
print("joint entropies", renyi_entropy(a.distribution, 1.0), renyi_entropy(b.distribution, 1.0))
print("captured", a.captured_mass, b.captured_mass)
