"""Entropic uncertainty relations for coarse-grained position and momentum measurements.

Bin position space into cells of width ``delta_x`` and momentum space into
cells of width ``delta_p``. The entropies of the resulting probability
distributions obey lower bounds that depend only on
``gamma = delta_x * delta_p / hbar``. This package samples wave functions on
FFT grids, computes the binned distributions and their Rényi entropies,
evaluates the bounds (including the sinc-kernel eigenvalue ``lambda0`` that
sets the maximal overlap ``C_max = sqrt(lambda0)``) and checks the
inequalities on families of test states.
"""

from .bounds import (
    BoundReport,
    beckner_threshold,
    best_bound_ab,
    best_bound_qp,
    bound_beckner,
    bound_deutsch,
    bound_maassen_uffink,
    bound_report,
    single_bin_bound,
    single_bin_product_bound,
)
from .coarse import (
    BinCoefficients,
    BinningScheme,
    JointDistribution,
    OverlapTensor,
    ProbabilityDistribution,
    bin_coefficients,
    bin_fourier_basis,
    bin_legendre_basis,
    coarse_grain,
    joint_entropy_distribution,
    localization_distributions,
    overlap_tensor,
)
from .entropy import OrderPair, conjugate_order, renyi_entropy, shannon_entropy
from .harness import (
    BoundSweep,
    Crossover,
    VerificationCase,
    WidthScan,
    catalog,
    find_crossover,
    sweep_bounds,
    verify_catalog,
    verify_state,
    width_scan,
)
from .prolate import (
    ConcentrationEigenSolution,
    c_max,
    concentration_functional,
    lambda0,
    sinc_kernel,
    solve_concentration,
)
from .state import (
    GridSpec,
    GridState,
    fourier_transform,
    inverse_fourier_transform,
    make_bump,
    make_gaussian,
    make_hermite_superposition,
    random_hermite_state,
)

__version__ = "0.1.0"
