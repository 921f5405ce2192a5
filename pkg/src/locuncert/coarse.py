"""Binned position/momentum probabilities and intra-bin observables.

Bin ``j`` of width ``delta`` covers ``[(j - 1/2) delta, (j + 1/2) delta]``
(shifted by an optional global offset). Integrals over bins are taken of the
trigonometric interpolant of the sampled state, which is exact for the
band-limited model the FFT grid represents. This keeps bin masses accurate to
roundoff even when bin edges fall between grid points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np
from numpy.polynomial import legendre
from numpy.polynomial.legendre import leggauss
from scipy.special import spherical_jn

from .state import GridState, fourier_transform, inverse_fourier_transform

NEGATIVE_FLOOR = -1e-12
SUM_TOLERANCE = 1e-9
CAPTURED_MASS_WARNING = 0.999


@dataclass(frozen=True)
class BinningScheme:
    delta_x: float
    delta_p: float
    hbar: float = 1.0
    offset_x: float = 0.0
    offset_p: float = 0.0

    def __post_init__(self):
        for name in ("delta_x", "delta_p", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_gamma(cls, gamma: float, hbar: float = 1.0) -> "BinningScheme":
        """Equal bin widths ``sqrt(gamma * hbar)`` in both spaces."""
        if not gamma > 0:
            raise ValueError(f"gamma must be positive, got {gamma}")
        width = float(np.sqrt(gamma * hbar))
        return cls(width, width, hbar)

    def gamma(self) -> float:
        return self.delta_x * self.delta_p / self.hbar

    def width(self, space: str) -> float:
        return self.delta_x if space == "position" else self.delta_p

    def offset(self, space: str) -> float:
        return self.offset_x if space == "position" else self.offset_p


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    """Nonnegative weights attached to consecutive bin indices starting at ``offset``.

    With ``normalized=False`` the weights may sum to less than one; this is
    used for truncated distributions whose deficit is a diagnostic.
    """

    weights: np.ndarray
    offset: int = 0
    normalized: bool = True

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if np.any(w < NEGATIVE_FLOOR) or not np.all(np.isfinite(w)):
            raise ValueError(f"invalid weights (min {w.min():.3g})")
        w = np.clip(w, 0.0, None)
        total = w.sum()
        if self.normalized and abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, not 1")
        if not self.normalized and total > 1.0 + SUM_TOLERANCE:
            raise ValueError(f"weights sum to {total!r} > 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def indices(self) -> np.ndarray:
        return self.offset + np.arange(self.weights.size)

    def total(self) -> float:
        return float(self.weights.sum())

    def __getitem__(self, index: int) -> float:
        i = index - self.offset
        if 0 <= i < self.weights.size:
            return float(self.weights[i])
        return 0.0


# -- band-limited interpolant ------------------------------------------------


def _expansion(state: GridState) -> tuple[np.ndarray, np.ndarray]:
    """Frequencies and coefficients with ``f(s) = sum_j c_j exp(i w_j s)``.

    ``f`` is the trigonometric interpolant of the state in its own space.
    """
    hbar = state.hbar
    if state.space_label == "position":
        other = fourier_transform(state)
        return other.points / hbar, other.grid.step / np.sqrt(2 * np.pi * hbar) * other.amplitudes
    other = inverse_fourier_transform(state)
    return -other.points / hbar, other.grid.step / np.sqrt(2 * np.pi * hbar) * other.amplitudes


def _density_antiderivative(state: GridState) -> Callable[[np.ndarray], np.ndarray]:
    """Antiderivative of the interpolated density |f(s)|^2 (up to a constant)."""
    omega, c = _expansion(state)
    d_omega = omega[1] - omega[0]
    n = c.size
    spec = np.fft.fft(c, 2 * n)
    auto = np.fft.ifft(np.abs(spec) ** 2)[:n]  # auto[m] = sum_j c[j+m] conj(c[j])
    d0 = auto[0].real
    m = np.arange(1, n)
    weights = auto[1:] / (1j * m * d_omega)

    def antiderivative(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        phases = np.exp(1j * d_omega * np.multiply.outer(s, m))
        return d0 * s + 2.0 * (phases @ weights).real

    return antiderivative


def bin_range_covering(state: GridState, bin_width: float, bin_offset: float = 0.0) -> range:
    """Every bin that intersects the grid window."""
    lo, hi = state.grid.window
    first = int(np.floor((lo - bin_offset) / bin_width + 0.5))
    last = int(np.ceil((hi - bin_offset) / bin_width - 0.5))
    return range(first, last + 1)


def _check_resolution(state: GridState, bin_width: float) -> None:
    if not bin_width > 0:
        raise ValueError(f"bin width must be positive, got {bin_width}")
    if bin_width / state.grid.step < 2:
        raise ValueError(
            f"bin width {bin_width:g} spans fewer than 2 grid samples (step {state.grid.step:g})"
        )


def coarse_grain(
    state: GridState,
    bin_width: float,
    bin_offset: float = 0.0,
    bins: range | None = None,
) -> ProbabilityDistribution:
    """Probabilities ``integral chi_k(s) |psi(s)|^2 ds`` of each bin in the state's own space.

    Bins default to all bins meeting the grid window; their edges are clipped
    to the window, which holds all of the probability. An explicit ``bins``
    range yields a distribution that is not required to sum to one.
    """
    _check_resolution(state, bin_width)
    complete = bins is None
    if complete:
        bins = bin_range_covering(state, bin_width, bin_offset)
    lo, hi = state.grid.window
    k = np.arange(bins.start, bins.stop + 1)
    edges = np.clip(bin_offset + (k - 0.5) * bin_width, lo, hi)
    masses = np.diff(_density_antiderivative(state)(edges))
    return ProbabilityDistribution(masses, offset=bins.start, normalized=complete)


def localization_distributions(state: GridState, scheme: BinningScheme) -> tuple[ProbabilityDistribution, ProbabilityDistribution]:
    """Position-bin probabilities ``q_k`` and momentum-bin probabilities ``p_l``."""
    x_state = state if state.space_label == "position" else inverse_fourier_transform(state)
    p_state = state if state.space_label == "momentum" else fourier_transform(state)
    q = coarse_grain(x_state, scheme.delta_x, scheme.offset_x)
    p = coarse_grain(p_state, scheme.delta_p, scheme.offset_p)
    return q, p


# -- intra-bin bases -----------------------------------------------------------
#
# Two orthonormal bases per bin are built in: plane waves ("fourier") and
# scaled Legendre polynomials ("legendre"). Both have closed-form overlaps with
# the band-limited interpolant. Plane-wave coefficients of a function whose
# values differ at the two bin edges decay only like 1/m, so Legendre is the
# default wherever truncated sums must capture nearly all of the mass.

BASES = ("legendre", "fourier")
DEFAULT_BASIS = "legendre"


def basis_indices(basis_size: int) -> np.ndarray:
    """Plane-wave quantum numbers ordered 0, 1, -1, 2, -2, ..."""
    if basis_size < 1:
        raise ValueError("basis_size must be at least 1")
    j = np.arange(basis_size)
    return np.where(j % 2 == 1, (j + 1) // 2, -(j // 2))


def quantum_numbers(basis: str, basis_size: int) -> np.ndarray:
    if basis == "fourier":
        return basis_indices(basis_size)
    if basis == "legendre":
        if basis_size < 1:
            raise ValueError("basis_size must be at least 1")
        return np.arange(basis_size)
    raise ValueError(f"unknown basis {basis!r}, expected one of {BASES}")


def _unit_basis_values(basis: str, basis_size: int, t: np.ndarray, width: float) -> np.ndarray:
    """Basis functions at reduced coordinates ``t = 2 (s - center) / width``, shape (len(t), basis_size)."""
    n = quantum_numbers(basis, basis_size)
    if basis == "fourier":
        return np.exp(1j * np.pi * np.multiply.outer(t, n)) / np.sqrt(width)
    return legendre.legvander(t, basis_size - 1) * np.sqrt((2 * n + 1) / width)


def bin_fourier_basis(bin_index: int, m: int, bin_width: float, bin_offset: float = 0.0) -> Callable[[np.ndarray], np.ndarray]:
    """Plane wave ``bin_width^(-1/2) exp(2 pi i m (s - center) / bin_width)`` restricted to the bin."""
    if not bin_width > 0:
        raise ValueError("bin width must be positive")
    center = bin_offset + bin_index * bin_width

    def phi(s):
        u = np.asarray(s, dtype=float) - center
        inside = np.abs(u) <= 0.5 * bin_width
        return np.where(inside, np.exp(2j * np.pi * m * u / bin_width) / np.sqrt(bin_width), 0.0)

    return phi


def bin_legendre_basis(bin_index: int, n: int, bin_width: float, bin_offset: float = 0.0) -> Callable[[np.ndarray], np.ndarray]:
    """``sqrt((2n + 1) / bin_width) P_n(2 (s - center) / bin_width)`` restricted to the bin."""
    if not bin_width > 0:
        raise ValueError("bin width must be positive")
    if n < 0:
        raise ValueError("Legendre degree must be nonnegative")
    center = bin_offset + bin_index * bin_width
    coef = np.zeros(n + 1)
    coef[n] = np.sqrt((2 * n + 1) / bin_width)

    def phi(s):
        t = 2 * (np.asarray(s, dtype=float) - center) / bin_width
        return np.where(np.abs(t) <= 1, legendre.legval(t, coef), 0.0)

    return phi


@dataclass(frozen=True, eq=False)
class BinCoefficients:
    bin_index: int
    coefficients: np.ndarray
    quantum_numbers: np.ndarray
    basis: str = DEFAULT_BASIS

    @property
    def basis_size(self) -> int:
        return self.coefficients.size

    def captured_mass(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


BasisFactory = Callable[[int, int, float], Callable[[np.ndarray], np.ndarray]]


def _closed_form_coefficients(state: GridState, bins: np.ndarray, width: float, offset: float, basis: str, basis_size: int) -> np.ndarray:
    """Exact overlaps of the interpolant with a built-in basis, shape (bins, basis_size)."""
    omega, c = _expansion(state)
    n = quantum_numbers(basis, basis_size)
    centers = offset + bins * width
    shifted = c * np.exp(1j * np.multiply.outer(centers, omega))
    half = 0.5 * width
    if basis == "fourier":
        # int_{-w/2}^{w/2} exp(i (omega - nu) u) du = w sinc(...)
        nu = 2 * np.pi * n / width
        kernel = width * np.sinc(np.subtract.outer(omega, nu) * half / np.pi) / np.sqrt(width)
    else:
        # int_{-1}^{1} P_n(t) exp(i a t) dt = 2 i^n j_n(a)
        jn = spherical_jn(n[None, :], np.abs(omega * half)[:, None])
        jn = jn * np.where(omega[:, None] < 0, (-1.0) ** n, 1.0)
        kernel = half * np.sqrt((2 * n + 1) / width) * 2 * (1j**n) * jn
    return shifted @ kernel


def _quadrature_coefficients(
    state: GridState, bins: np.ndarray, width: float, offset: float, basis_size: int, basis: BasisFactory, nodes: int
) -> np.ndarray:
    omega, c = _expansion(state)
    t, w = leggauss(nodes)
    out = np.empty((bins.size, basis_size), dtype=complex)
    for row, k in enumerate(bins):
        s = offset + k * width + 0.5 * width * t
        weighted = 0.5 * width * w * (np.exp(1j * np.multiply.outer(s, omega)) @ c)
        for col in range(basis_size):
            out[row, col] = np.sum(weighted * np.conj(basis(int(k), col, width)(s)))
    return out


def _validate_bins(state: GridState, bins: np.ndarray, width: float, offset: float) -> None:
    lo, hi = state.grid.window
    left = offset + (bins.min() - 0.5) * width
    right = offset + (bins.max() + 0.5) * width
    if left < lo - 1e-12 * abs(lo) or right > hi + 1e-12 * abs(hi):
        raise ValueError(f"bins [{bins.min()}, {bins.max()}] extend beyond the grid window [{lo:g}, {hi:g}]")


def bin_coefficients(
    state: GridState,
    scheme: BinningScheme,
    bin_index: int,
    basis_size: int,
    basis: str | BasisFactory = DEFAULT_BASIS,
    quadrature_nodes: int = 128,
) -> BinCoefficients:
    """Overlaps ``integral chi_k psi conj(phi_km)`` with the first ``basis_size`` intra-bin basis states.

    ``basis`` is ``"legendre"``, ``"fourier"`` (plane waves, quantum numbers
    from :func:`basis_indices`) or a factory ``basis(bin_index, j, width)``
    returning the ``j``-th basis function of the coordinate; factories are
    integrated with a ``quadrature_nodes``-point Gauss-Legendre rule.
    """
    space = state.space_label
    width, offset = scheme.width(space), scheme.offset(space)
    _check_resolution(state, width)
    bins = np.array([bin_index])
    _validate_bins(state, bins, width, offset)
    if callable(basis):
        coeffs = _quadrature_coefficients(state, bins, width, offset, basis_size, basis, quadrature_nodes)[0]
        return BinCoefficients(bin_index, coeffs, np.arange(basis_size), "custom")
    coeffs = _closed_form_coefficients(state, bins, width, offset, basis, basis_size)[0]
    return BinCoefficients(bin_index, coeffs, quantum_numbers(basis, basis_size), basis)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Flattened ``|a_km|^2`` (or ``|b_ln|^2``) over a bin range, without renormalization.

    ``reliable`` is False when less than 0.999 of the probability was captured.
    """

    distribution: ProbabilityDistribution
    bins: range
    basis_size: int
    basis: str
    captured_mass: float
    reliable: bool


def occupied_bins(dist: ProbabilityDistribution, threshold: float = 1e-16) -> range:
    """Smallest consecutive range holding every bin with weight above ``threshold``."""
    idx = dist.indices[dist.weights > threshold]
    if idx.size == 0:
        raise ValueError("no bin exceeds the threshold")
    return range(int(idx.min()), int(idx.max()) + 1)


def joint_entropy_distribution(
    state: GridState,
    scheme: BinningScheme,
    basis_size: int,
    bin_range: range | None = None,
    basis: str = DEFAULT_BASIS,
) -> JointDistribution:
    """Distribution of the joint (bin, intra-bin level) outcomes in the state's own space.

    Without ``bin_range`` every bin lying entirely inside the grid window is used.
    """
    space = state.space_label
    width, offset = scheme.width(space), scheme.offset(space)
    _check_resolution(state, width)
    if bin_range is None:
        full = bin_range_covering(state, width, offset)
        bin_range = range(full.start + 1, full.stop - 1)
    bins = np.arange(bin_range.start, bin_range.stop)
    _validate_bins(state, bins, width, offset)
    coeffs = _closed_form_coefficients(state, bins, width, offset, basis, basis_size)
    weights = (np.abs(coeffs) ** 2).ravel()
    captured = float(weights.sum())
    dist = ProbabilityDistribution(weights, offset=0, normalized=False)
    return JointDistribution(dist, bin_range, basis_size, basis, captured, captured >= CAPTURED_MASS_WARNING)


# -- overlap tensor ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OverlapTensor:
    """Entries ``U[k, m, l, n]``; axes follow ``position_bins``, basis order, ``momentum_bins``, basis order."""

    position_bins: range
    momentum_bins: range
    basis_size: int
    basis: str
    entries: np.ndarray
    residual: float = field(default=0.0)

    def row_norms(self) -> np.ndarray:
        return np.sum(np.abs(self.entries) ** 2, axis=(2, 3))

    def max_abs(self) -> float:
        return float(np.abs(self.entries).max())


def overlap_tensor(
    scheme: BinningScheme,
    position_bins: Iterable[int],
    momentum_bins: Iterable[int],
    basis_size: int,
    quadrature_nodes: int = 64,
    basis: str = DEFAULT_BASIS,
) -> OverlapTensor:
    """Overlaps between intra-bin basis states in position and momentum space.

    ``U = (2 pi hbar)^(-1/2) int_bin_k dx int_bin_l dp exp(i p x / hbar) conj(phi_km(x)) theta_ln(p)``
    evaluated with a tensor Gauss-Legendre rule on each bin pair. ``residual``
    is ``max |1 - sum_{l,n} |U|^2|`` over the included rows.
    """
    position_bins, momentum_bins = range_of(position_bins), range_of(momentum_bins)
    if len(position_bins) == 0 or len(momentum_bins) == 0:
        raise ValueError("bin ranges must be nonempty")
    if quadrature_nodes < 32:
        raise ValueError("need at least 32 quadrature nodes")
    hbar = scheme.hbar
    dx, dp = scheme.delta_x, scheme.delta_p
    t, w = leggauss(quadrature_nodes)
    left = np.conj(_unit_basis_values(basis, basis_size, t, dx)) * (0.5 * dx * w)[:, None]
    right = _unit_basis_values(basis, basis_size, t, dp) * (0.5 * dp * w)[:, None]
    entries = np.empty((len(position_bins), basis_size, len(momentum_bins), basis_size), dtype=complex)
    for i, k in enumerate(position_bins):
        x = scheme.offset_x + k * dx + 0.5 * dx * t
        for j, l in enumerate(momentum_bins):
            p = scheme.offset_p + l * dp + 0.5 * dp * t
            entries[i, :, j, :] = left.T @ np.exp(1j * np.multiply.outer(x, p) / hbar) @ right
    entries /= np.sqrt(2 * np.pi * hbar)
    norms = np.sum(np.abs(entries) ** 2, axis=(2, 3))
    return OverlapTensor(position_bins, momentum_bins, basis_size, basis, entries, float(np.abs(1 - norms).max()))


def range_of(bins: Iterable[int]) -> range:
    if isinstance(bins, range):
        return bins
    values = sorted(int(b) for b in bins)
    if not values:
        return range(0)
    if values != list(range(values[0], values[-1] + 1)):
        raise ValueError("bin indices must be consecutive")
    return range(values[0], values[-1] + 1)


def single_bin_maximum(q: ProbabilityDistribution, p: ProbabilityDistribution) -> float:
    """``max_{k,l} (q_k + p_l)``."""
    return float(q.weights.max() + p.weights.max())
