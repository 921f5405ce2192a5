"""Wave functions sampled on uniform grids and their Fourier transforms.

The continuous transform used throughout is

    psi_tilde(p) = (2 pi hbar)^(-1/2) * integral dx exp(-i p x / hbar) psi(x)

and it is approximated by an FFT with explicit phase factors for grids whose
origin is not zero, so that sampled amplitudes refer to absolute positions and
momenta rather than to array indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
from scipy.special import erfc

SpaceLabel = Literal["position", "momentum"]

NORM_TOLERANCE = 1e-9
TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``origin + i * step`` for ``i in range(count)``.

    ``conjugate_origin`` is the origin of the grid in the other space. ``None``
    selects the centered conjugate grid ``-(count // 2) * conjugate_step``.
    """

    origin: float
    step: float
    count: int
    space_label: SpaceLabel = "position"
    conjugate_origin: float | None = None

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        if self.space_label not in ("position", "momentum"):
            raise ValueError(f"unknown space label {self.space_label!r}")

    @classmethod
    def centered(cls, step: float, count: int, space_label: SpaceLabel = "position") -> "GridSpec":
        return cls(-(count // 2) * step, step, count, space_label)

    @classmethod
    def symmetric(cls, count: int, hbar: float = 1.0) -> "GridSpec":
        """Centered position grid whose conjugate momentum grid has the same step."""
        step = float(np.sqrt(2 * np.pi * hbar / count))
        return cls.centered(step, count)

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.count)

    @property
    def period(self) -> float:
        return self.step * self.count

    @property
    def window(self) -> tuple[float, float]:
        """Interval of length ``period`` whose cells are centered on the samples."""
        lo = self.origin - 0.5 * self.step
        return lo, lo + self.period

    def conjugate(self, hbar: float = 1.0) -> "GridSpec":
        step = 2 * np.pi * hbar / (self.count * self.step)
        origin = self.conjugate_origin
        if origin is None:
            origin = -(self.count // 2) * step
        label: SpaceLabel = "momentum" if self.space_label == "position" else "position"
        return GridSpec(float(origin), float(step), self.count, label, conjugate_origin=self.origin)


@dataclass(frozen=True, eq=False)
class GridState:
    """Normalized wave function sampled on ``grid``.

    Amplitudes are renormalized on construction; ``raw_norm`` keeps the norm the
    samples had before that, which exposes truncation of the tails.
    """

    grid: GridSpec
    amplitudes: np.ndarray
    hbar: float = 1.0
    raw_norm: float = field(default=1.0)

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.count,):
            raise ValueError(f"expected {self.grid.count} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.sqrt(self.grid.step * np.sum(np.abs(amps) ** 2)))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero wave function")
        amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "raw_norm", norm)

    @property
    def space_label(self) -> SpaceLabel:
        return self.grid.space_label

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(self.grid.step * np.sum(self.density()))

    def moment(self, order: int) -> float:
        return float(self.grid.step * np.sum(self.points**order * self.density()))

    def edge_mass(self, fraction: float = 1 / 32) -> float:
        """Probability carried by the outermost ``fraction`` of samples at both ends."""
        n = max(1, int(self.grid.count * fraction))
        dens = self.density()
        return float(self.grid.step * (dens[:n].sum() + dens[-n:].sum()))


def _require_space(state: GridState, label: SpaceLabel) -> None:
    if state.space_label != label:
        raise ValueError(f"expected a {label}-space state, got {state.space_label}")


def fourier_transform(state: GridState) -> GridState:
    """Momentum representation of a position-space state."""
    _require_space(state, "position")
    grid, hbar = state.grid, state.hbar
    pgrid = grid.conjugate(hbar)
    n = np.arange(grid.count)
    pre = np.exp(-1j * pgrid.origin * grid.step * n / hbar) * state.amplitudes
    post = np.exp(-1j * pgrid.points * grid.origin / hbar)
    amps = grid.step / np.sqrt(2 * np.pi * hbar) * post * np.fft.fft(pre)
    return GridState(pgrid, amps, hbar)


def inverse_fourier_transform(state: GridState) -> GridState:
    """Position representation of a momentum-space state."""
    _require_space(state, "momentum")
    pgrid, hbar = state.grid, state.hbar
    grid = pgrid.conjugate(hbar)
    n = np.arange(pgrid.count)
    pre = np.exp(1j * grid.origin * pgrid.step * n / hbar) * state.amplitudes
    post = np.exp(1j * grid.points * pgrid.origin / hbar)
    amps = pgrid.count * pgrid.step / np.sqrt(2 * np.pi * hbar) * post * np.fft.ifft(pre)
    return GridState(grid, amps, hbar)


def position_and_momentum(state: GridState) -> tuple[GridState, GridState]:
    if state.space_label == "position":
        return state, fourier_transform(state)
    return inverse_fourier_transform(state), state


# -- test-state catalog -------------------------------------------------------


def hermite_functions(n_max: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal Hermite functions h_0..h_{n_max} at ``x`` (rows)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-0.5 * x**2)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


def gaussian_tail_mass(center: float, width: float, lo: float, hi: float) -> float:
    """Mass of |psi|^2 for a Gaussian of the given width outside [lo, hi]."""
    return float(0.5 * erfc((hi - center) / width) + 0.5 * erfc((center - lo) / width))


def _sample_span(grid: GridSpec) -> tuple[float, float]:
    return grid.origin, grid.origin + (grid.count - 1) * grid.step


def make_gaussian(
    center: float,
    momentum_shift: float,
    width: float,
    grid: GridSpec,
    hbar: float = 1.0,
    tail_tolerance: float = TAIL_TOLERANCE,
) -> GridState:
    """Gaussian wave packet on a position grid.

    ``pi^(-1/4) width^(-1/2) exp(-(x - center)^2 / (2 width^2)) exp(i momentum_shift x / hbar)``.

    Raises
    ------
    ValueError
        If the grid (or its conjugate momentum grid) truncates more than
        ``tail_tolerance`` of the probability.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    if grid.space_label != "position":
        raise ValueError("make_gaussian builds position-space states")
    x_tail = gaussian_tail_mass(center, width, *_sample_span(grid))
    p_tail = gaussian_tail_mass(momentum_shift, hbar / width, *_sample_span(grid.conjugate(hbar)))
    if x_tail > tail_tolerance or p_tail > tail_tolerance:
        raise ValueError(
            f"grid too narrow for Gaussian: tail mass {x_tail:.3g} (position), "
            f"{p_tail:.3g} (momentum) exceeds {tail_tolerance:g}"
        )
    return make_hermite_superposition([1.0], width, grid, center, momentum_shift, hbar, tail_tolerance=None)


def make_hermite_superposition(
    coefficients: Sequence[complex],
    width: float,
    grid: GridSpec,
    center: float = 0.0,
    momentum_shift: float = 0.0,
    hbar: float = 1.0,
    tail_tolerance: float | None = TAIL_TOLERANCE,
) -> GridState:
    """Finite superposition of scaled Hermite functions, displaced in phase space.

    Such states are localized in both representations and have a closed-form
    transform, see :func:`hermite_superposition_momentum`.
    """
    coeffs = np.asarray(coefficients, dtype=complex)
    x = grid.points
    basis = hermite_functions(len(coeffs) - 1, (x - center) / width) / np.sqrt(width)
    amps = np.exp(1j * momentum_shift * x / hbar) * (coeffs @ basis)
    state = GridState(grid, amps, hbar)
    if tail_tolerance is not None:
        _check_edges(state, tail_tolerance)
    return state


def hermite_superposition_momentum(
    coefficients: Sequence[complex],
    width: float,
    p: np.ndarray,
    center: float = 0.0,
    momentum_shift: float = 0.0,
    hbar: float = 1.0,
) -> np.ndarray:
    """Exact momentum amplitudes of :func:`make_hermite_superposition` (unnormalized coefficients)."""
    coeffs = np.asarray(coefficients, dtype=complex)
    n = np.arange(len(coeffs))
    k = width / hbar
    basis = hermite_functions(len(coeffs) - 1, (p - momentum_shift) * k) * np.sqrt(k)
    phase = np.exp(-1j * (p - momentum_shift) * center / hbar)
    return phase * (((-1j) ** n * coeffs) @ basis)


def random_hermite_state(
    rng: np.random.Generator,
    grid: GridSpec,
    hbar: float = 1.0,
    max_order: int = 6,
    width_range: tuple[float, float] = (0.5, 2.0),
    offset_scale: float = 1.0,
) -> GridState:
    """Random state with complex Gaussian coefficients on the first ``max_order + 1`` Hermite functions."""
    coeffs = rng.normal(size=max_order + 1) + 1j * rng.normal(size=max_order + 1)
    width = float(np.exp(rng.uniform(*np.log(width_range))))
    center, shift = rng.uniform(-offset_scale, offset_scale, size=2)
    return make_hermite_superposition(coeffs, width, grid, float(center), float(shift), hbar)


def make_bump(center: float, support: float, grid: GridSpec, hbar: float = 1.0) -> GridState:
    """``cos^4`` bump vanishing outside ``[center - support/2, center + support/2]``."""
    if not support > 0:
        raise ValueError("support must be positive")
    u = (grid.points - center) / support
    amps = np.where(np.abs(u) < 0.5, np.cos(np.pi * u) ** 4, 0.0)
    return GridState(grid, amps, hbar)


def from_function(
    func: Callable[[np.ndarray], np.ndarray],
    grid: GridSpec,
    hbar: float = 1.0,
    tail_tolerance: float | None = TAIL_TOLERANCE,
) -> GridState:
    state = GridState(grid, func(grid.points), hbar)
    if tail_tolerance is not None:
        _check_edges(state, tail_tolerance)
    return state


def _check_edges(state: GridState, tolerance: float) -> None:
    x_state, p_state = position_and_momentum(state)
    x_edge, p_edge = x_state.edge_mass(), p_state.edge_mass()
    if x_edge > tolerance or p_edge > tolerance:
        raise ValueError(
            f"grid too narrow: edge mass {x_edge:.3g} (position), {p_edge:.3g} (momentum) "
            f"exceeds {tolerance:g}"
        )
