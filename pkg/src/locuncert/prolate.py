"""Largest eigenvalue of the sinc-kernel concentration operator on [-1, 1].

The operator

    (K f)(t) = (1/pi) int_{-1}^{1} ds sin(gamma (t - s) / 4) / (t - s) f(s)

has eigenvalues in (0, 1). Its top eigenvalue ``lambda0`` is the largest
fraction of a momentum-bin-limited state's probability that fits in a single
position bin; ``sqrt(lambda0)`` bounds every overlap between intra-bin bases.

The eigenproblem is discretized with the Nyström method on Gauss-Legendre
nodes. For large ``gamma`` the deficit ``1 - lambda0`` drops below double
precision resolution; the solver then recomputes the even-parity part of the
spectrum in extended precision with mpmath so that the deficit stays exact to
many digits and ``lambda0 < 1`` remains observable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from numpy.polynomial.legendre import leggauss

DEFAULT_NODES = 64
MIN_NODES = 16
CONVERGENCE_TOLERANCE = 1e-8
NORMALIZATION_TOLERANCE = 1e-9
# below this deficit the double-precision value carries fewer than ~4 correct digits
DEFICIT_RESOLUTION = 1e-11
HEAD_FLOOR = 1e-12


def sinc_kernel(gamma: float, t, s):
    """``sin(gamma (t - s) / 4) / (pi (t - s))``, equal to ``gamma / (4 pi)`` on the diagonal."""
    d = np.subtract(t, s, dtype=float)
    scale = gamma / (4 * np.pi)
    return scale * np.sinc(gamma * d / (4 * np.pi))


def gauss_legendre(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    return leggauss(node_count)


def nystrom_matrix(gamma: float, nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Symmetric ``W^(1/2) K W^(1/2)``, similar to the plain Nyström matrix ``K W``."""
    root = np.sqrt(weights)
    return root[:, None] * sinc_kernel(gamma, nodes[:, None], nodes[None, :]) * root[None, :]


@dataclass(frozen=True, eq=False)
class ConcentrationEigenSolution:
    gamma: float
    node_count: int
    nodes: np.ndarray
    weights: np.ndarray
    lambda0: float
    deficit: float
    eigenvector: np.ndarray
    spectrum_head: np.ndarray
    convergence_delta: float
    precision_digits: int | None = None

    @property
    def converged(self) -> bool:
        return self.convergence_delta <= CONVERGENCE_TOLERANCE

    @property
    def c_max(self) -> float:
        return math.sqrt(self.lambda0)

    @property
    def asymptote_ratio(self) -> float:
        """``lambda0 / (gamma / 2 pi)``, which tends to one as gamma goes to zero."""
        return self.lambda0 * 2 * np.pi / self.gamma


def _double_solve(gamma: float, node_count: int):
    t, w = gauss_legendre(node_count)
    vals, vecs = np.linalg.eigh(nystrom_matrix(gamma, t, w))
    return t, w, vals[::-1], vecs[:, ::-1]


def _top_eigenvalue(gamma: float, node_count: int) -> float:
    t, w = gauss_legendre(node_count)
    return float(np.linalg.eigvalsh(nystrom_matrix(gamma, t, w))[-1])


def solve_concentration(
    gamma: float,
    node_count: int = DEFAULT_NODES,
    head_size: int = 6,
    high_precision: bool | None = None,
) -> ConcentrationEigenSolution:
    """Nyström solution of the concentration eigenproblem.

    Parameters
    ----------
    gamma : float
        Product of bin widths over hbar.
    node_count : int
        Gauss-Legendre nodes. ``convergence_delta`` compares against a solve
        with half as many.
    head_size : int
        Number of leading eigenvalues kept in ``spectrum_head``; values below
        ``1e-12 * lambda0`` are roundoff and are dropped.
    high_precision : bool or None
        Force (True) or forbid (False) the extended-precision path. ``None``
        switches it on when ``1 - lambda0`` is below ``1e-11``.
    """
    if not gamma > 0 or not math.isfinite(gamma):
        raise ValueError(f"gamma must be positive and finite, got {gamma}")
    if node_count < MIN_NODES:
        raise ValueError(f"node_count must be at least {MIN_NODES}, got {node_count}")

    t, w, vals, vecs = _double_solve(gamma, node_count)
    lambda0 = float(vals[0])
    if high_precision is None:
        high_precision = 1.0 - lambda0 < DEFICIT_RESOLUTION
    if high_precision:
        return _extended_solve(gamma, node_count, head_size)

    delta = abs(lambda0 - _top_eigenvalue(gamma, node_count // 2))
    return _assemble(gamma, t, w, vals, vecs, lambda0, 1.0 - lambda0, delta, head_size, None)


def _assemble(gamma, t, w, vals, vecs, lambda0, deficit, delta, head_size, digits):
    vec = vecs[:, 0] / np.sqrt(w)
    if vec[np.argmin(np.abs(t))] < 0:
        vec = -vec
    head = vals[:head_size]
    head = np.minimum(head[head > HEAD_FLOOR * lambda0], 1.0)
    head[0] = lambda0
    for arr in (t, w, vec, head):
        arr.setflags(write=False)
    return ConcentrationEigenSolution(
        gamma=float(gamma),
        node_count=t.size,
        nodes=t,
        weights=w,
        lambda0=lambda0,
        deficit=deficit,
        eigenvector=vec,
        spectrum_head=head,
        convergence_delta=float(delta),
        precision_digits=digits,
    )


# -- extended precision ----------------------------------------------------------


def _precision_for(gamma: float) -> int:
    # deficit ~ exp(-gamma / 2): keep ~30 significant digits beyond it
    return 30 + math.ceil(0.25 * gamma)


def _extended_nodes(gamma: float, node_count: int) -> int:
    n = max(node_count, math.ceil(gamma / 2) + 32)
    return n + n % 2


@lru_cache(maxsize=32)
def _mp_gauss_legendre_half(node_count: int, dps: int):
    """Nonnegative Gauss-Legendre nodes and weights of an even-order rule, polished by Newton."""
    with mpmath.workdps(dps):
        start, _ = leggauss(node_count)
        nodes, weights = [], []
        tol = mpmath.mpf(10) ** (-dps + 5)
        for x0 in start[node_count // 2:]:
            x = mpmath.mpf(float(x0))
            for _ in range(50):
                p_prev, p = mpmath.mpf(1), x
                for k in range(2, node_count + 1):
                    p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
                deriv = node_count * (x * p - p_prev) / (x * x - 1)
                step = p / deriv
                x -= step
                if abs(step) < tol:
                    break
            p_prev, p = mpmath.mpf(1), x
            for k in range(2, node_count + 1):
                p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
            deriv = node_count * (x * p - p_prev) / (x * x - 1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * deriv * deriv))
        return tuple(nodes), tuple(weights)


def _mp_even_lambda0(gamma: float, node_count: int, dps: int):
    """Top eigenvalue restricted to even functions, as an mpmath number."""
    with mpmath.workdps(dps):
        t, w = _mp_gauss_legendre_half(node_count, dps)
        g = mpmath.mpf(gamma)
        scale = g / (4 * mpmath.pi)

        def kern(d):
            return scale if d == 0 else mpmath.sin(g * d / 4) / (mpmath.pi * d)

        n = len(t)
        a = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(i, n):
                value = mpmath.sqrt(w[i] * w[j]) * (kern(t[i] - t[j]) + kern(t[i] + t[j]))
                a[i, j] = a[j, i] = value
        return max(mpmath.eigsy(a, eigvals_only=True))


def _extended_solve(gamma: float, node_count: int, head_size: int) -> ConcentrationEigenSolution:
    dps = _precision_for(gamma)
    n = _extended_nodes(gamma, node_count)
    coarse_n = 2 * round(0.375 * n)
    with mpmath.workdps(dps):
        fine = _mp_even_lambda0(gamma, n, dps)
        coarse = _mp_even_lambda0(gamma, coarse_n, dps)
        deficit = float(1 - fine)
        delta = float(abs(fine - coarse))
        lambda0 = float(fine)
    t, w, vals, vecs = _double_solve(gamma, n)
    return _assemble(gamma, t, w, vals, vecs, lambda0, deficit, delta, head_size, dps)


def lambda0(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    return solve_concentration(gamma, node_count).lambda0


def c_max(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    """``sqrt(lambda0)``: the largest possible overlap between intra-bin basis states."""
    return solve_concentration(gamma, node_count).c_max


def concentration_functional(samples, gamma: float, position_bin: int = 0) -> float:
    """Quadratic form ``sum_ij w_i w_j K_ij psi_i conj(psi_j)`` on Gauss-Legendre nodes.

    ``samples`` are values at the nodes of the rule with ``len(samples)`` points
    and must be normalized, ``sum_i w_i |psi_i|^2 = 1``. ``position_bin = k``
    uses the kernel of position bin ``k`` in rescaled momentum units,
    ``exp(-i k gamma (t - s) / 2) K(t, s)``.
    """
    psi = np.asarray(samples, dtype=complex)
    t, w = gauss_legendre(psi.size)
    norm = float(np.sum(w * np.abs(psi) ** 2))
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise ValueError(f"trial function has norm {norm!r}, expected 1")
    kernel = sinc_kernel(gamma, t[:, None], t[None, :])
    if position_bin:
        kernel = kernel * np.exp(-0.5j * position_bin * gamma * np.subtract.outer(t, t))
    weighted = w * psi
    value = weighted @ kernel @ np.conj(weighted)
    if abs(value.imag) > 1e-12:
        raise ArithmeticError(f"quadratic form has imaginary part {value.imag:.3g}")
    return float(value.real)
