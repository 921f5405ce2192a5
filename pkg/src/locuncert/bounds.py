"""Lower bounds on sums of binned position and momentum entropies.

All bounds depend on the bins only through ``gamma = delta_x delta_p / hbar``:

* ``bound_maassen_uffink``: ``-2 ln C_max = -ln lambda0``, for the joint
  (bin, intra-bin level) distributions.
* ``bound_deutsch``: ``-2 ln((1 + C_max) / 2)``, for the bin probabilities.
  It follows from ``q_k + p_l <= 1 + C_max`` and, via the min-entropy, holds
  for every pair of orders.
* ``bound_beckner``: the bound obtained from the sharp Hausdorff-Young
  inequality plus Jensen's inequality on each side; only meaningful (positive)
  below ``beckner_threshold(alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import conjugate_order
from .prolate import DEFAULT_NODES, ConcentrationEigenSolution, solve_concentration

E_PI = math.e * math.pi


def _solution(gamma: float, node_count: int) -> ConcentrationEigenSolution:
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return solve_concentration(gamma, node_count)


def _neg_log_lambda(sol: ConcentrationEigenSolution) -> float:
    return -math.log1p(-sol.deficit)


def _deutsch_from(sol: ConcentrationEigenSolution) -> float:
    # (1 + C) / 2 = 1 - (1 - C) / 2 with 1 - C = deficit / (1 + C)
    c = sol.c_max
    return -2.0 * math.log1p(-0.5 * sol.deficit / (1.0 + c))


def bound_maassen_uffink(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    return _neg_log_lambda(_solution(gamma, node_count))


def bound_deutsch(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    return _deutsch_from(_solution(gamma, node_count))


def _log_ratio(a: float) -> float:
    """``ln(a) / (1 - a)`` with its limits -1 at a = 1 and 0 at a = inf."""
    if math.isinf(a):
        return 0.0
    h = a - 1.0
    if h == 0.0:
        return -1.0
    return -math.log1p(h) / h


def bound_beckner(alpha: float, gamma: float) -> float:
    """Raw Beckner-derived bound; negative values carry no information."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    pair = conjugate_order(alpha)
    return -0.5 * (_log_ratio(pair.alpha) + _log_ratio(pair.beta)) + math.log(math.pi) - math.log(gamma)


def beckner_threshold(alpha: float) -> float:
    """Value of gamma at which the Beckner-derived bound reaches zero (``e pi`` for Shannon)."""
    pair = conjugate_order(alpha)
    a = pair.alpha
    if math.isinf(a):
        return 2.0 * math.pi
    h = a - 1.0
    if h == 0.0:
        return E_PI
    # (2a - 1)^((2a - 1) / (2 (a - 1))) = exp((2a - 1) log1p(2h) / (2h))
    return math.pi / a * math.exp((2 * a - 1) * math.log1p(2 * h) / (2 * h))


def single_bin_bound(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    """``1 + sqrt(lambda0)``, the largest possible ``q_k + p_l``."""
    return 1.0 + _solution(gamma, node_count).c_max


def single_bin_product_bound(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    """``(1 + sqrt(lambda0))^2 / 4``, the largest possible ``q_k p_l``."""
    return 0.25 * single_bin_bound(gamma, node_count) ** 2


def best_bound_ab(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    """``-ln min(gamma / (e pi), lambda0)`` for the Shannon entropies of the joint distributions."""
    sol = _solution(gamma, node_count)
    return max(-math.log(gamma / E_PI), _neg_log_lambda(sol))


def best_bound_qp(gamma: float, node_count: int = DEFAULT_NODES) -> float:
    """``-ln min(gamma / (e pi), (1 + sqrt(lambda0))^2 / 4)`` for the Shannon entropies of ``q``, ``p``."""
    sol = _solution(gamma, node_count)
    return max(-math.log(gamma / E_PI), _deutsch_from(sol))


@dataclass(frozen=True)
class BoundReport:
    """Every bound at one ``(gamma, alpha)``.

    ``bound_beckner`` is ``None`` when the Beckner-derived value is not
    positive; the raw number stays in ``bound_beckner_raw``.
    """

    gamma: float
    alpha: float
    beta: float
    lambda0: float
    c_max: float
    bound_mu: float
    bound_deutsch: float
    bound_beckner_raw: float
    beckner_valid: bool
    best_ab: float
    best_qp: float

    @property
    def bound_beckner(self) -> float | None:
        return self.bound_beckner_raw if self.beckner_valid else None

    @property
    def ab_branch(self) -> str:
        return "beckner" if self.beckner_valid and self.bound_beckner_raw > self.bound_mu else "lambda0"

    @property
    def qp_branch(self) -> str:
        return "beckner" if self.beckner_valid and self.bound_beckner_raw > self.bound_deutsch else "lambda0"


def bound_report(gamma: float, alpha: float = 1.0, node_count: int = DEFAULT_NODES) -> BoundReport:
    """All bounds at ``(gamma, alpha)``; the selectors take the best valid bound.

    For ``alpha = 1`` ``best_ab`` and ``best_qp`` coincide with
    :func:`best_bound_ab` and :func:`best_bound_qp`.
    """
    sol = _solution(gamma, node_count)
    pair = conjugate_order(alpha)
    mu = _neg_log_lambda(sol)
    deutsch = _deutsch_from(sol)
    beckner = bound_beckner(pair.alpha, gamma)
    valid = beckner > 0.0
    best_ab = max(mu, beckner) if valid else mu
    best_qp = max(deutsch, beckner) if valid else deutsch
    return BoundReport(
        gamma=float(gamma),
        alpha=pair.alpha,
        beta=pair.beta,
        lambda0=sol.lambda0,
        c_max=sol.c_max,
        bound_mu=mu,
        bound_deutsch=deutsch,
        bound_beckner_raw=beckner,
        beckner_valid=valid,
        best_ab=best_ab,
        best_qp=best_qp,
    )
