"""Rényi and Shannon entropies (in nats) and conjugate order pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coarse import ProbabilityDistribution

SHANNON_WINDOW = 1e-8


def _positive_weights(dist: ProbabilityDistribution | np.ndarray) -> np.ndarray:
    w = dist.weights if isinstance(dist, ProbabilityDistribution) else np.asarray(dist, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    w = w[w > 0]
    if w.size == 0:
        raise ValueError("entropy of an all-zero distribution is undefined")
    return w


def shannon_entropy(dist: ProbabilityDistribution | np.ndarray) -> float:
    w = _positive_weights(dist)
    return float(-np.sum(w * np.log(w)))


def renyi_entropy(dist: ProbabilityDistribution | np.ndarray, order: float) -> float:
    """``ln(sum P_i^order) / (1 - order)``.

    Orders within ``1e-8`` of one return the Shannon entropy; ``order=inf``
    gives the min-entropy ``-ln max P_i``.
    """
    if not order > 0:
        raise ValueError(f"Rényi order must be positive, got {order}")
    w = _positive_weights(dist)
    if abs(order - 1.0) < SHANNON_WINDOW:
        return float(-np.sum(w * np.log(w)))
    if math.isinf(order):
        return float(-np.log(w.max()))
    # factor out the largest weight so high orders do not underflow
    top = w.max()
    log_sum = order * np.log(top) + np.log(np.sum((w / top) ** order))
    return float(log_sum / (1.0 - order))


@dataclass(frozen=True)
class OrderPair:
    """Orders ``alpha >= 1`` and ``beta = alpha / (2 alpha - 1)`` with ``1/alpha + 1/beta = 2``."""

    alpha: float

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValueError(f"alpha must be at least 1, got {self.alpha}")

    @property
    def beta(self) -> float:
        if math.isinf(self.alpha):
            return 0.5
        return self.alpha / (2.0 * self.alpha - 1.0)

    @property
    def is_shannon(self) -> bool:
        return self.alpha == 1.0


def conjugate_order(alpha: float) -> OrderPair:
    return OrderPair(float(alpha))
