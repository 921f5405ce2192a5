"""End-to-end checks of the entropic bounds on families of test states."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import bisect

from . import bounds as _bounds
from .bounds import BoundReport, bound_report
from .coarse import (
    BinningScheme,
    ProbabilityDistribution,
    joint_entropy_distribution,
    localization_distributions,
    single_bin_maximum,
)
from .entropy import OrderPair, conjugate_order, renyi_entropy
from .prolate import DEFAULT_NODES, solve_concentration
from .state import (
    GridSpec,
    GridState,
    make_gaussian,
    position_and_momentum,
    random_hermite_state,
)

SLACK_TOLERANCE = -1e-8
DEFAULT_GRID_POINTS = 4096
DEFAULT_BASIS_SIZE = 32
CATALOG_WIDTHS = (0.25, 0.5, 1.0, 2.0, 4.0)
AB_DEFAULT_GAMMAS = (1.0, 2 * math.pi)

DistributionHook = Callable[[ProbabilityDistribution, ProbabilityDistribution], tuple[ProbabilityDistribution, ProbabilityDistribution]]


@dataclass
class VerificationCase:
    descriptor: dict
    scheme: BinningScheme
    orders: OrderPair
    bounds: BoundReport
    entropies: dict[str, float]
    slacks: dict[str, float]
    single_bin_max: float
    single_bin_limit: float
    captured_mass: dict[str, float] = field(default_factory=dict)
    reliable: bool = True

    @property
    def gamma(self) -> float:
        return self.scheme.gamma()

    @property
    def min_slack(self) -> float:
        return min(self.slacks.values())

    @property
    def passed(self) -> bool:
        return self.reliable and self.min_slack >= SLACK_TOLERANCE

    def binding_bound(self) -> str:
        """Name of the (q, p) bound closest to the entropy sum."""
        qp = {k: v for k, v in self.slacks.items() if k in ("deutsch", "beckner")}
        return min(qp, key=qp.get)


def _default_with_ab(gamma: float) -> bool:
    return any(math.isclose(gamma, g, rel_tol=1e-9) for g in AB_DEFAULT_GAMMAS)


def verify_state(
    state: GridState,
    scheme: BinningScheme,
    alpha: float = 1.0,
    node_count: int = DEFAULT_NODES,
    with_ab: bool | None = None,
    basis_size: int = DEFAULT_BASIS_SIZE,
    descriptor: dict | None = None,
    distribution_hook: DistributionHook | None = None,
) -> VerificationCase:
    """Compare the entropy sums of ``state`` with every bound that applies to them.

    Slacks (entropy sum minus bound) for the bin probabilities ``q``, ``p``:
    ``deutsch``, ``beckner`` (only when valid), ``best_qp`` and the single-bin
    check ``single_bin = 1 + sqrt(lambda0) - max(q_k + p_l)``. With
    ``with_ab`` the joint distributions over bin and intra-bin Fourier level
    are added and checked against ``ab_mu``, ``ab_best_ab`` and the rest.
    ``distribution_hook`` may replace ``(q, p)`` before entropies are taken.
    """
    if not math.isclose(state.hbar, scheme.hbar):
        raise ValueError("state and binning scheme use different hbar")
    orders = conjugate_order(alpha)
    gamma = scheme.gamma()
    report = bound_report(gamma, orders.alpha, node_count)
    x_state, p_state = position_and_momentum(state)
    q, p = localization_distributions(x_state, scheme)
    if distribution_hook is not None:
        q, p = distribution_hook(q, p)

    h_q = renyi_entropy(q, orders.alpha)
    h_p = renyi_entropy(p, orders.beta)
    total = h_q + h_p
    entropies = {"H_q": h_q, "H_p": h_p}
    slacks = {"deutsch": total - report.bound_deutsch}
    if report.beckner_valid:
        slacks["beckner"] = total - report.bound_beckner_raw
    slacks["best_qp"] = total - report.best_qp
    sb_max = single_bin_maximum(q, p)
    sb_limit = 1.0 + report.c_max
    slacks["single_bin"] = sb_limit - sb_max

    captured: dict[str, float] = {}
    reliable = True
    if with_ab is None:
        with_ab = _default_with_ab(gamma)
    if with_ab:
        a = joint_entropy_distribution(x_state, scheme, basis_size)
        b = joint_entropy_distribution(p_state, scheme, basis_size)
        captured = {"A": a.captured_mass, "B": b.captured_mass}
        reliable = a.reliable and b.reliable
        h_a = renyi_entropy(a.distribution, orders.alpha)
        h_b = renyi_entropy(b.distribution, orders.beta)
        entropies.update(H_A=h_a, H_B=h_b)
        ab = h_a + h_b
        slacks["ab_mu"] = ab - report.bound_mu
        slacks["ab_deutsch"] = ab - report.bound_deutsch
        if report.beckner_valid:
            slacks["ab_beckner"] = ab - report.bound_beckner_raw
        slacks["ab_best_ab"] = ab - report.best_ab
        slacks["ab_best_qp"] = ab - report.best_qp

    return VerificationCase(
        descriptor=dict(descriptor or {}),
        scheme=scheme,
        orders=orders,
        bounds=report,
        entropies=entropies,
        slacks=slacks,
        single_bin_max=sb_max,
        single_bin_limit=sb_limit,
        captured_mass=captured,
        reliable=reliable,
    )


# -- catalog -------------------------------------------------------------------


def default_grid(hbar: float = 1.0, count: int = DEFAULT_GRID_POINTS) -> GridSpec:
    return GridSpec.symmetric(count, hbar)


def catalog(
    scheme: BinningScheme,
    grid: GridSpec | None = None,
    seed: int = 0,
    random_states: int = 4,
) -> list[tuple[dict, GridState]]:
    """Test states: 20 Gaussians and ``random_states`` random Hermite superpositions.

    Gaussians take widths ``{1/4, 1/2, 1, 2, 4} * sqrt(hbar)``, centers
    ``{0, 0.3 delta_x}`` and momentum shifts ``{0, 0.7 delta_p}``.
    """
    hbar = scheme.hbar
    grid = grid or default_grid(hbar)
    states = []
    for width in CATALOG_WIDTHS:
        for center in (0.0, 0.3 * scheme.delta_x):
            for shift in (0.0, 0.7 * scheme.delta_p):
                w = width * math.sqrt(hbar)
                desc = {"name": "gaussian", "width": w, "center": center, "momentum_shift": shift}
                states.append((desc, make_gaussian(center, shift, w, grid, hbar)))
    rng = np.random.default_rng(seed)
    for i in range(random_states):
        state = random_hermite_state(rng, grid, hbar, width_range=(0.5 * math.sqrt(hbar), 2 * math.sqrt(hbar)), offset_scale=2 * math.sqrt(hbar))
        states.append(({"name": "random_hermite", "seed": seed, "index": i}, state))
    return states


def verify_catalog(
    gammas: Sequence[float],
    alphas: Sequence[float] = (1.0, 2.0),
    hbar: float = 1.0,
    node_count: int = DEFAULT_NODES,
    seed: int = 0,
    grid: GridSpec | None = None,
    with_ab: bool | None = None,
    max_workers: int | None = None,
) -> list[VerificationCase]:
    """Every catalog state at every ``(gamma, alpha)``, ordered by gamma, state, alpha."""
    jobs = []
    for gamma in gammas:
        scheme = BinningScheme.from_gamma(gamma, hbar)
        for desc, state in catalog(scheme, grid, seed):
            for alpha in alphas:
                jobs.append((state, scheme, alpha, desc))

    def run(job):
        state, scheme, alpha, desc = job
        return verify_state(state, scheme, alpha, node_count, with_ab=with_ab, descriptor=desc)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


# -- bound sweeps ----------------------------------------------------------------


@dataclass(frozen=True)
class Crossover:
    """Gamma at which the Beckner-derived bound meets a lambda0-based bound."""

    alpha: float
    kind: str
    gamma: float | None
    beckner_value: float | None = None
    other_value: float | None = None


def _crossover_gap(alpha: float, kind: str, node_count: int) -> Callable[[float], float]:
    def gap(gamma: float) -> float:
        sol = solve_concentration(gamma, node_count)
        lam_bound = -math.log1p(-sol.deficit)
        if kind == "qp":
            lam_bound = -2.0 * math.log1p(-0.5 * sol.deficit / (1.0 + sol.c_max))
        return _bounds.bound_beckner(alpha, gamma) - lam_bound

    return gap


def find_crossover(
    alpha: float = 1.0,
    kind: str = "ab",
    node_count: int = DEFAULT_NODES,
    lower: float = 1e-3,
    rtol: float = 1e-14,
) -> Crossover:
    """Bisect for the gamma where the Beckner bound equals the ``kind`` bound.

    ``kind="ab"`` compares with ``-ln lambda0``, ``kind="qp"`` with the
    Deutsch-type bound. Returns ``gamma=None`` when the Beckner bound is never
    the larger one on ``[lower, threshold]``.
    """
    if kind not in ("ab", "qp"):
        raise ValueError(f"unknown crossover kind {kind!r}")
    gap = _crossover_gap(alpha, kind, node_count)
    upper = _bounds.beckner_threshold(alpha)
    if gap(lower) <= 0:
        return Crossover(float(alpha), kind, None)
    root = bisect(gap, lower, upper, xtol=1e-300, rtol=rtol, maxiter=200)
    sol = solve_concentration(root, node_count)
    other = -math.log1p(-sol.deficit) if kind == "ab" else -2.0 * math.log1p(-0.5 * sol.deficit / (1.0 + sol.c_max))
    return Crossover(float(alpha), kind, float(root), _bounds.bound_beckner(alpha, root), other)


@dataclass(frozen=True)
class BoundSweep:
    reports: list[BoundReport]
    crossovers: list[Crossover]

    def column(self, name: str, alpha: float) -> list[float]:
        return [getattr(r, name) for r in self.reports if r.alpha == alpha]


def sweep_bounds(
    gamma_grid: Iterable[float],
    alpha_list: Iterable[float] = (1.0,),
    node_count: int = DEFAULT_NODES,
    crossovers: bool = True,
) -> BoundSweep:
    """One :class:`BoundReport` per ``(gamma, alpha)`` plus crossovers per alpha."""
    gammas = [float(g) for g in gamma_grid]
    alphas = [float(a) for a in alpha_list]
    if not gammas or not alphas:
        raise ValueError("gamma grid and alpha list must be nonempty")
    if any(not g > 0 for g in gammas):
        raise ValueError("gamma values must be positive")
    reports = [bound_report(g, a, node_count) for g in gammas for a in alphas]
    found = []
    if crossovers:
        for a in alphas:
            for kind in ("ab", "qp"):
                found.append(find_crossover(a, kind, node_count))
    return BoundSweep(reports, found)


# -- width scan --------------------------------------------------------------------


@dataclass(frozen=True)
class WidthScan:
    gamma: float
    orders: OrderPair
    widths: tuple[float, ...]
    entropy_sums: tuple[float, ...]
    bound: float

    @property
    def minimum(self) -> float:
        return min(self.entropy_sums)

    @property
    def argmin(self) -> float:
        return self.widths[int(np.argmin(self.entropy_sums))]

    @property
    def gap(self) -> float:
        return self.minimum - self.bound

    @property
    def passed(self) -> bool:
        return self.gap >= SLACK_TOLERANCE


def width_scan(
    gamma: float,
    widths: Sequence[float],
    orders: OrderPair | float = 1.0,
    hbar: float = 1.0,
    grid: GridSpec | None = None,
    node_count: int = DEFAULT_NODES,
) -> WidthScan:
    """Entropy sums of centered Gaussians of each width with ``delta_x = delta_p = sqrt(gamma hbar)``.

    ``bound`` is the best bound for the bin probabilities at these orders.
    """
    if not isinstance(orders, OrderPair):
        orders = conjugate_order(orders)
    if any(not w > 0 for w in widths):
        raise ValueError("widths must be positive")
    scheme = BinningScheme.from_gamma(gamma, hbar)
    grid = grid or default_grid(hbar)
    sums = []
    for w in widths:
        state = make_gaussian(0.0, 0.0, w, grid, hbar)
        q, p = localization_distributions(state, scheme)
        sums.append(renyi_entropy(q, orders.alpha) + renyi_entropy(p, orders.beta))
    bound = bound_report(gamma, orders.alpha, node_count).best_qp
    return WidthScan(float(gamma), orders, tuple(float(w) for w in widths), tuple(sums), bound)
