import math

import numpy as np
import pytest

from locuncert.bounds import bound_beckner, bound_report, best_bound_qp
from locuncert.coarse import BinningScheme, ProbabilityDistribution
from locuncert.harness import (
    SLACK_TOLERANCE,
    catalog,
    default_grid,
    find_crossover,
    sweep_bounds,
    verify_catalog,
    verify_state,
    width_scan,
)
from locuncert.state import make_bump, make_gaussian

GRID = default_grid()


def test_gaussian_at_gamma_one_passes():
    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(1.0))
    assert case.passed
    assert min(case.slacks.values()) >= 0
    assert {"deutsch", "beckner", "best_qp", "single_bin", "ab_mu", "ab_best_ab"} <= set(case.slacks)
    assert case.captured_mass["A"] > 0.999 and case.captured_mass["B"] > 0.999


def test_ab_checks_default_off_away_from_selected_gammas():
    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(0.1))
    assert "ab_mu" not in case.slacks and case.captured_mass == {}
    forced = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(0.1), with_ab=True)
    assert "ab_mu" in forced.slacks


def test_small_gamma_binding_bound_is_beckner():
    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(0.1))
    assert case.binding_bound() == "beckner"
    assert case.bounds.best_qp == pytest.approx(math.log(math.e * math.pi / 0.1))


def test_invalid_beckner_is_not_checked():
    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(20.0))
    assert "beckner" not in case.slacks
    assert case.binding_bound() == "deutsch"


def test_point_mass_moves_check_to_momentum_side():
    scheme = BinningScheme(2.0, 0.5)
    case = verify_state(make_bump(0.0, 1.5, GRID), scheme)
    assert case.entropies["H_q"] == pytest.approx(0.0, abs=1e-8)
    assert case.entropies["H_p"] >= best_bound_qp(scheme.gamma()) - 1e-8


def test_higher_orders_use_conjugate_beta():
    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(1.0), alpha=2.0)
    assert case.orders.beta == pytest.approx(2 / 3)
    assert case.passed


def test_hbar_mismatch_rejected():
    with pytest.raises(ValueError, match="hbar"):
        verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme(1.0, 1.0, hbar=2.0))


def test_corrupted_distribution_fails():
    def concentrate(q, p):
        return ProbabilityDistribution([1.0]), ProbabilityDistribution([1.0])

    case = verify_state(make_gaussian(0, 0, 1, GRID), BinningScheme.from_gamma(1.0), distribution_hook=concentrate)
    assert not case.passed
    assert case.min_slack < SLACK_TOLERANCE


def test_catalog_contents_and_determinism():
    scheme = BinningScheme.from_gamma(1.0)
    first, second = catalog(scheme, GRID, seed=3), catalog(scheme, GRID, seed=3)
    assert len(first) == 24
    assert sum(d["name"] == "gaussian" for d, _ in first) == 20
    for (d1, s1), (d2, s2) in zip(first, second):
        assert d1 == d2 and np.array_equal(s1.amplitudes, s2.amplitudes)
    other = catalog(scheme, GRID, seed=4)
    assert not np.array_equal(other[-1][1].amplitudes, first[-1][1].amplitudes)


def test_concurrent_catalog_matches_serial():
    serial = verify_catalog([0.5], (1.0,), with_ab=False)
    threaded = verify_catalog([0.5], (1.0,), with_ab=False, max_workers=3)
    assert [c.descriptor for c in serial] == [c.descriptor for c in threaded]
    assert [c.slacks for c in serial] == [c.slacks for c in threaded]


@pytest.mark.parametrize("alpha", [1.0, 2.0])
@pytest.mark.parametrize("kind", ["ab", "qp"])
def test_crossover_branches_meet(alpha, kind):
    cross = find_crossover(alpha, kind)
    assert cross.gamma is not None
    assert abs(cross.beckner_value - cross.other_value) <= 1e-9
    lower, upper = bound_report(cross.gamma * (1 - 1e-6), alpha), bound_report(cross.gamma * (1 + 1e-6), alpha)
    branch = "ab_branch" if kind == "ab" else "qp_branch"
    assert getattr(lower, branch) == "beckner" and getattr(upper, branch) == "lambda0"


def test_min_entropy_beckner_never_beats_mu():
    assert find_crossover(math.inf, "ab").gamma is None
    with pytest.raises(ValueError):
        find_crossover(1.0, "xy")


def test_sweep_rows_and_crossover_bracket():
    grid = np.geomspace(0.5, 10, 15)
    sweep = sweep_bounds(grid, [1.0, 2.0])
    assert len(sweep.reports) == 30
    for cross in sweep.crossovers:
        if cross.kind != "ab":
            continue
        col = np.array(sweep.column("bound_beckner_raw", cross.alpha)) - np.array(sweep.column("bound_mu", cross.alpha))
        i = int(np.nonzero(np.diff(np.sign(col)))[0][0])
        assert grid[i] <= cross.gamma <= grid[i + 1]
    row = sweep_bounds([math.e * math.pi], [1.0], crossovers=False).reports[0]
    assert abs(row.bound_beckner_raw) < 1e-10 and not row.beckner_valid


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep_bounds([], [1.0])
    with pytest.raises(ValueError):
        sweep_bounds([0.0], [1.0])


def test_width_scan_symmetry_and_bound():
    scan = width_scan(1.0, [0.25, 0.5, 1.0, 2.0, 4.0])
    sums = scan.entropy_sums
    assert sums[0] == pytest.approx(sums[4], abs=1e-10)
    assert sums[1] == pytest.approx(sums[3], abs=1e-10)
    assert scan.argmin == 1.0
    assert scan.passed and scan.minimum >= best_bound_qp(1.0)


def test_width_scan_gap_shrinks_with_gamma():
    gaps = [width_scan(g, [0.5, 1.0, 2.0]).gap for g in (1.0, 0.1, 0.01)]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert gaps[2] < 1e-3 * bound_beckner(1, 0.01)
