import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locuncert.bounds import (
    E_PI,
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
from locuncert.prolate import lambda0

gammas = st.floats(0.01, 60.0)


def test_shannon_beckner_is_log_ratio():
    for gamma in (0.1, 1.0, 5.0):
        assert bound_beckner(1, gamma) == pytest.approx(math.log(E_PI / gamma), abs=1e-14)


def test_closed_forms_at_other_orders():
    assert bound_beckner(math.inf, 1.0) == pytest.approx(math.log(2 * math.pi), abs=1e-14)
    expected = -0.5 * (-math.log(2) + 3 * math.log(2 / 3)) + math.log(math.pi)
    assert bound_beckner(2, 1.0) == pytest.approx(expected, abs=1e-14)


def test_beckner_vanishes_at_e_pi():
    assert abs(bound_beckner(1, E_PI)) <= 1e-10
    assert beckner_threshold(1) == E_PI
    assert beckner_threshold(math.inf) == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0, 4.0, 1e6, math.inf])
def test_threshold_is_sign_change(alpha):
    g = beckner_threshold(alpha)
    assert abs(bound_beckner(alpha, g)) < 1e-12
    assert bound_beckner(alpha, g * (1 - 1e-6)) > 0 > bound_beckner(alpha, g * (1 + 1e-6))


def test_threshold_continuous_at_shannon():
    assert beckner_threshold(1 + 1e-9) == pytest.approx(E_PI, rel=1e-8)


def test_lambda_bounds_in_terms_of_lambda0():
    lam = lambda0(2.0)
    assert bound_maassen_uffink(2.0) == pytest.approx(-math.log(lam), rel=1e-13)
    assert bound_deutsch(2.0) == pytest.approx(-2 * math.log((1 + math.sqrt(lam)) / 2), rel=1e-13)
    assert single_bin_bound(2.0) == pytest.approx(1 + math.sqrt(lam))
    assert single_bin_product_bound(2.0) == pytest.approx((1 + math.sqrt(lam)) ** 2 / 4)


def test_small_gamma_mu_bound_approaches_log():
    assert bound_maassen_uffink(1e-3) == pytest.approx(math.log(2 * math.pi / 1e-3), abs=1e-3)


def test_bounds_stay_positive_at_large_gamma():
    # lambda0 rounds to 1 in double precision here; the deficit keeps the bounds positive
    assert 0 < bound_deutsch(200.0) < bound_maassen_uffink(200.0) < 1e-40


def test_shannon_selectors_match_closed_form():
    for gamma in (0.5, 3.0, 12.0):
        lam = lambda0(gamma)
        assert best_bound_ab(gamma) == pytest.approx(-math.log(min(gamma / E_PI, lam)), rel=1e-13)
        assert best_bound_qp(gamma) == pytest.approx(-math.log(min(gamma / E_PI, (1 + math.sqrt(lam)) ** 2 / 4)), rel=1e-13)
        report = bound_report(gamma, 1)
        assert report.best_ab == pytest.approx(best_bound_ab(gamma), rel=1e-14)
        assert report.best_qp == pytest.approx(best_bound_qp(gamma), rel=1e-14)


def test_report_validity_and_branches():
    small = bound_report(0.1, 1)
    assert small.beckner_valid and small.qp_branch == "beckner" and small.ab_branch == "beckner"
    large = bound_report(10.0, 1)
    assert not large.beckner_valid and large.bound_beckner is None
    assert large.bound_beckner_raw < 0
    assert large.best_qp == large.bound_deutsch and large.best_ab == large.bound_mu
    assert bound_report(1.0, 2).beta == pytest.approx(2 / 3)


def test_invalid_gamma():
    with pytest.raises(ValueError):
        bound_beckner(1, 0.0)
    with pytest.raises(ValueError):
        bound_report(-1.0)


@settings(max_examples=40, deadline=None)
@given(gamma=gammas)
def test_deutsch_below_mu(gamma):
    assert bound_deutsch(gamma) <= bound_maassen_uffink(gamma)


@settings(max_examples=30, deadline=None)
@given(a=gammas, b=gammas, alpha=st.sampled_from([1.0, 2.0, math.inf]))
def test_bounds_nonincreasing_in_gamma(a, b, alpha):
    lo, hi = sorted((a, b))
    r_lo, r_hi = bound_report(lo, alpha), bound_report(hi, alpha)
    for name in ("bound_mu", "bound_deutsch", "bound_beckner_raw", "best_ab", "best_qp"):
        assert getattr(r_lo, name) >= getattr(r_hi, name) - 1e-12


@settings(max_examples=30, deadline=None)
@given(gamma=st.floats(0.01, 8.0), a=st.floats(1.0, 20.0), b=st.floats(1.0, 20.0))
def test_beckner_nonincreasing_in_alpha(gamma, a, b):
    # consistent with the threshold falling from e pi (alpha = 1) to 2 pi (alpha = inf)
    lo, hi = sorted((a, b))
    assert bound_beckner(lo, gamma) >= bound_beckner(hi, gamma) - 1e-12
