import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from locuncert.coarse import ProbabilityDistribution
from locuncert.entropy import OrderPair, conjugate_order, renyi_entropy, shannon_entropy

weights = arrays(float, st.integers(1, 30), elements=st.floats(0.0, 1.0)).filter(lambda w: w.sum() > 1e-3).map(
    lambda w: w / w.sum()
)
orders = st.one_of(st.floats(0.05, 50.0), st.just(math.inf))


def test_point_mass_has_zero_entropy():
    dist = ProbabilityDistribution([0.0, 1.0, 0.0])
    for order in (0.5, 1.0, 2.0, math.inf):
        assert renyi_entropy(dist, order) == 0.0


@pytest.mark.parametrize("order", [0.3, 1.0, 2.0, 7.5, math.inf])
def test_uniform_distribution(order):
    assert renyi_entropy(np.full(8, 1 / 8), order) == pytest.approx(math.log(8), rel=1e-14)


def test_known_values():
    p = np.array([0.5, 0.25, 0.25])
    assert shannon_entropy(p) == pytest.approx(1.5 * math.log(2))
    assert renyi_entropy(p, 2) == pytest.approx(-math.log(0.375))
    assert renyi_entropy(p, 0.5) == pytest.approx(2 * math.log(math.sqrt(0.5) + 1.0))
    assert renyi_entropy(p, math.inf) == pytest.approx(math.log(2))


def test_shannon_window():
    p = np.array([0.7, 0.2, 0.1])
    assert renyi_entropy(p, 1 + 5e-9) == shannon_entropy(p)
    assert renyi_entropy(p, 1 + 1e-6) == pytest.approx(shannon_entropy(p), abs=1e-6)


def test_large_order_does_not_underflow():
    p = np.array([1e-3, 1e-3, 1 - 2e-3])
    assert renyi_entropy(p, 1e6) == pytest.approx(-math.log(1 - 2e-3), rel=1e-5)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        renyi_entropy([0.5, 0.5], 0.0)
    with pytest.raises(ValueError):
        renyi_entropy([0.0, 0.0], 2.0)
    with pytest.raises(ValueError):
        renyi_entropy([1.5, -0.5], 2.0)


def test_conjugate_orders():
    assert conjugate_order(1).beta == 1.0 and conjugate_order(1).is_shannon
    assert conjugate_order(2).beta == pytest.approx(2 / 3)
    assert conjugate_order(math.inf).beta == 0.5
    with pytest.raises(ValueError):
        OrderPair(0.5)


@given(alpha=st.floats(1.0, 1e6))
def test_conjugate_relation(alpha):
    pair = conjugate_order(alpha)
    assert 1 / pair.alpha + 1 / pair.beta == pytest.approx(2.0, rel=1e-12)
    assert 0.5 <= pair.beta <= 1.0


@settings(max_examples=200)
@given(p=weights, a=orders, b=orders)
def test_nonincreasing_in_order(p, a, b):
    lo, hi = sorted((a, b))
    assert renyi_entropy(p, lo) >= renyi_entropy(p, hi) - 1e-10


@settings(max_examples=200)
@given(p=weights, order=orders)
def test_range(p, order):
    h = renyi_entropy(p, order)
    support = np.count_nonzero(p)
    assert -1e-12 <= h <= math.log(support) + 1e-10
    assert h >= -math.log(p.max()) - 1e-10


@given(p=weights)
def test_permutation_invariance(p):
    assert renyi_entropy(p[::-1], 2.5) == pytest.approx(renyi_entropy(p, 2.5), abs=1e-12)
