import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locuncert.prolate import (
    c_max,
    concentration_functional,
    gauss_legendre,
    lambda0,
    sinc_kernel,
    solve_concentration,
)

from oracles import prolate_lambda0

# prolate radial function oracle, c = gamma / 4
FROZEN_LAMBDA0 = {
    0.1: 0.015914389137138458,
    1.0: 0.1580567274482242,
    2 * math.pi: 0.7833687892086467,
    20.0: 0.9993524052058829,
}


@pytest.mark.parametrize("gamma", [0.01, 0.5, 2.0, math.pi, 10.0])
def test_matches_prolate_radial_oracle(gamma):
    assert lambda0(gamma) == pytest.approx(prolate_lambda0(gamma), abs=1e-9)


@pytest.mark.parametrize("gamma,expected", FROZEN_LAMBDA0.items())
def test_frozen_values(gamma, expected):
    assert lambda0(gamma) == pytest.approx(expected, abs=1e-9)
    assert c_max(gamma) == pytest.approx(math.sqrt(expected), abs=1e-9)


def test_kernel_diagonal_and_symmetry():
    assert sinc_kernel(4.0, 0.3, 0.3) == pytest.approx(1 / math.pi)
    assert sinc_kernel(4.0, 0.3, -0.2) == pytest.approx(sinc_kernel(4.0, -0.2, 0.3))
    assert sinc_kernel(4.0, 0.5, 0.0) == pytest.approx(math.sin(0.5) / (0.5 * math.pi))


def test_small_gamma_asymptote():
    sol = solve_concentration(0.01)
    assert 0.995 <= sol.asymptote_ratio <= 1.005


@pytest.mark.parametrize("gamma", [0.1, 1.0, 20.0, 50.0])
def test_self_convergence(gamma):
    sol = solve_concentration(gamma)
    assert sol.converged
    assert abs(solve_concentration(gamma, 256).lambda0 - sol.lambda0) <= 1e-9


def test_spectrum_head_sorted_in_unit_interval():
    sol = solve_concentration(2 * math.pi)
    head = sol.spectrum_head
    assert head[0] == sol.lambda0
    assert np.all(np.diff(head) < 0)
    assert np.all((head > 0) & (head < 1))


def test_eigenvector_attains_lambda0():
    sol = solve_concentration(3.0)
    assert np.sum(sol.weights * sol.eigenvector**2) == pytest.approx(1.0, abs=1e-12)
    assert concentration_functional(sol.eigenvector, 3.0) == pytest.approx(sol.lambda0, abs=1e-12)
    # even and positive at the center
    assert np.allclose(sol.eigenvector, sol.eigenvector[::-1], atol=1e-10)
    assert sol.eigenvector[np.argmin(np.abs(sol.nodes))] > 0


@pytest.mark.parametrize("gamma", [100.0, 200.0])
def test_extended_precision_deficit(gamma):
    # large-c expansion of 1 - lambda0 for the prolate concentration problem, c = gamma / 4
    c = gamma / 4
    asymptote = 4 * math.sqrt(math.pi * c) * math.exp(-2 * c) * (1 - 3 / (32 * c))
    sol = solve_concentration(gamma)
    assert sol.precision_digits is not None
    assert 0 < sol.deficit
    assert sol.deficit / asymptote == pytest.approx(1.0, abs=2e-2)
    assert sol.lambda0 <= 1.0
    assert sol.converged


def test_forced_precision_paths_agree():
    fast = solve_concentration(8.0, high_precision=False)
    slow = solve_concentration(8.0, high_precision=True)
    assert slow.deficit == pytest.approx(fast.deficit, rel=1e-9)


def test_validation():
    with pytest.raises(ValueError):
        solve_concentration(-1.0)
    with pytest.raises(ValueError):
        solve_concentration(math.inf)
    with pytest.raises(ValueError):
        solve_concentration(1.0, node_count=4)


def test_functional_rejects_unnormalized_trial():
    with pytest.raises(ValueError, match="norm"):
        concentration_functional(np.ones(32), 1.0)


def _random_trial(rng, n):
    t, w = gauss_legendre(n)
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / math.sqrt(np.sum(w * np.abs(psi) ** 2))


@pytest.mark.parametrize("gamma", [0.1, 1.0, 2 * math.pi, 20.0])
def test_variational_dominance(gamma):
    rng = np.random.default_rng(7)
    lam = lambda0(gamma)
    values = [concentration_functional(_random_trial(rng, 64), gamma, int(rng.integers(-3, 4))) for _ in range(300)]
    assert max(values) <= lam + 1e-9


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(-5, 5), gamma=st.floats(0.1, 30.0))
def test_phase_reduction(seed, k, gamma):
    rng = np.random.default_rng(seed)
    psi = _random_trial(rng, 48)
    t, _ = gauss_legendre(48)
    shifted = np.exp(-0.5j * k * gamma * t) * psi
    assert concentration_functional(psi, gamma, k) == pytest.approx(concentration_functional(shifted, gamma), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(0.05, 40.0), b=st.floats(0.05, 40.0))
def test_monotone_in_gamma(a, b):
    lo, hi = sorted((a, b))
    if hi - lo < 1e-3:
        return
    assert lambda0(lo) < lambda0(hi)
