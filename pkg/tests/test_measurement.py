import math

import numpy as np
import pytest

from corrdyn.correlations import classical_correlations, discord
from corrdyn.measurement import (
    MeasurementBasis,
    classical_correlations_numeric,
    conditional_entropy,
    discord_numeric,
)
from corrdyn.states import make_state

from oracles import classical_brute, conditional_entropy as cond_oracle, random_valid_c, rho_of

H_08 = 0.7219280948873623
F06 = 0.27807190511263774


def test_conditional_entropy_examples():
    fig1 = make_state(1, -0.6, 0.6)
    assert conditional_entropy(fig1, MeasurementBasis(0.0)) == pytest.approx(H_08, abs=1e-12)
    assert conditional_entropy(fig1, MeasurementBasis(math.pi / 4)) == pytest.approx(0.0, abs=1e-12)
    assert conditional_entropy(make_state(0, 0, 0), MeasurementBasis(0.3, 1.1)) == pytest.approx(1.0, abs=1e-14)


def test_basis_validation_and_normalization():
    with pytest.raises(ValueError):
        MeasurementBasis(-0.1)
    with pytest.raises(ValueError):
        MeasurementBasis(2.0)
    b = MeasurementBasis(np.float64(0.4), 7.0)
    assert type(b.theta) is float
    assert b.phi == pytest.approx(7.0 - 2 * math.pi)
    v1, v2 = b.vectors()
    assert abs(np.vdot(v1, v2)) < 1e-15
    p1, p2 = b.projectors()
    np.testing.assert_allclose(p1 + p2, np.eye(2), atol=1e-15)


def test_conditional_entropy_against_oracle(rng):
    for c in random_valid_c(rng, 50):
        theta, phi = rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi)
        got = conditional_entropy(make_state(*c), MeasurementBasis(theta, phi))
        assert got == pytest.approx(cond_oracle(rho_of(c), theta, phi), abs=1e-12)


def test_optimizer_examples():
    assert classical_correlations_numeric(make_state(1, -0.6, 0.6)).value == pytest.approx(1.0, abs=1e-9)
    assert classical_correlations_numeric(make_state(0.36787944117144233, -0.2207276647028654, 0.6)).value == (
        pytest.approx(F06, abs=1e-9)
    )
    assert classical_correlations_numeric(make_state(0, 0, 0)).value == pytest.approx(0.0, abs=1e-12)


def test_optimizer_matches_closed_form(rng):
    for c in random_valid_c(rng, 200):
        s = make_state(*c)
        assert abs(classical_correlations_numeric(s).value - classical_correlations(s)) <= 1e-7


def test_dense_scan_agrees(rng):
    for c in random_valid_c(rng, 3):
        s = make_state(*c)
        assert classical_brute(rho_of(c), n=31) == pytest.approx(classical_correlations(s), abs=1e-9)


def test_grid_value_is_a_lower_bound(rng):
    for c in random_valid_c(rng, 50):
        s = make_state(*c)
        res = classical_correlations_numeric(s)
        assert res.grid_value <= classical_correlations(s) + 1e-12
        assert res.grid_value <= res.value + 1e-15
        assert res.evaluations > 32 * 32


def test_best_basis_reproduces_value(rng):
    for c in random_valid_c(rng, 20):
        s = make_state(*c)
        res = classical_correlations_numeric(s)
        s_a = 1.0  # marginals of Bell-diagonal states are maximally mixed
        assert s_a - conditional_entropy(s, res.best_basis) == pytest.approx(res.value, abs=1e-12)


def test_phi_restricted_search(rng):
    # the optimum lies on a Pauli axis, so phi in {0, pi/2} suffices
    for c in random_valid_c(rng, 50):
        s = make_state(*c)
        res = classical_correlations_numeric(s, fixed_phis=(0.0, math.pi / 2))
        assert abs(res.value - classical_correlations(s)) <= 1e-7


def test_measuring_either_side(rng):
    for c in random_valid_c(rng, 30):
        s = make_state(*c)
        a = classical_correlations_numeric(s, side="A").value
        b = classical_correlations_numeric(s, side="B").value
        assert a == pytest.approx(b, abs=1e-9)
    with pytest.raises(ValueError):
        classical_correlations_numeric(make_state(0, 0, 0), side="C")


def test_small_grid_rejected():
    with pytest.raises(ValueError):
        classical_correlations_numeric(make_state(0, 0, 0), grid_n=4)


def test_discord_numeric(rng):
    assert discord_numeric(make_state(1, -0.6, 0.6)) == pytest.approx(F06, abs=1e-9)
    for c in random_valid_c(rng, 20):
        s = make_state(*c)
        assert discord_numeric(s) == pytest.approx(discord(s), abs=1e-7)
