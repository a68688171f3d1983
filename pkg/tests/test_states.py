import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from corrdyn.errors import NonPhysical
from corrdyn.states import (
    EPS_PHYS,
    BellLabel,
    BellSpectrum,
    bell_expansion,
    bell_projector,
    bell_spectrum,
    correlation_vector_of,
    from_spectrum,
    make_state,
    sorted_spectrum,
    to_density_matrix,
)

from conftest import valid_states
from oracles import bell_populations, random_valid_c, rho_of

P, M, FP, FM = BellLabel.PSI_PLUS, BellLabel.PSI_MINUS, BellLabel.PHI_PLUS, BellLabel.PHI_MINUS


def test_maximally_mixed():
    s = make_state(0, 0, 0)
    assert bell_spectrum(s).as_tuple() == (0.25, 0.25, 0.25, 0.25)


def test_fig1_initial_spectrum():
    spec = bell_spectrum(make_state(1, -0.6, 0.6))
    assert spec.as_tuple() == pytest.approx((0.8, 0.0, 0.2, 0.0), abs=1e-15)


@pytest.mark.parametrize("c", [(1, 1, 1), (0.9, 0.9, 0.9), (1.2, 0, 0), (-1, -1, 1), (0.5, 0.2, 0.9), (0.6, 0.3, 0.5)])
def test_nonphysical_rejected(c):
    assert np.linalg.eigvalsh(rho_of(c)).min() < -EPS_PHYS
    with pytest.raises(NonPhysical):
        make_state(*c)


def test_inside_tetrahedron_point_from_misprinted_example_is_accepted():
    # eigenvalues (0.025, 0.025, 0.025, 0.925): physical despite looking extreme
    assert np.linalg.eigvalsh(rho_of((0.9, 0.9, -0.9))).min() > 0
    spec = bell_spectrum(make_state(0.9, 0.9, -0.9))
    assert spec[FP] == pytest.approx(0.925)


def test_rejects_non_finite():
    with pytest.raises(NonPhysical):
        make_state(float("nan"), 0, 0)


def test_make_state_matches_eigenvalue_oracle_on_sign_patterns():
    for signs in itertools.product((-1.0, 1.0), repeat=3):
        oracle_ok = np.linalg.eigvalsh(rho_of(signs)).min() >= -EPS_PHYS
        if oracle_ok:
            make_state(*signs)
        else:
            with pytest.raises(NonPhysical):
                make_state(*signs)


def test_corners_are_bell_states():
    corners = {(1, -1, 1): P, (-1, 1, 1): M, (1, 1, -1): FP, (-1, -1, -1): FM}
    for c, label in corners.items():
        spec = bell_spectrum(make_state(*c))
        assert spec[label] == 1.0
        assert sum(spec.as_tuple()) == 1.0


@pytest.mark.parametrize(
    "c, expected",
    [
        ((1, -1, 1), (1, 0, 0, 0)),
        ((1, -0.6, 0.6), (0.8, 0, 0.2, 0)),
        ((0.6, -0.36, 0.6), (0.64, 0.16, 0.16, 0.04)),
    ],
)
def test_bell_spectrum_examples(c, expected):
    assert bell_spectrum(make_state(*c)).as_tuple() == pytest.approx(expected, abs=1e-15)


def test_bell_spectrum_matches_projection_oracle(rng):
    for c in random_valid_c(rng, 200):
        pops = bell_populations(rho_of(c))
        spec = bell_spectrum(make_state(*c))
        for label in BellLabel:
            assert spec[label] == pytest.approx(pops[label.value], abs=1e-14)


def test_density_matrix_examples():
    np.testing.assert_allclose(to_density_matrix(make_state(0, 0, 0)), np.eye(4) / 4, atol=1e-16)
    bell = to_density_matrix(make_state(1, -1, 1))
    for i, j in [(0, 0), (3, 3), (0, 3), (3, 0)]:
        assert bell[i, j] == pytest.approx(0.5)
    assert np.abs(bell).sum() == pytest.approx(2.0)
    expected = 0.8 * bell_projector(P) + 0.2 * bell_projector(FP)
    explicit = np.array(
        [[0.4, 0, 0, 0.4], [0, 0.1, 0.1, 0], [0, 0.1, 0.1, 0], [0.4, 0, 0, 0.4]], dtype=complex
    )
    np.testing.assert_allclose(expected, explicit, atol=1e-15)
    np.testing.assert_allclose(to_density_matrix(make_state(1, -0.6, 0.6)), explicit, atol=1e-15)


def test_density_matrix_against_bell_expansion(rng):
    for c in random_valid_c(rng, 1000):
        s = make_state(*c)
        rho = to_density_matrix(s)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
        np.testing.assert_allclose(rho, bell_expansion(bell_spectrum(s)), atol=1e-14, rtol=0)
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
        assert np.linalg.eigvalsh(rho).min() >= -1e-10


@settings(max_examples=300, deadline=None)
@given(valid_states)
def test_round_trip(state):
    spec = bell_spectrum(state)
    assert abs(sum(spec.as_tuple()) - 1.0) <= 1e-12
    back = from_spectrum(spec)
    assert back.as_tuple() == pytest.approx(state.as_tuple(), abs=1e-12)
    assert correlation_vector_of(to_density_matrix(state)) == pytest.approx(state.as_tuple(), abs=1e-14)


def test_sorted_spectrum_tie_break_all_equal():
    ranked = sorted_spectrum(BellSpectrum(0.25, 0.25, 0.25, 0.25))
    assert [label for _, label in ranked] == [P, FP, FM, M]


def test_sorted_spectrum_simple():
    ranked = sorted_spectrum(BellSpectrum(0.8, 0.0, 0.2, 0.0))
    assert ranked == [(0.8, P), (0.2, FP), (0.0, FM), (0.0, M)]


def test_sorted_spectrum_transition_tie():
    ranked = sorted_spectrum(BellSpectrum(0.64, 0.16, 0.16, 0.04))
    assert ranked == [(0.64, P), (0.16, FP), (0.16, M), (0.04, FM)]


def test_spectrum_validation():
    with pytest.raises(NonPhysical):
        BellSpectrum(0.5, 0.5, 0.5, -0.5)
    with pytest.raises(NonPhysical):
        BellSpectrum(0.5, 0.5, 0.5, 0.0)
