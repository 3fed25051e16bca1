import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlpredict.lab.closed_forms import (
    advantage_beta,
    advantage_condition,
    basis_from_overlaps,
    bob_operator,
    closed_form_deltas,
    delta_closed_form_partial,
    determinants,
    expanded_radicands,
    overlap_two_qubit,
    tan_beta_bound,
)
from nlpredict.linalg import BipartiteDims, InputError, haar_random_unitary
from nlpredict.predictability import conditional_operators, delta_two_outcome
from nlpredict.states import (
    AppendixStateFamily,
    DephasingSpec,
    dephase,
    schmidt_state,
    two_outcome_qubit_measurement,
)

D22 = BipartiteDims(2, 2)


def numeric(p0, theta, phi, beta, gamma, q=1.0):
    rho = AppendixStateFamily(p0, theta, phi).state().density()
    m = two_outcome_qubit_measurement(beta, gamma)
    return (delta_two_outcome(rho, D22, m),
            delta_two_outcome(dephase(rho, D22, DephasingSpec(q)), D22, m))


def sample(rng):
    return (rng.uniform(0.01, 0.99), rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi),
            rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))


def test_matches_numeric(rng):
    for _ in range(2000):
        p0, th, ph, b, g = sample(rng)
        cf = closed_form_deltas(p0, th, b, g)
        dp, dm = numeric(p0, th, ph, b, g)
        assert abs(cf.delta_pure - dp) <= 1e-10
        assert abs(cf.delta_dephased - dm) <= 1e-10


def test_phi_independent(rng):
    p0, th, _, b, g = sample(rng)
    values = [numeric(p0, th, ph, b, g) for ph in np.linspace(0, 2 * np.pi, 7)]
    np.testing.assert_allclose(values, [values[0]] * 7, atol=1e-12)


def test_expanded_radicands_agree(rng):
    for _ in range(500):
        p0, th, _, b, g = sample(rng)
        cf = closed_form_deltas(p0, th, b, g)
        rp, rd = expanded_radicands(p0, th, b, g)
        assert rp == pytest.approx(cf.delta_pure ** 2, abs=1e-12)
        assert rd == pytest.approx(cf.delta_dephased ** 2, abs=1e-12)


def test_eigenvalue_signs(rng):
    for _ in range(500):
        p0, th, ph, b, g = sample(rng)
        cf = closed_form_deltas(p0, th, b, g)
        for e1, e2 in (cf.eigen_pair_pure, cf.eigen_pair_dephased):
            assert e1 * e2 <= 1e-15
        dp, dd = determinants(p0, th, b)
        assert dp <= 0 and dd <= 0


def test_bob_operator_matches_partial_trace(rng):
    for _ in range(200):
        p0, th, ph, b, g = sample(rng)
        q = rng.uniform()
        rho = dephase(AppendixStateFamily(p0, th, ph).state().density(), D22, DephasingSpec(q))
        m = two_outcome_qubit_measurement(b, g)
        pi0, pi1 = conditional_operators(rho, D22, m)
        np.testing.assert_allclose(bob_operator(p0, th, ph, b, g, q), pi0 - pi1, atol=1e-12)
        assert delta_closed_form_partial(p0, th, ph, b, g, q) == pytest.approx(
            delta_two_outcome(rho, D22, m), abs=1e-10)


def test_advantage_condition_matches_sign(rng):
    checked = 0
    for _ in range(3000):
        p0, th, ph, b, g = sample(rng)
        dp, dm = numeric(p0, th, ph, b, g)
        if abs(dm - dp) < 1e-9:
            continue
        checked += 1
        assert advantage_condition(p0, th, b, g) == (dm > dp)
    assert checked > 2500


def test_advantage_region_examples():
    # p0 = 0.8: the region sits near pi, on (pi - arctan 1.5, pi)
    assert tan_beta_bound(0.8, 0.0) == pytest.approx(-1.5)
    assert advantage_condition(0.8, 0.0, 2.5, 0.0)
    assert not advantage_condition(0.8, 0.0, 2.0, 0.0)
    assert not advantage_condition(0.8, 0.0, 0.5, 0.0)
    assert advantage_condition(0.2, 0.0, 0.5, 0.0)
    assert not advantage_condition(0.5, 0.7, 1.0, 0.0)


def test_advantage_beta_inside(rng):
    for p0 in rng.uniform(0.01, 0.99, 50):
        th = rng.uniform(0, 0.9 * np.pi)
        b = advantage_beta(p0, th)
        assert advantage_condition(p0, th, b, 0.0)
    assert np.isnan(advantage_beta(0.5, 0.3))


def test_overlap_formula(rng):
    for _ in range(200):
        p0 = rng.uniform(0.01, 0.99)
        v = haar_random_unitary(2, rng)
        a00, a01 = np.conj(v[0, 0]), np.conj(v[0, 1])  # <a|0> for the columns of v
        psi = schmidt_state([p0, 1 - p0], np.eye(2), haar_random_unitary(2, rng))
        c = psi.coefficient_matrix()
        bob = [v[:, a].conj() @ c for a in range(2)]
        assert np.vdot(bob[0], bob[1]) == pytest.approx(
            overlap_two_qubit(p0, 1 - p0, a00, a01), abs=1e-12)


def test_basis_from_overlaps_is_orthonormal(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a00, a01 = v / np.linalg.norm(v)
    b = basis_from_overlaps(a00, a01)
    np.testing.assert_allclose(b @ b.conj().T, np.eye(2), atol=1e-12)


def test_input_ranges():
    with pytest.raises(InputError):
        closed_form_deltas(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(InputError):
        closed_form_deltas(0.5, 4.0, 0.0, 0.0)
    with pytest.raises(InputError):
        overlap_two_qubit(0.5, 0.6, 1, 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.001, 0.999), st.floats(0, np.pi), st.floats(0, np.pi), st.floats(0, 2 * np.pi))
def test_deltas_bounded(p0, th, b, g):
    cf = closed_form_deltas(p0, th, b, g)
    assert 0 <= cf.delta_pure <= 1 + 1e-12
    assert 0 <= cf.delta_dephased <= 1 + 1e-12
