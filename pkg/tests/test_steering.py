import numpy as np
import pytest

from dmsym import linalg as la
from dmsym import states as st
from dmsym import steering as sr
from dmsym.exceptions import EnsembleMismatch

from oracles import BELL, RHO_N_S_E, RHO_N_S_E_EIGENVALUES, SPIN_PROBABILITY_ADJUSTMENT


def test_state_and_measurement_validation():
    with pytest.raises(ValueError):
        sr.BipartitePureState(2, 2, [1, 1, 0, 0])
    with pytest.raises(ValueError):
        sr.BipartitePureState(2, 3, BELL)
    with pytest.raises(ValueError):
        sr.SteeringMeasurement((np.diag([1, 0]), np.diag([1, 1])))
    with pytest.raises(ValueError):
        sr.SteeringMeasurement((np.diag([1, 0]),))
    m = sr.SteeringMeasurement.from_vectors([[1, 1]] / np.sqrt(2))
    assert len(m.projectors) == 2


def test_isometry_trivial_cases(rng):
    e = st.eigen_ensemble(la.random_density(3, rng))
    v = sr.ensemble_relation_isometry(e, e)
    assert np.abs(v - np.eye(3)).max() < 1e-10
    perm = [2, 0, 1]
    e2 = st.Ensemble(e.probs[perm], e.states[perm])
    v = sr.ensemble_relation_isometry(e, e2)
    assert np.abs(v - np.eye(3)[perm]).max() < 1e-10


def test_isometry_mismatch():
    e1, e2 = st.spin_ensembles()
    with pytest.raises(EnsembleMismatch):
        sr.ensemble_relation_isometry(e1, e2)


def test_random_pairs(rng):
    for _ in range(30):
        rho = la.random_density(3, rng, rank=rng.integers(1, 4))
        k1, k2 = rng.integers(3, 6, size=2)
        e1, e2 = sr.random_ensemble_for(rho, k1, rng), sr.random_ensemble_for(rho, k2, rng)
        assert np.abs(st.from_ensemble(e1) - st.from_ensemble(e2)).max() < 1e-10
        v = sr.ensemble_relation_isometry(e1, e2)
        vv = v.conj().T @ v
        assert np.abs(vv @ vv - vv).max() < 1e-8  # identity on the support


def test_steer_product_state(rng):
    a, b = la.random_state_vector(2, rng), la.random_state_vector(3, rng)
    psi = sr.BipartitePureState(2, 3, np.kron(a, b))
    m = sr.SteeringMeasurement.from_vectors(la.random_unitary(3, rng).T)
    for p, rho in sr.steer(psi, m):
        assert np.abs(rho - np.outer(a, a.conj())).max() < 1e-10


def test_steer_in_ancilla_basis():
    _, e = st.spin_ensembles()
    psi = sr.BipartitePureState(2, 3, st.purify_with_ensemble(e))
    out = sr.steer(psi, sr.SteeringMeasurement.computational(3))
    assert np.abs(np.array([p for p, _ in out]) - e.probs).max() < 1e-12
    for (_, rho), s in zip(out, e.states):
        assert np.abs(rho - np.outer(s, s.conj())).max() < 1e-12


def test_bell_nonsignaling():
    psi = sr.BipartitePureState(2, 2, BELL)
    z = sr.SteeringMeasurement.computational(2)
    x = sr.SteeringMeasurement.from_vectors(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    rep = sr.nonsignaling_check(psi, z, x)
    assert rep.passed
    assert np.abs(sr.average_state(rep.outcomes1) - np.eye(2) / 2).max() < 1e-12
    assert np.abs(sr.average_state(rep.outcomes2) - np.eye(2) / 2).max() < 1e-12


def test_random_nonsignaling(rng):
    for _ in range(20):
        psi = sr.BipartitePureState(3, 4, la.random_state_vector(12, rng))
        m1 = sr.SteeringMeasurement.from_vectors(la.random_unitary(4, rng)[:2])
        m2 = sr.SteeringMeasurement.from_vectors(la.random_unitary(4, rng))
        rep = sr.nonsignaling_check(psi, m1, m2)
        assert rep.deviation < 1e-10 and rep.deviation_from_reduced < 1e-10
        assert abs(sum(p for p, _ in rep.outcomes1) - 1) < 1e-10


def test_alignment():
    e_two, e_three = st.spin_ensembles()
    al = sr.align_eigen_ensemble(e_two, st.from_ensemble(e_three))
    assert abs(al.prob_adjustment - SPIN_PROBABILITY_ADJUSTMENT) < 1e-12
    assert al.state_adjustment < 1e-12
    assert np.abs(al.ensemble.probs - RHO_N_S_E_EIGENVALUES).max() < 1e-12
    assert np.abs(st.from_ensemble(al.ensemble) - RHO_N_S_E).max() < 1e-12
    with pytest.raises(EnsembleMismatch):
        sr.align_eigen_ensemble(e_three, RHO_N_S_E)


def test_steer_to_second_ensemble():
    e_two, e_three = st.spin_ensembles()
    target = sr.align_eigen_ensemble(e_two, RHO_N_S_E).ensemble
    v = sr.ensemble_relation_isometry(e_three, target)
    assert v.shape == (2, 3)
    psi = sr.BipartitePureState(2, 3, st.purify_with_ensemble(e_three))
    out = sr.steer(psi, sr.measurement_from_isometry(v))
    assert np.abs(np.array([p for p, _ in out]) - target.probs).max() < 1e-8
    for (_, rho), s in zip(out, target.states):
        assert np.abs(rho - np.outer(s, s.conj())).max() < 1e-8


def test_measurement_needs_small_target():
    _, e_three = st.spin_ensembles()
    e_two = st.eigen_ensemble(RHO_N_S_E)
    v = sr.ensemble_relation_isometry(e_two, e_three)
    with pytest.raises(ValueError):
        sr.measurement_from_isometry(v)
