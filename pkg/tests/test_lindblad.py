import io

import numpy as np
import pytest
from scipy.linalg import expm

from dmsym import generators as gen
from dmsym import lindblad as lb
from dmsym import linalg as la
from dmsym.exceptions import NegativeDelta, StepTooLarge
from dmsym.states import PAULI_Z, SIGMA_MINUS

from oracles import AMPLITUDE_DAMPING_BREAKDOWN, DEPHASING_BREAKDOWN, SIGMA_MINUS_ACTION

RHO0 = np.array([[0.5, 0.4], [0.4, 0.5]], dtype=complex)


def test_generator_validation():
    with pytest.raises(ValueError):
        lb.LindbladGenerator(np.array([[0, 1], [0, 0]]), ())
    with pytest.raises(ValueError):
        lb.LindbladGenerator(np.eye(2), (np.eye(3),))


def test_from_generator():
    g = gen.SymmetryGenerator.from_unit_noise(
        [PAULI_Z], [[(0.7, SIGMA_MINUS)]], gen.StructureConstants.abelian(1)
    )
    lind = lb.from_generator(g, [1.0])
    assert np.abs(lind.H + PAULI_Z).max() == 0
    assert np.abs(lind.jumps[0] - np.sqrt(0.7) * SIGMA_MINUS).max() < 1e-15
    with pytest.raises(NegativeDelta):
        lb.from_generator(g, [-1.0])
    pure = lb.from_generator(gen.su2_generator(), [0, 0, 1])
    assert pure.jumps == ()


def test_rhs_matches_generator_action(rng):
    for _ in range(10):
        g0 = gen.random_generator(3, 1, rng)
        terms = [(abs(dl), u) for dl, u in g0.noise([1.0])]
        g = gen.SymmetryGenerator.from_unit_noise(g0.T, [terms], g0.sc)
        rho = la.random_density(3, rng)
        diff = lb.rhs(lb.from_generator(g, [1.0]), rho) - gen.generator_action(g, [1.0], rho)
        assert np.abs(diff).max() < 1e-12


def test_rhs_hand_cases(rng):
    gen_u = lb.LindbladGenerator(la.random_hermitian(3, rng), (0.5 * la.random_unitary(3, rng),))
    assert np.abs(lb.rhs(gen_u, np.eye(3) / 3)).max() < 1e-14
    a, b, c = 0.6, 0.2 - 0.1j, 0.4
    out = lb.rhs(lb.dephasing(1.5), np.array([[a, b], [np.conj(b), c]]))
    assert np.abs(out - np.array([[0, -3 * b], [-3 * np.conj(b), 0]])).max() < 1e-14
    out = lb.rhs(lb.amplitude_damping(2.0), np.diag([0.0, 1.0]))
    assert np.abs(out - 2.0 * SIGMA_MINUS_ACTION).max() < 1e-14


def test_hamiltonian_period():
    gen_h = lb.LindbladGenerator(PAULI_Z, ())
    rho = np.array([[0.3, 0.2 + 0.1j], [0.2 - 0.1j, 0.7]])
    out = lb.integrate(gen_h, rho, np.pi / 2, 1e-3).final
    v = expm(-1j * PAULI_Z * np.pi / 2)
    assert np.abs(out - v @ rho @ v.conj().T).max() < 1e-10
    assert np.abs(lb.integrate(gen_h, rho, np.pi, 1e-3).final - rho).max() < 1e-10


def test_dephasing_decay():
    traj = lb.integrate(lb.dephasing(1.0), RHO0, 3.0, 1e-3)
    for t, rho in traj:
        assert abs(rho[0, 1] - 0.4 * np.exp(-2 * t)) < 1e-6
    assert np.abs(traj.traces() - 1).max() < 1e-9


def test_backward_breakdown():
    t = lb.backward_breakdown(lb.dephasing(1.0), RHO0, 1.0, 1e-3)
    assert abs(t - DEPHASING_BREAKDOWN) < 1e-3
    t = lb.backward_breakdown(lb.amplitude_damping(1.0), np.diag([0.9, 0.1]).astype(complex), 5.0, 1e-3)
    assert abs(t - AMPLITUDE_DAMPING_BREAKDOWN) < 1e-3
    assert lb.backward_breakdown(lb.LindbladGenerator(PAULI_Z, ()), RHO0, 2.0, 1e-2) is None


def test_backward_run_grows_coherence():
    traj = lb.integrate(lb.dephasing(1.0), RHO0, -0.2, 1e-3)
    assert traj.times[-1] == pytest.approx(-0.2)
    assert abs(traj.final[0, 1] - 0.4 * np.exp(0.4)) < 1e-9
    assert traj.min_eigenvalues()[-1] < 0


def test_forward_positivity_and_invariants(rng):
    for _ in range(10):
        g = lb.random_generator(3, rng)
        traj = lb.integrate(g, la.random_density(3, rng), 5.0, 1e-2)
        assert traj.min_eigenvalues().min() >= -1e-7
        assert np.abs(traj.traces() - 1).max() < 1e-9
        assert max(la.hermiticity_residual(r) for r in traj.states) < 1e-10


def test_semigroup(rng):
    g = lb.random_generator(2, rng)
    rho = la.random_density(2, rng)
    both = lb.integrate(g, rho, 1.1, 1e-3).final
    split = lb.integrate(g, lb.integrate(g, rho, 0.4, 1e-3).final, 0.7, 1e-3).final
    assert np.abs(both - split).max() < 1e-7


def test_step_too_large():
    with pytest.raises(StepTooLarge):
        lb.integrate(lb.dephasing(50.0), RHO0, 1.0, 0.1)
    with pytest.raises(ValueError):
        lb.integrate(lb.dephasing(1.0), RHO0, 1.0, 0.0)


def test_csv_layout():
    buf = io.StringIO()
    lb.write_trajectory_csv(lb.integrate(lb.dephasing(1.0), RHO0, 0.01, 5e-3), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].split(",")[:4] == ["time", "trace_re", "min_eig", "re_0_0"]
    assert len(lines[0].split(",")) == 3 + 8
    assert len(lines) == 1 + 3
    assert lines[1].startswith("0,1,0.1,0.5,0,0.4,0")
