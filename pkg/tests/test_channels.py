import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmsym import channels as ch
from dmsym import linalg as la
from dmsym.exceptions import NegativeEigenvalue, NotFactorized, SingularKernel
from dmsym.states import PAULI_X, PAULI_Z

from oracles import BELL, BELL_PARTIAL_TRANSPOSE_EIGENVALUES, TRANSPOSE_ETAS_D2


def test_layouts_roundtrip(rng):
    k = ch.random_kernel(3, rng)
    assert np.abs(ch.Kernel.from_transfer(k.transfer).choi - k.choi).max() == 0
    assert np.abs(ch.Kernel.from_tensor(k.tensor).choi - k.choi).max() == 0


def test_kernel_rejects_bad_shapes():
    with pytest.raises(ValueError):
        ch.Kernel(np.eye(5))
    with pytest.raises(ValueError):
        ch.Kernel(np.ones((4, 3)))


def test_identity_and_transpose_action(rng):
    rho = la.random_density(3, rng)
    assert np.abs(ch.apply(ch.identity(3), rho) - rho).max() == 0
    r2 = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.7]])
    assert np.abs(ch.apply(ch.transpose(2), r2) - r2.T).max() == 0


def test_apply_layouts_agree(rng):
    for d in (2, 3, 4):
        k = ch.random_kernel(d, rng)
        rho = la.random_density(d, rng)
        assert np.abs(ch.apply(k, rho) - ch.apply_index(k, rho)).max() < 1e-12


def test_su3_diagonal_phases():
    ph = np.array([0.3, -1.1, 0.8])
    k = ch.su3_example(np.diag(np.exp(1j * ph)))
    a, b = [0.2, 0.5, 0.3], [0.05 + 0.01j, -0.02j, 0.03]
    out = ch.apply(k, ch.su3_layout(a, b))
    a2, b2 = ch.su3_split(out)
    assert np.abs(a2 - a).max() < 1e-14
    assert np.abs(b2 - np.exp(1j * ph) * b).max() < 1e-14


def test_su3_rejects_non_special():
    with pytest.raises(ValueError):
        ch.su3_example(np.diag([1j, 1, 1]))
    with pytest.raises(ValueError):
        ch.su3_example(2 * np.eye(3))


def test_su3_identity_is_identity():
    assert np.abs(ch.su3_example(np.eye(3)).choi - ch.identity(3).choi).max() == 0


def test_compose(rng):
    k = ch.random_kernel(3, rng)
    assert np.abs(ch.compose(ch.identity(3), k).choi - k.choi).max() < 1e-14
    u, v = la.random_unitary(3, rng), la.random_unitary(3, rng)
    assert np.abs(ch.compose(ch.unitary(u), ch.unitary(v)).choi - ch.unitary(u @ v).choi).max() < 1e-12
    assert np.abs(ch.compose(ch.unitary(u), ch.unitary(u.conj().T)).choi - ch.identity(3).choi).max() < 1e-9
    w = la.random_special_unitary(3, rng)
    back = ch.compose(ch.su3_example(w), ch.su3_example(w.conj().T))
    assert np.abs(back.choi - ch.identity(3).choi).max() < 1e-9


def test_validate():
    for k in (ch.identity(3), ch.transpose(2)):
        r = ch.validate(k)
        assert r.hermiticity_residual == 0 and r.trace_residual == 0
    bad = ch.Kernel.from_tensor(la.kernel_outer(PAULI_X, np.eye(2)))
    assert ch.validate(bad).trace_residual > 0


def test_spectrum_known_cases(rng):
    eig = ch.spectrum(ch.identity(3))
    assert np.abs(eig.etas - np.r_[3, np.zeros(8)]).max() < 1e-12
    u0 = eig.eigenmats[0]
    u0 = u0 * np.conj(u0[0, 0]) / abs(u0[0, 0])
    assert np.abs(u0 - np.eye(3) / np.sqrt(3)).max() < 1e-12
    assert np.abs(ch.spectrum(ch.transpose(2)).etas - TRANSPOSE_ETAS_D2).max() < 1e-12
    et = ch.spectrum(ch.transpose(3)).etas
    assert np.sum(et > 0.5) == 6 and np.sum(et < -0.5) == 3
    eu = ch.spectrum(ch.unitary(la.random_unitary(4, rng))).etas
    assert abs(eu[0] - 4) < 1e-12 and np.abs(eu[1:]).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(d=st.integers(1, 5), seed=st.integers(0, 2**32 - 1))
def test_spectral_identities(d, seed):
    k = ch.random_kernel(d, np.random.default_rng(seed))
    eig = ch.spectrum(k)
    assert np.abs(eig.kernel().choi - k.choi).max() < 1e-9
    assert np.abs(eig.gram() - np.eye(d * d)).max() < 1e-10
    assert np.abs(eig.trace_sum() - np.eye(d)).max() < 1e-9


def test_to_kraus(rng):
    u = la.random_unitary(3, rng)
    ops = ch.to_kraus(ch.unitary(u))
    assert len(ops) == 1
    assert np.abs(ch.fix_global_phase(ops[0]) - ch.fix_global_phase(u)).max() < 1e-10
    with pytest.raises(NegativeEigenvalue):
        ch.to_kraus(ch.transpose(2))
    p = 0.3
    ops = ch.to_kraus(ch.dephasing(p))
    norms = sorted(np.linalg.norm(a) ** 2 / 2 for a in ops)
    assert np.abs(np.array(norms) - [p, 1 - p]).max() < 1e-12
    rebuilt = ch.kraus(ops)
    assert np.abs(rebuilt.choi - ch.dephasing(p).choi).max() < 1e-12


def test_complete_positivity(rng):
    for _ in range(20):
        cp, m = ch.is_completely_positive(ch.random_channel(3, rng))
        assert cp and m >= -1e-10
    cp, m = ch.is_completely_positive(ch.transpose(2))
    assert not cp and abs(m + 1) < 1e-12
    cp, m = ch.is_completely_positive(ch.su3_example(la.random_special_unitary(3, rng)))
    assert not cp and m < -1e-3


def test_positivity_sampling():
    res = ch.is_positive_sampled(ch.transpose(3), trials=300, seed=1)
    assert res.positive and res.worst_min_eigenvalue >= -1e-10 and res.witness is None
    k = ch.su3_example(la.random_special_unitary(3, np.random.default_rng(5)))
    res = ch.is_positive_sampled(k, trials=10_000, seed=2, stop_at_witness=True)
    assert not res.positive
    assert la.min_eigenvalue(res.witness) >= -1e-12
    assert la.min_eigenvalue(ch.apply(k, res.witness)) < -1e-8


def test_su3_restricted_class_positive():
    k = ch.su3_example(la.random_special_unitary(3, np.random.default_rng(7)))
    res = ch.is_positive_sampled(k, trials=2000, seed=3, sampler=ch.sample_su3_class)
    assert res.positive and res.worst_min_eigenvalue >= -1e-10


def test_sampling_is_reproducible():
    k = ch.random_kernel(3, np.random.default_rng(0))
    a = ch.is_positive_sampled(k, trials=50, seed=9)
    b = ch.is_positive_sampled(k, trials=50, seed=9)
    assert a.worst_min_eigenvalue == b.worst_min_eigenvalue


def test_projector_preserving(rng):
    assert ch.check_projector_preserving(ch.unitary(la.random_unitary(3, rng)))
    assert not ch.check_projector_preserving(ch.depolarizing(3, 0.5))
    assert not ch.check_projector_preserving(ch.su3_example(la.random_special_unitary(3, rng)))


def test_observable_pullback(rng):
    a = la.random_hermitian(3, rng)
    ga, _ = ch.observable_pullback(ch.identity(3), a)
    assert np.abs(ga - a).max() < 1e-12
    u = la.random_unitary(3, rng)
    ga, _ = ch.observable_pullback(ch.unitary(u), a)
    assert np.abs(ga - u @ a @ u.conj().T).max() < 1e-10
    k = ch.su3_example(np.diag(np.exp(1j * np.array([0.4, 0.5, -0.9]))))
    ga, _ = ch.observable_pullback(k, np.eye(3))
    assert np.abs(ga - np.eye(3)).max() < 1e-12
    with pytest.raises(SingularKernel):
        ch.observable_pullback(ch.depolarizing(2, 1.0), PAULI_Z)


def test_unitary_form(rng):
    v = la.random_unitary(3, rng)
    u = ch.unitary_form_test(ch.unitary(v), ch.unitary(v.conj().T))
    assert np.abs(u - ch.fix_global_phase(v)).max() < 1e-8
    assert ch.unitary_form_test(ch.transpose(2), ch.transpose(2)) is None
    w = la.random_special_unitary(3, rng)
    assert ch.unitary_form_test(ch.su3_example(w), ch.su3_example(w.conj().T)) is None
    with pytest.raises(ValueError):
        ch.unitary_form_test(ch.unitary(v), ch.unitary(v))


def test_antiunitary_form(rng):
    assert ch.is_antiunitary_form(ch.transpose(3))
    assert not ch.is_antiunitary_form(ch.identity(3))
    u = la.random_unitary(2, rng)
    assert ch.is_antiunitary_form(ch.compose(ch.unitary(u), ch.transpose(2)))


def test_extension_and_bell():
    ext = ch.extend_with_ancilla(ch.transpose(2), 2)
    w = np.linalg.eigvalsh(ch.apply(ext, np.outer(BELL, BELL)))
    assert np.abs(w - BELL_PARTIAL_TRANSPOSE_EIGENVALUES).max() < 1e-9
    trivial = ch.extend_with_ancilla(ch.identity(2), 1)
    assert np.abs(trivial.choi - ch.identity(2).choi).max() == 0


def test_extension_of_unitary(rng):
    u = la.random_unitary(2, rng)
    ext = ch.extend_with_ancilla(ch.unitary(u), 3)
    assert np.abs(ext.choi - ch.unitary(np.kron(u, np.eye(3))).choi).max() < 1e-12


def test_factorize(rng):
    k1, k2 = ch.random_channel(2, rng), ch.random_channel(3, rng)
    f1, f2 = ch.factorize(ch.factor_product(k1, k2), 2, 3)
    assert np.abs(f1.choi - k1.choi).max() < 1e-12
    assert np.abs(f2.choi - k2.choi).max() < 1e-12
    swap = np.eye(4)[[0, 2, 1, 3]]
    with pytest.raises(NotFactorized):
        ch.factorize(ch.unitary(swap), 2, 2)


def test_reduced_action_nonsignaling(rng):
    bell = np.outer(BELL, BELL)
    outs = []
    for k2 in (ch.unitary(la.random_unitary(2, rng)), ch.random_channel(2, rng), ch.depolarizing(2, 0.7)):
        rep = ch.reduced_action(ch.factor_product(ch.identity(2), k2), bell, 2, 2)
        assert rep.passed and rep.max_deviation < 1e-10
        outs.append(rep.reduced_after)
    assert np.abs(outs[0] - outs[1]).max() < 1e-10 and np.abs(outs[1] - outs[2]).max() < 1e-10
    rho = np.kron(la.random_density(2, rng), la.random_density(2, rng))
    rep = ch.reduced_action(ch.factor_product(ch.random_channel(2, rng), ch.random_channel(2, rng)), rho, 2, 2)
    assert rep.max_deviation < 1e-12


def test_builtin_table():
    assert np.abs(ch.builtin("identity", d=2).choi - ch.identity(2).choi).max() == 0
    with pytest.raises(ValueError):
        ch.builtin("nope")
