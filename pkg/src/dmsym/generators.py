"""Infinitesimal symmetry data and the constraints the group law puts on it.

Near the identity, a kernel ``K[g(eps n)]`` is described by Hermitian
matrices ``T_r`` (one per group direction) and, for each direction ``n``,
noise terms ``(Delta_a(n), u_a(n))`` with traceless, trace-orthonormal
``u_a``.  The noise enters only through the four-index array
``L(n) = sum_a Delta_a(n) u_a(n) (x) u_a(n)^dagger``, which is linear in ``n``:
``L(n) = sum_r n^r L_r``.  Here ``(x)`` is :func:`dmsym.linalg.kernel_outer`.

``Delta_a(n)`` and ``u_a(n)`` are recovered from ``L(n)`` as the nonzero
eigenpairs of its choi layout, so they carry the direction dependence and
are not smooth at ``n = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from . import channels as ch
from . import linalg as la
from .exceptions import LinearityViolation, NonUnitaryFamily
from .linalg import anticommutator, commutator, dagger, kernel_outer

NoiseTerms = list[tuple[float, np.ndarray]]

NOISE_CUTOFF = 1e-12
PROBE_MARGIN = 1e-9


@dataclass(frozen=True)
class StructureConstants:
    """``c[r, s, t] = C^r_{st}``, so that ``[T_s, T_t] = i sum_r C^r_{st} T_r`` in the unitary case."""

    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        r = c.shape[0]
        if c.shape != (r, r, r):
            raise ValueError(f"structure constants must have shape (r, r, r), got {c.shape}")
        if not np.array_equal(c, -c.transpose(0, 2, 1)):
            raise ValueError("structure constants are not antisymmetric in the lower indices")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)
        if self.jacobi_residual() > 1e-10:
            raise ValueError(f"Jacobi identity fails (residual {self.jacobi_residual():.3g})")

    @property
    def r_dim(self) -> int:
        return self.c.shape[0]

    def jacobi_residual(self) -> float:
        c = self.c
        # sum_r C^r_{st} C^u_{rv} + cyclic(s, t, v)
        j = (np.einsum("rst,urv->ustv", c, c)
             + np.einsum("rtv,urs->ustv", c, c)
             + np.einsum("rvs,urt->ustv", c, c))
        return float(np.max(np.abs(j))) if j.size else 0.0

    def contract(self, n, nbar) -> np.ndarray:
        """``w^r = sum_{st} C^r_{st} n^s nbar^t``."""
        return np.einsum("rst,s,t->r", self.c, np.asarray(n, float), np.asarray(nbar, float))

    def negated(self) -> "StructureConstants":
        return StructureConstants(-self.c)

    @classmethod
    def abelian(cls, r_dim: int) -> "StructureConstants":
        return cls(np.zeros((r_dim, r_dim, r_dim)))

    @classmethod
    def su2(cls) -> "StructureConstants":
        eps = np.zeros((3, 3, 3))
        for (a, b, c), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                             (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
            eps[a, b, c] = s
        return cls(eps)

    @classmethod
    def from_matrices(cls, t: np.ndarray) -> "StructureConstants":
        """Read off ``C`` from Hermitian matrices normalized as ``Tr(T_a T_b) = delta / 2``."""
        t = np.asarray(t)
        comm = np.einsum("aij,bjk->abik", t, t) - np.einsum("bij,ajk->abik", t, t)
        f = (-2j * np.einsum("abik,cki->cab", comm, t)).real
        f = np.round(f, 14)
        return cls(0.5 * (f - f.transpose(0, 2, 1)))


def noise_terms(l4: np.ndarray, cutoff: float = NOISE_CUTOFF) -> NoiseTerms:
    """Split ``L`` into ``sum_a Delta_a u_a (x) u_a^dagger`` with orthonormal ``u_a``."""
    l4 = np.asarray(l4)
    d = l4.shape[0]
    w, v = la.hermitian_eigen(l4.reshape(d * d, d * d), atol=1e-9)
    scale = max(1.0, float(np.max(np.abs(w))))
    return [(float(eta), v[:, i].reshape(d, d)) for i, eta in enumerate(w) if abs(eta) > cutoff * scale]


def terms_tensor(terms: NoiseTerms, d: int) -> np.ndarray:
    out = np.zeros((d, d, d, d), dtype=complex)
    for delta, u in terms:
        out += delta * kernel_outer(u, dagger(u))
    return out


@dataclass(frozen=True)
class SymmetryGenerator:
    """First-order data of a continuous symmetry acting on ``d x d`` density matrices.

    ``noise(n)`` returns the list of ``(Delta, u)`` pairs for direction ``n``.
    """

    T: np.ndarray
    noise: Callable[[np.ndarray], NoiseTerms]
    sc: StructureConstants

    def __post_init__(self):
        t = np.array(self.T, dtype=complex)
        if t.ndim != 3 or t.shape[1] != t.shape[2]:
            raise ValueError(f"T must have shape (r, d, d), got {t.shape}")
        if t.shape[0] != self.sc.r_dim:
            raise ValueError("number of T matrices does not match the structure constants")
        t.flags.writeable = False
        object.__setattr__(self, "T", t)

    @property
    def d(self) -> int:
        return self.T.shape[1]

    @property
    def r_dim(self) -> int:
        return self.T.shape[0]

    def direction(self, n) -> np.ndarray:
        n = np.asarray(n, dtype=float).reshape(-1)
        if n.size != self.r_dim:
            raise ValueError(f"direction must have {self.r_dim} components, got {n.size}")
        return n

    def n_dot_t(self, n) -> np.ndarray:
        return np.einsum("r,rij->ij", self.direction(n), self.T)

    @classmethod
    def from_noise_tensors(cls, T, L, sc: StructureConstants) -> "SymmetryGenerator":
        """Generator whose noise at ``n`` is the eigen-split of ``sum_r n^r L_r``."""
        L = np.array(L, dtype=complex)
        L.flags.writeable = False

        def noise(n):
            return noise_terms(np.einsum("r,rabcd->abcd", np.asarray(n, float), L))

        return cls(T, noise, sc)

    @classmethod
    def from_unit_noise(cls, T, unit_noise: Sequence[NoiseTerms],
                        sc: StructureConstants) -> "SymmetryGenerator":
        """Noise given at the unit directions ``e_r`` and extended linearly."""
        T = np.asarray(T, dtype=complex)
        d = T.shape[1]
        L = np.array([terms_tensor(terms, d) for terms in unit_noise])
        if L.shape[0] != T.shape[0]:
            raise ValueError("need noise data for every unit direction")
        return cls.from_noise_tensors(T, L, sc)


def unitary_generator(T, sc: StructureConstants) -> SymmetryGenerator:
    T = np.asarray(T, dtype=complex)
    return SymmetryGenerator(T, lambda n: [], sc)


def su2_generator() -> SymmetryGenerator:
    """Spin-1/2 rotations, ``T = sigma / 2``, no noise."""
    from .states import PAULI_X, PAULI_Y, PAULI_Z

    return unitary_generator(np.array([PAULI_X, PAULI_Y, PAULI_Z]) / 2, StructureConstants.su2())


def gell_mann() -> np.ndarray:
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return lam


# --- action -------------------------------------------------------------------


def generator_action(g: SymmetryGenerator, n, rho: np.ndarray) -> np.ndarray:
    """First-order change of ``rho`` per unit ``eps`` along direction ``n``.

    ``i [n.T, rho] + sum_a Delta_a (u rho u^dagger - {u^dagger u, rho} / 2)``.
    """
    n = g.direction(n)
    if not np.any(n):
        raise ValueError("direction must be nonzero")
    rho = np.asarray(rho)
    if rho.shape != (g.d, g.d):
        raise ValueError(f"expected a {g.d}x{g.d} matrix, got {rho.shape}")
    out = 1j * commutator(g.n_dot_t(n), rho)
    for delta, u in g.noise(n):
        udu = dagger(u) @ u
        out = out + delta * (u @ rho @ dagger(u) - 0.5 * anticommutator(udu, rho))
    return out


@dataclass(frozen=True)
class GeneratorDerived:
    """``L_r`` (four-index arrays), ``theta_r`` and ``tau_r = T_r - i theta_r / 2``."""

    L: np.ndarray
    theta: np.ndarray
    tau: np.ndarray


def theta_from_l(l4: np.ndarray) -> np.ndarray:
    """``theta[N, M] = sum_{M'} L[M', M, M', N]``."""
    return np.einsum("amab->bm", l4)


def derive_tensors(g: SymmetryGenerator, atol: float = 1e-8) -> GeneratorDerived:
    d, r = g.d, g.r_dim
    eye = np.eye(r)
    L = np.array([terms_tensor(g.noise(eye[i]), d) for i in range(r)])
    for i, j in combinations(range(r), 2):
        both = terms_tensor(g.noise(eye[i] + eye[j]), d)
        dev = float(np.max(np.abs(both - L[i] - L[j])))
        if dev > atol:
            raise LinearityViolation(
                f"noise at e_{i} + e_{j} differs from the sum of its parts by {dev:.3g}"
            )
    theta = np.array([theta_from_l(l4) for l4 in L]) if r else np.zeros((0, d, d))
    for th in theta:
        if la.hermiticity_residual(th) > 1e-10:
            raise ValueError("theta is not Hermitian; noise coefficients must be real")
    tau = g.T - 0.5j * theta
    return GeneratorDerived(L, theta, tau)


def trace_condition_residual(g: SymmetryGenerator, n, derived: GeneratorDerived | None = None) -> float:
    """Max entry of ``-i n.tau + i n.tau^dagger + sum_a Delta_a u_a^dagger u_a``."""
    derived = derive_tensors(g) if derived is None else derived
    n = g.direction(n)
    nt = np.einsum("r,rij->ij", n, derived.tau)
    total = -1j * nt + 1j * dagger(nt)
    for delta, u in g.noise(n):
        total = total + delta * dagger(u) @ u
    return float(np.max(np.abs(total)))


def linearized_kernel(g: SymmetryGenerator, n, eps: float,
                      derived: GeneratorDerived | None = None) -> ch.Kernel:
    """First-order kernel ``1 (x) 1 + eps [-i n.tau (x) 1 + 1 (x) i n.tau^dagger + L(n)]``."""
    derived = derive_tensors(g) if derived is None else derived
    n = g.direction(n)
    eye = np.eye(g.d)
    nt = np.einsum("r,rij->ij", n, derived.tau)
    first = (kernel_outer(-1j * nt, eye) + kernel_outer(eye, 1j * dagger(nt))
             + terms_tensor(g.noise(n), g.d))
    return ch.Kernel.from_tensor(kernel_outer(eye, eye) + eps * first)


def from_linearized(derivatives: Sequence, sc: StructureConstants,
                    atol: float = 1e-8) -> SymmetryGenerator:
    """Generator data from the exact first derivatives ``dK[g(eps e_r)]/d eps`` at 0.

    Each derivative is split into ``-i tau (x) 1 + 1 (x) i tau^dagger + L`` with
    ``L`` annihilating the identity on both sides (traceless noise).  The
    real part of ``Tr tau`` is an unobservable phase and is set to zero.
    """
    T, L = [], []
    for k1 in derivatives:
        k1 = k1 if isinstance(k1, ch.Kernel) else ch.Kernel.from_tensor(k1)
        d = k1.d
        kc = k1.choi
        w = np.eye(d).reshape(-1).astype(complex)
        tr_tau = 1j * np.real(np.vdot(w, kc @ w)) / (2 * d)
        x = (1j / d) * (kc @ w - 1j * w * np.conj(tr_tau))
        lc = kc + 1j * np.outer(x, w) - 1j * np.outer(w, x.conj())
        if np.max(np.abs(lc @ w)) > atol:
            raise ValueError("derivative does not split into generator form")
        l4 = lc.reshape(d, d, d, d)
        t = x.reshape(d, d) + 0.5j * theta_from_l(l4)
        if la.hermiticity_residual(t) > atol:
            raise ValueError("derivative is not trace preserving; T would not be Hermitian")
        T.append(0.5 * (t + dagger(t)))
        L.append(l4)
    return SymmetryGenerator.from_noise_tensors(np.array(T), np.array(L), sc)


def su3_generator() -> SymmetryGenerator:
    """Generator data for :func:`dmsym.channels.su3_example` along ``U = exp(-i n.lambda/2)``."""
    t = gell_mann() / 2
    return from_linearized([ch.su3_derivative(-1j * tr) for tr in t], StructureConstants.from_matrices(t))


# --- the group-law constraint ------------------------------------------------


def group_residual(g: SymmetryGenerator, n, nbar, derived: GeneratorDerived | None = None) -> float:
    """Max-abs violation of the part of the group law antisymmetric in ``n``, ``nbar``.

    Both sides are four-index arrays built with :func:`~dmsym.linalg.kernel_outer`.
    """
    derived = derive_tensors(g) if derived is None else derived
    n = g.direction(n)
    nbar = g.direction(nbar)
    d = g.d
    eye = np.eye(d)
    ko = kernel_outer
    nt = np.einsum("r,rij->ij", n, derived.tau)
    nbt = np.einsum("r,rij->ij", nbar, derived.tau)
    noise_n = g.noise(n)
    noise_nb = g.noise(nbar)

    c = commutator(nt, nbt)
    lhs = ko(c, eye) + ko(eye, dagger(c))
    for delta, u in noise_nb:
        cu = commutator(nt, u)
        lhs += 1j * delta * ko(cu, dagger(u)) - 1j * delta * ko(u, dagger(cu))
    for delta, u in noise_n:
        cu = commutator(nbt, u)
        lhs += -1j * delta * ko(cu, dagger(u)) + 1j * delta * ko(u, dagger(cu))
    for da, ua in noise_n:
        for db, ub in noise_nb:
            cm = commutator(ua, ub)
            ac = anticommutator(ua, ub)
            lhs -= 0.5 * da * db * (ko(cm, dagger(ac)) + ko(ac, dagger(cm)))

    w = g.sc.contract(n, nbar)
    wt = np.einsum("r,rij->ij", w, derived.tau)
    rhs = 1j * ko(wt, eye) - 1j * ko(eye, dagger(wt)) - np.einsum("r,rabcd->abcd", w, derived.L)
    return float(np.max(np.abs(lhs - rhs)))


# --- gauge fixing ---------------------------------------------------------------


def _traceless_terms(terms: NoiseTerms, d: int) -> NoiseTerms:
    shifted = [(delta, u - np.trace(u) / d * np.eye(d)) for delta, u in terms]
    return noise_terms(terms_tensor(shifted, d))


def canonicalize(g: SymmetryGenerator) -> SymmetryGenerator:
    """Shift ``u -> u + c I`` to make every noise matrix traceless.

    ``T`` is compensated so that :func:`generator_action` is unchanged.  The
    shifted noise is re-diagonalized, restoring trace-orthonormality.
    """
    d, r = g.d, g.r_dim
    eye = np.eye(r)
    T = g.T.copy()
    for i in range(r):
        # sum_a Delta_a conj(c_a) u_a with c_a = -Tr(u_a) / d
        a = np.zeros((d, d), dtype=complex)
        for delta, u in g.noise(eye[i]):
            a += delta * np.conj(-np.trace(u) / d) * u
        T[i] = T[i] + 0.5j * (a - dagger(a))
    base_noise = g.noise
    return SymmetryGenerator(T, lambda n: _traceless_terms(base_noise(n), d), g.sc)


# --- checks -------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorCheck:
    t_hermiticity: float
    max_trace: float
    orthonormality: float
    scaling: float


def check_generator(g: SymmetryGenerator, samples: int = 10, seed=None) -> GeneratorCheck:
    """Residuals of the structural invariants on random directions."""
    rng = la.make_rng(seed)
    herm = max((la.hermiticity_residual(t) for t in g.T), default=0.0)
    max_tr = orth = scal = 0.0
    for _ in range(samples):
        n = rng.standard_normal(g.r_dim)
        terms = g.noise(n)
        if terms:
            us = np.array([u for _, u in terms])
            max_tr = max(max_tr, float(np.max(np.abs(np.einsum("aii->a", us)))))
            gram = np.einsum("aij,bij->ab", us.conj(), us)
            orth = max(orth, float(np.max(np.abs(gram - np.eye(len(terms))))))
        c = rng.uniform(0.1, 5.0)
        d1 = sorted(delta for delta, _ in g.noise(c * n))
        d0 = sorted(c * delta for delta, _ in terms)
        if len(d0) != len(d1):
            scal = np.inf
        elif d0:
            scal = max(scal, float(np.max(np.abs(np.array(d1) - np.array(d0)))))
    return GeneratorCheck(herm, max_tr, orth, scal)


@dataclass(frozen=True)
class CompactReport:
    unitarity_residual: float
    invariance_residual: float
    theta_residual: float
    tau_minus_t: float
    unitarity_condition_residual: float

    @property
    def passed(self) -> bool:
        return self.invariance_residual <= 1e-9 and self.theta_residual <= 1e-8


def compact_checks(family: Callable[[np.ndarray], ch.Kernel], g: SymmetryGenerator,
                   samples: int = 20, seed=None, param_sampler=None) -> CompactReport:
    """Consequences of a unitary (compact-group) action on density matrices.

    Checks that ``I/d`` is invariant for sampled group elements and that
    ``n.theta`` vanishes, so ``tau = T``.  The last field is the residual of
    ``n.theta (x) 1 + 1 (x) n.theta = sum Delta (u (x) u^dagger + u^dagger (x) u)``.
    """
    rng = la.make_rng(seed)
    d = g.d
    sampler = param_sampler or (lambda rng: rng.uniform(-np.pi, np.pi, g.r_dim))
    unit = inv = 0.0
    for _ in range(samples):
        s = family(sampler(rng)).transfer
        res = float(np.max(np.abs(dagger(s) @ s - np.eye(d * d))))
        if res > 1e-8:
            raise NonUnitaryFamily(f"transfer matrix is not unitary (residual {res:.3g})")
        unit = max(unit, res)
        img = (s @ (np.eye(d) / d).reshape(-1)).reshape(d, d)
        inv = max(inv, float(np.max(np.abs(img - np.eye(d) / d))))
    derived = derive_tensors(g)
    eye = np.eye(d)
    theta_res = cond_res = 0.0
    for _ in range(samples):
        n = rng.standard_normal(g.r_dim)
        nth = np.einsum("r,rij->ij", n, derived.theta)
        theta_res = max(theta_res, float(np.max(np.abs(nth))))
        lhs = kernel_outer(nth, eye) + kernel_outer(eye, nth)
        rhs = np.zeros_like(lhs)
        for delta, u in g.noise(n):
            rhs += delta * (kernel_outer(u, dagger(u)) + kernel_outer(dagger(u), u))
        cond_res = max(cond_res, float(np.max(np.abs(lhs - rhs))))
    tau_t = float(np.max(np.abs(derived.tau - g.T))) if g.r_dim else 0.0
    return CompactReport(unit, inv, theta_res, tau_t, cond_res)


# --- positivity probe ----------------------------------------------------------


@dataclass(frozen=True)
class ProbeWitness:
    """``rho`` with null vector ``v`` such that ``rho + eps * delta_rho`` is not positive."""

    v: np.ndarray
    rho: np.ndarray
    eps_sign: int
    coefficient: float
    min_eigenvalue: float


def positivity_probe(g: SymmetryGenerator, n, trials: int = 200, seed=None,
                     eps: float = 1e-3) -> ProbeWitness | None:
    """Look for a positive ``rho`` pushed out of the positive cone at first order.

    ``rho`` has rank ``d - 1`` with null vector ``v``; the first-order change of
    ``v^dagger rho v`` is ``eps * sum_a Delta_a v^dagger u_a rho u_a^dagger v``.
    Returns ``None`` when nothing is found (as for noise-free generators).
    """
    n = g.direction(n)
    terms = g.noise(n)
    if not terms:
        return None
    d = g.d
    for rng in ch.trial_rngs(seed, trials):
        v = la.random_state_vector(d, rng)
        rho = la.random_null_density(v, rng)
        coef = sum(delta * np.vdot(v, u @ rho @ dagger(u) @ v) for delta, u in terms).real
        if abs(coef) <= 1e-8:
            continue
        sign = -1 if coef > 0 else 1
        drho = generator_action(g, n, rho)
        m = la.min_eigenvalue(rho + sign * eps * drho)
        if m < -PROBE_MARGIN:
            return ProbeWitness(v, rho, sign, float(coef), m)
    return None


# --- the commuting example -----------------------------------------------------


def build_commuting(d: int, diag_T, diag_u, deltas, sc: StructureConstants | None = None) -> SymmetryGenerator:
    """Generator whose ``T_r`` and noise matrices are all diagonal.

    ``diag_T[r]`` holds the diagonal of ``T_r``; ``diag_u[r]`` and ``deltas[r]``
    hold the diagonals of the noise matrices ``u_a(e_r)`` and their
    ``Delta_a(e_r)``.  A single direction may be passed without the outer list.
    Noise diagonals must be traceless and orthonormal.
    """
    diag_T = np.asarray(diag_T, dtype=float)
    if diag_T.ndim == 1:
        diag_T, diag_u, deltas = diag_T[None], [diag_u], [deltas]
    r = diag_T.shape[0]
    if diag_T.shape[1] != d:
        raise ValueError(f"T diagonals must have length {d}")
    unit_noise = []
    for us, ds in zip(diag_u, deltas):
        us = np.atleast_2d(np.asarray(us, dtype=complex))
        ds = np.atleast_1d(np.asarray(ds, dtype=float))
        if us.size == 0:
            unit_noise.append([])
            continue
        if us.shape != (ds.size, d):
            raise ValueError("need one length-d diagonal per noise coefficient")
        if np.max(np.abs(us.sum(axis=1))) > 1e-10:
            raise ValueError("noise matrices must be traceless (u proportional to I is not allowed)")
        if np.max(np.abs(us.conj() @ us.T - np.eye(ds.size))) > 1e-10:
            raise ValueError("noise diagonals must be orthonormal")
        unit_noise.append([(float(dl), np.diag(u)) for dl, u in zip(ds, us)])
    if len(unit_noise) != r:
        raise ValueError("need noise data for every direction")
    sc = StructureConstants.abelian(r) if sc is None else sc
    return SymmetryGenerator.from_unit_noise(np.array([np.diag(t) for t in diag_T]), unit_noise, sc)


def commuting_multiplier(g: SymmetryGenerator, n) -> np.ndarray:
    """``m[M, N]`` with ``delta rho[M, N] = eps * m[M, N] * rho[M, N]`` for a diagonal generator."""
    n = g.direction(n)
    t = np.real(np.diag(g.n_dot_t(n)))
    m = 1j * (t[:, None] - t[None, :])
    for delta, u in g.noise(n):
        ud = np.diag(u)
        m = m + delta * (np.outer(ud, ud.conj()) - 0.5 * np.abs(ud[:, None]) ** 2
                         - 0.5 * np.abs(ud[None, :]) ** 2)
    return m


def random_generator(d: int, r_dim: int, rng: np.random.Generator, n_terms: int = 2,
                     delta_scale: float = 1.0) -> SymmetryGenerator:
    """Random Hermitian ``T_r`` and random traceless noise per unit direction.

    ``delta_scale = 0`` gives a noise-free generator.  Structure constants are
    zero; the result is meant for probing, not for the group law.
    """
    T = np.array([la.random_hermitian(d, rng) / 2 for _ in range(r_dim)])
    unit_noise = []
    for _ in range(r_dim):
        g = la.complex_normal(rng, (d * d, n_terms))
        g -= np.outer(np.eye(d).reshape(-1), np.eye(d).reshape(-1)) @ g / d
        q, _ = np.linalg.qr(g)
        deltas = delta_scale * rng.uniform(-1, 1, n_terms)
        unit_noise.append([(float(dl), q[:, a].reshape(d, d)) for a, dl in enumerate(deltas) if dl != 0])
    return SymmetryGenerator.from_unit_noise(T, unit_noise, StructureConstants.abelian(r_dim))
