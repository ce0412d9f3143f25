"""Linear kernels acting on density matrices.

A kernel ``K[M', M, N', N]`` maps ``rho`` to
``g(rho)[M', N'] = sum_{M,N} K[M', M, N', N] rho[M, N]``.
It is kept in two ``d**2 x d**2`` layouts, related by swapping the middle two
indices:

* **choi**: row ``M'*d + M``, column ``N'*d + N``.  Hermitian iff the map
  preserves Hermiticity; its eigen-decomposition gives the ``eta``/``u`` form
  ``g(rho) = sum_i eta_i u_i rho u_i^dagger``.
* **transfer**: row ``M'*d + N'``, column ``M*d + N``.  Acts on row-major
  ``vec(rho)``; composition of maps is the matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .exceptions import ContractViolation, NegativeEigenvalue, NotFactorized, SingularKernel
from .linalg import dagger, hermitian_eigen, kernel_outer, min_eigenvalue

CHECK_TOL = 1e-8
CLAMP_TOL = 1e-8
MAX_DIM = 16


def _swap_middle(m: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(m).reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def _side_to_dim(n: int) -> int:
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise ValueError(f"kernel side {n} is not a perfect square")
    return d


@dataclass(frozen=True)
class Kernel:
    """Immutable kernel stored in choi layout."""

    choi: np.ndarray

    def __post_init__(self):
        c = np.array(self.choi, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"choi matrix must be square, got {c.shape}")
        _side_to_dim(c.shape[0])
        c.flags.writeable = False
        object.__setattr__(self, "choi", c)

    @property
    def d(self) -> int:
        return _side_to_dim(self.choi.shape[0])

    @property
    def tensor(self) -> np.ndarray:
        """Four-index view ``K[M', M, N', N]``."""
        d = self.d
        return self.choi.reshape(d, d, d, d)

    @property
    def transfer(self) -> np.ndarray:
        return _swap_middle(self.choi, self.d)

    @classmethod
    def from_tensor(cls, k4: np.ndarray) -> "Kernel":
        k4 = np.asarray(k4)
        d = k4.shape[0]
        if k4.shape != (d, d, d, d):
            raise ValueError(f"expected a (d, d, d, d) array, got {k4.shape}")
        return cls(k4.reshape(d * d, d * d))

    @classmethod
    def from_transfer(cls, s: np.ndarray) -> "Kernel":
        s = np.asarray(s)
        d = _side_to_dim(s.shape[0])
        return cls(_swap_middle(s, d))


# --- construction ------------------------------------------------------------


def identity(d: int) -> Kernel:
    return Kernel.from_tensor(kernel_outer(np.eye(d), np.eye(d)))


def transpose(d: int) -> Kernel:
    """``K[M', M, N', N] = delta(M', N) delta(N', M)``, i.e. ``rho -> rho^T``."""
    eye = np.eye(d)
    return Kernel.from_tensor(np.einsum("ad,cb->abcd", eye, eye))


def unitary(u: np.ndarray) -> Kernel:
    u = np.asarray(u, dtype=complex)
    return Kernel.from_tensor(kernel_outer(u, dagger(u)))


def kraus(ops) -> Kernel:
    ops = [np.asarray(a, dtype=complex) for a in ops]
    if not ops:
        raise ValueError("need at least one Kraus operator")
    return Kernel.from_tensor(sum(kernel_outer(a, dagger(a)) for a in ops))


def depolarizing(d: int, p: float) -> Kernel:
    """``rho -> (1 - p) rho + p Tr(rho) I / d``."""
    eye = np.eye(d)
    k4 = (1 - p) * kernel_outer(eye, eye) + (p / d) * np.einsum("ac,bd->abcd", eye, eye)
    return Kernel.from_tensor(k4)


def dephasing(p: float) -> Kernel:
    """Qubit ``rho -> (1 - p) rho + p sigma_z rho sigma_z``."""
    z = np.diag([1.0, -1.0])
    return kraus([np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * z])


# Positions of the triplet (b1, b2, b3) in the 3x3 layout
#   [[a1, b3, b2*], [b3*, a2, b1], [b2, b1*, a3]]
SU3_TRIPLET = ((1, 2), (2, 0), (0, 1))


def _su3_tensor(u: np.ndarray, diag_weight: float = 1.0) -> np.ndarray:
    k4 = np.zeros((3, 3, 3, 3), dtype=complex)
    for a in range(3):
        k4[a, a, a, a] = diag_weight
    for j, (rj, cj) in enumerate(SU3_TRIPLET):
        for k, (rk, ck) in enumerate(SU3_TRIPLET):
            k4[rj, rk, cj, ck] = u[j, k]
            k4[cj, ck, rj, rk] = np.conj(u[j, k])
    return k4


def su3_example(u: np.ndarray) -> Kernel:
    """SU(3) acting as 3 + 3bar + 1 + 1 + 1 on 3x3 density matrices.

    The diagonal is fixed and the triplet ``(b1, b2, b3)`` (see
    :data:`SU3_TRIPLET`) is multiplied by ``u``.  Not of the form
    ``rho -> V rho V^dagger`` unless ``u`` is the identity.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (3, 3):
        raise ValueError(f"su3_example needs a 3x3 matrix, got {u.shape}")
    if np.max(np.abs(dagger(u) @ u - np.eye(3))) > CHECK_TOL:
        raise ValueError("su3_example: matrix is not unitary")
    if abs(np.linalg.det(u) - 1) > CHECK_TOL:
        raise ValueError("su3_example: determinant is not 1")
    return Kernel.from_tensor(_su3_tensor(u))


def su3_derivative(generator: np.ndarray) -> Kernel:
    """Exact derivative of ``su3_example(expm(eps * generator))`` at ``eps = 0``.

    The kernel is linear in the matrix entries, so the derivative has the same
    shape with the diagonal part removed.
    """
    return Kernel.from_tensor(_su3_tensor(np.asarray(generator, dtype=complex), diag_weight=0.0))


def su3_layout(a, b) -> np.ndarray:
    """Assemble the 3x3 matrix with diagonal ``a`` and triplet ``b``."""
    rho = np.diag(np.asarray(a, dtype=complex))
    for bj, (r, c) in zip(b, SU3_TRIPLET):
        rho[r, c] = bj
        rho[c, r] = np.conj(bj)
    return rho


def su3_split(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rho = np.asarray(rho)
    return np.real(np.diag(rho)).copy(), np.array([rho[r, c] for r, c in SU3_TRIPLET])


def su3_class_margin(rho: np.ndarray) -> float:
    """``a1 a2 a3 / 4 - |b|^2``; nonnegative (with ``a >= 0``) inside the restricted class."""
    a, b = su3_split(rho)
    return float(np.prod(a) / 4 - np.sum(np.abs(b) ** 2))


def sample_su3_class(rng: np.random.Generator) -> np.ndarray:
    """Random member of ``{|b1|^2 + |b2|^2 + |b3|^2 <= a1 a2 a3 / 4}``.

    About one draw in eight lands exactly on the boundary.
    """
    a = rng.dirichlet(np.ones(3))
    direction = la.random_state_vector(3, rng)
    frac = 1.0 if rng.random() < 0.125 else rng.random()
    radius = np.sqrt(frac * np.prod(a) / 4)
    return su3_layout(a, radius * direction)


def builtin(name: str, **params) -> Kernel:
    """Named kernels: identity, transpose, unitary, kraus, su3_example,
    depolarizing, dephasing."""
    table = {
        "identity": lambda: identity(params["d"]),
        "transpose": lambda: transpose(params["d"]),
        "unitary": lambda: unitary(params["u"]),
        "kraus": lambda: kraus(params["ops"]),
        "su3_example": lambda: su3_example(params["u"]),
        "depolarizing": lambda: depolarizing(params["d"], params["p"]),
        "dephasing": lambda: dephasing(params["p"]),
    }
    if name not in table:
        raise ValueError(f"unknown builtin kernel {name!r}")
    return table[name]()


def random_kernel(d: int, rng: np.random.Generator) -> Kernel:
    """Random Hermiticity- and trace-preserving kernel, generally not positive."""
    h = la.random_hermitian(d * d, rng) / d
    defect = np.eye(d) - la.partial_trace(h, "first", d, d)
    return Kernel(h + np.kron(np.eye(d), defect) / d)


def random_channel(d: int, rng: np.random.Generator, rank: int | None = None) -> Kernel:
    """Random Kraus-form channel from a random isometry ``C^d -> C^d (x) C^rank``."""
    rank = d if rank is None else rank
    g = la.complex_normal(rng, (rank * d, d))
    q, _ = np.linalg.qr(g)
    return kraus(list(q.reshape(rank, d, d)))


# --- action and algebra -----------------------------------------------------


def apply(k: Kernel, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    d = k.d
    if rho.shape != (d, d):
        raise ValueError(f"kernel acts on {d}x{d} matrices, got {rho.shape}")
    return (k.transfer @ rho.reshape(-1)).reshape(d, d)


def apply_index(k: Kernel, rho: np.ndarray) -> np.ndarray:
    """Same as :func:`apply`, summing the four-index form directly."""
    return np.einsum("abcd,bd->ac", k.tensor, np.asarray(rho))


def compose(k1: Kernel, k2: Kernel) -> Kernel:
    """Kernel of ``rho -> k1(k2(rho))``."""
    if k1.d != k2.d:
        raise ValueError(f"dimension mismatch: {k1.d} vs {k2.d}")
    return Kernel.from_transfer(k1.transfer @ k2.transfer)


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residual: float
    trace_residual: float
    tol: float = CHECK_TOL

    @property
    def hermiticity_ok(self) -> bool:
        return self.hermiticity_residual <= self.tol

    @property
    def trace_ok(self) -> bool:
        return self.trace_residual <= self.tol

    @property
    def passed(self) -> bool:
        return self.hermiticity_ok and self.trace_ok


def trace_defect(k: Kernel) -> np.ndarray:
    """``sum_{M'} K[M', M, M', N] - delta(M, N)``; zero for trace-preserving kernels."""
    return np.einsum("abac->bc", k.tensor) - np.eye(k.d)


def validate(k: Kernel) -> ValidationReport:
    return ValidationReport(
        hermiticity_residual=la.hermiticity_residual(k.choi),
        trace_residual=float(np.max(np.abs(trace_defect(k)))),
    )


@dataclass(frozen=True)
class KernelSpectrum:
    """Eigenvalues ``etas`` (descending) and trace-orthonormal eigenmatrices."""

    etas: np.ndarray
    eigenmats: np.ndarray = field(repr=False)

    def kernel(self) -> Kernel:
        k4 = sum(eta * kernel_outer(u, dagger(u)) for eta, u in zip(self.etas, self.eigenmats))
        return Kernel.from_tensor(k4)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho)
        return np.einsum("i,iab,bc,idc->ad", self.etas, self.eigenmats, rho, self.eigenmats.conj())

    def trace_sum(self) -> np.ndarray:
        """``sum_i eta_i u_i^dagger u_i``; the identity for trace-preserving kernels."""
        return np.einsum("i,iba,ibc->ac", self.etas, self.eigenmats.conj(), self.eigenmats)

    def gram(self) -> np.ndarray:
        return np.einsum("iab,jab->ij", self.eigenmats.conj(), self.eigenmats)


def spectrum(k: Kernel) -> KernelSpectrum:
    d = k.d
    if la.hermiticity_residual(k.choi) > CHECK_TOL:
        raise ValueError("kernel does not preserve Hermiticity; choi matrix is not Hermitian")
    w, v = hermitian_eigen(k.choi, atol=CHECK_TOL)
    return KernelSpectrum(w, v.T.reshape(d * d, d, d))


def is_completely_positive(k: Kernel) -> tuple[bool, float]:
    eta_min = float(spectrum(k).etas[-1])
    return eta_min >= -CLAMP_TOL, eta_min


def to_kraus(k: Kernel) -> list[np.ndarray]:
    """Kraus operators ``sqrt(eta_i) u_i`` over the nonzero eigenvalues.

    Eigenvalues in ``[-1e-8, 0)`` are treated as rounding and dropped.
    """
    eig = spectrum(k)
    if eig.etas[-1] < -CLAMP_TOL:
        raise NegativeEigenvalue(
            f"kernel has eigenvalue {eig.etas[-1]:.6g}; it is not completely positive"
        )
    scale = max(1.0, float(eig.etas[0]))
    return [np.sqrt(eta) * u for eta, u in zip(eig.etas, eig.eigenmats) if eta > 1e-12 * scale]


# --- positivity --------------------------------------------------------------


@dataclass(frozen=True)
class PositivitySample:
    positive: bool
    worst_min_eigenvalue: float
    witness: np.ndarray | None = None
    trials: int = 0


def _default_sampler(trial: int, rng: np.random.Generator, d: int) -> np.ndarray:
    kind = trial % 3
    if kind == 0:
        return la.random_density(d, rng)
    if kind == 1:
        return la.random_null_density(la.random_state_vector(d, rng), rng)
    psi = la.random_state_vector(d, rng)
    return np.outer(psi, psi.conj())


def trial_rngs(seed, trials: int) -> list[np.random.Generator]:
    """One independent generator per trial, so results do not depend on scheduling.

    ``seed`` may be an integer, ``None`` (the default seed) or a generator,
    which is consumed once to draw the root seed.
    """
    if isinstance(seed, np.random.Generator):
        seed = int(seed.integers(2**63))
    ss = np.random.SeedSequence(la.DEFAULT_SEED if seed is None else seed)
    return [np.random.default_rng(s) for s in ss.spawn(trials)]


def is_positive_sampled(k: Kernel, trials: int = 1000, seed=None, sampler=None,
                        stop_at_witness: bool = False) -> PositivitySample:
    """Search for a density matrix whose image is not positive.

    By default cycles through full-rank, rank ``d - 1`` and pure samples.
    ``sampler(rng)`` overrides this.  A positive verdict is only evidence.
    """
    d = k.d
    worst = np.inf
    witness = None
    done = 0
    for t, rng in enumerate(trial_rngs(seed, trials)):
        rho = sampler(rng) if sampler is not None else _default_sampler(t, rng, d)
        m = min_eigenvalue(apply(k, rho))
        done += 1
        if m < worst:
            worst = m
            if m < -CHECK_TOL:
                witness = rho
        if stop_at_witness and witness is not None:
            break
    return PositivitySample(witness is None, float(worst), witness, done)


def check_projector_preserving(k: Kernel, trials: int = 100, seed=None) -> bool:
    """True iff every sampled rank-1 projector is mapped to a rank-1 projector."""
    d = k.d
    for rng in trial_rngs(seed, trials):
        psi = la.random_state_vector(d, rng)
        img = apply(k, np.outer(psi, psi.conj()))
        if np.max(np.abs(img @ img - img)) > CHECK_TOL or abs(np.trace(img) - 1) > CHECK_TOL:
            return False
    return True


# --- observables and the unitary-form theorem -------------------------------


def observable_pullback(k: Kernel, a: np.ndarray, seed=None,
                        max_condition: float = 1e12) -> tuple[np.ndarray, float]:
    """Observable ``g(A)`` with ``Tr(g(A) g(rho)) = Tr(A rho)`` for every ``rho``.

    Returns ``(g(A), condition number of the transfer matrix)``.
    """
    a = np.asarray(a, dtype=complex)
    d = k.d
    s = k.transfer
    cond = float(np.linalg.cond(s))
    if not np.isfinite(cond) or cond > max_condition:
        raise SingularKernel(f"transfer matrix is singular (condition number {cond:.3g})")
    # Tr(X Y) = vec(X^T) . vec(Y)
    ga = np.linalg.solve(s.T, a.T.reshape(-1)).reshape(d, d).T
    rng = la.make_rng(seed)
    for _ in range(20):
        rho = la.random_density(d, rng)
        lhs = np.trace(ga @ apply(k, rho))
        rhs = np.trace(a @ rho)
        if abs(lhs - rhs) > CHECK_TOL * max(1.0, cond):
            raise ContractViolation(f"pullback invariance fails by {abs(lhs - rhs):.3g}")
    return ga, cond


def fix_global_phase(u: np.ndarray) -> np.ndarray:
    """Rotate so the first (row-major) largest-modulus entry is real and positive."""
    u = np.asarray(u, dtype=complex)
    flat = u.reshape(-1)
    mags = np.abs(flat)
    idx = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    return u * (np.conj(flat[idx]) / mags[idx])


def unitary_form_test(k: Kernel, k_inv: Kernel, seed=None) -> np.ndarray | None:
    """Extract ``U`` with ``g(rho) = U rho U^dagger`` when ``k`` and its inverse are CP.

    Returns ``None`` when either kernel has a negative eigenvalue.  If both are
    completely positive the extraction must succeed; a failure raises
    :class:`ContractViolation`.
    """
    d = k.d
    round_trip = compose(k, k_inv).choi - identity(d).choi
    if np.max(np.abs(round_trip)) > CHECK_TOL:
        raise ValueError("k_inv is not the inverse of k")
    if not (is_completely_positive(k)[0] and is_completely_positive(k_inv)[0]):
        return None
    eig = spectrum(k)
    u = fix_global_phase(np.sqrt(eig.etas[0]) * eig.eigenmats[0])
    if np.max(np.abs(dagger(u) @ u - np.eye(d))) > CHECK_TOL:
        raise ContractViolation("completely positive invertible kernel did not yield a unitary")
    rng = la.make_rng(seed)
    for _ in range(10):
        rho = la.random_density(d, rng)
        if np.max(np.abs(apply(k, rho) - u @ rho @ dagger(u))) > CHECK_TOL:
            raise ContractViolation("extracted unitary does not reproduce the kernel")
    return u


def is_antiunitary_form(k: Kernel) -> bool:
    """True if ``g(rho) = U rho^T U^dagger`` for some unitary ``U`` (reported only)."""
    d = k.d
    flipped = compose(k, transpose(d))
    cp, _ = is_completely_positive(flipped)
    if not cp:
        return False
    etas = spectrum(flipped).etas
    return bool(abs(etas[0] - d) <= CHECK_TOL and np.all(np.abs(etas[1:]) <= CHECK_TOL))


# --- subsystems --------------------------------------------------------------


def factor_product(k1: Kernel, k2: Kernel) -> Kernel:
    """Kernel acting independently on two factors, compound index ``m * d2 + a``."""
    d1, d2 = k1.d, k2.d
    if d1 * d2 > MAX_DIM:
        raise ValueError(f"product dimension {d1 * d2} exceeds {MAX_DIM}")
    # [m', a', m, a, n', b', n, b] = K1[m', m, n', n] K2[a', a, b', b]
    t = np.einsum("pmqn,axby->pamxqbny", k1.tensor, k2.tensor)
    d = d1 * d2
    return Kernel.from_tensor(t.reshape(d, d, d, d))


def extend_with_ancilla(k: Kernel, d_second: int) -> Kernel:
    """``k`` on the first factor, identity on a ``d_second``-dimensional ancilla."""
    return factor_product(k, identity(d_second))


def factorize(k: Kernel, d_first: int, d_second: int, atol: float = 1e-9) -> tuple[Kernel, Kernel]:
    """Recover the two factors of a product of trace-preserving kernels."""
    d = k.d
    if d != d_first * d_second:
        raise ValueError(f"kernel dimension {d} != {d_first} * {d_second}")
    t = k.tensor.reshape((d_first, d_second) * 4)
    # t[m', a', m, a, n', b', n, b]; each factor is trace preserving, so tracing
    # the other factor's output at a fixed input index isolates it.
    first = np.einsum("pxmqxn->pmqn", t[:, :, :, 0, :, :, :, 0])
    second = np.einsum("xacxbd->acbd", t[:, :, 0, :, :, :, 0, :])
    k1 = Kernel.from_tensor(first)
    k2 = Kernel.from_tensor(second)
    if np.max(np.abs(factor_product(k1, k2).choi - k.choi)) > atol:
        raise NotFactorized("kernel is not a product of trace-preserving factors")
    return k1, k2


@dataclass(frozen=True)
class ReducedActionReport:
    max_deviation: float
    reduced_before: np.ndarray
    reduced_after: np.ndarray

    @property
    def passed(self) -> bool:
        return self.max_deviation <= 1e-9


def reduced_action(k_full: Kernel, rho_full: np.ndarray, d_first: int,
                   d_second: int) -> ReducedActionReport:
    """Compare ``Tr_2 g(rho)`` with the first factor acting on ``Tr_2 rho``."""
    k1, _ = factorize(k_full, d_first, d_second)
    after_full = la.partial_trace(apply(k_full, rho_full), "second", d_first, d_second)
    before = la.partial_trace(rho_full, "second", d_first, d_second)
    via_factor = apply(k1, before)
    return ReducedActionReport(float(np.max(np.abs(after_full - via_factor))), before, after_full)
