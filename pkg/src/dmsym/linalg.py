"""Dense complex linear algebra used throughout the package.

Index convention: a pair ``(P, Q)`` of 0-based indices over a ``d``-dimensional
space is flattened to ``P * d + Q`` (row-major).  Kernels carry four indices
``K[M', M, N', N]``; see :mod:`dmsym.channels` for the two matrix layouts.
"""

from __future__ import annotations

import numpy as np

ATOL = 1e-10
EXACT_ATOL = 1e-12

DEFAULT_SEED = 0xD15EA5E


def flatten_index(p: int, q: int, d: int) -> int:
    return p * d + q


def unflatten_index(k: int, d: int) -> tuple[int, int]:
    return divmod(k, d)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_residual(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - dagger(a)))) if a.size else 0.0


def is_hermitian(a: np.ndarray, atol: float = ATOL) -> bool:
    return hermiticity_residual(a) <= atol


def vec(a: np.ndarray) -> np.ndarray:
    """Row-major vectorization, ``vec(a)[P*d + Q] = a[P, Q]``."""
    return np.asarray(a).reshape(-1)


def unvec(v: np.ndarray, d: int | None = None) -> np.ndarray:
    v = np.asarray(v).reshape(-1)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ValueError(f"cannot reshape vector of length {v.size} to a square matrix")
    return v.reshape(d, d)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``(A (x) B)[(m, a), (n, b)] = A[m, n] * B[a, b]`` with the left index major."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(m: np.ndarray, subsystem: str, d_first: int, d_second: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``subsystem="second"`` gives ``rho1[m, n] = sum_a M[(m, a), (n, a)]``;
    ``subsystem="first"`` is the mirror image.
    """
    m = np.asarray(m)
    side = d_first * d_second
    if m.shape != (side, side):
        raise ValueError(
            f"expected a {side}x{side} matrix for dims ({d_first}, {d_second}), got {m.shape}"
        )
    t = m.reshape(d_first, d_second, d_first, d_second)
    if subsystem == "second":
        return np.trace(t, axis1=1, axis2=3)
    if subsystem == "first":
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError(f"subsystem must be 'first' or 'second', not {subsystem!r}")


def hermitian_eigen(a: np.ndarray, atol: float = ATOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order and orthonormal eigenvector columns.

    Degenerate eigenspaces come back in whatever basis LAPACK picks; callers
    must not rely on it.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    res = hermiticity_residual(a)
    if res > atol * scale:
        raise ValueError(f"matrix is not Hermitian (residual {res:.3g})")
    herm = 0.5 * (a + dagger(a))
    w, v = np.linalg.eigh(herm)
    return w[::-1].copy(), v[:, ::-1].copy()


def min_eigenvalue(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.linalg.eigvalsh(0.5 * (a + dagger(a)))[0])


def kernel_outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Four-index array ``[A (x) B][M', M, N', N] = A[M', M] * B[N, N']``.

    Acting with it on ``rho`` through ``g(rho)[M', N'] = sum K[M', M, N', N] rho[M, N]``
    gives ``A @ rho @ B``.  Returned with shape ``(d, d, d, d)``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(f"kernel_outer needs equal square matrices, got {a.shape} and {b.shape}")
    return np.einsum("ij,lk->ijkl", a, b)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


# --- seeded sampling ---------------------------------------------------------


def make_rng(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = complex_normal(rng, (d, d))
    return g + dagger(g)


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    w = complex_normal(rng, (d, d if rank is None else rank))
    rho = w @ dagger(w)
    return rho / np.trace(rho).real


def random_state_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = complex_normal(rng, d)
    return v / np.linalg.norm(v)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary (QR of a Ginibre matrix with the phase fix)."""
    q, r = np.linalg.qr(complex_normal(rng, (d, d)))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_special_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    u = random_unitary(d, rng)
    return u / np.linalg.det(u) ** (1.0 / d)


def random_null_density(v: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random density matrix of rank ``d - 1`` whose kernel is spanned by ``v``."""
    v = np.asarray(v).reshape(-1)
    d = v.size
    proj = np.eye(d) - np.outer(v, v.conj()) / np.vdot(v, v).real
    w = proj @ complex_normal(rng, (d, d))
    rho = w @ dagger(w)
    return rho / np.trace(rho).real
