"""Density matrices, ensembles, observables and purifications.

Density matrices and observables are plain ``numpy`` arrays; use
:func:`check_density` / :func:`check_observable` where the invariants matter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ATOL, hermitian_eigen, hermiticity_residual, partial_trace

PROB_SUM_TOL = 1e-8


def check_density(rho: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Return ``rho`` as a complex array, raising if it is not a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if hermiticity_residual(rho) > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real:.12g}, not 1")
    if np.linalg.eigvalsh(rho)[0] < -atol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def check_observable(a: np.ndarray, atol: float = ATOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"observable must be square, got shape {a.shape}")
    if hermiticity_residual(a) > atol:
        raise ValueError("observable is not Hermitian")
    return a


@dataclass(frozen=True)
class Ensemble:
    """Probabilities ``P_r`` attached to unit vectors ``psi_r`` (rows of ``states``).

    States need not be orthogonal or distinct.
    """

    probs: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float).reshape(-1)
        states = np.asarray(self.states, dtype=complex)
        if states.ndim != 2 or states.shape[0] != probs.size:
            raise ValueError("need one state vector per probability")
        if np.any(probs < 0) or np.any(probs > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        norms = np.linalg.norm(states, axis=1)
        if np.max(np.abs(norms - 1)) > ATOL:
            raise ValueError("ensemble states must have unit norm")
        probs.flags.writeable = False
        states.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def __len__(self) -> int:
        return self.probs.size

    @classmethod
    def from_pairs(cls, pairs) -> "Ensemble":
        probs, states = zip(*pairs)
        return cls(np.array(probs, dtype=float), np.array([np.ravel(s) for s in states]))


def from_ensemble(e: Ensemble) -> np.ndarray:
    """``rho = sum_r P_r psi_r psi_r^dagger``."""
    total = float(np.sum(e.probs))
    if abs(total - 1) > PROB_SUM_TOL:
        raise ValueError(f"ensemble probabilities sum to {total:.12g}")
    return np.einsum("r,ri,rj->ij", e.probs, e.states, e.states.conj())


def expectation(rho: np.ndarray, a: np.ndarray) -> float:
    """Mean value ``Tr(A rho)``; the imaginary residue must be negligible."""
    rho = np.asarray(rho)
    a = np.asarray(a)
    if rho.shape != a.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {a.shape}")
    val = np.trace(a @ rho)
    if abs(val.imag) > ATOL * max(1.0, abs(val.real)):
        raise ValueError(f"Tr(A rho) has imaginary part {val.imag:.3g}; inputs not Hermitian?")
    return float(val.real)


def definite_value(rho: np.ndarray, a: np.ndarray, atol: float = 1e-8) -> float | None:
    """The value ``alpha`` if ``A rho = alpha rho``, else ``None``."""
    rho = np.asarray(rho)
    a = np.asarray(a)
    if rho.shape != a.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {a.shape}")
    alpha = expectation(rho, a)
    if np.linalg.norm(a @ rho - alpha * rho) <= atol:
        return alpha
    return None


def purify_with_ensemble(e: Ensemble) -> np.ndarray:
    """Bipartite vector ``sum_r sqrt(P_r) psi_r (x) e_r`` of length ``d * k``.

    Tracing out the ``k``-dimensional second factor gives back
    :func:`from_ensemble`.
    """
    k = len(e)
    psi = np.zeros((e.dim, k), dtype=complex)
    for r in range(k):
        psi[:, r] = np.sqrt(e.probs[r]) * e.states[r]
    return psi.reshape(-1)


def reduced_state(psi: np.ndarray, d_first: int, d_second: int) -> np.ndarray:
    psi = np.asarray(psi).reshape(-1)
    return partial_trace(np.outer(psi, psi.conj()), "second", d_first, d_second)


def eigen_ensemble(rho: np.ndarray, cutoff: float = 1e-12) -> Ensemble:
    """Ensemble of eigenvectors of ``rho`` with their (nonzero) eigenvalues."""
    w, v = hermitian_eigen(rho)
    keep = w > cutoff
    probs = np.clip(w[keep], 0, None)
    return Ensemble(probs / probs.sum(), v[:, keep].T)


# --- spin-1/2 helpers --------------------------------------------------------

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)


def bloch_density(r) -> np.ndarray:
    """``(I + r . sigma) / 2``."""
    rx, ry, rz = r
    return 0.5 * (np.eye(2) + rx * PAULI_X + ry * PAULI_Y + rz * PAULI_Z)


def spin_state(theta: float, phi: float = 0.0) -> np.ndarray:
    """Spin-up state along the direction with polar angle ``theta`` from north (+z)."""
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


NORTH = spin_state(0.0)
SOUTH = spin_state(np.pi)
EAST = spin_state(np.pi / 2)
NORTHEAST = spin_state(np.pi / 4)
SOUTHWEST = spin_state(np.pi / 4 + np.pi)


def spin_ensembles() -> tuple[Ensemble, Ensemble]:
    """The two spin-1/2 ensembles of the worked example.

    First: 75% northeast, 25% southwest.  Second: 50% north, 15% south,
    35% east.  They agree only to about 2e-3.
    """
    e1 = Ensemble.from_pairs([(0.75, NORTHEAST), (0.25, SOUTHWEST)])
    e2 = Ensemble.from_pairs([(0.50, NORTH), (0.15, SOUTH), (0.35, EAST)])
    return e1, e2


ROUNDED_SPIN_MATRIX = np.array([[0.69, 0.17], [0.17, 0.31]])
