"""Realizing an ensemble of a subsystem by measuring its purifying partner.

Any two ensembles with the same density matrix are related by an
isometry ``V``; measuring the partner of a purification in the basis given
by the rows of ``V`` leaves the subsystem in the second ensemble.  Whatever
is measured, the outcome-averaged state of the subsystem does not change.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .exceptions import EnsembleMismatch
from .states import Ensemble, eigen_ensemble, from_ensemble

ISOMETRY_TOL = 1e-8


@dataclass(frozen=True)
class BipartitePureState:
    """Vector on ``I (x) II``; index ``m * d_II + a``."""

    d_I: int
    d_II: int
    psi: np.ndarray

    def __post_init__(self):
        psi = np.array(self.psi, dtype=complex).reshape(-1)
        if psi.size != self.d_I * self.d_II:
            raise ValueError(f"state has length {psi.size}, expected {self.d_I * self.d_II}")
        if abs(np.linalg.norm(psi) - 1) > la.ATOL:
            raise ValueError("bipartite state must have unit norm")
        psi.flags.writeable = False
        object.__setattr__(self, "psi", psi)

    @property
    def matrix(self) -> np.ndarray:
        return self.psi.reshape(self.d_I, self.d_II)

    def reduced(self) -> np.ndarray:
        m = self.matrix
        return m @ la.dagger(m)


@dataclass(frozen=True)
class SteeringMeasurement:
    """Orthogonal projectors on subsystem II summing to the identity."""

    projectors: tuple

    def __post_init__(self):
        ps = tuple(np.array(p, dtype=complex) for p in self.projectors)
        if not ps:
            raise ValueError("need at least one projector")
        d = ps[0].shape[0]
        for i, p in enumerate(ps):
            if p.shape != (d, d) or la.hermiticity_residual(p) > la.ATOL:
                raise ValueError("projectors must be Hermitian and of equal size")
            for j, q in enumerate(ps):
                target = p if i == j else np.zeros_like(p)
                if np.max(np.abs(p @ q - target)) > la.ATOL:
                    raise ValueError("projectors are not mutually orthogonal idempotents")
            p.flags.writeable = False
        if np.max(np.abs(sum(ps) - np.eye(d))) > la.ATOL:
            raise ValueError("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @classmethod
    def from_vectors(cls, vectors) -> "SteeringMeasurement":
        """Rank-one projectors on orthonormal ``vectors``, plus the complement if needed."""
        vs = np.atleast_2d(np.asarray(vectors, dtype=complex))
        ps = [np.outer(v, v.conj()) for v in vs]
        rest = np.eye(vs.shape[1]) - sum(ps)
        if np.max(np.abs(rest)) > la.ATOL:
            ps.append(rest)
        return cls(tuple(ps))

    @classmethod
    def computational(cls, d: int) -> "SteeringMeasurement":
        return cls.from_vectors(np.eye(d))


def _amplitudes(e: Ensemble, w: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """``A[i, r] = w_i^dagger sqrt(P_r) psi_r / sqrt(lambda_i)``."""
    return (w.conj().T @ (np.sqrt(e.probs)[:, None] * e.states).T) / np.sqrt(lam)[:, None]


def ensemble_relation_isometry(e1: Ensemble, e2: Ensemble, cutoff: float = 1e-12) -> np.ndarray:
    """``V`` with ``sqrt(Q_s) phi_s = sum_r V[s, r] sqrt(P_r) psi_r``.

    ``V`` has shape ``(len(e2), len(e1))`` and ``V^dagger V`` is the identity on
    the support of ``e1``'s amplitudes.
    """
    rho1 = from_ensemble(e1)
    rho2 = from_ensemble(e2)
    if rho1.shape != rho2.shape:
        raise EnsembleMismatch("ensembles live in different dimensions")
    dev = float(np.max(np.abs(rho1 - rho2)))
    if dev > 1e-8:
        raise EnsembleMismatch(f"density matrices differ by {dev:.3g}")
    lam, w = la.hermitian_eigen(0.5 * (rho1 + rho2))
    keep = lam > cutoff
    lam, w = lam[keep], w[:, keep]
    a = _amplitudes(e1, w, lam)
    b = _amplitudes(e2, w, lam)
    v = b.T @ a.conj()
    lhs = np.sqrt(e2.probs)[:, None] * e2.states
    rhs = v @ (np.sqrt(e1.probs)[:, None] * e1.states)
    res = float(np.max(np.abs(lhs - rhs)))
    if res > ISOMETRY_TOL:
        raise EnsembleMismatch(f"isometry reproduces the target ensemble only to {res:.3g}")
    return v


def measurement_from_isometry(v: np.ndarray) -> SteeringMeasurement:
    """Measurement on the ancilla of :func:`~dmsym.states.purify_with_ensemble` realizing ``V``.

    Outcome ``s`` projects on ``conj(V[s, :])``; the complement (if any) has
    probability zero.  Requires ``V V^dagger = I``, which holds when the target
    ensemble has no more members than the rank of the state.
    """
    v = np.asarray(v)
    if np.max(np.abs(v @ la.dagger(v) - np.eye(v.shape[0]))) > ISOMETRY_TOL:
        raise ValueError("target ensemble is larger than the rank; a projective "
                         "measurement on this ancilla cannot realize it")
    return SteeringMeasurement.from_vectors(v.conj())


def steer(psi: BipartitePureState, m: SteeringMeasurement, cutoff: float = 1e-12) -> list[tuple[float, np.ndarray]]:
    """Outcome probabilities and conditional states of subsystem I.

    Outcomes with probability at most ``cutoff`` are left out.
    """
    if m.dim != psi.d_II:
        raise ValueError(f"measurement acts on dimension {m.dim}, subsystem II has {psi.d_II}")
    out = []
    for p in m.projectors:
        x = psi.matrix @ p.T
        rho = x @ la.dagger(x)
        prob = float(np.trace(rho).real)
        if prob > cutoff:
            out.append((prob, rho / prob))
    return out


def average_state(outcomes) -> np.ndarray:
    return sum(p * rho for p, rho in outcomes)


@dataclass(frozen=True)
class NonsignalingReport:
    outcomes1: list
    outcomes2: list
    reduced: np.ndarray
    deviation: float
    deviation_from_reduced: float

    @property
    def passed(self) -> bool:
        return max(self.deviation, self.deviation_from_reduced) <= 1e-10


def nonsignaling_check(psi: BipartitePureState, m1: SteeringMeasurement,
                       m2: SteeringMeasurement) -> NonsignalingReport:
    o1 = steer(psi, m1)
    o2 = steer(psi, m2)
    a1, a2 = average_state(o1), average_state(o2)
    red = psi.reduced()
    dev = float(np.max(np.abs(a1 - a2)))
    dev_red = max(float(np.max(np.abs(a1 - red))), float(np.max(np.abs(a2 - red))))
    return NonsignalingReport(o1, o2, red, dev, dev_red)


# --- ensembles sharing a density matrix ------------------------------------------


@dataclass(frozen=True)
class Alignment:
    ensemble: Ensemble
    prob_adjustment: float
    state_adjustment: float


def align_eigen_ensemble(e: Ensemble, rho: np.ndarray) -> Alignment:
    """Move ``e`` minimally onto the eigen-ensemble of ``rho``.

    Each member is paired with the eigenvector it overlaps most, with the
    member's phase kept.  Reports the largest change in probability and in
    state vector.  ``e`` must have exactly ``rank(rho)`` members.
    """
    target = eigen_ensemble(rho)
    if len(target) != len(e):
        raise EnsembleMismatch(f"ensemble has {len(e)} members but the state has rank {len(target)}")
    overlap = np.abs(e.states.conj() @ target.states.T)
    order = np.argmax(overlap, axis=1)
    if len(set(order.tolist())) != len(e):
        raise EnsembleMismatch("ensemble members do not pair up with distinct eigenvectors")
    states = []
    for r, i in enumerate(order):
        w = target.states[i]
        ph = np.vdot(w, e.states[r])
        states.append(w * ph / abs(ph))
    states = np.array(states)
    probs = target.probs[order]
    aligned = Ensemble(probs, states)
    return Alignment(
        aligned,
        float(np.max(np.abs(probs - e.probs))),
        float(np.max(np.linalg.norm(states - e.states, axis=1))),
    )


def random_ensemble_for(rho: np.ndarray, k: int, rng: np.random.Generator) -> Ensemble:
    """A ``k``-member ensemble of ``rho`` built from a random isometry applied to its eigen-ensemble."""
    base = eigen_ensemble(rho)
    rank = len(base)
    if k < rank:
        raise ValueError(f"need at least rank = {rank} members")
    w, _ = np.linalg.qr(la.complex_normal(rng, (k, rank)))
    amps = w @ (np.sqrt(base.probs)[:, None] * base.states)
    probs = np.linalg.norm(amps, axis=1) ** 2
    return Ensemble(probs / probs.sum(), amps / np.sqrt(probs)[:, None])
