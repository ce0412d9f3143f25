"""Time translation as a one-parameter semigroup: the Lindblad equation.

``d rho / dt = -i [H, rho] + sum_a (L_a rho L_a^dagger - {L_a^dagger L_a, rho} / 2)``

Integration is classical fixed-step RK4.  Every step is also redone as two
half steps; if the two disagree by more than ``STEP_TOL`` the run stops
with :class:`StepTooLarge`.  Nothing is renormalized, so trace drift is a
genuine correctness signal.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import linalg as la
from .exceptions import NegativeDelta, StepTooLarge
from .linalg import anticommutator, commutator, dagger

STEP_TOL = 1e-6
BREAKDOWN_LEVEL = -1e-8


@dataclass(frozen=True)
class LindbladGenerator:
    H: np.ndarray
    jumps: tuple

    def __post_init__(self):
        h = np.array(self.H, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"H must be square, got {h.shape}")
        if la.hermiticity_residual(h) > la.ATOL:
            raise ValueError("H is not Hermitian")
        jumps = tuple(np.array(j, dtype=complex) for j in self.jumps)
        for j in jumps:
            if j.shape != h.shape:
                raise ValueError(f"jump operator shape {j.shape} does not match H {h.shape}")
            j.flags.writeable = False
        h.flags.writeable = False
        object.__setattr__(self, "H", h)
        object.__setattr__(self, "jumps", jumps)

    @property
    def d(self) -> int:
        return self.H.shape[0]


def from_generator(g, n_t, atol: float = 1e-10) -> LindbladGenerator:
    """``H = -n_T . T`` and ``L_a = sqrt(Delta_a) u_a`` along the time direction ``n_T``."""
    terms = g.noise(g.direction(n_t))
    jumps = []
    for delta, u in terms:
        if delta < -atol:
            raise NegativeDelta(f"Delta = {delta:.6g} < 0 along this direction; not a forward semigroup")
        jumps.append(np.sqrt(max(delta, 0.0)) * u)
    return LindbladGenerator(-g.n_dot_t(n_t), tuple(jumps))


def dephasing(gamma: float) -> LindbladGenerator:
    from .states import PAULI_Z

    return LindbladGenerator(np.zeros((2, 2)), (np.sqrt(gamma) * PAULI_Z,))


def amplitude_damping(gamma: float) -> LindbladGenerator:
    from .states import SIGMA_MINUS

    return LindbladGenerator(np.zeros((2, 2)), (np.sqrt(gamma) * SIGMA_MINUS,))


def random_generator(d: int, rng: np.random.Generator, n_jumps: int = 2) -> LindbladGenerator:
    h = la.random_hermitian(d, rng) / 2
    jumps = tuple(la.complex_normal(rng, (d, d)) / np.sqrt(d) for _ in range(n_jumps))
    return LindbladGenerator(h, jumps)


def rhs(gen: LindbladGenerator, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.shape != gen.H.shape:
        raise ValueError(f"expected a {gen.d}x{gen.d} matrix, got {rho.shape}")
    out = -1j * commutator(gen.H, rho)
    for j in gen.jumps:
        jd = dagger(j)
        out = out + j @ rho @ jd - 0.5 * anticommutator(jd @ j, rho)
    return out


def rk4_step(gen: LindbladGenerator, rho: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(gen, rho)
    k2 = rhs(gen, rho + 0.5 * h * k1)
    k3 = rhs(gen, rho + 0.5 * h * k2)
    k4 = rhs(gen, rho + h * k3)
    return rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _steps(gen: LindbladGenerator, rho0: np.ndarray, t: float, dt: float) -> Iterator[tuple[float, np.ndarray]]:
    if not dt > 0:
        raise ValueError("dt must be positive")
    rho = np.array(rho0, dtype=complex)
    if rho.shape != gen.H.shape:
        raise ValueError(f"expected a {gen.d}x{gen.d} initial state, got {rho.shape}")
    n = math.ceil(abs(t) / dt) if t else 0
    h = t / n if n else 0.0
    yield 0.0, rho
    for i in range(1, n + 1):
        full = rk4_step(gen, rho, h)
        half = rk4_step(gen, rk4_step(gen, rho, h / 2), h / 2)
        err = float(np.max(np.abs(full - half)))
        if err > STEP_TOL:
            raise StepTooLarge(f"step error estimate {err:.3g} at t = {(i - 1) * h:.6g}; reduce dt")
        rho = full
        yield i * h, rho


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution; iterates as ``(time, rho)`` pairs."""

    times: np.ndarray
    states: np.ndarray

    def __len__(self) -> int:
        return self.times.size

    def __iter__(self):
        return iter(zip(self.times, self.states))

    def __getitem__(self, i):
        return self.times[i], self.states[i]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def min_eigenvalues(self) -> np.ndarray:
        return np.array([la.min_eigenvalue(r) for r in self.states])

    def traces(self) -> np.ndarray:
        return np.einsum("tii->t", self.states)


def integrate(gen: LindbladGenerator, rho0: np.ndarray, t: float, dt: float) -> Trajectory:
    """Integrate from 0 to ``t`` (negative ``t`` runs backward) in steps of at most ``dt``."""
    times, states = zip(*_steps(gen, rho0, t, dt))
    return Trajectory(np.array(times), np.array(states))


def backward_breakdown(gen: LindbladGenerator, rho0: np.ndarray, t_max: float, dt: float) -> float | None:
    """Elapsed backward time at which the smallest eigenvalue first drops below ``-1e-8``.

    Located by linear interpolation between the bracketing steps.  ``None``
    if positivity survives the whole interval ``[-t_max, 0]``.
    """
    prev_t, prev_m = None, None
    for time, rho in _steps(gen, rho0, -abs(t_max), dt):
        m = la.min_eigenvalue(rho)
        if m < BREAKDOWN_LEVEL:
            if prev_t is None:
                return 0.0
            frac = (prev_m - BREAKDOWN_LEVEL) / (prev_m - m)
            return abs(prev_t + frac * (time - prev_t))
        prev_t, prev_m = time, m
    return None


def write_trajectory_csv(traj: Trajectory, fh) -> None:
    """Columns: time, trace_re, min_eig, then re/im of each entry in row-major order."""
    d = traj.states.shape[1]
    w = csv.writer(fh, lineterminator="\n")
    header = ["time", "trace_re", "min_eig"]
    for p in range(d):
        for q in range(d):
            header += [f"re_{p}_{q}", f"im_{p}_{q}"]
    w.writerow(header)
    for time, rho in traj:
        row = [time, np.trace(rho).real, la.min_eigenvalue(rho)]
        for z in rho.reshape(-1):
            row += [z.real, z.imag]
        w.writerow([f"{x:.12g}" for x in row])
