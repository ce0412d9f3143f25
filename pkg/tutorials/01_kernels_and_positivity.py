"""
Kernels acting on density matrices
==================================

A kernel is any linear map on density matrices.  Here we build a few,
look at their eigenvalues and see which ones are completely positive.
"""

import numpy as np

from dmsym import channels as ch
from dmsym import linalg as la

rng = np.random.default_rng(1)

# A unitary conjugation has a single nonzero eigenvalue, equal to d.
u = la.random_unitary(3, rng)
print("unitary kernel eigenvalues:", np.round(ch.spectrum(ch.unitary(u)).etas, 12) + 0.0)

# The transpose keeps every density matrix positive ...
t = ch.transpose(2)
print("transpose positive on samples:", ch.is_positive_sampled(t, trials=500).positive)

# ... but one of its eigenvalues is negative, so it is not completely positive.
print("transpose eigenvalues:", ch.spectrum(t).etas)

# The negative eigenvalue shows up once the transpose acts on half of an
# entangled pair.
bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
img = ch.apply(ch.extend_with_ancilla(t, 2), np.outer(bell, bell))
print("extended transpose on a Bell pair:", np.round(np.linalg.eigvalsh(img), 12))

# A random Kraus-form channel: every eigenvalue is nonnegative and the
# Kraus operators rebuild the kernel.
k = ch.random_channel(3, rng, rank=2)
ops = ch.to_kraus(k)
print("Kraus rank:", len(ops), " rebuild error:", np.abs(ch.kraus(ops).choi - k.choi).max())

# The SU(3) example: a faithful representation whose kernel is not of the
# form rho -> V rho V^dagger.  It has negative eigenvalues and sends some
# positive matrices outside the positive cone.
k3 = ch.su3_example(la.random_special_unitary(3, rng))
print("SU(3) kernel CP:", ch.is_completely_positive(k3))
hit = ch.is_positive_sampled(k3, trials=10_000, stop_at_witness=True)
print("witness found after", hit.trials, "trials; image min eigenvalue", hit.worst_min_eigenvalue)

# Inside the restricted class |b|^2 <= a1 a2 a3 / 4 nothing goes wrong.
inside = ch.is_positive_sampled(k3, trials=2000, sampler=ch.sample_su3_class)
print("restricted class positive:", inside.positive)
