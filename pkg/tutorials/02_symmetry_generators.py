"""
Infinitesimal symmetries and the group law
==========================================

A symmetry near the identity is described by Hermitian ``T_r`` and, per
direction, noise terms ``(Delta, u)``.  The commutator part of the group
law ties these to the structure constants.
"""

import numpy as np
from scipy.linalg import expm

from dmsym import channels as ch
from dmsym import generators as gen

rng = np.random.default_rng(2)

# Spin-1/2 rotations satisfy the constraint exactly; flipping the sign of
# the structure constants breaks it.
su2 = gen.su2_generator()
n, nbar = rng.standard_normal(3), rng.standard_normal(3)
print("su(2) residual:", gen.group_residual(su2, n, nbar))
flipped = gen.SymmetryGenerator(su2.T, su2.noise, su2.sc.negated())
print("flipped residual:", gen.group_residual(flipped, n, nbar))

# The SU(3) kernel family read off from its exact first derivatives.  It
# carries nonzero noise, yet the constraint still holds.
su3 = gen.su3_generator()
print("SU(3) noise coefficients:", np.round([d for d, _ in su3.noise(rng.standard_normal(8))], 6))
print("SU(3) residual:", gen.group_residual(su3, rng.standard_normal(8), rng.standard_normal(8)))

# The family is unitary on vectorized density matrices, so theta vanishes
# and I/3 is invariant.
family = lambda p: ch.su3_example(expm(-1j * np.einsum("a,aij->ij", p, gen.gell_mann() / 2)))
print(gen.compact_checks(family, su3, samples=10))

# A commuting example: everything diagonal.  The constraint is empty, but
# any nonzero Delta lets positivity fail at first order in one direction.
s = 1 / np.sqrt(2)
diag = gen.build_commuting(2, [1.0, -1.0], [[s, -s]], [1.0])
print("multiplier of rho_01:", gen.commuting_multiplier(diag, [1.0])[0, 1])
wit = gen.positivity_probe(diag, [1.0])
print("probe witness: eps sign", wit.eps_sign, " min eigenvalue", wit.min_eigenvalue)

# Only the traceless part of u is meaningful; shifting u by a multiple of
# the identity can be absorbed into T.
u = np.diag([s, -s]) + 0.3 * np.eye(2)
g = gen.SymmetryGenerator.from_unit_noise([np.diag([0.2, -0.2])], [[(0.8, u)]], gen.StructureConstants.abelian(1))
gc = gen.canonicalize(g)
rho = np.array([[0.6, 0.2j], [-0.2j, 0.4]])
print("action change after canonicalize:",
      np.abs(gen.generator_action(g, [1.0], rho) - gen.generator_action(gc, [1.0], rho)).max())
