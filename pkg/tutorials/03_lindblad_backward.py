"""
Time translation is only a semigroup
====================================

Forward Lindblad evolution keeps density matrices positive.  Running the
same equation backward does not.
"""

import math

import numpy as np

from dmsym import lindblad as lb

rho0 = np.array([[0.5, 0.4], [0.4, 0.5]], dtype=complex)
deph = lb.dephasing(1.0)

# Forward: the coherence decays as exp(-2 t).
traj = lb.integrate(deph, rho0, 2.0, 1e-3)
print("rho_01 at t = 2:", traj.final[0, 1].real, " closed form:", 0.4 * math.exp(-4))
print("smallest eigenvalue along the way:", traj.min_eigenvalues().min())

# Backward: the coherence grows until it exceeds the populations.
t = lb.backward_breakdown(deph, rho0, 1.0, 1e-3)
print("backward breakdown after", t, " closed form:", math.log(1.25) / 2)

# Amplitude damping from a mostly-ground state breaks down after ln 10.
t = lb.backward_breakdown(lb.amplitude_damping(1.0), np.diag([0.9, 0.1]).astype(complex), 5.0, 1e-3)
print("amplitude damping breakdown:", t, " closed form:", math.log(10))

# A purely Hamiltonian generator is a group: no breakdown either way.
print("Hamiltonian:", lb.backward_breakdown(lb.LindbladGenerator(np.diag([0.5, -0.5]), ()), rho0, 2.0, 1e-2))
