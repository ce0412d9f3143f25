"""
Choosing an ensemble from far away
==================================

Two ensembles with the same density matrix cannot be told apart.  With a
purification, a measurement on the partner system selects either one, and
the averaged state of the first system never changes.
"""

import numpy as np

from dmsym import states as st
from dmsym import steering as sr

e_two, e_three = st.spin_ensembles()
rho = st.from_ensemble(e_three)
print("three-member ensemble gives\n", rho)
print("two-member ensemble gives\n", st.from_ensemble(e_two))

# The stated probabilities do not give exactly the same matrix.  Move the
# two-member ensemble onto the eigenvectors of rho and report the change.
al = sr.align_eigen_ensemble(e_two, rho)
print("probability adjustment:", al.prob_adjustment, " state adjustment:", al.state_adjustment)

# Purify the three-member ensemble and measure the partner in the basis
# given by the isometry relating the two ensembles.
v = sr.ensemble_relation_isometry(e_three, al.ensemble)
psi = sr.BipartitePureState(2, 3, st.purify_with_ensemble(e_three))
for p, r in sr.steer(psi, sr.measurement_from_isometry(v)):
    print("outcome probability", round(p, 10), " conditional state\n", np.round(r, 10))

# Whatever is measured, the average is rho.
rep = sr.nonsignaling_check(psi, sr.SteeringMeasurement.computational(3), sr.measurement_from_isometry(v))
print("averages differ by", rep.deviation)
