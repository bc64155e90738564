"""
Witness for a three-level system
================================

Any state that is not maximally mixed has two eigenvalues that differ.
Restricting to their eigenvectors gives an effective qubit, and the
witness built there, padded with zeros, works for the full system.
"""

import numpy as np

from spintomo import diagonal_state, embed_qudit_witness, witness_expectation

rho = np.diag([0.5, 0.3, 0.2])
q = embed_qudit_witness(rho, a=0.35, b=0.1, k=1)
lam_i, lam_j = q.eigenvalues
print("chosen eigenvalues:", lam_i, lam_j, " effective r =", q.r)

full = np.trace(rho @ q.witness).real
scaled = (lam_i + lam_j) * witness_expectation(diagonal_state(q.r), q.pair_2d)
print("Tr[rho W] =", full)
print("(lam_i + lam_j) * qubit value =", scaled)

print("A =\n", np.round(q.a_op, 4))
print("B =\n", np.round(q.b_op, 4))
print("eigenvalues of B - A:", np.round(np.linalg.eigvalsh(q.b_op - q.a_op), 10))

# The same works in a rotated basis.
rng = np.random.default_rng(3)
z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
v, _ = np.linalg.qr(z)
rotated = v @ rho @ v.conj().T
q2 = embed_qudit_witness(rotated, 0.35, 0.1, 1)
print("rotated state:", np.trace(rotated @ q2.witness).real)
