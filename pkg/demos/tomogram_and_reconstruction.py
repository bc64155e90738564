"""
Spin tomogram of a qubit and its inversion
==========================================

A qubit state is fully described by the probabilities of spin up and spin
down along every axis.  This script samples those probabilities for one
state and then rebuilds the density matrix by integrating over the
rotation group.
"""

import math

import numpy as np

from spintomo import DensityMatrix, EulerUnitary, QuadratureRule, reconstruct, tomogram, tomogram_function

# A mixed state with a complex coherence.
rho = DensityMatrix.from_entries(0.7, 0.3, 0.15 - 0.2j)
print("state:\n", np.round(rho.array(), 6))
print("Bloch vector:", np.round(rho.bloch_vector(), 6))

# Probabilities along a few axes; only alpha and beta matter.
for alpha, beta in [(0.0, 0.0), (0.0, math.pi / 2), (math.pi / 2, math.pi / 2), (1.0, 2.2)]:
    p = tomogram(rho, EulerUnitary(alpha, beta, 0.0))
    print(f"alpha={alpha:5.3f} beta={beta:5.3f}  w_up={p.w_up:.6f}  w_down={p.w_down:.6f}")

# gamma drops out
print("gamma invariance:", tomogram(rho, EulerUnitary(1.0, 2.2, 0.0)).w_up
      - tomogram(rho, EulerUnitary(1.0, 2.2, 4.0)).w_up)

# Inversion with a 16 x 16 product rule over (alpha, cos beta).
back = reconstruct(tomogram_function(rho), QuadratureRule(16, 16))
print("max |reconstructed - original| =", np.max(np.abs(back.array() - rho.array())))

# The integrand is a low-degree trigonometric polynomial, so even a
# small rule is exact.
for n in (4, 8):
    err = np.max(np.abs(reconstruct(tomogram_function(rho), QuadratureRule(n, 2)).array() - rho.array()))
    print(f"{n} x 2 rule: error {err:.2e}")
