"""
Detecting quantumness from a tomogram alone
===========================================

Given only the tomogram of an unknown state, find the axis of maximal
spin asymmetry, build the witness for that polarisation, rotate it onto
the axis and check that the second-moment inequality fails.
"""

import numpy as np

from spintomo import (
    ClassicalObservable,
    ClassicalState,
    DensityMatrix,
    classical_stochastic_form,
    extract_r,
    run_quantumness_test,
    tomogram_function,
    witness_for_state,
)

rho = DensityMatrix.from_bloch([0.4, 0.5, -0.6])
w = tomogram_function(rho)

r, u = extract_r(w)
print(f"polarisation r = {r:.12f} (true {np.linalg.norm(rho.bloch_vector()):.12f})")
print(f"axis angles: alpha={u.alpha:.6f} beta={u.beta:.6f}")

pair = witness_for_state(w, a=0.35, b=0.1, k=1)
report = run_quantumness_test(rho, pair)
print("<B> - <A>     =", report.first_moment_gap)
print("<B^2> - <A^2> =", report.second_moment_gap)
print("verdict:", report.verdict)

# Classical simulation of the same numbers: two outcome distributions with
# one probability vector.  Here the first inequality carries over to squares.
s = ClassicalState(0.6, 0.4)
first, second = classical_stochastic_form(s, ClassicalObservable(0.2, 1.0), ClassicalObservable(0.5, 1.3))
print("classical <A>-<B> =", first, " <A^2>-<B^2> =", second)
