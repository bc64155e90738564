"""
Three ways to get an expectation value
======================================

An observable's mean in a state can be read off a trace, off a group
integral of the tomogram against the observable's dual symbol, or off the
tomogram at the observable's own eigenbasis.
"""

import numpy as np

from spintomo import (
    DensityMatrix,
    Observable,
    average_closed_form,
    average_dual,
    average_outcomes,
    average_trace,
)

rho = DensityMatrix.from_bloch([0.3, -0.4, 0.5])
a = Observable.from_entries(1.5, -0.5, 0.8 + 0.3j)

print("trace         ", average_trace(rho, a))
print("group integral", average_dual(rho, a))
print("eigen-axis    ", average_outcomes(rho, a))
print("closed form   ", average_closed_form(rho, a))

# The eigen-axis route only needs two numbers: the tomogram at the
# rotation diagonalising the observable.
e = a.eig()
print("eigenvalues:", e.lambda_up, e.lambda_down)
print("eigen rotation: alpha=%.6f beta=%.6f" % (e.basis.alpha, e.basis.beta))

# Agreement over many random pairs.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    v = rng.normal(size=3)
    state = DensityMatrix.from_bloch(v / np.linalg.norm(v) * rng.random())
    obs = Observable.from_entries(*rng.uniform(-5, 5, 2), complex(*rng.uniform(-5, 5, 2)))
    worst = max(worst, abs(average_trace(state, obs) - average_dual(state, obs)))
print("worst disagreement over 200 pairs:", worst)
