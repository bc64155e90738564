"""Random inputs and brute-force oracles shared by the test modules."""

import numpy as np
from hypothesis import strategies as st
from scipy.linalg import expm

from spintomo.linalg2 import Hermitian2
from spintomo.tomography import DensityMatrix, Observable

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def rotation_oracle(alpha, beta, gamma):
    """Same group element as the Euler parametrisation, built from exponentials."""
    rz = lambda t: expm(-0.5j * t * SZ)
    ry = lambda t: expm(-0.5j * t * SY)
    return rz(gamma) @ ry(beta) @ rz(alpha)


def random_bloch(rng, max_r=1.0, min_r=0.0):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    r = (min_r ** 3 + (max_r ** 3 - min_r ** 3) * rng.random()) ** (1.0 / 3.0)
    return r * v


def random_state(rng, **kw):
    return DensityMatrix.from_bloch(random_bloch(rng, **kw))


def random_hermitian(rng, lo=-10.0, hi=10.0):
    a11, a22, re, im = rng.uniform(lo, hi, size=4)
    return Hermitian2(a11, a22, complex(re, im))


def random_observable(rng, lo=-10.0, hi=10.0):
    return Observable(random_hermitian(rng, lo, hi))


def random_unitary(rng):
    """Haar-ish random 2x2 unitary from the QR of a complex Gaussian."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


finite = dict(allow_nan=False, allow_infinity=False)
angles = st.floats(-20.0, 20.0, **finite)
alphas = st.floats(0.0, 2 * np.pi, exclude_max=True, **finite)
betas = st.floats(0.0, np.pi, **finite)
entries = st.floats(-10.0, 10.0, **finite)


@st.composite
def hermitians(draw):
    return Hermitian2(draw(entries), draw(entries), complex(draw(entries), draw(entries)))


@st.composite
def bloch_vectors(draw, max_r=1.0):
    v = np.array([draw(st.floats(-1, 1, **finite)) for _ in range(3)])
    n = np.linalg.norm(v)
    if n == 0:
        return v
    return v / n * min(n, max_r)


@st.composite
def states(draw):
    return DensityMatrix.from_bloch(draw(bloch_vectors()))
