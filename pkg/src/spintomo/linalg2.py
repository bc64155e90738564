"""Closed-form 2x2 complex linear algebra.

Everything here works on plain Python scalars so that the small
matrices used throughout the package are evaluated exactly (up to
floating point roundoff) without dispatching into LAPACK.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CMat2:
    """General complex 2x2 matrix ``[[a11, a12], [a21, a22]]``."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    @classmethod
    def from_array(cls, arr) -> "CMat2":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
        return cls(complex(arr[0, 0]), complex(arr[0, 1]),
                   complex(arr[1, 0]), complex(arr[1, 1]))

    @classmethod
    def identity(cls) -> "CMat2":
        return cls(1.0, 0.0, 0.0, 1.0)

    def array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    def dagger(self) -> "CMat2":
        return CMat2(self.a11.conjugate(), self.a21.conjugate(),
                     self.a12.conjugate(), self.a22.conjugate())

    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> complex:
        return self.a11 + self.a22

    def __matmul__(self, other: "CMat2") -> "CMat2":
        return matmul(self, other)


@dataclass(frozen=True)
class Hermitian2:
    """Hermitian 2x2 matrix stored as two real diagonal entries and ``h12``.

    The lower off-diagonal entry is never stored; it is always the
    complex conjugate of ``h12``.
    """

    h11: float
    h22: float
    h12: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "h11", float(self.h11))
        object.__setattr__(self, "h22", float(self.h22))
        object.__setattr__(self, "h12", complex(self.h12))

    @property
    def h21(self) -> complex:
        return self.h12.conjugate()

    @classmethod
    def from_array(cls, arr, atol: float = 1e-12) -> "Hermitian2":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
        if np.max(np.abs(arr - arr.conj().T)) > atol:
            raise ValueError("matrix is not Hermitian")
        return cls(arr[0, 0].real, arr[1, 1].real, complex(arr[0, 1]))

    @classmethod
    def diag(cls, d1: float, d2: float) -> "Hermitian2":
        return cls(d1, d2, 0.0)

    @classmethod
    def identity(cls) -> "Hermitian2":
        return cls(1.0, 1.0, 0.0)

    def cmat(self) -> CMat2:
        return CMat2(complex(self.h11), self.h12, self.h21, complex(self.h22))

    def array(self) -> np.ndarray:
        return self.cmat().array()

    def trace(self) -> float:
        return self.h11 + self.h22

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalues ``(larger, smaller)`` from the closed form."""
        mean = 0.5 * (self.h11 + self.h22)
        radius = math.hypot(0.5 * (self.h11 - self.h22), abs(self.h12))
        return mean + radius, mean - radius

    def __add__(self, other: "Hermitian2") -> "Hermitian2":
        return add(self, other)

    def __sub__(self, other: "Hermitian2") -> "Hermitian2":
        return add(self, scale(other, -1.0))

    def __matmul__(self, other):
        return matmul(self, other)


@dataclass(frozen=True)
class EulerUnitary:
    """SU(2) element parametrised by Euler angles (radians).

    ``alpha`` and ``gamma`` are conventionally taken in ``[0, 2*pi)`` and
    ``beta`` in ``[0, pi]``; the matrix is defined for any finite angles.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def matrix(self) -> CMat2:
        return euler_matrix(self)

    def axis(self) -> np.ndarray:
        """Unit Bloch vector ``n`` such that ``u^dag sigma_z u = n . sigma``."""
        sb = math.sin(self.beta)
        return np.array([-sb * math.cos(self.alpha),
                         sb * math.sin(self.alpha),
                         math.cos(self.beta)])


@dataclass(frozen=True)
class EigenDecomp2:
    """Spectral factorisation ``h = basis^dag diag(lambda_up, lambda_down) basis``."""

    lambda_up: float
    lambda_down: float
    basis: EulerUnitary

    def reconstruct(self) -> Hermitian2:
        return conjugate(Hermitian2.diag(self.lambda_up, self.lambda_down), self.basis)


def euler_matrix(u: EulerUnitary) -> CMat2:
    """Matrix of the rotation ``u``; its first row is the spin-up bra."""
    c = math.cos(0.5 * u.beta)
    s = math.sin(0.5 * u.beta)
    plus = 0.5 * (u.alpha + u.gamma)
    minus = 0.5 * (u.alpha - u.gamma)
    return CMat2(c * cmath.exp(-1j * plus), -s * cmath.exp(1j * minus),
                 s * cmath.exp(-1j * minus), c * cmath.exp(1j * plus))


def f_matrix(alpha: float, beta: float) -> Hermitian2:
    """Traceless Hermitian ``u^dag sigma_z u`` of the direction ``(alpha, beta)``."""
    cb = math.cos(beta)
    return Hermitian2(cb, -cb, -cmath.exp(1j * alpha) * math.sin(beta))


def eig_hermitian(h: Hermitian2) -> EigenDecomp2:
    """Closed-form eigendecomposition of a Hermitian 2x2 matrix.

    The basis is returned as Euler angles with ``gamma = 0``.  Writing
    ``h = tr(h)/2 * I + (lambda_up - lambda_down)/2 * F(alpha, beta)``
    fixes ``beta`` from the diagonal splitting and ``alpha`` from the
    phase of ``-h12``.  Diagonal input with ``h11 < h22`` gives
    ``beta = pi``; degenerate input gives the identity basis.
    """
    lam_up, lam_down = h.eigenvalues()
    half_gap = 0.5 * (lam_up - lam_down)
    if half_gap == 0.0:
        return EigenDecomp2(lam_up, lam_down, EulerUnitary(0.0, 0.0, 0.0))
    beta = math.atan2(abs(h.h12), 0.5 * (h.h11 - h.h22))
    alpha = cmath.phase(-h.h12) % TWO_PI if h.h12 != 0 else 0.0
    return EigenDecomp2(lam_up, lam_down, EulerUnitary(alpha, beta, 0.0))


def euler_angles(m: CMat2, atol: float = 1e-12) -> EulerUnitary:
    """Euler angles of a special-unitary matrix.

    The returned angles reproduce ``m`` up to an overall sign, which no
    tomographic quantity can see.  When ``beta`` is 0 or ``pi`` the
    phase is carried entirely by ``alpha`` and ``gamma = 0``.
    """
    if abs(m.det() - 1.0) > 1e-9:
        raise ValueError("matrix is not special unitary")
    c, s = abs(m.a11), abs(m.a21)
    beta = 2.0 * math.atan2(s, c)
    if s <= atol:
        return EulerUnitary((-2.0 * cmath.phase(m.a11)) % TWO_PI, 0.0, 0.0)
    if c <= atol:
        return EulerUnitary((-2.0 * cmath.phase(m.a21)) % TWO_PI, math.pi, 0.0)
    plus = -2.0 * cmath.phase(m.a11)
    minus = -2.0 * cmath.phase(m.a21)
    return EulerUnitary((0.5 * (plus + minus)) % TWO_PI, beta,
                        (0.5 * (plus - minus)) % TWO_PI)


def _as_cmat(x) -> CMat2:
    return x.cmat() if isinstance(x, Hermitian2) else x


def matmul(x, y) -> CMat2:
    x, y = _as_cmat(x), _as_cmat(y)
    return CMat2(x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                 x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22)


def add(x, y):
    if isinstance(x, Hermitian2) and isinstance(y, Hermitian2):
        return Hermitian2(x.h11 + y.h11, x.h22 + y.h22, x.h12 + y.h12)
    x, y = _as_cmat(x), _as_cmat(y)
    return CMat2(x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22)


def scale(x, c):
    if isinstance(x, Hermitian2) and isinstance(c, (int, float)):
        return Hermitian2(c * x.h11, c * x.h22, c * x.h12)
    x = _as_cmat(x)
    return CMat2(c * x.a11, c * x.a12, c * x.a21, c * x.a22)


def trace_of(x) -> complex | float:
    return x.trace()


def min_eigenvalue(h: Hermitian2) -> float:
    return h.eigenvalues()[1]


def square(h: Hermitian2) -> Hermitian2:
    """``h @ h`` kept in Hermitian storage."""
    off = abs(h.h12) ** 2
    return Hermitian2(h.h11 * h.h11 + off, h.h22 * h.h22 + off, h.h12 * (h.h11 + h.h22))


def conjugate(h: Hermitian2, u: EulerUnitary) -> Hermitian2:
    """Return ``u^dag h u``."""
    m = euler_matrix(u)
    out = matmul(m.dagger(), matmul(h, m))
    return Hermitian2(out.a11.real, out.a22.real, 0.5 * (out.a12 + out.a21.conjugate()))
