"""Spin tomograms of a qubit and the quantizer/dequantizer calculus.

A tomogram is handled as a callable ``w(u) -> TomogramPoint`` so that
integration routines can request any group element they need.  The
group integral runs over the spin label ``m``, ``alpha`` in
``[0, 2 pi)``, ``beta`` in ``[0, pi]`` with weight ``sin(beta)`` and
``gamma`` in ``[0, 2 pi)``; its total volume per spin label is
``8 pi^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import InitVar, dataclass
from functools import cached_property, partial
from typing import Callable, Iterator

import numpy as np

from .errors import InvalidStateError, ReconstructionError
from .linalg2 import (
    TWO_PI,
    EulerUnitary,
    Hermitian2,
    eig_hermitian,
    euler_matrix,
    f_matrix,
)

SPIN_UP = 0.5
SPIN_DOWN = -0.5
GROUP_VOLUME = 8.0 * math.pi ** 2

STATE_ATOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Qubit state. Validated on construction unless ``check=False``."""

    h: Hermitian2
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not check:
            return
        if abs(self.h.trace() - 1.0) > STATE_ATOL:
            raise InvalidStateError(f"trace is {self.h.trace()!r}, expected 1")
        if self.h.eigenvalues()[1] < -STATE_ATOL:
            raise InvalidStateError(
                f"density matrix has negative eigenvalue {self.h.eigenvalues()[1]!r}")

    @classmethod
    def from_entries(cls, rho11: float, rho22: float, rho12: complex = 0.0) -> "DensityMatrix":
        return cls(Hermitian2(rho11, rho22, rho12))

    @classmethod
    def from_polar(cls, rho11: float, rho22: float, rho12: float, zeta: float) -> "DensityMatrix":
        """State written with a real off-diagonal amplitude and phase ``zeta``."""
        return cls(Hermitian2(rho11, rho22, rho12 * cmath.exp(1j * zeta)))

    @classmethod
    def from_bloch(cls, s) -> "DensityMatrix":
        sx, sy, sz = (float(v) for v in s)
        return cls(Hermitian2(0.5 * (1.0 + sz), 0.5 * (1.0 - sz), 0.5 * complex(sx, -sy)))

    @classmethod
    def from_array(cls, arr) -> "DensityMatrix":
        return cls(Hermitian2.from_array(arr))

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix":
        return cls(Hermitian2(0.5, 0.5, 0.0))

    @property
    def rho11(self) -> float:
        return self.h.h11

    @property
    def rho22(self) -> float:
        return self.h.h22

    @property
    def rho12(self) -> complex:
        return self.h.h12

    def array(self) -> np.ndarray:
        return self.h.array()

    def bloch_vector(self) -> np.ndarray:
        return np.array([2.0 * self.rho12.real, -2.0 * self.rho12.imag,
                         self.rho11 - self.rho22])

    def to_json_dict(self) -> dict:
        return {"rho11": self.rho11, "rho22": self.rho22,
                "re_rho12": self.rho12.real, "im_rho12": self.rho12.imag}

    @classmethod
    def from_json_dict(cls, d: dict) -> "DensityMatrix":
        try:
            return cls.from_entries(float(d["rho11"]), float(d["rho22"]),
                                    complex(float(d["re_rho12"]), float(d["im_rho12"])))
        except (KeyError, TypeError) as exc:
            raise InvalidStateError(f"malformed state record: {exc}") from exc


@dataclass(frozen=True)
class Observable:
    """Hermitian observable with its outcome decomposition on demand."""

    h: Hermitian2

    @classmethod
    def from_entries(cls, a11: float, a22: float, a12: complex = 0.0) -> "Observable":
        return cls(Hermitian2(a11, a22, a12))

    @classmethod
    def from_polar(cls, a11: float, a22: float, a12: float, eta: float) -> "Observable":
        return cls(Hermitian2(a11, a22, a12 * cmath.exp(1j * eta)))

    @classmethod
    def identity(cls) -> "Observable":
        return cls(Hermitian2.identity())

    def eig(self):
        return eig_hermitian(self.h)

    def array(self) -> np.ndarray:
        return self.h.array()

    def to_json_dict(self) -> dict:
        return {"rho11": self.h.h11, "rho22": self.h.h22,
                "re_rho12": self.h.h12.real, "im_rho12": self.h.h12.imag}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Observable":
        return cls.from_entries(float(d["rho11"]), float(d["rho22"]),
                                complex(float(d["re_rho12"]), float(d["im_rho12"])))


@dataclass(frozen=True)
class TomogramPoint:
    """Spin-up and spin-down probabilities along one measurement axis."""

    w_up: float
    w_down: float

    def value(self, m: float) -> float:
        if m == SPIN_UP:
            return self.w_up
        if m == SPIN_DOWN:
            return self.w_down
        raise ValueError(f"spin label must be +1/2 or -1/2, got {m!r}")

    @property
    def asymmetry(self) -> float:
        return self.w_up - self.w_down


@dataclass(frozen=True)
class PhasePoint:
    m: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.m not in (SPIN_UP, SPIN_DOWN):
            raise ValueError(f"spin label must be +1/2 or -1/2, got {self.m!r}")
        if not 0.0 <= self.beta <= math.pi:
            raise ValueError(f"beta must lie in [0, pi], got {self.beta!r}")

    @property
    def unitary(self) -> EulerUnitary:
        return EulerUnitary(self.alpha, self.beta, self.gamma)


Tomogram = Callable[[EulerUnitary], TomogramPoint]


@dataclass(frozen=True)
class QuadratureRule:
    """Product rule over the rotation group.

    ``beta`` uses Gauss-Legendre nodes in ``cos(beta)`` (which absorbs the
    ``sin(beta)`` weight) and ``alpha`` a uniform periodic rule.  With
    ``n_gamma = 0`` the ``gamma`` integral is taken as the exact factor
    ``2 pi``; a positive ``n_gamma`` integrates it with explicit uniform
    nodes instead, which is only useful for checking that factor.
    """

    n_alpha: int = 16
    n_beta: int = 16
    n_gamma: int = 0

    def __post_init__(self):
        if self.n_alpha < 4:
            raise ValueError("n_alpha must be at least 4")
        if self.n_beta < 2:
            raise ValueError("n_beta must be at least 2")
        if self.n_gamma < 0:
            raise ValueError("n_gamma must be non-negative")

    @cached_property
    def _nodes(self) -> tuple[tuple[EulerUnitary, float], ...]:
        x, wx = np.polynomial.legendre.leggauss(self.n_beta)
        alphas = TWO_PI * np.arange(self.n_alpha) / self.n_alpha
        w_alpha = TWO_PI / self.n_alpha
        if self.n_gamma:
            gammas = TWO_PI * np.arange(self.n_gamma) / self.n_gamma
            w_gamma = TWO_PI / self.n_gamma
        else:
            gammas = np.zeros(1)
            w_gamma = TWO_PI
        out = []
        for cb, wb in zip(x, wx):
            beta = float(np.arccos(cb))
            for alpha in alphas:
                for gamma in gammas:
                    out.append((EulerUnitary(float(alpha), beta, float(gamma)),
                                float(wb * w_alpha * w_gamma)))
        return tuple(out)

    def nodes(self) -> Iterator[tuple[EulerUnitary, float]]:
        """Yield ``(u, weight)``; the weights sum to ``8 pi^2``."""
        return iter(self._nodes)


def dequantizer(x: PhasePoint) -> Hermitian2:
    """Rank-one projector ``u^dag |m><m| u`` written as ``I/2 + m F``."""
    f = f_matrix(x.alpha, x.beta)
    return Hermitian2(0.5 + x.m * f.h11, 0.5 + x.m * f.h22, x.m * f.h12)


def quantizer(x: PhasePoint) -> Hermitian2:
    """Reconstruction kernel ``(I/2 + 3 m F) / (8 pi^2)``."""
    f = f_matrix(x.alpha, x.beta)
    c = 3.0 * x.m
    return Hermitian2((0.5 + c * f.h11) / GROUP_VOLUME,
                      (0.5 + c * f.h22) / GROUP_VOLUME,
                      c * f.h12 / GROUP_VOLUME)


def _trace_product(a: Hermitian2, b: Hermitian2) -> float:
    return a.h11 * b.h11 + a.h22 * b.h22 + 2.0 * (a.h12 * b.h21).real


def tomogram(rho: DensityMatrix, u: EulerUnitary) -> TomogramPoint:
    """Probabilities ``<m| u rho u^dag |m>`` from the full rotation matrix."""
    m = euler_matrix(u)
    h = rho.h
    rows = ((m.a11, m.a12), (m.a21, m.a22))
    probs = []
    for r1, r2 in rows:
        val = (abs(r1) ** 2 * h.h11 + abs(r2) ** 2 * h.h22
               + 2.0 * (r1 * h.h12 * r2.conjugate()).real)
        probs.append(val)
    return TomogramPoint(probs[0], probs[1])


def tomogram_closed_form(rho: DensityMatrix, u: EulerUnitary) -> TomogramPoint:
    """Trigonometric form ``1/2 + m (rho11 - rho22) cos b - 2 m |rho12| cos(zeta - a) sin b``."""
    diff = rho.rho11 - rho.rho22
    coherent = (rho.rho12 * cmath.exp(-1j * u.alpha)).real
    t = diff * math.cos(u.beta) - 2.0 * coherent * math.sin(u.beta)
    return TomogramPoint(0.5 + 0.5 * t, 0.5 - 0.5 * t)


def tomogram_function(rho: DensityMatrix) -> Tomogram:
    return partial(tomogram, rho)


def constant_tomogram(u: EulerUnitary) -> TomogramPoint:
    """Tomogram of the maximally mixed state."""
    return TomogramPoint(0.5, 0.5)


def reconstruct(w: Tomogram, q: QuadratureRule | None = None,
                trace_tol: float = 1e-6) -> DensityMatrix:
    """Integrate ``w(x) D(x)`` over the group.

    The result is not projected back onto the state space, so a noisy
    tomogram can yield a slightly non-positive matrix.  A trace further
    than ``trace_tol`` from one means the input was not normalised and
    raises :class:`ReconstructionError`.
    """
    q = q or QuadratureRule()
    s11 = s22 = 0.0
    s12 = 0.0j
    for u, weight in q.nodes():
        point = w(u)
        for m, wm in ((SPIN_UP, point.w_up), (SPIN_DOWN, point.w_down)):
            d = quantizer(PhasePoint(m, u.alpha, u.beta, u.gamma))
            c = wm * weight
            s11 += c * d.h11
            s22 += c * d.h22
            s12 += c * d.h12
    if not math.isfinite(s11 + s22) or abs(s11 + s22 - 1.0) > trace_tol:
        raise ReconstructionError(
            f"reconstructed trace {s11 + s22!r} deviates from 1; tomogram is inconsistent")
    return DensityMatrix(Hermitian2(s11, s22, s12), check=False)


def symbol(a: Observable, x: PhasePoint) -> float:
    return _trace_product(a.h, dequantizer(x))


def dual_symbol(a: Observable, x: PhasePoint) -> float:
    return _trace_product(a.h, quantizer(x))


def dual_symbol_closed_form(a: Observable, x: PhasePoint) -> float:
    h = a.h
    coherent = (h.h12 * cmath.exp(-1j * x.alpha)).real
    return (0.5 * (h.h11 + h.h22) + 3.0 * x.m * (h.h11 - h.h22) * math.cos(x.beta)
            - 6.0 * x.m * coherent * math.sin(x.beta)) / GROUP_VOLUME


def dual_symbol_eigen_form(a: Observable, x: PhasePoint) -> float:
    """Dual symbol from the outcomes and the Euler angles of the eigenbasis."""
    e = a.eig()
    phi, theta = e.basis.alpha, e.basis.beta
    overlap = (math.cos(x.beta) * math.cos(theta)
               + math.cos(x.alpha - phi) * math.sin(x.beta) * math.sin(theta))
    return (0.5 * (e.lambda_up + e.lambda_down)
            + 3.0 * x.m * (e.lambda_up - e.lambda_down) * overlap) / GROUP_VOLUME


def average_trace(rho: DensityMatrix, a: Observable) -> float:
    return _trace_product(rho.h, a.h)


def average_dual(rho: DensityMatrix, a: Observable, q: QuadratureRule | None = None,
                 w: Tomogram | None = None) -> float:
    """Group integral of the tomogram against the dual symbol of ``a``."""
    q = q or QuadratureRule()
    w = w or tomogram_function(rho)
    total = 0.0
    for u, weight in q.nodes():
        point = w(u)
        for m, wm in ((SPIN_UP, point.w_up), (SPIN_DOWN, point.w_down)):
            total += weight * wm * dual_symbol(a, PhasePoint(m, u.alpha, u.beta, u.gamma))
    return total


def average_closed_form(rho: DensityMatrix, a: Observable) -> float:
    """``(A11+A22)/2 + (rho11-rho22)(A11-A22)/2 + 2 rho12 A12 cos(zeta-eta)``."""
    h = a.h
    return (0.5 * (h.h11 + h.h22) + 0.5 * (rho.rho11 - rho.rho22) * (h.h11 - h.h22)
            + 2.0 * (rho.rho12 * h.h12.conjugate()).real)


def average_outcomes(rho: DensityMatrix, a: Observable) -> float:
    """Outcome-weighted mean ``w_up(u_A) A_up + w_down(u_A) A_down``."""
    e = a.eig()
    point = tomogram(rho, e.basis)
    return point.w_up * e.lambda_up + point.w_down * e.lambda_down


def tabulated_tomogram(samples, decimals: int = 9) -> Tomogram:
    """Tomogram backed by measured values ``{(alpha, beta): w_up}``.

    Requests are matched on angles rounded to ``decimals`` places, with
    ``alpha`` reduced modulo ``2 pi``; an unsampled direction raises
    :class:`ReconstructionError`.
    """
    def key(alpha, beta):
        return round(float(alpha) % TWO_PI, decimals), round(float(beta), decimals)

    table = {key(a, b): float(w) for (a, b), w in samples.items()}

    def w(u: EulerUnitary) -> TomogramPoint:
        try:
            up = table[key(u.alpha, u.beta)]
        except KeyError:
            raise ReconstructionError(
                f"no sample at alpha={u.alpha!r}, beta={u.beta!r}") from None
        return TomogramPoint(up, 1.0 - up)

    return w
