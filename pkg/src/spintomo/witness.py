"""Quantumness witnesses ``B^2 - A^2`` for qubit states.

For a state diagonal in the computational basis with Bloch radius ``r``
the pair is

    A_d = [[1/(2r^2) - a/r, s], [s, 1/(2r^2) + a/r]],  s = sqrt(1/(4r^2) - a^2) / r
    B_d = A_d + b r^k [[1, -1], [-1, 1]]

``A_d`` is ``1/r^2`` times a rank-one projector and ``B_d - A_d`` is
positive semidefinite, so ``0 <= <A> <= <B>`` holds for every state,
while ``Tr[rho_d (B_d^2 - A_d^2)]`` can be negative.  General states are
handled by rotating the pair into the eigenbasis found from the tomogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import (
    ClassicalStateError,
    InvalidStateError,
    ParameterDomainError,
    PreconditionError,
)
from .linalg2 import TWO_PI, EulerUnitary, Hermitian2, conjugate, square
from .tomography import (
    DensityMatrix,
    Observable,
    Tomogram,
    average_trace,
)

PSD_ATOL = 1e-12
CLASSICAL_R_ATOL = 1e-12
# transverse components below this are roundoff; the axis is taken as +-z
AXIS_SNAP = 1e-14

CANONICAL_DIRECTIONS = (
    EulerUnitary(0.0, 0.0, 0.0),
    EulerUnitary(0.0, 0.5 * math.pi, 0.0),
    EulerUnitary(0.5 * math.pi, 0.5 * math.pi, 0.0),
)


@dataclass(frozen=True)
class WitnessParams:
    r: float
    a: float
    b: float
    k: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise ClassicalStateError(
                "maximally mixed state admits no witness (r must be > 0)")
        if self.r > 1.0 + PSD_ATOL:
            raise ParameterDomainError(f"Bloch radius r={self.r!r} exceeds 1")
        if abs(self.a) > 0.5 / self.r:
            raise ParameterDomainError(
                f"|a|={abs(self.a)!r} exceeds 1/(2r)={0.5 / self.r!r}; "
                "the off-diagonal square root would be imaginary")
        if self.b < 0.0:
            raise ParameterDomainError(f"b must be non-negative, got {self.b!r}")


@dataclass(frozen=True)
class WitnessPair:
    """Operators with ``0 <= A <= B``, checked on construction."""

    a_op: Observable
    b_op: Observable

    def __post_init__(self):
        checks = (("A", self.a_op.h), ("B", self.b_op.h),
                  ("B - A", self.b_op.h - self.a_op.h))
        scale = max(1.0, *(max(abs(v) for v in h.eigenvalues()) for _, h in checks))
        for name, h in checks:
            low = h.eigenvalues()[1]
            if low < -PSD_ATOL * scale:
                raise PreconditionError(f"{name} is not positive semidefinite "
                                        f"(min eigenvalue {low!r})")

    @property
    def witness(self) -> Hermitian2:
        """The operator ``B^2 - A^2``."""
        return square(self.b_op.h) - square(self.a_op.h)

    def rotated(self, u: EulerUnitary) -> "WitnessPair":
        """The pair ``(u^dag A u, u^dag B u)``."""
        return WitnessPair(Observable(conjugate(self.a_op.h, u)),
                           Observable(conjugate(self.b_op.h, u)))

    def to_json_dict(self) -> dict:
        return {"A": self.a_op.to_json_dict(), "B": self.b_op.to_json_dict()}


def diagonal_state(r: float) -> DensityMatrix:
    if not 0.0 <= r <= 1.0:
        raise ParameterDomainError(f"r must lie in [0, 1], got {r!r}")
    return DensityMatrix(Hermitian2(0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.0))


def witness_family(p: WitnessParams) -> WitnessPair:
    r, a = p.r, p.a
    inv = 1.0 / r
    off = inv * math.sqrt(max(0.25 * inv * inv - a * a, 0.0))
    a_d = Hermitian2(0.5 * inv * inv - a * inv, 0.5 * inv * inv + a * inv, off)
    c = p.b * r ** p.k
    b_d = Hermitian2(a_d.h11 + c, a_d.h22 + c, a_d.h12 - c)
    return WitnessPair(Observable(a_d), Observable(b_d))


def witness_expectation(rho: DensityMatrix, w: WitnessPair) -> float:
    """``Tr[rho (B^2 - A^2)]``; a negative value certifies quantumness."""
    return average_trace(rho, Observable(w.witness))


def first_moment_gap(rho: DensityMatrix, w: WitnessPair) -> float:
    """``<B> - <A>``, non-negative for every state since ``B - A >= 0``."""
    return average_trace(rho, Observable(w.b_op.h - w.a_op.h))


def _axis_angles(n) -> EulerUnitary:
    """Euler angles (``gamma = 0``) whose measurement axis is the unit vector ``n``."""
    nx, ny, nz = n
    if math.hypot(nx, ny) <= AXIS_SNAP:
        return EulerUnitary(0.0, 0.0 if nz > 0 else math.pi, 0.0)
    beta = math.acos(max(-1.0, min(1.0, nz)))
    return EulerUnitary(math.atan2(ny, -nx) % TWO_PI, beta, 0.0)


def bloch_from_tomogram(w: Tomogram) -> np.ndarray:
    """Bloch vector from the asymmetries along z, -x and +y."""
    tz, tx, ty = (w(u).asymmetry for u in CANONICAL_DIRECTIONS)
    return np.array([-tx, ty, tz])


def _search_max_asymmetry(w: Tomogram, n_alpha: int = 64, n_beta: int = 32,
                          tol: float = 1e-6) -> tuple[float, EulerUnitary]:
    alphas = TWO_PI * np.arange(n_alpha) / n_alpha
    betas = np.linspace(0.0, math.pi, n_beta)
    best = (-math.inf, 0.0, 0.0)
    for beta in betas:
        for alpha in alphas:
            t = w(EulerUnitary(float(alpha), float(beta), 0.0)).asymmetry
            if t > best[0]:
                best = (t, float(alpha), float(beta))

    def neg(x):
        return -w(EulerUnitary(float(x[0]), float(np.clip(x[1], 0.0, math.pi)), 0.0)).asymmetry

    res = optimize.minimize(neg, x0=[best[1], best[2]], method="Nelder-Mead",
                            options={"xatol": 1e-9, "fatol": 0.1 * tol, "maxiter": 4000})
    if -res.fun >= best[0]:
        alpha, beta = float(res.x[0]) % TWO_PI, float(np.clip(res.x[1], 0.0, math.pi))
        return -float(res.fun), EulerUnitary(alpha, beta, 0.0)
    return best[0], EulerUnitary(best[1], best[2], 0.0)


def extract_r(w: Tomogram, method: str = "auto",
              exact_tol: float = 1e-9) -> tuple[float, EulerUnitary]:
    """Largest tomogram asymmetry ``max_u (w_up(u) - w_down(u))`` and a maximiser.

    ``method="bloch"`` reads the Bloch vector off three fixed axes, which
    is exact for a tomogram of a qubit state.  ``method="search"`` does a
    64 x 32 grid over ``(alpha, beta)`` followed by Nelder-Mead ascent.
    ``"auto"`` uses the Bloch reading when the tomogram agrees with it at
    the predicted maximiser and at a spare probe axis, and searches
    otherwise.
    """
    if method not in ("auto", "bloch", "search"):
        raise ValueError(f"unknown method {method!r}")
    if method == "search":
        r, u = _search_max_asymmetry(w)
        return max(r, 0.0), u

    s = bloch_from_tomogram(w)
    r = float(np.linalg.norm(s))
    u = EulerUnitary() if r <= CLASSICAL_R_ATOL else _axis_angles(s / r)
    if r <= CLASSICAL_R_ATOL:
        r = 0.0
    if method == "bloch":
        return r, u

    probe = EulerUnitary(0.25 * math.pi, math.pi / 3.0, 0.0)
    affine = abs(w(probe).asymmetry - float(probe.axis() @ s)) <= exact_tol
    at_max = abs(w(u).asymmetry - r) <= exact_tol
    if affine and at_max:
        return r, u
    r_search, u_search = _search_max_asymmetry(w)
    return max(r_search, 0.0), u_search


def witness_for_state(w: Tomogram, a: float, b: float, k: float,
                      method: str = "auto") -> WitnessPair:
    """Witness pair rotated into the eigenbasis of the state behind ``w``."""
    r, u_rho = extract_r(w, method=method)
    if r <= CLASSICAL_R_ATOL:
        raise ClassicalStateError("tomogram is constant 1/2: the state is classical")
    pair_d = witness_family(WitnessParams(min(r, 1.0), a, b, k))
    return pair_d.rotated(u_rho)


@dataclass(frozen=True)
class QuditWitness:
    a_op: np.ndarray
    b_op: np.ndarray
    indices: tuple[int, int]
    eigenvalues: tuple[float, float]
    r: float
    pair_2d: WitnessPair

    @property
    def witness(self) -> np.ndarray:
        return self.b_op @ self.b_op - self.a_op @ self.a_op


def embed_qudit_witness(rho_n, a: float, b: float, k: float,
                        atol: float = 1e-12) -> QuditWitness:
    """Qubit witness acting on a two-level subspace of an ``n``-level state.

    The subspace is spanned by the eigenvectors of the largest and the
    smallest eigenvalue (the widest gap); among degenerate candidates the
    lowest index in ``numpy.linalg.eigh`` order wins.  The operators
    vanish outside the subspace, so ``Tr[rho_n W_n] = (lambda_i +
    lambda_j) Tr[rho_2 W_2]`` with ``rho_2`` the normalised restriction.
    """
    rho_n = np.asarray(rho_n, dtype=complex)
    n = rho_n.shape[0]
    if rho_n.ndim != 2 or rho_n.shape != (n, n) or n < 2:
        raise ValueError("rho_n must be a square matrix of size >= 2")
    if np.max(np.abs(rho_n - rho_n.conj().T)) > atol:
        raise InvalidStateError("rho_n is not Hermitian")
    if abs(np.trace(rho_n).real - 1.0) > atol:
        raise InvalidStateError("rho_n does not have unit trace")
    evals, evecs = np.linalg.eigh(rho_n)
    if evals[0] < -atol:
        raise InvalidStateError("rho_n is not positive semidefinite")
    if evals[-1] - evals[0] <= atol:
        raise ClassicalStateError("classical direction not found: rho_n is I/n")
    # indices refer to numpy's ascending eigenvalue order
    hi = min(idx for idx in range(n) if evals[idx] >= evals[-1] - atol)
    lo = min(idx for idx in range(n) if evals[idx] <= evals[0] + atol)
    lam_i, lam_j = float(evals[hi]), float(evals[lo])
    r = (lam_i - lam_j) / (lam_i + lam_j)
    pair = witness_family(WitnessParams(min(r, 1.0), a, b, k))
    v = evecs[:, [hi, lo]]
    a_n = v @ pair.a_op.array() @ v.conj().T
    b_n = v @ pair.b_op.array() @ v.conj().T
    return QuditWitness(a_n, b_n, (hi, lo), (lam_i, lam_j), r, pair)
