"""Classical and quantum moment inequalities in stochastic-matrix form.

Classically a two-outcome state is a probability vector and the matrix

    [[p_up, p_up], [p_down, p_down]]

pairs with the same numbers against both observables.  In the quantum
case the columns are tomogram values taken at the eigenbases of ``A``
and ``B`` respectively, and it is this dependence on the group element
that allows ``<A^2> > <B^2>`` even though ``<A> <= <B>`` for all states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError
from .linalg2 import square
from .tomography import DensityMatrix, Observable, average_trace, tomogram
from .witness import WitnessPair

VERDICT_TOL = 1e-10
QUANTUM = "quantum"
CLASSICAL = "consistent-with-classical"


@dataclass(frozen=True)
class ClassicalState:
    p_up: float
    p_down: float

    def __post_init__(self):
        if self.p_up < 0.0 or self.p_down < 0.0:
            raise ValueError("probabilities must be non-negative")
        if abs(self.p_up + self.p_down - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")


@dataclass(frozen=True)
class ClassicalObservable:
    a_up: float
    a_down: float

    def squared(self) -> "ClassicalObservable":
        return ClassicalObservable(self.a_up ** 2, self.a_down ** 2)


@dataclass(frozen=True)
class StochasticMatrix2:
    """Column-stochastic 2x2 real matrix."""

    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("stochastic matrix must be 2x2")
        if np.min(m) < -1e-12 or np.max(np.abs(m.sum(axis=0) - 1.0)) > 1e-12:
            raise ValueError("columns must be probability vectors")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @classmethod
    def classical(cls, s: ClassicalState) -> "StochasticMatrix2":
        return cls(np.array([[s.p_up, s.p_up], [s.p_down, s.p_down]]))

    def pair_with(self, a: ClassicalObservable, b: ClassicalObservable) -> float:
        """``Tr[M [[A_up, A_down], [-B_up, -B_down]]]``."""
        outcomes = np.array([[a.a_up, a.a_down], [-b.a_up, -b.a_down]])
        return float(np.trace(self.m @ outcomes))

    def tolist(self) -> list[list[float]]:
        return self.m.tolist()


@dataclass(frozen=True)
class TestReport:
    first_moment_gap: float
    second_moment_gap: float
    verdict: str
    pair: WitnessPair
    state: DensityMatrix

    __test__ = False  # not a pytest class

    def to_json_dict(self) -> dict:
        return {
            "first_moment_gap": self.first_moment_gap,
            "second_moment_gap": self.second_moment_gap,
            "verdict": self.verdict,
            "witness": self.pair.to_json_dict(),
            "state": self.state.to_json_dict(),
        }


def verdict_for(first_gap: float, second_gap: float, tol: float = VERDICT_TOL) -> str:
    return QUANTUM if first_gap >= -tol and second_gap < -tol else CLASSICAL


def classical_averages(s: ClassicalState, a: ClassicalObservable) -> tuple[float, float]:
    """``(<A>, <A^2>)`` where ``A^2`` has the squared outcomes."""
    mean = s.p_up * a.a_up + s.p_down * a.a_down
    mean_sq = s.p_up * a.a_up ** 2 + s.p_down * a.a_down ** 2
    return mean, mean_sq


def classical_stochastic_form(s: ClassicalState, a: ClassicalObservable,
                              b: ClassicalObservable) -> tuple[float, float]:
    """``(<A> - <B>, <A^2> - <B^2>)`` as traces against the state matrix."""
    m = StochasticMatrix2.classical(s)
    return m.pair_with(a, b), m.pair_with(a.squared(), b.squared())


def classical_implication_check(s: ClassicalState, a: ClassicalObservable,
                                b: ClassicalObservable) -> bool:
    """Whether the first-moment inequality implies the second-moment one.

    Requires ``0 <= A_up <= B_up`` and ``0 <= A_down <= B_down``; inputs
    outside that hypothesis raise :class:`PreconditionError` instead of
    being reported as counterexamples.
    """
    if not (0.0 <= a.a_up <= b.a_up and 0.0 <= a.a_down <= b.a_down):
        raise PreconditionError(
            "outcomes must satisfy 0 <= A_up <= B_up and 0 <= A_down <= B_down")
    first, second = classical_stochastic_form(s, a, b)
    return not (first <= 0.0) or second <= 0.0


class QuantumStochasticForm(NamedTuple):
    first: float
    second: float
    matrix_first: StochasticMatrix2
    matrix_second: StochasticMatrix2


def quantum_stochastic_form(rho: DensityMatrix, w: WitnessPair) -> QuantumStochasticForm:
    """Moment differences from tomogram values at the eigenbases of ``A`` and ``B``.

    The columns of both matrices are ``(w_up(u_A), w_down(u_A))`` and
    ``(w_up(u_B), w_down(u_B))``; squaring an operator keeps its
    eigenbasis, so the second-moment matrix is the first one paired with
    squared outcomes.
    """
    ea, eb = w.a_op.eig(), w.b_op.eig()
    ta, tb = tomogram(rho, ea.basis), tomogram(rho, eb.basis)
    matrix = StochasticMatrix2(np.array([[ta.w_up, tb.w_up], [ta.w_down, tb.w_down]]))
    a_cl = ClassicalObservable(ea.lambda_up, ea.lambda_down)
    b_cl = ClassicalObservable(eb.lambda_up, eb.lambda_down)
    first = matrix.pair_with(a_cl, b_cl)
    second = matrix.pair_with(a_cl.squared(), b_cl.squared())
    return QuantumStochasticForm(first, second, matrix, matrix)


def _check_agreement(label: str, got: float, want: float, scale: float,
                     tol: float = 1e-10) -> None:
    if abs(got - want) > tol * max(1.0, scale):
        raise ArithmeticError(f"{label}: stochastic form {got!r} disagrees "
                              f"with operator trace {want!r}")


def run_quantumness_test(rho: DensityMatrix, w: WitnessPair,
                         tol: float = VERDICT_TOL) -> TestReport:
    """Quantumness verdict for ``rho`` from the pair ``w``.

    The gaps come from operator traces with true matrix squares; the
    stochastic-matrix form is evaluated independently and must agree.
    """
    first_gap = average_trace(rho, w.b_op) - average_trace(rho, w.a_op)
    second_gap = (average_trace(rho, Observable(square(w.b_op.h)))
                  - average_trace(rho, Observable(square(w.a_op.h))))
    form = quantum_stochastic_form(rho, w)
    scale = max(abs(v) for op in (w.a_op, w.b_op) for v in op.h.eigenvalues())
    _check_agreement("first moment", -form.first, first_gap, scale)
    _check_agreement("second moment", -form.second, second_gap, scale * scale)
    if not math.isfinite(second_gap):
        raise ArithmeticError("non-finite moment gap")
    return TestReport(first_gap, second_gap, verdict_for(first_gap, second_gap, tol), w, rho)
