"""Finite-shot measurement simulation and the statistical quantumness test.

Each planned direction gets its own random stream, seeded from
``SeedSequence([seed, index])`` and drawn with numpy's PCG64 generator,
so results are reproducible bit for bit and independent of how many
other directions the plan contains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import NoWitnessError, PlanError
from .linalg2 import EulerUnitary, Hermitian2
from .tomography import DensityMatrix, tomogram
from .witness import (
    CANONICAL_DIRECTIONS,
    WitnessPair,
    WitnessParams,
    _axis_angles,
    witness_family,
)

AXIS_ATOL = 1e-9
SPLIT_STREAM = 2 ** 32 - 1
HYPERGEOM_LIMIT = 10 ** 9  # numpy's hypergeometric sampler rejects larger populations


@dataclass(frozen=True)
class PlannedDirection:
    u: EulerUnitary
    shots: int

    def __post_init__(self):
        if int(self.shots) != self.shots or self.shots < 1:
            raise PlanError(f"shot count must be a positive integer, got {self.shots!r}")


@dataclass(frozen=True)
class MeasurementPlan:
    directions: tuple[PlannedDirection, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "directions", tuple(self.directions))
        if not self.directions:
            raise PlanError("plan has no directions")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise PlanError("seed must be a 64-bit unsigned integer")

    @classmethod
    def canonical(cls, shots: int, seed: int = 0) -> "MeasurementPlan":
        """Plan measuring the three axes needed to estimate the Bloch vector."""
        return cls(tuple(PlannedDirection(u, shots) for u in CANONICAL_DIRECTIONS), seed)

    def to_json_dict(self) -> dict:
        return {"seed": self.seed,
                "directions": [{"alpha": d.u.alpha, "beta": d.u.beta, "gamma": d.u.gamma,
                                "shots": d.shots} for d in self.directions]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "MeasurementPlan":
        try:
            dirs = tuple(
                PlannedDirection(EulerUnitary(float(e["alpha"]), float(e["beta"]),
                                              float(e.get("gamma", 0.0))), int(e["shots"]))
                for e in d["directions"])
            return cls(dirs, int(d.get("seed", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, PlanError):
                raise
            raise PlanError(f"malformed plan: {exc}") from exc


@dataclass(frozen=True)
class DirectionCounts:
    u: EulerUnitary
    n_up: int
    n_down: int

    @property
    def shots(self) -> int:
        return self.n_up + self.n_down

    @property
    def w_up(self) -> float:
        return self.n_up / self.shots

    @property
    def w_down(self) -> float:
        return self.n_down / self.shots

    @property
    def stderr(self) -> float:
        return math.sqrt(self.w_up * self.w_down / self.shots)


@dataclass(frozen=True)
class SampledTomogram:
    records: tuple[DirectionCounts, ...]
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def pooled(self, axis, atol: float = AXIS_ATOL) -> DirectionCounts | None:
        """Counts summed over every record measured along the unit vector ``axis``."""
        hits = [rec for rec in self.records
                if np.max(np.abs(rec.u.axis() - np.asarray(axis))) <= atol]
        if not hits:
            return None
        return DirectionCounts(hits[0].u, sum(h.n_up for h in hits), sum(h.n_down for h in hits))

    def merged(self, other: "SampledTomogram") -> "SampledTomogram":
        return SampledTomogram(self.records + other.records, self.seed)

    def to_json_dict(self) -> dict:
        return {"seed": self.seed,
                "records": [{"alpha": r.u.alpha, "beta": r.u.beta, "gamma": r.u.gamma,
                             "shots": r.shots, "n_up": r.n_up, "n_down": r.n_down,
                             "w_up": r.w_up, "stderr": r.stderr} for r in self.records]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SampledTomogram":
        recs = tuple(DirectionCounts(EulerUnitary(float(e["alpha"]), float(e["beta"]),
                                                  float(e.get("gamma", 0.0))),
                                     int(e["n_up"]), int(e["n_down"]))
                     for e in d["records"])
        return cls(recs, d.get("seed"))


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), index])))


def simulate_measurements(rho: DensityMatrix, plan: MeasurementPlan,
                          stream_offset: int = 0) -> SampledTomogram:
    """Draw spin-up counts along every planned direction.

    ``stream_offset`` shifts the per-direction stream indices, which lets a
    follow-up plan with the same seed use streams disjoint from the first.
    """
    records = []
    for idx, d in enumerate(plan.directions):
        p = min(max(tomogram(rho, d.u).w_up, 0.0), 1.0)
        n_up = int(_stream(plan.seed, stream_offset + idx).binomial(d.shots, p))
        records.append(DirectionCounts(d.u, n_up, d.shots - n_up))
    return SampledTomogram(tuple(records), plan.seed)


@dataclass(frozen=True)
class BlochEstimate:
    vector: np.ndarray = field(repr=False)
    variances: np.ndarray = field(repr=False)
    null_statistic: float

    @property
    def r(self) -> float:
        return float(np.linalg.norm(self.vector))

    @property
    def r_stderr(self) -> float:
        r = self.r
        if r == 0.0:
            return float(np.sqrt(self.variances.sum()))
        return float(np.sqrt(np.sum((self.vector / r) ** 2 * self.variances)))


def estimate_bloch(sampled: SampledTomogram) -> BlochEstimate:
    """Bloch vector and per-component variances from the three canonical axes.

    ``null_statistic`` is ``sum_i N_i t_i^2`` with ``t_i`` the asymmetry
    along axis ``i``; for the maximally mixed state it is approximately
    chi-squared with three degrees of freedom.
    """
    counts = []
    for u in CANONICAL_DIRECTIONS:
        c = sampled.pooled(u.axis())
        if c is None:
            raise PlanError("sampled tomogram lacks canonical direction "
                            f"(alpha={u.alpha:.6g}, beta={u.beta:.6g})")
        counts.append(c)
    t = np.array([2.0 * c.w_up - 1.0 for c in counts])
    var_t = np.array([4.0 * c.w_up * c.w_down / c.shots for c in counts])
    n = np.array([c.shots for c in counts], dtype=float)
    # canonical axes are +z, -x, +y
    vector = np.array([-t[1], t[2], t[0]])
    variances = np.array([var_t[1], var_t[2], var_t[0]])
    return BlochEstimate(vector, variances, float(np.sum(n * t * t)))


def _bloch_components(h: Hermitian2) -> tuple[float, np.ndarray]:
    return 0.5 * (h.h11 + h.h22), np.array([h.h12.real, -h.h12.imag, 0.5 * (h.h11 - h.h22)])


@dataclass(frozen=True)
class EstimatedReport:
    """Quantumness test outcome from finite data, with normal-approximation errors."""

    r_hat: float
    r_stderr: float
    u_rho: EulerUnitary
    first_moment_gap: float
    first_moment_stderr: float
    second_moment_gap: float
    second_moment_stderr: float
    confidence: float
    confidence_level: float
    verdict: str
    method: str
    pair: WitnessPair

    def to_json_dict(self) -> dict:
        return {
            "r_hat": self.r_hat,
            "r_stderr": self.r_stderr,
            "u_rho": {"alpha": self.u_rho.alpha, "beta": self.u_rho.beta,
                      "gamma": self.u_rho.gamma},
            "first_moment_gap": self.first_moment_gap,
            "first_moment_stderr": self.first_moment_stderr,
            "second_moment_gap": self.second_moment_gap,
            "second_moment_stderr": self.second_moment_stderr,
            "confidence": self.confidence,
            "confidence_level": self.confidence_level,
            "verdict": self.verdict,
            "method": self.method,
            "witness": self.pair.to_json_dict(),
        }


def _confidence_negative(gap: float, sd: float) -> float:
    if sd == 0.0:
        return 1.0 if gap < 0.0 else 0.0
    return float(stats.norm.cdf(-gap / sd))


def _witness_from_estimate(est: BlochEstimate, a: float, b: float, k: float,
                           significance: float) -> tuple[float, EulerUnitary, WitnessPair]:
    if est.null_statistic <= stats.chi2.ppf(1.0 - significance, df=3) or est.r == 0.0:
        raise NoWitnessError("Bloch vector is statistically indistinguishable from zero; "
                             "no witness constructible")
    r_hat = min(est.r, 1.0)
    u_rho = _axis_angles(est.vector / est.r)
    return r_hat, u_rho, witness_family(WitnessParams(r_hat, a, b, k)).rotated(u_rho)


def _outcome_moments(c: DirectionCounts, up: float, down: float,
                     power: int) -> tuple[float, float]:
    hi, lo = up ** power, down ** power
    return c.w_up * hi + c.w_down * lo, (hi - lo) ** 2 * c.w_up * c.w_down / c.shots


def _draw_hypergeometric(rng: np.random.Generator, good: int, bad: int, n: int) -> int:
    if good < HYPERGEOM_LIMIT and bad < HYPERGEOM_LIMIT:
        return int(rng.hypergeometric(good, bad, n))
    total = good + bad
    p = good / total
    var = n * p * (1.0 - p) * (total - n) / (total - 1)
    x = round(rng.normal(n * p, math.sqrt(var)))
    return int(min(max(x, n - bad, 0), good, n))


def split_counts(sampled: SampledTomogram,
                 seed: int | None = None) -> tuple[SampledTomogram, SampledTomogram]:
    """Randomly divide every record's shots into two halves.

    Shots along one axis are exchangeable, so drawing the first half's
    spin-up count from the hypergeometric distribution is equivalent to
    assigning individual shots at random.  Records with a single shot go
    entirely to the first half.  Populations beyond the range of numpy's
    sampler use the moment-matched normal approximation, rounded and
    clipped to the feasible range.
    """
    seed = sampled.seed if seed is None else seed
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed or 0), SPLIT_STREAM])))
    first, second = [], []
    for rec in sampled.records:
        half = (rec.shots + 1) // 2
        up = _draw_hypergeometric(rng, rec.n_up, rec.n_down, half) if rec.shots > 1 else rec.n_up
        first.append(DirectionCounts(rec.u, up, half - up))
        if rec.shots - half:
            second.append(DirectionCounts(rec.u, rec.n_up - up, rec.n_down - (half - up)))
    return SampledTomogram(tuple(first), sampled.seed), SampledTomogram(tuple(second), sampled.seed)


def estimated_test(sampled: SampledTomogram, a: float, b: float, k: float,
                   confidence_level: float = 0.95,
                   significance: float = 0.05) -> EstimatedReport:
    """Statistical quantumness test from a sampled tomogram.

    The Bloch vector comes from the three canonical axes.  If it is not
    distinguishable from zero at level ``significance`` (chi-squared test
    on the three asymmetries) :class:`NoWitnessError` is raised.  The
    witness is built for the estimated radius and rotated to the estimated
    axis, after which the moment gaps are evaluated in one of two ways:

    ``followup``
        The data also contain the eigen-axes of both witness operators;
        the gaps are read off those records, which are independent of the
        canonical ones.
    ``split``
        The canonical shots are split at random in two halves
        (:func:`split_counts`).  The first half selects the witness and the
        second half, propagated linearly through the Bloch vector, gives
        the gaps.

    The verdict is quantum when the normal-approximation probability that
    ``<B^2> - <A^2>`` is negative reaches ``confidence_level``.  ``0 <= A
    <= B`` holds by construction, so the first-moment gap is reported but
    does not gate the verdict.
    """
    est = estimate_bloch(sampled)
    r_hat, u_rho, pair = _witness_from_estimate(est, a, b, k, significance)
    ea, eb = pair.a_op.eig(), pair.b_op.eig()
    ca, cb = sampled.pooled(ea.basis.axis()), sampled.pooled(eb.basis.axis())

    if ca is not None and cb is not None:
        method = "followup"
        a1, va1 = _outcome_moments(ca, ea.lambda_up, ea.lambda_down, 1)
        b1, vb1 = _outcome_moments(cb, eb.lambda_up, eb.lambda_down, 1)
        a2, va2 = _outcome_moments(ca, ea.lambda_up, ea.lambda_down, 2)
        b2, vb2 = _outcome_moments(cb, eb.lambda_up, eb.lambda_down, 2)
        first, first_var = b1 - a1, va1 + vb1
        second, second_var = b2 - a2, va2 + vb2
    else:
        method = "split"
        select, evaluate = split_counts(sampled)
        _, u_rho, pair = _witness_from_estimate(estimate_bloch(select), a, b, k, significance)
        held_out = estimate_bloch(evaluate)
        w0, wv = _bloch_components(pair.b_op.h - pair.a_op.h)
        first = w0 + float(wv @ held_out.vector)
        first_var = float(np.sum(wv ** 2 * held_out.variances))
        w0, wv = _bloch_components(pair.witness)
        second = w0 + float(wv @ held_out.vector)
        second_var = float(np.sum(wv ** 2 * held_out.variances))

    second_sd = math.sqrt(second_var)
    confidence = _confidence_negative(second, second_sd)
    verdict = "quantum" if confidence >= confidence_level else "consistent-with-classical"
    return EstimatedReport(r_hat, est.r_stderr, u_rho, first, math.sqrt(first_var),
                           second, second_sd, confidence, confidence_level, verdict,
                           method, pair)


def followup_plan(sampled: SampledTomogram, a: float, b: float, k: float, shots: int,
                  seed: int, significance: float = 0.05) -> MeasurementPlan:
    """Plan measuring the eigen-axes of the witness estimated from ``sampled``."""
    est = estimate_bloch(sampled)
    _, _, pair = _witness_from_estimate(est, a, b, k, significance)
    axes = [pair.a_op.eig().basis, pair.b_op.eig().basis]
    return MeasurementPlan(tuple(PlannedDirection(_axis_angles(u.axis()), shots)
                                 for u in axes), seed)


def two_stage_test(rho: DensityMatrix, plan: MeasurementPlan, a: float, b: float, k: float,
                   followup_shots: int | None = None,
                   confidence_level: float = 0.95) -> EstimatedReport:
    """Estimate the witness from ``plan``, then measure its eigen-axes on fresh shots."""
    first = simulate_measurements(rho, plan)
    shots = followup_shots or max(d.shots for d in plan.directions)
    extra = followup_plan(first, a, b, k, shots, plan.seed)
    second = simulate_measurements(rho, extra, stream_offset=len(plan.directions))
    return estimated_test(first.merged(second), a, b, k, confidence_level)
