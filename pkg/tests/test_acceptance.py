"""End-to-end acceptance checks, one test per criterion.

Each test also prints a PASS/FAIL line; the terminal summary collects them.
"""

import math
import time

import numpy as np
import pytest

from helpers import random_bloch, random_observable, random_state
from spintomo.experiment import MeasurementPlan, estimated_test, simulate_measurements
from spintomo.errors import NoWitnessError
from spintomo.testkit import QUANTUM, ClassicalObservable, ClassicalState, classical_implication_check, run_quantumness_test
from spintomo.tomography import (
    DensityMatrix,
    Observable,
    QuadratureRule,
    average_closed_form,
    average_dual,
    average_outcomes,
    average_trace,
    reconstruct,
    tomogram_function,
)
from spintomo.linalg2 import Hermitian2
from spintomo.witness import (
    WitnessParams,
    diagonal_state,
    embed_qudit_witness,
    extract_r,
    first_moment_gap,
    witness_expectation,
    witness_family,
    witness_for_state,
)

A_REF, B_REF, KS = 0.35, 0.1, (0, 1, 2)


def family_oracle(r, a, b, k):
    s = math.sqrt(1 / (4 * r * r) - a * a) / r
    A = np.array([[1 / (2 * r * r) - a / r, s], [s, 1 / (2 * r * r) + a / r]])
    return A, A + b * r ** k * np.array([[1.0, -1.0], [-1.0, 1.0]])


def verdict(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.mark.criterion(1, "negative witness on the r, k grid and anchor value")
def test_witness_negative_on_grid():
    start = time.perf_counter()
    worst = -np.inf
    for k in KS:
        for i in range(1, 101):
            r = i / 100
            worst = max(worst, witness_expectation(diagonal_state(r),
                                                   witness_family(WitnessParams(r, A_REF, B_REF, k))))
    anchor = witness_expectation(diagonal_state(1.0), witness_family(WitnessParams(1.0, A_REF, B_REF, 1)))
    A, B = family_oracle(1.0, A_REF, B_REF, 1)
    oracle = float(np.trace(np.diag([1.0, 0.0]) @ (B @ B - A @ A)))
    elapsed = time.perf_counter() - start
    ok = worst < 0 and abs(anchor - oracle) <= 1e-9 and abs(anchor + 0.021414) < 5e-7 and elapsed < 1.0
    verdict(1, ok, f"max value {worst:.3e}, anchor {anchor:.12f}, oracle {oracle:.12f}, {elapsed:.3f} s")


@pytest.mark.criterion(2, "reconstruction round trip on 1000 states")
def test_reconstruction_round_trip():
    rng = np.random.default_rng(101)
    q = QuadratureRule(16, 16)
    worst = 0.0
    for _ in range(1000):
        rho = random_state(rng)
        worst = max(worst, float(np.max(np.abs(reconstruct(tomogram_function(rho), q).array() - rho.array()))))
    verdict(2, worst <= 1e-10, f"max residual {worst:.2e}")


@pytest.mark.criterion(3, "trace, quadrature and outcome averages agree")
def test_three_way_average():
    rng = np.random.default_rng(202)
    q = QuadratureRule(16, 16)
    worst_dual = worst_out = 0.0
    for _ in range(1000):
        rho, a = random_state(rng), random_observable(rng)
        t = average_trace(rho, a)
        worst_dual = max(worst_dual, abs(t - average_dual(rho, a, q)))
        worst_out = max(worst_out, abs(t - average_outcomes(rho, a)))
    verdict(3, worst_dual <= 1e-9 and worst_out <= 1e-10,
            f"quadrature {worst_dual:.2e}, outcomes {worst_out:.2e}")


@pytest.mark.criterion(4, "closed-form average on polar parametrizations")
def test_closed_form_average():
    rng = np.random.default_rng(303)
    q = QuadratureRule(16, 16)
    worst = 0.0
    for _ in range(1000):
        rho11 = rng.random()
        rho22 = 1 - rho11
        rho12 = rng.random() * math.sqrt(rho11 * rho22)
        rho = DensityMatrix.from_polar(rho11, rho22, rho12, rng.uniform(0, 2 * math.pi))
        a11, a22, a12 = rng.uniform(-10, 10, size=3)
        a = Observable.from_polar(a11, a22, abs(a12), rng.uniform(0, 2 * math.pi))
        c = average_closed_form(rho, a)
        worst = max(worst, abs(c - average_trace(rho, a)), abs(c - average_dual(rho, a, q)))
    verdict(4, worst <= 1e-9, f"max deviation {worst:.2e}")


@pytest.mark.criterion(5, "witness family spectra")
def test_family_spectra():
    rng = np.random.default_rng(404)
    worst = 0.0
    for _ in range(1000):
        r = rng.uniform(0.01, 1.0)
        a = rng.uniform(-1, 1) / (2 * r)
        b, k = rng.uniform(0, 2), rng.uniform(0, 3)
        pair = witness_family(WitnessParams(r, a, b, k))
        ev_a = np.linalg.eigvalsh(pair.a_op.array())
        ev_d = np.linalg.eigvalsh(pair.b_op.array() - pair.a_op.array())
        err = max(np.max(np.abs(ev_a - [0, 1 / r ** 2])), np.max(np.abs(ev_d - [0, 2 * b * r ** k])))
        worst = max(worst, err)
    verdict(5, worst <= 1e-10, f"max spectral error {worst:.2e}")


@pytest.mark.criterion(6, "classical implication fuzz")
def test_classical_fuzz():
    rng = np.random.default_rng(505)
    n = 100_000
    p = rng.random(n)
    a = rng.uniform(0, 10, size=(n, 2))
    b = a + rng.uniform(0, 10, size=(n, 2))
    violations = sum(not classical_implication_check(ClassicalState(p[i], 1 - p[i]),
                                                     ClassicalObservable(*a[i]), ClassicalObservable(*b[i]))
                     for i in range(n))
    verdict(6, violations == 0, f"{violations} violations in {n} instances")


@pytest.mark.criterion(7, "first-moment gap non-negative for all states")
def test_first_moment_universal():
    rng = np.random.default_rng(606)
    pairs = [witness_family(WitnessParams(r, A_REF, B_REF, k)) for k in KS for r in (0.05, 0.5, 1.0)]
    worst = np.inf
    for _ in range(10_000):
        rho = random_state(rng)
        worst = min(worst, min(first_moment_gap(rho, p) for p in pairs))
    verdict(7, worst >= -1e-12, f"min gap {worst:.3e}")


@pytest.mark.criterion(8, "tomographic test from exact tomograms")
def test_tomographic_pipeline():
    rng = np.random.default_rng(707)
    worst_r = worst_gap = 0.0
    mismatches = 0
    for i in range(1000):
        rho = random_state(rng, min_r=0.05)
        r = float(np.linalg.norm(rho.bloch_vector()))
        k = KS[i % 3]
        w = tomogram_function(rho)
        r_hat, _ = extract_r(w)
        worst_r = max(worst_r, abs(r_hat - r))
        rotated = run_quantumness_test(rho, witness_for_state(w, A_REF, B_REF, k))
        diag = run_quantumness_test(diagonal_state(r), witness_family(WitnessParams(r, A_REF, B_REF, k)))
        worst_gap = max(worst_gap, abs(rotated.second_moment_gap - diag.second_moment_gap))
        mismatches += rotated.verdict != diag.verdict or rotated.verdict != QUANTUM
    ok = worst_r <= 1e-9 and worst_gap <= 1e-9 and mismatches == 0
    verdict(8, ok, f"r error {worst_r:.2e}, gap difference {worst_gap:.2e}, {mismatches} verdict mismatches")


@pytest.mark.criterion(9, "statistical pipeline over 100 seeds")
def test_statistical_pipeline():
    start = time.perf_counter()
    pure, mixed = diagonal_state(1.0), DensityMatrix.maximally_mixed()
    quantum_pure = 0
    quantum_mixed = 0
    for seed in range(100):
        rep = estimated_test(simulate_measurements(pure, MeasurementPlan.canonical(10 ** 5, seed)), A_REF, B_REF, 1)
        quantum_pure += rep.verdict == QUANTUM and rep.confidence >= 0.95
        try:
            rep = estimated_test(simulate_measurements(mixed, MeasurementPlan.canonical(10 ** 5, seed)),
                                 A_REF, B_REF, 1)
        except NoWitnessError:
            continue
        quantum_mixed += rep.verdict == QUANTUM
    elapsed = time.perf_counter() - start
    ok = quantum_pure >= 90 and quantum_mixed == 0 and elapsed < 60
    verdict(9, ok, f"pure state quantum {quantum_pure}/100, maximally mixed quantum {quantum_mixed}/100, "
                   f"{elapsed:.1f} s")


@pytest.mark.criterion(10, "qudit embedding scales the qubit value")
def test_qudit_embedding():
    rho = np.diag([0.5, 0.3, 0.2])
    q = embed_qudit_witness(rho, A_REF, B_REF, 1)
    r = 0.3 / 0.7
    got = float(np.trace(rho @ q.witness).real)
    A, B = family_oracle(r, A_REF, B_REF, 1)
    want = 0.7 * float(np.trace(np.diag([0.5 * (1 + r), 0.5 * (1 - r)]) @ (B @ B - A @ A)))
    verdict(10, abs(got - want) <= 1e-9 and abs(q.r - r) <= 1e-12, f"embedded {got:.12f}, scaled {want:.12f}")
