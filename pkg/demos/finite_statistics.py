"""
Quantumness test with finitely many shots
=========================================

Simulated measurements along the three coordinate axes give an estimate
of the Bloch vector.  Half of the shots choose the witness; the other half
estimate the moment gap and its standard error.  A second option measures
the witness eigen-axes on fresh shots.
"""

from spintomo import DensityMatrix, MeasurementPlan, estimated_test, simulate_measurements, two_stage_test
from spintomo.errors import NoWitnessError

pure = DensityMatrix.from_entries(1.0, 0.0)
mixed = DensityMatrix.maximally_mixed()

plan = MeasurementPlan.canonical(shots=100_000, seed=7)
sampled = simulate_measurements(pure, plan)
for rec in sampled.records:
    print(f"alpha={rec.u.alpha:.4f} beta={rec.u.beta:.4f}  w_up={rec.w_up:.5f} +- {rec.stderr:.5f}")

rep = estimated_test(sampled, 0.35, 0.1, 1)
print(f"\nr_hat = {rep.r_hat:.5f} +- {rep.r_stderr:.5f}")
print(f"second gap = {rep.second_moment_gap:.5f} +- {rep.second_moment_stderr:.5f}")
print(f"P(gap < 0) = {rep.confidence:.4f}  verdict: {rep.verdict}  ({rep.method})")

rep2 = two_stage_test(pure, plan, 0.35, 0.1, 1)
print(f"two-stage: gap {rep2.second_moment_gap:.5f} +- {rep2.second_moment_stderr:.5f}, {rep2.verdict}")

# Repeat over seeds.
hits = sum(estimated_test(simulate_measurements(pure, MeasurementPlan.canonical(100_000, s)),
                          0.35, 0.1, 1).verdict == "quantum" for s in range(100))
print(f"\npure state: quantum in {hits}/100 runs")

# For the maximally mixed state the Bloch vector is pure noise.  The
# chi-squared gate refuses most runs; the few that pass it (about 5% by
# construction) still fail the held-out test.
refused = false_alarms = 0
for s in range(100):
    try:
        r = estimated_test(simulate_measurements(mixed, MeasurementPlan.canonical(100_000, s)), 0.35, 0.1, 1)
    except NoWitnessError:
        refused += 1
        continue
    false_alarms += r.verdict == "quantum"
print(f"maximally mixed state: no witness in {refused}/100 runs, quantum in {false_alarms}/100")
