"""Command-line front end.

    spintomo tomogram --state s.json --alpha 0 --beta 1.2
    spintomo reconstruct --state s.json --roundtrip
    spintomo reconstruct --tomogram-samples samples.json
    spintomo nodes --n-alpha 16 --n-beta 16
    spintomo scan --a 0.35 --b 0.1 --k 0,1,2 --out fig1.csv
    spintomo test --state s.json --a 0.35 --b 0.1 --k 1
    spintomo simulate --state s.json --plan plan.json --a 0.35 --b 0.1 --k 1

Numbers are written with 12 significant digits.  Failures exit with
status 1 and print ``{"error": <code>, "message": <text>}`` on stderr.
"""

from __future__ import annotations

import functools
import json
import sys

import click
import numpy as np

from .errors import SpinTomoError
from .experiment import MeasurementPlan, estimated_test, simulate_measurements, two_stage_test
from .linalg2 import EulerUnitary
from .testkit import run_quantumness_test
from .tomography import (
    DensityMatrix,
    QuadratureRule,
    reconstruct,
    tabulated_tomogram,
    tomogram,
    tomogram_function,
)
from .witness import WitnessParams, diagonal_state, witness_expectation, witness_family, witness_for_state

SIG_DIGITS = 12


def _fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _rounded(obj):
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _emit(obj) -> None:
    click.echo(json.dumps(_rounded(obj), indent=2))


def _fail(code: str, message: str) -> None:
    click.echo(json.dumps({"error": code, "message": message}), err=True)
    sys.exit(1)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SpinTomoError as exc:
            _fail(exc.code, str(exc))
        except (OSError, json.JSONDecodeError) as exc:
            _fail("bad-input", str(exc))
        except (ValueError, KeyError, TypeError) as exc:
            _fail("bad-input", f"{type(exc).__name__}: {exc}")
    return wrapper


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_state(path: str) -> DensityMatrix:
    return DensityMatrix.from_json_dict(_load_json(path))


@click.group()
def cli():
    """Spin tomograms and quantumness witnesses for a qubit."""


@cli.command("tomogram")
@click.option("--state", "state_path", required=True, type=click.Path())
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--gamma", type=float, default=0.0, show_default=True)
@handle_errors
def tomogram_cmd(state_path, alpha, beta, gamma):
    """Spin-up and spin-down probabilities along one axis."""
    point = tomogram(_load_state(state_path), EulerUnitary(alpha, beta, gamma))
    _emit({"alpha": alpha, "beta": beta, "gamma": gamma,
           "w_up": point.w_up, "w_down": point.w_down})


@cli.command("reconstruct")
@click.option("--tomogram-samples", "samples_path", type=click.Path(),
              help="JSON {samples: [{alpha, beta, w_up}, ...]} at the quadrature nodes.")
@click.option("--state", "state_path", type=click.Path())
@click.option("--roundtrip", is_flag=True, help="Reconstruct from the exact tomogram of --state.")
@click.option("--n-alpha", type=int, default=16, show_default=True)
@click.option("--n-beta", type=int, default=16, show_default=True)
@handle_errors
def reconstruct_cmd(samples_path, state_path, roundtrip, n_alpha, n_beta):
    """Density matrix from a tomogram by group integration."""
    q = QuadratureRule(n_alpha, n_beta)
    if samples_path and not state_path:
        data = _load_json(samples_path)
        table = {(float(s["alpha"]), float(s["beta"])): float(s["w_up"]) for s in data["samples"]}
        rho = reconstruct(tabulated_tomogram(table), q)
        _emit(rho.to_json_dict())
    elif state_path and roundtrip and not samples_path:
        truth = _load_state(state_path)
        rho = reconstruct(tomogram_function(truth), q)
        out = rho.to_json_dict()
        out["residual"] = float(np.max(np.abs(rho.array() - truth.array())))
        _emit(out)
    else:
        raise click.UsageError("give either --tomogram-samples or --state with --roundtrip")


@cli.command("nodes")
@click.option("--n-alpha", type=int, default=16, show_default=True)
@click.option("--n-beta", type=int, default=16, show_default=True)
@handle_errors
def nodes_cmd(n_alpha, n_beta):
    """Directions at which reconstruct --tomogram-samples needs data."""
    q = QuadratureRule(n_alpha, n_beta)
    # values are printed in full precision so they can be matched on read-back
    click.echo(json.dumps({"n_alpha": n_alpha, "n_beta": n_beta,
                           "nodes": [{"alpha": u.alpha, "beta": u.beta} for u, _ in q.nodes()]},
                          indent=2))


def _parse_k(ctx, param, value):
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of numbers")


@cli.command("scan")
@click.option("--a", type=float, default=0.35, show_default=True)
@click.option("--b", type=float, default=0.1, show_default=True)
@click.option("--k", "ks", default="0,1,2", show_default=True, callback=_parse_k)
@click.option("--r-min", type=float, default=0.01, show_default=True)
@click.option("--r-max", type=float, default=1.0, show_default=True)
@click.option("--step", type=float, default=0.01, show_default=True)
@click.option("--out", type=click.Path(), default="-", show_default=True)
@handle_errors
def scan_cmd(a, b, ks, r_min, r_max, step, out):
    """Witness expectation for diagonal states over a grid of r (CSV r,k,expectation)."""
    if step <= 0 or r_min > r_max:
        raise ValueError("need step > 0 and r-min <= r-max")
    n = int(np.floor((r_max - r_min) / step + 1e-9)) + 1
    rs = [round(r_min + i * step, 12) for i in range(n)]
    rows = ["r,k,expectation"]
    for k in sorted(ks):
        for r in rs:
            pair = witness_family(WitnessParams(r, a, b, k))
            rows.append(f"{_fmt(r)},{_fmt(k)},{_fmt(witness_expectation(diagonal_state(r), pair))}")
    text = "\n".join(rows) + "\n"
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


@cli.command("test")
@click.option("--state", "state_path", required=True, type=click.Path())
@click.option("--a", type=float, default=0.35, show_default=True)
@click.option("--b", type=float, default=0.1, show_default=True)
@click.option("--k", type=float, default=1.0, show_default=True)
@handle_errors
def test_cmd(state_path, a, b, k):
    """Quantumness test with the witness fitted to the state's tomogram."""
    rho = _load_state(state_path)
    pair = witness_for_state(tomogram_function(rho), a, b, k)
    report = run_quantumness_test(rho, pair).to_json_dict()
    report["parameters"] = {"a": a, "b": b, "k": k}
    _emit(report)


@cli.command("simulate")
@click.option("--state", "state_path", required=True, type=click.Path())
@click.option("--plan", "plan_path", required=True, type=click.Path())
@click.option("--a", type=float, default=0.35, show_default=True)
@click.option("--b", type=float, default=0.1, show_default=True)
@click.option("--k", type=float, default=1.0, show_default=True)
@click.option("--followup-shots", type=int, default=None,
              help="Also measure the witness eigen-axes with this many shots each.")
@click.option("--samples-out", type=click.Path(), default=None,
              help="Write the sampled tomogram JSON here.")
@handle_errors
def simulate_cmd(state_path, plan_path, a, b, k, followup_shots, samples_out):
    """Finite-shot quantumness test on simulated measurements."""
    rho = _load_state(state_path)
    plan = MeasurementPlan.from_json_dict(_load_json(plan_path))
    if followup_shots:
        report = two_stage_test(rho, plan, a, b, k, followup_shots)
    else:
        sampled = simulate_measurements(rho, plan)
        if samples_out:
            with open(samples_out, "w") as fh:
                json.dump(_rounded(sampled.to_json_dict()), fh, indent=2)
        report = estimated_test(sampled, a, b, k)
    out = report.to_json_dict()
    out["parameters"] = {"a": a, "b": b, "k": k, "seed": plan.seed}
    _emit(out)


def main():
    cli()


if __name__ == "__main__":
    main()
