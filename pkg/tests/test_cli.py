import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from spintomo.cli import cli
from spintomo.linalg2 import EulerUnitary
from spintomo.tomography import DensityMatrix, tomogram_closed_form


@pytest.fixture
def runner():
    return CliRunner()


def write_state(tmp_path, name, rho11, rho22, re12=0.0, im12=0.0):
    p = tmp_path / name
    p.write_text(json.dumps({"rho11": rho11, "rho22": rho22, "re_rho12": re12, "im_rho12": im12}))
    return str(p)


def run_ok(runner, args):
    res = runner.invoke(cli, args)
    assert res.exit_code == 0, res.output
    return res.output


def run_err(runner, args):
    res = runner.invoke(cli, args)
    assert res.exit_code != 0
    return json.loads(res.stderr.strip().splitlines()[-1])


class TestTomogram:
    def test_mixed(self, runner, tmp_path):
        s = write_state(tmp_path, "m.json", 0.5, 0.5)
        out = json.loads(run_ok(runner, ["tomogram", "--state", s, "--alpha", "0.3", "--beta", "1.1"]))
        assert (out["w_up"], out["w_down"]) == (0.5, 0.5)

    def test_pure_z(self, runner, tmp_path):
        s = write_state(tmp_path, "p.json", 1, 0)
        out = json.loads(run_ok(runner, ["tomogram", "--state", s, "--alpha", "0", "--beta", "0"]))
        assert (out["w_up"], out["w_down"]) == (1.0, 0.0)

    def test_general_against_closed_form(self, runner, tmp_path):
        s = write_state(tmp_path, "g.json", 0.7, 0.3, 0.1, -0.2)
        out = json.loads(run_ok(runner, ["tomogram", "--state", s, "--alpha", "0.9", "--beta", "2.0"]))
        rho = DensityMatrix.from_entries(0.7, 0.3, 0.1 - 0.2j)
        assert out["w_up"] == pytest.approx(tomogram_closed_form(rho, EulerUnitary(0.9, 2.0, 0.0)).w_up, abs=1e-11)

    def test_invalid_state(self, runner, tmp_path):
        s = write_state(tmp_path, "bad.json", 1.5, -0.5)
        err = run_err(runner, ["tomogram", "--state", s, "--alpha", "0", "--beta", "0"])
        assert err["error"] == "invalid-state"


class TestReconstruct:
    def test_roundtrip(self, runner, tmp_path):
        s = write_state(tmp_path, "g.json", 0.6, 0.4, 0.25, 0.3)
        out = json.loads(run_ok(runner, ["reconstruct", "--state", s, "--roundtrip"]))
        assert out["residual"] < 1e-10
        assert out["re_rho12"] == pytest.approx(0.25, abs=1e-10)

    def test_constant_samples_give_mixed_state(self, runner, tmp_path):
        nodes = json.loads(run_ok(runner, ["nodes", "--n-alpha", "8", "--n-beta", "6"]))["nodes"]
        assert len(nodes) == 48
        p = tmp_path / "samples.json"
        p.write_text(json.dumps({"samples": [dict(n, w_up=0.5) for n in nodes]}))
        out = json.loads(run_ok(runner, ["reconstruct", "--tomogram-samples", str(p),
                                         "--n-alpha", "8", "--n-beta", "6"]))
        assert out["rho11"] == pytest.approx(0.5, abs=1e-12)
        assert out["rho22"] == pytest.approx(0.5, abs=1e-12)
        assert abs(out["re_rho12"]) < 1e-12 and abs(out["im_rho12"]) < 1e-12

    def test_incomplete_samples(self, runner, tmp_path):
        p = tmp_path / "samples.json"
        p.write_text(json.dumps({"samples": [{"alpha": 0.0, "beta": 0.0, "w_up": 0.5}]}))
        err = run_err(runner, ["reconstruct", "--tomogram-samples", str(p)])
        assert err["error"] == "reconstruction-not-converged"

    @pytest.mark.parametrize("content", ["not json", '{"samples": [{"alpha": 0}]}', '{"rows": []}'])
    def test_malformed(self, runner, tmp_path, content):
        p = tmp_path / "x.json"
        p.write_text(content)
        assert runner.invoke(cli, ["reconstruct", "--tomogram-samples", str(p)]).exit_code != 0

    def test_missing_file(self, runner, tmp_path):
        err = run_err(runner, ["reconstruct", "--tomogram-samples", str(tmp_path / "nope.json")])
        assert err["error"] == "bad-input"

    def test_needs_an_input(self, runner):
        assert runner.invoke(cli, ["reconstruct"]).exit_code != 0


class TestScan:
    def test_grid(self, runner):
        text = run_ok(runner, ["scan"])
        rows = list(csv.DictReader(io.StringIO(text)))
        assert text.splitlines()[0] == "r,k,expectation"
        assert len(rows) == 300
        assert all(float(r["expectation"]) < 0 for r in rows)
        assert [float(r["k"]) for r in rows] == sorted(float(r["k"]) for r in rows)
        anchor = [r for r in rows if r["r"] == "1" and r["k"] == "1"]
        assert float(anchor[0]["expectation"]) == pytest.approx(0.2 * (0.15 - math.sqrt(0.1275)) + 0.02,
                                                                abs=1e-11)

    def test_file_output_is_deterministic(self, runner, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_ok(runner, ["scan", "--k", "2,0", "--out", str(a)])
        run_ok(runner, ["scan", "--k", "0,2", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_domain_error(self, runner):
        err = run_err(runner, ["scan", "--a", "0.6", "--r-min", "1", "--r-max", "1"])
        assert err["error"] == "parameter-domain"

    def test_bad_k_list(self, runner):
        assert runner.invoke(cli, ["scan", "--k", "one"]).exit_code != 0


class TestQuantumnessCommands:
    def test_pure_state_is_quantum(self, runner, tmp_path):
        s = write_state(tmp_path, "p.json", 0.5, 0.5, 0.5)
        out = json.loads(run_ok(runner, ["test", "--state", s]))
        assert out["verdict"] == "quantum"
        assert out["second_moment_gap"] == pytest.approx(-0.0214142842854, abs=1e-11)

    def test_mixed_state_error(self, runner, tmp_path):
        s = write_state(tmp_path, "m.json", 0.5, 0.5)
        assert run_err(runner, ["test", "--state", s])["error"] == "classical-state"

    def test_simulate(self, runner, tmp_path):
        s = write_state(tmp_path, "p.json", 1, 0)
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"seed": 5, "directions": [
            {"alpha": 0, "beta": 0, "shots": 100000},
            {"alpha": 0, "beta": math.pi / 2, "shots": 100000},
            {"alpha": math.pi / 2, "beta": math.pi / 2, "shots": 100000}]}))
        samples = tmp_path / "samples.json"
        first = run_ok(runner, ["simulate", "--state", s, "--plan", str(plan), "--samples-out", str(samples)])
        assert json.loads(first)["verdict"] == "quantum"
        assert json.loads(samples.read_text())["records"][0]["n_up"] == 100000
        assert run_ok(runner, ["simulate", "--state", s, "--plan", str(plan)]) == first
        two = json.loads(run_ok(runner, ["simulate", "--state", s, "--plan", str(plan),
                                         "--followup-shots", "100000"]))
        assert two["method"] == "followup"

    def test_simulate_mixed(self, runner, tmp_path):
        s = write_state(tmp_path, "m.json", 0.5, 0.5)
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"seed": 1, "directions": [
            {"alpha": 0, "beta": 0, "shots": 1000},
            {"alpha": 0, "beta": math.pi / 2, "shots": 1000},
            {"alpha": math.pi / 2, "beta": math.pi / 2, "shots": 1000}]}))
        assert run_err(runner, ["simulate", "--state", s, "--plan", str(plan)])["error"] == "no-witness-constructible"

    def test_simulate_incomplete_plan(self, runner, tmp_path):
        s = write_state(tmp_path, "p.json", 1, 0)
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"seed": 1, "directions": [{"alpha": 0, "beta": 0, "shots": 10}]}))
        assert run_err(runner, ["simulate", "--state", s, "--plan", str(plan)])["error"] == "invalid-plan"
