import json
import subprocess
import sys

import numpy as np
import pytest

from forcedosc import cli
from forcedosc.counterexample import CounterexampleBundle
from forcedosc.schemas import validate
from forcedosc.trig import HarmonicSeries


def write_series(tmp_path, series, name="h.json"):
    path = tmp_path / name
    path.write_text(json.dumps(series.to_dict()))
    return path


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


ONE_PLUS_COS2 = HarmonicSeries.from_harmonics(1.0, [(2, 1.0, 0.0)])


class TestSolve:
    def test_omega1(self, tmp_path, capsys):
        code, out, _ = run(["solve", "--omega", 1, "--input", write_series(tmp_path, ONE_PLUS_COS2)], capsys)
        assert code == 0
        u = HarmonicSeries.from_dict(out["solution"])
        assert u.distance(HarmonicSeries.from_harmonics(1.0, [(2, -1 / 3, 0.0)])) < 1e-15
        assert out["voc_distance"] < 1e-8

    def test_resonant(self, tmp_path, capsys):
        code, out, _ = run(["solve", "--omega", 1, "--input", write_series(tmp_path, HarmonicSeries.cos(1))],
                           capsys)
        assert code == 2
        assert out["resonance"]["cos"] == pytest.approx(np.pi) and out["resonance"]["sin"] == 0

    def test_noninteger(self, tmp_path, capsys):
        code, out, _ = run(["solve", "--omega", 2.5, "--input", write_series(tmp_path, HarmonicSeries.cos(2))],
                           capsys)
        assert code == 0
        assert out["solution"]["harmonics"][0][1] == pytest.approx(1 / 2.25)

    def test_malformed(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(["solve", "--input", bad], capsys)
        assert code == 64 and "cannot read input" in err

    def test_wrong_shape(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"m": 4, "values": [1, 2, 3, 4]}))
        assert run(["solve", "--input", bad], capsys)[0] == 64

    def test_missing_file(self, tmp_path, capsys):
        assert run(["solve", "--input", tmp_path / "nope.json"], capsys)[0] == 64


class TestCertify:
    def test_positive(self, tmp_path, capsys):
        code, out, _ = run(["certify", "--omega", 1, "--input", write_series(tmp_path, ONE_PLUS_COS2)], capsys)
        assert code == 0
        assert out["positive_solution"]["certificate"]["certified_lower_bound"] >= 0.66

    def test_nonexistence(self, tmp_path, capsys):
        h = HarmonicSeries.from_harmonics(9.0, [(2, -10.0, 0.0), (4, 7.0, 0.0)])
        code, out, _ = run(["certify", "--omega", 3, "--input", write_series(tmp_path, h)], capsys)
        assert code == 3
        assert out["nonexistence"]["sum"] == pytest.approx(-4.0)

    def test_zero_forcing(self, tmp_path, capsys):
        code, _, err = run(["certify", "--omega", 1, "--input", write_series(tmp_path, HarmonicSeries())],
                           capsys)
        assert code == 65 and "identically zero" in err

    def test_negative_forcing(self, tmp_path, capsys):
        h = HarmonicSeries.from_harmonics(0.2, [(2, 1.0, 0.0)])
        assert run(["certify", "--omega", 1, "--input", write_series(tmp_path, h)], capsys)[0] == 65

    def test_noninteger_omega(self, tmp_path, capsys):
        assert run(["certify", "--omega", 2.5, "--input", write_series(tmp_path, ONE_PLUS_COS2)],
                   capsys)[0] == 65

    def test_positive_margin_omega2(self, tmp_path, capsys):
        code, out, _ = run(["certify", "--omega", 2, "--input", write_series(tmp_path, HarmonicSeries.constant(1.0))],
                           capsys)
        assert code == 0 and out["nonexistence"] is None

    def test_undecided(self, tmp_path, capsys):
        # u_p = cos 6 theta at omega = 2: every parity pair sums to 0, and the mean is 0 for
        # every kernel shift, so the margin cannot be positive either
        h = HarmonicSeries.cos(6, -32.0)
        code, out, _ = run(["certify", "--omega", 2, "--input", write_series(tmp_path, h)], capsys)
        assert code == 4
        assert out["nonexistence"] is None and out["margin"]["margin"] <= 1e-9

    def test_nonexistence_omega2(self, tmp_path, capsys):
        h = HarmonicSeries.cos(3, -5.0)  # u_p = cos 3 theta, u(pi) + u(pi / 2) = -1
        code, out, _ = run(["certify", "--omega", 2, "--input", write_series(tmp_path, h)], capsys)
        assert code == 3 and out["nonexistence"]["sum"] == pytest.approx(-1.0)


class TestMargin:
    def test_margin(self, tmp_path, capsys):
        h = HarmonicSeries.constant(1.0)
        code, out, _ = run(["margin", "--omega", 1, "--input", write_series(tmp_path, h)], capsys)
        assert code == 0 and out["margin"] == pytest.approx(1.0)
        validate(out, "margin_report")


class TestCounterexample:
    def test_omega3(self, tmp_path, capsys):
        out_path = tmp_path / "bundle.json"
        code, _, _ = run(["counterexample", "--omega", 3, "--output", out_path], capsys)
        assert code == 0
        data = json.loads(out_path.read_text())
        assert data["margin"]["margin"] == pytest.approx(-2.0, abs=1e-9)
        csv_rows = (tmp_path / "bundle.csv").read_text().splitlines()
        assert csv_rows[0] == "theta,value" and len(csv_rows) == 8193
        CounterexampleBundle.from_dict(data)

    def test_omega5_default_epsilon(self, tmp_path, capsys):
        code, out, _ = run(["counterexample", "--omega", 5, "--epsilon", "default"], capsys)
        assert code == 0
        assert out["h_positivity"]["certified_lower_bound"] >= 12.5 - 1e-3
        assert out["epsilon"] == pytest.approx(np.pi / 20)

    def test_omega2(self, capsys):
        assert run(["counterexample", "--omega", 2], capsys)[0] == 65

    def test_bad_epsilon(self, capsys):
        assert run(["counterexample", "--omega", 3, "--epsilon", 1.0], capsys)[0] == 65
        assert run(["counterexample", "--omega", 3, "--epsilon", "wide"], capsys)[0] == 64

    def test_report_from_file(self, tmp_path, capsys):
        out_path = tmp_path / "bundle.json"
        run(["counterexample", "--omega", 3, "--output", out_path], capsys)
        code, out, _ = run(["report", "--input", out_path], capsys)
        assert code == 0
        assert out["harmonic2"]["cos"] == pytest.approx(-10 * np.pi)
        validate(out, "symmetry_report")


class TestExplore:
    def test_structure(self, capsys):
        code, out, _ = run(["explore", "--seed", 1, "--trials", 10], capsys)
        assert code == 0 and len(out["candidates"]) == 10
        validate(out, "exploration_report")

    def test_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert run(["explore", "--seed", 5, "--trials", 20, "--output", path], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_zero_trials(self, capsys):
        code, out, _ = run(["explore", "--seed", 1, "--trials", 0], capsys)
        assert code == 0 and out["candidates"] == []

    def test_degree_too_large(self, capsys):
        assert run(["explore", "--degree", 17], capsys)[0] == 65


class TestConfig:
    def test_grid_floor(self, tmp_path, capsys):
        path = write_series(tmp_path, ONE_PLUS_COS2)
        assert run(["margin", "--input", path, "--grid", 512], capsys)[0] == 64

    def test_tolerance_positive(self, tmp_path, capsys):
        path = write_series(tmp_path, ONE_PLUS_COS2)
        assert run(["solve", "--input", path, "--tol", 0], capsys)[0] == 64

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"], capsys)[0] == 64

    def test_env_grid(self, tmp_path, capsys, monkeypatch):
        path = write_series(tmp_path, ONE_PLUS_COS2)
        monkeypatch.setenv("RP_GRID_M", "2048")
        code, out, _ = run(["margin", "--input", path], capsys)
        assert code == 0 and out["grid_m"] == 2048
        code, out, _ = run(["margin", "--input", path, "--grid", 1024], capsys)
        assert out["grid_m"] == 1024
        monkeypatch.setenv("RP_GRID_M", "100")
        assert run(["margin", "--input", path], capsys)[0] == 64

    def test_run_config(self):
        with pytest.raises(cli.UsageError):
            cli.RunConfig("solve", grid_m=10)


def test_module_entry_point(tmp_path):
    path = write_series(tmp_path, ONE_PLUS_COS2)
    proc = subprocess.run([sys.executable, "-m", "forcedosc", "solve", "--input", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["residual"] < 1e-12
    proc = subprocess.run([sys.executable, "-m", "forcedosc", "--nonsense"], capture_output=True, text=True)
    assert proc.returncode == 64
