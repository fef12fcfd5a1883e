import json
import math
import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from madelung_flow import cli
from madelung_flow.similarity import PhysParams, fit_constants, linear_density_shape


def rows(path):
    with open(path) as fh:
        return [line.rstrip("\n").split(",") for line in fh if not line.startswith("#")]


def header(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            if line.startswith("# ") and " = " in line:
                k, v = line[2:].rstrip("\n").split(" = ", 1)
                out[k] = v
    return out


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestFormatting:
    def test_integers_and_zero(self):
        assert cli.fmt(1.0) == "1" and cli.fmt(-0.0) == "0" and cli.fmt(0.0) == "0"
        assert cli.fmt(0.1) == "0.1" and cli.fmt(1e-20) == "1e-20"
        assert cli.fmt(True) == "true" and cli.fmt((1.0, 2.5)) == "[1,2.5]"

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trip(self, x):
        assert float(cli.fmt(x)) == x or (x == 0 and float(cli.fmt(x)) == 0)


class TestConfig:
    def test_file_and_override(self, in_tmp):
        (in_tmp / "run.cfg").write_text("# comment\nf0 = 4   # trailing\neta_end = 2\npoints = 3\n")
        assert cli.main(["linear", "--config", "run.cfg", "--points", "5"]) == 0
        r = rows("linear.csv")
        assert len(r) == 5 and r[0] == ["0", "4", "0"]
        assert header("linear.csv")["points"] == "5"

    def test_unknown_key(self, capsys):
        assert cli.main(["linear", "--bogus", "1"]) == 2
        err = capsys.readouterr().err
        assert "bogus" in err and err.count("\n") == 1

    def test_bad_value(self):
        assert cli.main(["linear", "--points", "many"]) == 2
        assert cli.main(["linear", "--hbar", "0"]) == 2
        assert cli.main(["linear", "--eta_start", "-1"]) == 2
        assert cli.main(["linear", "--format", "xml"]) == 2

    def test_missing_value_and_file(self):
        assert cli.main(["linear", "--points"]) == 2
        assert cli.main(["linear", "--config", "nope.cfg"]) == 2

    def test_bad_config_line(self, in_tmp):
        (in_tmp / "bad.cfg").write_text("just words\n")
        assert cli.main(["linear", "--config", "bad.cfg"]) == 2

    def test_unknown_command(self):
        assert cli.main(["frobnicate"]) == 2

    def test_equals_flag_syntax(self):
        assert cli.main(["linear", "--points=2", "--eta_end=1"]) == 0
        assert len(rows("linear.csv")) == 2


class TestLinear:
    def test_defaults(self):
        assert cli.main(["linear"]) == 0
        r = rows("linear.csv")
        assert r[0] == ["0", "1", "0"]
        assert len(r) == 1201 and float(r[-1][0]) == 12.0
        h = header("linear.csv")
        for key in ("hbar", "m", "n", "f0", "fp0", "eta_start", "eta_end", "points", "c1_fitted"):
            assert key in h

    def test_override_constants(self):
        assert cli.main(["linear", "--c1", "1", "--c2", "0"]) == 0
        assert float(rows("linear.csv")[0][1]) == 0.0

    def test_half_override_rejected(self):
        assert cli.main(["linear", "--c1", "1"]) == 2

    def test_degenerate_span(self):
        assert cli.main(["linear", "--eta_end", "0"]) == 0
        assert rows("linear.csv") == [["0", "1", "0"]]

    def test_json(self):
        assert cli.main(["linear", "--format", "json", "--points", "4", "--eta_end", "3"]) == 0
        doc = json.load(open("linear.json"))
        assert doc["columns"] == ["eta", "f", "fp"]
        assert len(doc["rows"]) == 4 and doc["rows"][0] == [0.0, 1.0, 0.0]
        assert doc["meta"]["command"] == "linear"


class TestSolve:
    def test_matches_linear(self):
        assert cli.main(["solve"]) == 0
        assert cli.main(["linear"]) == 0
        a = np.array(rows("solve.csv"), dtype=float)
        b = np.array(rows("linear.csv"), dtype=float)
        assert a.shape == (1201, 5)
        assert np.max(np.abs(a[:, 1] - b[:, 1])) <= 1e-6
        assert np.max(np.abs(a[:, 2] - b[:, 2])) <= 1e-6

    def test_zero_sidecar(self):
        assert cli.main(["solve", "--n", "0.11", "--eta_end", "25"]) == 0
        z = rows("solve.zeros.csv")
        assert len(z) >= 3
        assert header("solve.zeros.csv")["zero_count"] == str(len(z))

    def test_negative_coupling(self):
        assert cli.main(["solve", "--n", "-0.1"]) == 2

    def test_f_form_hits_zero(self, capsys):
        assert cli.main(["solve", "--form", "f_form"]) == 3
        assert "numerical failure" in capsys.readouterr().err


class TestScan:
    def test_default(self):
        assert cli.main(["scan"]) == 0
        s = rows(os.path.join("scan_out", "summary.csv"))
        d = [float(r[1]) for r in s]
        assert [float(r[0]) for r in s] == [0, 0.078, 0.11, 0.13]
        assert d[0] == 0 and all(b > a for a, b in zip(d, d[1:]))
        assert all(int(r[2]) >= 3 for r in s)
        for n in ("0", "0.078", "0.11", "0.13"):
            assert os.path.exists(os.path.join("scan_out", f"shape_n{n}.csv"))

    def test_singleton(self):
        assert cli.main(["scan", "--n_values", "0"]) == 0
        assert float(rows(os.path.join("scan_out", "summary.csv"))[0][1]) == 0

    def test_duplicates(self, capsys):
        with pytest.warns(UserWarning, match="duplicate"):
            assert cli.main(["scan", "--n_values", "0.11,0,0.11"]) == 0
        assert "duplicate" in capsys.readouterr().err
        assert len(rows(os.path.join("scan_out", "summary.csv"))) == 2

    def test_thread_env(self, monkeypatch):
        monkeypatch.setenv(cli.THREADS_ENV, "1")
        assert cli.main(["scan", "--n_values", "0,0.11", "--out_dir", "one"]) == 0
        monkeypatch.setenv(cli.THREADS_ENV, "3")
        assert cli.main(["scan", "--n_values", "0,0.11", "--out_dir", "one_b"]) == 0
        a = open(os.path.join("one", "shape_n0.11.csv")).read()
        b = open(os.path.join("one_b", "shape_n0.11.csv")).read()
        assert a.replace("one", "") == b.replace("one_b", "")
        monkeypatch.setenv(cli.THREADS_ENV, "zero")
        assert cli.main(["scan", "--n_values", "0"]) == 2

    def test_no_temp_files_left(self):
        assert cli.main(["scan", "--n_values", "0"]) == 0
        assert not [f for f in os.listdir("scan_out") if f.startswith(".tmp-")]


class TestReconstruct:
    def test_default_window(self):
        assert cli.main(["reconstruct"]) == 0
        r = rows("reconstruct.csv")
        assert len(r) == 801 * 56 and len(r[0]) == 3
        h = header("reconstruct.csv")
        assert int(h["sign_changes_first_t"]) > int(h["sign_changes_last_t"])

    def test_zero_field(self):
        assert cli.main(["reconstruct", "--zero_field", "true", "--nx", "5", "--nt", "3"]) == 0
        assert all(float(v[2]) == 0 for v in rows("reconstruct.csv"))

    def test_bad_time(self):
        assert cli.main(["reconstruct", "--t_start", "0"]) == 2
        assert cli.main(["reconstruct", "--t_start", "-1"]) == 2


class TestEvolve:
    def test_gaussian(self):
        assert cli.main(["evolve"]) == 0
        h = header("evolve.csv")
        assert float(h["l2_error_free_packet"]) <= 1e-6
        assert len(rows("evolve.csv")) == 101

    def test_planewave(self):
        assert cli.main(["evolve", "--initial", "planewave", "--n", "0.5", "--points", "64", "--box", "6.25"]) == 0
        assert float(header("evolve.csv")["max_error_planewave"]) <= 1e-8

    def test_aliasing(self, capsys):
        assert cli.main(["evolve", "--dt", "0.1"]) == 2
        assert "maximal admissible dt" in capsys.readouterr().err

    def test_selfsimilar(self):
        assert cli.main(["evolve", "--initial", "selfsimilar", "--dims", "2", "--points", "32",
                         "--box", "8", "--dt", "0.01", "--steps", "20", "--record_every", "5"]) == 0
        assert math.isfinite(float(header("evolve.csv")["collapse_metric"]))

    def test_bad_grid(self):
        assert cli.main(["evolve", "--points", "100"]) == 2


class TestDiagnose:
    def test_default(self):
        assert cli.main(["diagnose"]) == 0
        h = header("diagnose.csv")
        assert float(h["coupled_drift_corrected"]) < 1e-5
        assert "mass_differences_shrink" in h and "gp_residual_rms" in h
        r = np.array(rows("diagnose.csv"), dtype=float)
        # the continuity equation of the linear system vanishes for g = h = eta/4
        assert np.max(np.abs(r[:, 3])) < 1e-14

    def test_linear_momentum_residual(self):
        assert cli.main(["diagnose", "--n", "0"]) == 0
        r = np.array(rows("diagnose.csv"), dtype=float)
        assert np.nanmax(np.abs(r[:, 4])) <= 1e-4


def test_determinism():
    assert cli.main(["linear", "--output", "a.csv"]) == 0
    first = open("a.csv", "rb").read()
    assert cli.main(["linear", "--output", "a.csv"]) == 0
    assert open("a.csv", "rb").read() == first


def test_console_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "madelung_flow.cli", "linear", "--eta_end", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "linear.csv"
