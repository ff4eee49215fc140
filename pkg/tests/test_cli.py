"""Command-line interface: exit codes, file formats, round trips."""

import json

import numpy as np
import pytest

from shiftwave import (
    Genus,
    Grid1D,
    SampledSignal1D,
    SampledSignal2D,
    SplineSpec,
    synthesize_wavelet,
    write_csv,
    write_csv_2d,
    write_swv1,
)
from shiftwave.cli import main

from conftest import random_bandlimited, random_bandlimited_2d


def run(*argv):
    return main(list(argv))


# ---------------------------------------------------------------------------
# synth

def test_synth_quadrature_columns(tmp_path, capsys):
    out = tmp_path / "psi.csv"
    assert run("synth", "--genus", "bspline", "--alpha", "3", "--n", "1024",
               "--dx", "0.0625", "--quadrature", "--output", str(out)) == 0
    rows = [line for line in out.read_text().splitlines()
            if line and not line.startswith("#")]
    data = np.array([[float(v) for v in r.split(",")] for r in rows])
    x, w1, w2, env = data.T
    assert len(x) == 1024
    assert np.all(env >= np.abs(w1) - 1e-12)
    assert np.all(env >= np.abs(w2) - 1e-12)
    np.testing.assert_allclose(env, np.hypot(w1, w2), atol=1e-12)


def test_synth_shannon_matches_library(tmp_path):
    out = tmp_path / "sh.csv"
    grid = Grid1D(512, -64.0, 0.25)
    assert run("synth", "--genus", "shannon", "--n", "512", "--dx", "0.25",
               "--x0", "-64", "--output", str(out)) == 0
    rows = [line for line in out.read_text().splitlines()
            if line and not line.startswith("#") and not line.startswith("x,")]
    vals = np.array([complex(float(r.split(",")[1]), float(r.split(",")[2]))
                     for r in rows])
    psi = synthesize_wavelet(SplineSpec(Genus.SHANNON), grid)
    assert np.max(np.abs(vals - psi.values)) < 1e-9


# ---------------------------------------------------------------------------
# analyze / reconstruct round trips

def test_analyze_reconstruct_round_trip_csv(tmp_path, rng, capsys):
    grid = Grid1D(1024, -256.0, 0.5)
    f = random_bandlimited(rng, grid, 12)
    sig = tmp_path / "f.csv"
    coef = tmp_path / "c.json"
    rec = tmp_path / "r.csv"
    write_csv(f, str(sig))
    assert run("analyze", "--genus", "orthonormal", "--alpha", "3",
               "--levels", "4", "--input", str(sig), "--output", str(coef)) == 0
    assert run("reconstruct", "--input", str(coef), "--output", str(rec),
               "--reference", str(sig)) == 0
    msg = capsys.readouterr().out
    err = float(msg.split("relative reconstruction error:")[1].split()[0])
    assert err < 1e-6


def test_round_trip_swv1_input(tmp_path, rng):
    grid = Grid1D(512, -128.0, 0.5)
    f = random_bandlimited(rng, grid, 8)
    sig = tmp_path / "f.swv"
    coef = tmp_path / "c.json"
    write_swv1(f, str(sig))
    assert run("analyze", "--genus", "bspline", "--levels", "3",
               "--input", str(sig), "--output", str(coef)) == 0
    assert coef.exists()


def test_reconstruct_spec_mismatch_exit_1(tmp_path, rng, capsys):
    grid = Grid1D(512, -128.0, 0.5)
    f = random_bandlimited(rng, grid, 8)
    sig, coef, rec = (tmp_path / n for n in ("f.csv", "c.json", "r.csv"))
    write_csv(f, str(sig))
    assert run("analyze", "--genus", "bspline", "--alpha", "3", "--levels", "3",
               "--input", str(sig), "--output", str(coef)) == 0
    assert run("reconstruct", "--genus", "orthonormal",
               "--input", str(coef), "--output", str(rec)) == 1
    err = capsys.readouterr().err
    assert "bspline" in err and "orthonormal" in err


def test_empty_input_exit_1(tmp_path, capsys):
    sig = tmp_path / "empty.csv"
    sig.write_text("")
    assert run("analyze", "--input", str(sig),
               "--output", str(tmp_path / "c.json")) == 1
    assert "no samples" in capsys.readouterr().err


def test_missing_required_flag_exit_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("analyze", "--input", str(tmp_path / "missing.csv"))
    assert exc.value.code == 2


def test_missing_input_file_exit_1(tmp_path):
    assert run("analyze", "--input", str(tmp_path / "missing.csv"),
               "--output", str(tmp_path / "c.json")) == 1


def test_analyze2d_reconstruct2d_round_trip(tmp_path, rng, capsys):
    grid = Grid1D(64, -16.0, 0.5)
    f = random_bandlimited_2d(rng, grid, grid, 3)
    img, coef, rec, pgm = (tmp_path / n
                           for n in ("f.csv", "c.json", "r.csv", "r.pgm"))
    write_csv_2d(f, str(img))
    assert run("analyze2d", "--genus", "bspline", "--alpha", "3",
               "--levels", "3", "--input", str(img), "--output", str(coef)) == 0
    assert run("reconstruct2d", "--input", str(coef), "--output", str(rec),
               "--pgm", str(pgm), "--reference", str(img)) == 0
    msg = capsys.readouterr().out
    err = float(msg.split("relative reconstruction error:")[1].split()[0])
    assert err < 1e-5
    assert pgm.read_text().startswith("P2")


# ---------------------------------------------------------------------------
# metrics table

def test_metrics_table_default_rows(tmp_path):
    out = tmp_path / "table.csv"
    js = tmp_path / "table.json"
    assert run("metrics-table", "--n", "2048", "--dx", "0.03125",
               "--output", str(out), "--json", str(js)) == 0
    rows = [r for r in out.read_text().splitlines()
            if r and not r.startswith("#")]
    assert rows[0].startswith("label,")
    labels = [r.split(",")[0] for r in rows[1:]]
    assert labels == ["shannon", "bspline-1", "bspline-3", "bspline-6",
                      "orthonormal-1", "orthonormal-3", "orthonormal-6"]
    for r in rows[1:]:
        rho = float(r.split(",")[1])
        assert rho == pytest.approx(1.0, abs=1e-6)
    doc = json.loads(js.read_text())
    assert len(doc["rows"]) == 7
    assert doc["grid"]["n"] == 2048


def test_metrics_table_taps(tmp_path):
    taps = tmp_path / "taps.csv"
    s = np.sqrt(2)
    lines = ["k,h1,h2"]
    # same orthonormal lowpass in both trees: a degenerate (non-quadrature) pair
    for k, h in enumerate((1 / s, 1 / s)):
        lines.append(f"{k},{h},{h}")
    taps.write_text("\n".join(lines) + "\n")
    out = tmp_path / "t.csv"
    assert run("metrics-table", "--taps", str(taps), "--n", "2048",
               "--dx", "0.03125", "--output", str(out)) == 0
    row = [r for r in out.read_text().splitlines()
           if r and not r.startswith("#") and not r.startswith("label")][0]
    assert float(row.split(",")[1]) < 1e-6  # rho ~ 0 for identical trees


# ---------------------------------------------------------------------------
# checks

def test_checks_all_pass(tmp_path, capsys):
    rep = tmp_path / "report.json"
    assert run("checks", "--output", str(rep)) == 0
    doc = json.loads(rep.read_text())
    assert doc["pass"] is True
    assert all(item["pass"] for item in doc["results"])
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_checks_bedrosian_overlap_expected_fail(capsys):
    assert run("checks", "--suite", "bedrosian", "--overlap") == 0
    assert "expected-fail" in capsys.readouterr().out


def test_checks_unknown_suite_exit_2(capsys):
    assert run("checks", "--suite", "bogus") == 2
    assert "invalid suite" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# step demo

def test_step_demo_sweep_20(capsys):
    assert run("step-demo", "--genus", "bspline", "--alpha", "3",
               "--n", "1024", "--dx", "0.5", "--levels", "4",
               "--sweep", "20", "--seed", "7") == 0
    assert "20/20" in capsys.readouterr().out


def test_step_demo_plot_columns(tmp_path, capsys):
    out = tmp_path / "demo.csv"
    assert run("step-demo", "--genus", "bspline", "--n", "1024", "--dx", "0.5",
               "--step-x0", "13.3", "--output", str(out)) == 0
    header = [line for line in out.read_text().splitlines()
              if line.startswith("# columns:")][0]
    assert header.endswith("x,step,reference_wavelet,shifted_wavelet,envelope")
    rows = [r for r in out.read_text().splitlines() if not r.startswith("#")]
    assert len(rows) == 1024
    assert all(len(r.split(",")) == 5 for r in rows)


# ---------------------------------------------------------------------------
# config and determinism

def test_toml_config_supplies_spec(tmp_path, rng):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('genus = "orthonormal"\nalpha = 3.0\nlevels = 3\n')
    grid = Grid1D(512, -128.0, 0.5)
    f = random_bandlimited(rng, grid, 8)
    sig, coef = tmp_path / "f.csv", tmp_path / "c.json"
    write_csv(f, str(sig))
    assert run("analyze", "--config", str(cfg), "--input", str(sig),
               "--output", str(coef)) == 0
    doc = json.loads(coef.read_text())
    assert doc["spec"]["genus"] == "orthonormal"
    assert doc["levels"] == 3


def test_bad_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("genus = [unclosed\n")
    assert run("synth", "--config", str(cfg),
               "--output", str(tmp_path / "o.csv")) == 2


def test_flag_overrides_config(tmp_path, rng):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('genus = "orthonormal"\n')
    grid = Grid1D(512, -128.0, 0.5)
    f = random_bandlimited(rng, grid, 8)
    sig, coef = tmp_path / "f.csv", tmp_path / "c.json"
    write_csv(f, str(sig))
    assert run("analyze", "--config", str(cfg), "--genus", "bspline",
               "--levels", "3", "--input", str(sig), "--output", str(coef)) == 0
    assert json.loads(coef.read_text())["spec"]["genus"] == "bspline"


def test_synth_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert run("synth", "--genus", "orthonormal", "--alpha", "3",
                   "--n", "512", "--dx", "0.25", "--output", str(out)) == 0
    assert a.read_bytes() == b.read_bytes()
