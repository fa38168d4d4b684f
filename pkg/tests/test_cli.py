import json
import shutil
import subprocess
import sys

import pytest

from conftest import EXAMPLE_TEXT
from corpus import corpus
from modsolve.cli import bundled_systems, main
from modsolve.parser import parse_polynomial
from modsolve.pipeline import RunConfig, run_pipeline


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.sys"
    path.write_text(EXAMPLE_TEXT)
    return path


def test_example_json(capsys, example_file):
    code, out, _ = run(capsys, str(example_file), "--primes", "3", "--seed", "1")
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 40
    assert data["triangular_sets"] == [["x2^7", "x1 + x2^2"], ["x2^3", "x1^11"]]
    assert data["total_multiplicity"] == 40
    assert data["distinct_points"] == 1
    assert data["verified"] is True
    assert set(data) >= {"variables", "dimension", "triangular_sets", "solutions",
                         "total_multiplicity", "verified", "timing"}
    assert set(data["timing"]) == {"rounds", "primes_used", "wall_seconds"}
    assert data["timing"]["rounds"] >= 1 and data["timing"]["primes_used"] >= 3
    for s in data["solutions"]:
        assert s["coords"] == [[0.0, 0.0], [0.0, 0.0]]


def test_single_point(capsys, tmp_path):
    path = tmp_path / "pt.sys"
    path.write_text("vars x1 x2;\nx1\nx2\n")
    code, out, _ = run(capsys, str(path))
    assert code == 0
    data = json.loads(out)
    assert data["solutions"] == [{"coords": [[0.0, 0.0], [0.0, 0.0]], "multiplicity": 1,
                                  "residual": 0.0, "set": 0, "shared_with": []}]


@pytest.mark.parametrize("mode", ["modular", "direct"])
def test_not_zero_dimensional(capsys, tmp_path, mode):
    path = tmp_path / "line.sys"
    path.write_text("vars x1 x2;\nx1\n")
    code, out, err = run(capsys, str(path), "--mode", mode)
    assert code == 2
    assert "not zero-dimensional" in err


def test_verification_failure_exit_code(capsys, example_file):
    # an impossible residual bound cannot be met by the (inexact) solver
    path = example_file.with_name("c.sys")
    path.write_text("vars x y\nx^2 + y^2 - 5\nx*y - 3\n")
    code, out, err = run(capsys, str(path), "--residual-tol", "1e-300", "--seed", "1")
    assert code == 3
    assert "verification failed" in err
    assert json.loads(out)["verified"] is False


def test_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "bad.sys"
    path.write_text("vars x;\nx + y\n")
    code, _, err = run(capsys, str(path))
    assert code == 1
    assert "line 2" in err


def test_text_format_and_modes(capsys, example_file):
    code, out, _ = run(capsys, str(example_file), "--format", "text", "--mode", "direct")
    assert code == 0
    assert "dimension: 40" in out and "x1 + x2^2" in out


def test_decomposition_only(capsys, example_file):
    code, out, _ = run(capsys, str(example_file), "--decomposition-only", "--seed", "4")
    data = json.loads(out)
    assert code == 0
    assert data["solutions"] == [] and data["verified"] is None
    assert data["dimension"] == 40


def test_disjoint_flag(capsys, example_file):
    code, out, _ = run(capsys, str(example_file), "--disjoint", "--seed", "4")
    data = json.loads(out)
    assert code == 0
    assert data["triangular_sets"] == [["x2^3", "x1^11"]]


def test_verbose_streams_events(capsys, example_file):
    code, _, err = run(capsys, str(example_file), "--verbose", "--seed", "2", "--primes", "2")
    assert code == 0
    for kind in ("round", "vote", "lift", "ptest", "done"):
        assert f"] {kind}" in err


def test_bundled_systems(capsys):
    names = bundled_systems()
    assert {"cyclic5", "example", "katsura3"} <= set(names)
    code, out, _ = run(capsys, "katsura3", "--seed", "1", "--primes", "3")
    assert code == 0 and json.loads(out)["dimension"] == 8
    code, out, err = run(capsys, "cyclic4", "--seed", "1", "--primes", "2")
    assert code == 2


def test_bad_flags(capsys):
    with pytest.raises(SystemExit):
        main(["x", "--primes", "0"])
    with pytest.raises(SystemExit):
        main(["x", "--tol", "-1"])


@pytest.mark.parametrize("I", corpus()[:25], ids=lambda I: f"vdim{I.vdim()}")
def test_modes_agree_and_json_round_trips(I):
    a = run_pipeline(I, RunConfig(mode="modular", primes_per_round=3, seed=8)).to_json()
    b = run_pipeline(I, RunConfig(mode="direct")).to_json()
    assert a["triangular_sets"] == b["triangular_sets"]
    assert a["total_multiplicity"] == b["total_multiplicity"] == I.vdim()
    assert a["verified"] and b["verified"]
    for strings, F in zip(a["triangular_sets"], run_pipeline(
            I, RunConfig(mode="direct", decomposition_only=True)).decomposition):
        assert [parse_polynomial(s, I.ring) for s in strings] == list(F.polys)


@pytest.mark.skipif(shutil.which("modsolve") is None, reason="console script not installed")
def test_console_script(example_file):
    proc = subprocess.run(["modsolve", str(example_file), "--seed", "1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"] == 40
    proc = subprocess.run([sys.executable, "-m", "modsolve.cli", "--list-systems"],
                          capture_output=True, text=True, timeout=120)
    assert "cyclic5" in proc.stdout.split()
