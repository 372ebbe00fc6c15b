import json
import subprocess
import sys
from pathlib import Path

import pytest

from evolutes.cli import main

FIX = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("EVOLUTES_OUTPUT_DIR", str(tmp_path))
    return tmp_path


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def values(text):
    return dict(line.split(" ", 1) for line in text.strip().splitlines())


def test_invariants_circle(capsys):
    code, out, _ = run(capsys, "invariants", FIX / "circle-sphere.json")
    v = values(out)
    assert code == 0 and v["F_e"] == "0" and v["F"] == "3.14159265359"


def test_invariants_ellipse(capsys):
    code, out, _ = run(capsys, "invariants", FIX / "ellipse.json", "--n", "512")
    v = values(out)
    assert code == 0 and v["singular_points"] == "4"
    assert v["L"] == "9.68844822055"
    assert v["F_e"] == "-5.30143760293"


def test_invariants_nonconvex(capsys):
    code, out, _ = run(capsys, "invariants", FIX / "nonconvex-plane.json", "--n", "256")
    v = values(out)
    assert code == 0 and float(v["strong_convexity_margin"]) < 0
    assert "F_e" not in v and "singular_points" not in v


def test_verify_circle_full_suite(capsys, outdir):
    code, out, _ = run(capsys, "verify", FIX / "circle-hyperbolic.json", "--n", "256")
    assert code == 0 and "FAIL" not in out
    report = json.loads((outdir / "circle-hyperbolic.report.json").read_text())
    assert all(r["passed"] for r in report["reports"])


def test_verify_sphere_fixture(capsys):
    code, out, _ = run(capsys, "verify", FIX / "polar-sphere.json", "--theorems", "total-curvature", "--n", "2048")
    assert code == 0
    residual = float(out.split("residual=")[1].split()[0])
    assert abs(residual) < 1e-6


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", FIX / "ellipse.json", "--theorems", "nope")[0] == 2
    assert run(capsys, "verify", FIX / "nonconvex-plane.json", "--n", "256")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "invariants", bad)
    assert code == 2 and "bad.json:1" in err
    assert run(capsys, "invariants", tmp_path / "missing.json")[0] == 2


def test_strict_rejects_truncated_curve(capsys):
    code, _, err = run(capsys, "verify", FIX / "polar-sphere.json", "--n", "16", "--strict")
    assert code != 0 and "not resolved" in err
    code, _, err = run(capsys, "verify", FIX / "polar-sphere.json", "--n", "16", "--theorems", "ros")
    assert "not resolved" in err


def test_steiner_and_gauss_bonnet(capsys):
    code, out, _ = run(capsys, "steiner", FIX / "polar-hyperbolic.json", "--r", "0.1", "--n", "512")
    assert code == 0 and out.startswith("PASS steiner")
    code, out, _ = run(capsys, "gauss-bonnet", FIX / "lens-sphere.json")
    assert code == 0 and "PASS gauss-bonnet" in out
    code, out, _ = run(capsys, "gauss-bonnet", FIX / "double-circle-sphere.json", "--n", "256")
    assert code == 0 and out.count("PASS") == 1


def test_plot_ellipse(capsys, outdir):
    code, _, _ = run(capsys, "plot", FIX / "ellipse.json", "e.svg", "--with-evolute", "--n", "512")
    svg = (outdir / "e.svg").read_text()
    assert code == 0
    assert svg.count("<path") == 2 and svg.count('class="cusp"') == 4
    assert 'width="1000" height="1000"' in svg


def test_plot_circle_and_hyperbolic(capsys, outdir):
    run(capsys, "plot", FIX / "circle-plane.json", "c.svg", "--with-evolute", "--n", "128")
    svg = (outdir / "c.svg").read_text()
    assert svg.count("<path") == 1 and 'class="evolute-point"' in svg
    run(capsys, "plot", FIX / "polar-hyperbolic.json", "h.svg", "--chart", "klein", "--n", "256")
    assert 'class="chart-boundary"' in (outdir / "h.svg").read_text()
    assert run(capsys, "plot", FIX / "circle-sphere.json", "x.svg", "--chart", "klein")[0] == 3


def test_determinism(capsys, outdir):
    for name in ("a", "b"):
        run(capsys, "plot", FIX / "polar-sphere.json", f"{name}.svg", "--with-evolute", "--n", "256")
        run(capsys, "verify", FIX / "polar-sphere.json", "--n", "256", "--report", f"{name}.json")
    assert (outdir / "a.svg").read_bytes() == (outdir / "b.svg").read_bytes()
    assert (outdir / "a.json").read_bytes() == (outdir / "b.json").read_bytes()


def test_base_point_flag(capsys):
    code, out, _ = run(capsys, "invariants", FIX / "polar-sphere.json", "--n", "256", "--base-point", "0.1,0,0.99498743710662")
    assert code == 0 and "F_e" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "evolutes", "verify", str(FIX / "lens-plane.json")],
        capture_output=True,
        text=True,
        env={"EVOLUTES_OUTPUT_DIR": str(tmp_path), "PATH": ""},
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS gauss-bonnet" in proc.stdout
