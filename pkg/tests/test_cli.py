import io
import json

import pytest

from brylinski import cli
from brylinski.curves import random_fourier_curve, write_fourier_file


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def test_scan_circle_double():
    code, text = run(["scan", "--shape", "circle:1", "--layer", "double", "--s", "3:3:1", "--nodes", "512"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "s_re,s_im,beta_re,beta_im,nodes,err_est"
    assert len(lines) == 2
    row = lines[1].split(",")
    assert float(row[2]) == pytest.approx(150.79645, rel=1e-7)
    assert row[4] == "512"


def test_scan_single_and_range():
    code, text = run(["scan", "--shape", "circle:1", "--layer", "single", "--s", "0:1:0.5"])
    assert code == 0
    rows = [line.split(",") for line in text.splitlines()[1:]]
    assert [float(r[0]) for r in rows] == [0.0, 0.5, 1.0]
    assert float(rows[0][2]) == pytest.approx(39.4784176, rel=1e-8)
    # 17 significant digits round-trip exactly
    assert rows[0][2] == f"{float(rows[0][2]):.17g}"


def test_scan_sphere_divergence_identity():
    code, text = run(["scan", "--shape", "sphere:1", "--layer", "double", "--s", "2:2:1"])
    assert code == 0
    assert abs(float(text.splitlines()[1].split(",")[2])) < 1e-8


def test_scan_imaginary_line():
    code, text = run(["scan", "--shape", "ellipse:2,1", "--s", "3:3:1", "--s-imag", "1.5", "--nodes", "128"])
    assert code == 0
    assert float(text.splitlines()[1].split(",")[1]) == 1.5


def test_scan_is_byte_stable():
    argv = ["scan", "--shape", "ellipse:2,1", "--s", "1.5:3:0.5", "--nodes", "128"]
    assert run(argv) == run(argv)


def test_scan_outside_convergence_region(capsys):
    code, text = run(["scan", "--shape", "circle:1", "--s", "0.5:2:0.5"])
    assert code == 3
    assert text == ""
    err = capsys.readouterr().err
    assert err.startswith("brylinski:") and err.count("\n") == 1


@pytest.mark.parametrize("argv", [
    [],
    ["scan", "--shape", "circle:1"],
    ["scan", "--shape", "square:1", "--s", "3:3:1"],
    ["scan", "--shape", "circle", "--s", "3:3:1"],
    ["scan", "--shape", "circle:a", "--s", "3:3:1"],
    ["scan", "--shape", "torus:2", "--s", "3:3:1"],
    ["scan", "--shape", "torus:1,2", "--s", "3:3:1"],
    ["scan", "--shape", "circle:1", "--s", "3:2:1"],
    ["scan", "--shape", "circle:1", "--s", "3"],
    ["scan", "--shape", "circle:-1", "--s", "3:3:1"],
    ["scan", "--shape", "fourier:/nonexistent/file", "--s", "3:3:1"],
    ["residues", "--shape", "circle:1", "--nodes", "x"],
    ["verify", "--level", "slow"],
])
def test_usage_errors(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("brylinski:") and err.count("\n") == 1


def test_residues_circle():
    code, text = run(["residues", "--shape", "circle:1"])
    assert code == 0
    data = json.loads(text)
    assert [d["pole"] for d in data] == [1, -1, -3, -5]
    assert list(data[0]) == ["pole", "route_invariant", "route_jet", "closed_form", "extrapolated", "max_pairwise_gap"]
    assert data[0]["route_invariant"] == pytest.approx(-12.566371, rel=1e-7)
    assert data[0]["max_pairwise_gap"] < 1e-8


def test_residues_sphere_and_torus():
    sphere = json.loads(run(["residues", "--shape", "sphere:1"])[1])
    assert sphere[1]["pole"] == -2
    assert sphere[1]["route_jet"] == pytest.approx(78.956835, rel=1e-7)
    torus = json.loads(run(["residues", "--shape", "torus:2,1"])[1])
    assert [d["pole"] for d in torus] == [0, -2, -4]
    assert all(d["closed_form"] is None for d in torus)
    assert all(d["max_pairwise_gap"] >= 0 for d in torus)


def test_residues_fourier_file(tmp_path):
    import numpy as np

    path = tmp_path / "blob.txt"
    write_fourier_file(random_fourier_curve(np.random.default_rng(3)), path)
    argv = ["residues", "--shape", f"fourier:{path}"]
    code, text = run(argv)
    assert code == 0
    assert run(argv)[1] == text
    data = json.loads(text)
    assert all(d["max_pairwise_gap"] < 1e-8 * max(1, abs(d["route_jet"])) for d in data)


def test_residues_with_extrapolation():
    code, text = run(["residues", "--shape", "circle:1", "--extrapolate", "--nodes", "256"])
    assert code == 0
    data = json.loads(text)
    assert data[0]["extrapolated"] == pytest.approx(-12.566371, rel=5e-2)


def test_verify_fast():
    code, text = run(["verify", "--level", "fast"])
    data = json.loads(text)
    assert code == 0 and data["pass"] is True
    names = [c["name"] for c in data["checks"]]
    assert "circle-s3-quadrature-vs-closed-form" in names
    assert list(data["checks"][0]) == ["name", "expected", "actual", "tolerance", "pass"]


def test_verify_detects_the_printed_normalization(monkeypatch):
    from functools import partial

    from brylinski import verify
    from brylinski.closed_forms import SphereSpec

    monkeypatch.setattr(verify, "SphereSpec", partial(SphereSpec, variant="printed"))
    code, text = run(["verify"])
    assert code == 1
    check = next(c for c in json.loads(text)["checks"] if c["name"] == "circle-s3-quadrature-vs-closed-form")
    assert not check["pass"]
    assert check["actual"] / check["expected"] == pytest.approx(2.0, rel=1e-6)


@pytest.mark.slow
def test_verify_full_includes_torus():
    code, text = run(["verify", "--level", "full"])
    data = json.loads(text)
    assert code == 0
    torus = [c for c in data["checks"] if c["name"].startswith("torus-route-agreement")]
    assert torus and all(c["tolerance"] == 1e-6 for c in torus)
