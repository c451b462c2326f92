import json

import numpy as np
import pytest

from qwspec.cli import main
from qwspec.operators import model_from_json_dict

C3_TEXT = "0 1\n1 2\n2 0\n"


@pytest.fixture
def c3_file(tmp_path):
    path = tmp_path / "c3.edges"
    path.write_text(C3_TEXT)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_writes_model(tmp_path, capsys, c3_file):
    out = tmp_path / "c3.model.json"
    code, stdout, _ = run(capsys, "build", c3_file, "-o", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["format"] == "qwspec-model"
    assert doc["n_arcs"] == 6
    assert doc["provenance"]["weight_scheme"] == "grover"


def test_build_rejects_self_loop(tmp_path, capsys):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n1 2\n3 3\n")
    code, _, stderr = run(capsys, "build", bad)
    assert code == 2
    assert "SelfLoopForbidden" in stderr
    assert "line 3" in stderr


def test_build_tol_op_override_recorded(tmp_path, capsys, c3_file):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "build", c3_file, "--tol-op", "1e-9", "-o", out)
    assert code == 0
    assert json.loads(out.read_text())["tol_op"] == 1e-9


def test_env_var_overrides_tol_op(tmp_path, capsys, c3_file, monkeypatch):
    out = tmp_path / "m.json"
    monkeypatch.setenv("QWSPEC_TOL_OP", "1e-8")
    code, _, _ = run(capsys, "build", c3_file, "-o", out)
    assert code == 0
    assert json.loads(out.read_text())["tol_op"] == 1e-8
    monkeypatch.setenv("QWSPEC_TOL_OP", "bogus")
    code, _, stderr = run(capsys, "build", c3_file, "-o", out)
    assert code == 2 and "QWSPEC_TOL_OP" in stderr


def test_spectrum_c3(tmp_path, capsys, c3_file):
    code, stdout, _ = run(capsys, "spectrum", c3_file, "--no-plot")
    assert code == 0
    table = [line for line in stdout.splitlines() if "inherited" in line or "birth" in line]
    assert len(table) == 3  # three distinct eigenvalues
    report = json.loads((tmp_path / "c3.report.json").read_text())
    assert report["M_plus"] == 1 and report["M_minus"] == 0
    assert sum(row["mult"] for row in report["spectrum"]) == 6
    csv_lines = (tmp_path / "c3.spectrum.csv").read_text().strip().splitlines()
    assert csv_lines[0] == "re,im,mult,origin"
    assert len(csv_lines) == 5  # four items


def test_spectrum_writes_figure(tmp_path, capsys, c3_file):
    fig = tmp_path / "fig.png"
    code, _, _ = run(capsys, "spectrum", c3_file, "--figure", fig)
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 1000


def test_spectrum_reports_are_byte_identical(tmp_path, capsys, c3_file):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(capsys, "spectrum", c3_file, "-o", r1, "--csv", tmp_path / "s1.csv", "--no-plot")
    run(capsys, "spectrum", c3_file, "-o", r2, "--csv", tmp_path / "s2.csv", "--no-plot")
    assert r1.read_bytes() == r2.read_bytes()
    assert (tmp_path / "s1.csv").read_bytes() == (tmp_path / "s2.csv").read_bytes()


def test_spectrum_embed_and_sidecar(tmp_path, capsys, c3_file):
    sidecar = tmp_path / "bases.json"
    code, _, _ = run(
        capsys, "spectrum", c3_file, "--embed-eigenbases", "--eigenbasis", sidecar,
        "--no-plot",
    )
    assert code == 0
    report = json.loads((tmp_path / "c3.report.json").read_text())
    assert "eigenbasis" in report["spectrum"][0]
    doc = json.loads(sidecar.read_text())
    assert doc["format"] == "qwspec-eigenbases" and len(doc["items"]) == 4


def test_spectrum_from_model_json_is_abstract(tmp_path, capsys, c3_file):
    model_path = tmp_path / "c3.model.json"
    run(capsys, "build", c3_file, "-o", model_path)
    code, stdout, _ = run(capsys, "spectrum", model_path, "--abstract", "--no-plot")
    assert code == 0
    report = json.loads((tmp_path / "c3.model.report.json").read_text())
    assert report["M_plus"] is None and report["M_minus"] is None
    assert report["m_plus"] == 1


def test_spectrum_file_weights(tmp_path, capsys):
    path = tmp_path / "weighted.edges"
    path.write_text("0 1 0.8 0.6\n0 2 0.6 0.8\n1 2 0.8 0.6\n")
    code, stdout, _ = run(capsys, "spectrum", path, "--weights", "file", "--no-plot")
    assert code == 0
    report = json.loads((tmp_path / "weighted.report.json").read_text())
    assert report["provenance"]["weight_scheme"] == "file"
    assert all(v["pass"] for v in report["verdicts"].values())


def test_spectrum_rejects_bad_weights(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("0 1 0.5 1.0\n")
    code, _, stderr = run(capsys, "spectrum", path, "--weights", "file", "--no-plot")
    assert code == 2
    assert "InputError" in stderr


def test_verify_named_graph(tmp_path, capsys, c3_file):
    code, stdout, _ = run(capsys, "verify", c3_file)
    assert code == 0
    assert "FAIL" not in stdout
    assert "checks passed" in stdout


def test_verify_random_graph(capsys):
    code, stdout, _ = run(capsys, "verify", "--random", "12", "--seed", "7")
    assert code == 0
    assert "FAIL" not in stdout


def test_verify_corrupted_model(tmp_path, capsys, c3_file):
    model_path = tmp_path / "c3.model.json"
    run(capsys, "build", c3_file, "-o", model_path)
    doc = json.loads(model_path.read_text())
    doc["matrices"]["d_b"]["data"][0][0] += 0.05
    rows, cols = doc["matrices"]["d_a"]["shape"]
    d_a = np.array(
        [complex(re, im) for re, im in doc["matrices"]["d_a"]["data"]]
    ).reshape(rows, cols)
    d_b = np.array(
        [complex(re, im) for re, im in doc["matrices"]["d_b"]["data"]]
    ).reshape(rows, cols)
    lifting = np.hstack([d_a.conj().T, d_b.conj().T])
    doc["matrices"]["lifting"] = {
        "shape": [lifting.shape[0], lifting.shape[1]],
        "data": [[z.real, z.imag] for z in lifting.flatten()],
    }
    corrupted_path = tmp_path / "corrupted.model.json"
    corrupted_path.write_text(json.dumps(doc))
    code, stdout, _ = run(capsys, "verify", corrupted_path)
    assert code == 1
    assert any("intertwining" in line and "FAIL" in line for line in stdout.splitlines())


def test_eigvec_lambda(tmp_path, capsys, c3_file):
    out = tmp_path / "ev.json"
    code, _, _ = run(capsys, "eigvec", c3_file, "--lam", "1", "-o", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["space"] == "arc"
    assert sorted(doc["origins"]) == ["birth-plus-one", "inherited-plus-one"]


def test_eigvec_mu(tmp_path, capsys, c3_file):
    out = tmp_path / "ev.json"
    code, _, _ = run(capsys, "eigvec", c3_file, "--mu", "-0.5", "-o", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["space"] == "vertex"
    assert doc["bases"][0]["dim"] == 2


def test_eigvec_no_match(tmp_path, capsys, c3_file):
    code, _, stderr = run(capsys, "eigvec", c3_file, "--mu", "0.37", "-o", tmp_path / "x.json")
    assert code == 2


def test_missing_input_file(tmp_path, capsys):
    code, _, stderr = run(capsys, "spectrum", tmp_path / "nope.edges", "--no-plot")
    assert code == 2


def test_model_roundtrip_through_cli(tmp_path, capsys, c3_file):
    model_path = tmp_path / "c3.model.json"
    run(capsys, "build", c3_file, "-o", model_path)
    model = model_from_json_dict(json.loads(model_path.read_text()), validate=True)
    assert model.n_arcs == 6
