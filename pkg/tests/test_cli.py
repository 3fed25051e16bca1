import json
import subprocess
import sys

import numpy as np
import pytest

from nlpredict.cli import main
from nlpredict.io import encode_complex, measurement_to_json, pure_state_to_json, state_from_json
from nlpredict.states import maximally_entangled, projective_measurement


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def bell_files(tmp_path):
    return (write(tmp_path, "state.json", pure_state_to_json(maximally_entangled(2))),
            write(tmp_path, "m.json", measurement_to_json(projective_measurement(dim=2))))


def test_verify_t2(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--claim", "T2", "--dim", "3", "--trials", "100", "--seed", "42",
                 "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0 and rep["report"]["pass"] is True
    assert rep["seed"] == 42 and "version" in rep and rep["tol"] > 0


def test_predict_bell(tmp_path, bell_files):
    out = tmp_path / "p.json"
    assert main(["predict", "--state", bell_files[0], "--measurement", bell_files[1],
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())["report"]
    assert rep["nonlocal"] == pytest.approx(1, abs=1e-9)
    assert rep["local_bound"] == pytest.approx(0.5)
    assert rep["violation"] == pytest.approx(0.5, abs=1e-9)


def test_non_unit_norm_state(tmp_path, capsys, bell_files):
    bad = write(tmp_path, "bad.json",
                {"dims": [2, 2], "amplitudes": encode_complex([0.9, 0, 0, 0])})
    assert main(["predict", "--state", bad, "--measurement", bell_files[1]]) == 2
    assert "unit norm" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["discriminate", "--ensemble", "/nonexistent.json"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_reports_byte_identical(tmp_path):
    out = tmp_path / "r.json"
    args = ["verify", "--claim", "T1", "--dim", "2", "--trials", "5", "--seed", "3", "--out", str(out)]
    runs = []
    for _ in range(2):
        main(args)
        runs.append([l for l in out.read_text().splitlines() if "timestamp_nondeterministic" not in l])
    assert runs[0] == runs[1]


def test_discriminate(tmp_path):
    ens = {"entries": [{"prior": 0.5, "state": encode_complex(np.diag([1, 0]))},
                       {"prior": 0.5, "state": encode_complex(np.full((2, 2), 0.5))}]}
    out = tmp_path / "d.json"
    assert main(["discriminate", "--ensemble", write(tmp_path, "e.json", ens), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())["report"]
    assert rep["value"] == pytest.approx((1 + 1 / np.sqrt(2)) / 2, abs=1e-9)


def test_verify_failure_exit(tmp_path):
    assert main(["verify", "--claim", "T3", "--dim", "2", "--trials", "3", "--tol", "1e-30",
                 "--out", str(tmp_path / "r.json")]) == 1


def test_sweep(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"p0": [0.8], "theta": [0.0],
                                     "beta": {"min": 0.1, "max": 3.0, "count": 30}})
    csv_path = tmp_path / "s.csv"
    assert main(["sweep", "--config", cfg, "--out", str(csv_path)]) == 0
    summary = json.loads(capsys.readouterr().out)["report"]
    assert summary["points"] == 30 and summary["failures"] == 0
    assert len(csv_path.read_text().splitlines()) == 31


def test_sample(tmp_path, bell_files):
    out = tmp_path / "s.json"
    assert main(["sample", "--state", bell_files[0], "--measurement", bell_files[1],
                 "--samples", "1000", "--q", "1", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())["report"]
    assert rep["success"] == 1.0


def test_dephase_flag_in_predict(tmp_path):
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    st = write(tmp_path, "s.json", pure_state_to_json(maximally_entangled(2)))
    m = write(tmp_path, "m.json", measurement_to_json(projective_measurement(h)))
    out = tmp_path / "o.json"
    main(["predict", "--state", st, "--measurement", m, "--q", "1", "--out", str(out)])
    assert json.loads(out.read_text())["report"]["nonlocal"] == pytest.approx(0.5, abs=1e-9)


def test_matrix_state_input():
    rho, dims = state_from_json({"dims": [2, 2], "matrix": encode_complex(np.eye(4) / 4)})
    assert dims.total == 4 and np.allclose(rho, np.eye(4) / 4)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "nlpredict.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
