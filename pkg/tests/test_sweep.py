import numpy as np
import pytest

from nlpredict.lab.sweep import (
    CSV_COLUMNS,
    SweepConfig,
    read_csv,
    sweep,
    sweep_failures,
    sweep_point,
    write_csv,
)
from nlpredict.linalg import InputError


def test_config_forms():
    cfg = SweepConfig.from_dict({"p0": 0.8, "theta": [0, 1], "beta": {"min": 0, "max": 3, "count": 4}})
    assert cfg.beta == [0.0, 1.0, 2.0, 3.0]
    assert cfg.q == [1.0] and cfg.size == 8
    assert SweepConfig.from_dict(cfg.to_dict()) == cfg


def test_config_errors():
    with pytest.raises(InputError):
        SweepConfig.from_dict({"p0": 0.5, "theta": 0})
    with pytest.raises(InputError):
        SweepConfig.from_dict({"p0": 0.5, "theta": 0, "beta": 0, "zeta": 1})
    with pytest.raises(InputError):
        SweepConfig.from_dict({"p0": 0.5, "theta": 0, "beta": {"min": 0, "max": 1, "count": 0}})
    with pytest.raises(InputError):
        SweepConfig.from_dict({"p0": {"min": .1, "max": .9, "count": 1001}, "theta": 0,
                               "beta": {"min": 0, "max": 3, "count": 1001}})


def test_point():
    r = sweep_point(0.8, 0.0, 0.0, 2.5, 0.0, 1.0)
    assert r.advantage_predicted and r.advantage_observed
    assert r.closed_form_residual <= 1e-10
    r = sweep_point(0.8, 0.0, 0.0, 2.0, 0.0, 1.0)
    assert not r.advantage_predicted and not r.advantage_observed


def test_partial_q_agrees():
    cfg = SweepConfig.from_dict({"p0": [0.3, 0.8], "theta": [0.4], "phi": [0.0, 1.0],
                                 "beta": {"min": 0, "max": np.pi, "count": 25},
                                 "q": [0.0, 0.5, 1.0]})
    recs = sweep(cfg)
    assert len(recs) == cfg.size
    assert sweep_failures(recs) == 0
    assert max(r.closed_form_residual for r in recs) <= 1e-10
    assert not any(r.advantage_observed for r in recs if r.q == 0.0)


def test_csv_roundtrip(tmp_path):
    cfg = SweepConfig.from_dict({"p0": [0.8], "theta": [0.0, 1.0], "beta": {"min": 0, "max": 3, "count": 5}})
    recs = sweep(cfg)
    path = tmp_path / "s.csv"
    write_csv(recs, path)
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    back = read_csv(path)
    for a, b in zip(recs, back):
        for c in CSV_COLUMNS:
            assert getattr(a, c) == getattr(b, c)
    write_csv(recs, tmp_path / "t.csv")
    assert (tmp_path / "t.csv").read_bytes() == path.read_bytes()


def test_read_csv_bad_header(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(InputError):
        read_csv(p)
