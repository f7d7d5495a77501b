import json

import numpy as np
import pytest

from fuglab import config, euclid, report


def test_csv_deterministic(tmp_path):
    rows = list(report.zero_grid_rows(2))
    a = report.write_csv(tmp_path / "a.csv", report.ZERO_GRID_COLUMNS, rows).read_bytes()
    b = report.write_csv(tmp_path / "b.csv", report.ZERO_GRID_COLUMNS, report.zero_grid_rows(2)).read_bytes()
    assert a == b
    assert a.decode().splitlines()[0] == "m,n,inZ,absFT"


def test_float_format_roundtrips():
    text = report.csv_text(("x",), [(0.1,), (np.float64(1 / 3),), (True,), (np.int64(4),)])
    vals = text.splitlines()[1:]
    assert float(vals[0]) == 0.1 and float(vals[1]) == 1 / 3
    assert vals[2:] == ["true", "4"]


def test_strip_rows_require_grid():
    with pytest.raises(ValueError):
        report.strip_rows(euclid.zero_free_strip_scan(K=1, step_xi=0.02, step_eta=0.02))


def test_manifest(tmp_path):
    m = report.RunManifest(["fuglab", "x"])
    m.add_input("a", {"k": 1})
    m.finish(ok=True)
    path = m.write(tmp_path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"command", "inputs", "tolerances", "versions", "wallTime", "verdicts", "artifacts"}
    assert doc["inputs"]["a"] == report.digest({"k": 1})
    assert doc["versions"]["tolerances"] == config.CONFIG_VERSION


def test_config_access():
    assert config.tol("bessel_abs") == 1e-13
    with pytest.raises(KeyError):
        config.tol("nope")
    assert config.resolve_budget("desk") == 10**6
    assert config.resolve_budget(5) == 5
    with pytest.raises(ValueError):
        config.resolve_budget("huge")
    with pytest.raises(TypeError):
        config.TOLERANCES["bessel_abs"] = 1.0
