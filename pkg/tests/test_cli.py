import json

import pytest

from fuglab.cli import main


def run(capsys, tmp_path, *argv):
    code = main([*argv, "--out", str(tmp_path)])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_spec_find(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "spec", "find", "--group", "4", "--set", "0,1")
    assert code == 0 and doc == [{"spectrum": [0, 2]}]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["verdicts"] == {"ok": True}
    assert manifest["inputs"]["set"].startswith("sha256:")
    assert manifest["tolerances"]["dft_zero_rel"] == 1e-9


def test_stdout_ends_with_newline(capsys, tmp_path):
    main(["group", "dft", "--group", "4", "--set", "0,1", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert out.endswith("}\n")


def test_group_commands(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "group", "dft", "--group", "4", "--set", "0,1")
    assert doc["zeroSet"] == [2]
    code, doc, _ = run(capsys, tmp_path, "group", "canonical", "--group", "5", "--set", "0,2,4", "--automorphisms")
    assert doc["elements"] == [0, 1, 2]
    code, doc, _ = run(capsys, tmp_path, "group", "stream", "--group", "12", "--size", "6", "--canonical")
    assert doc["count"] == 80


def test_subset_json_input(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"group": {"factors": [2, 4]}, "elements": [0, 1]}))
    code, doc, _ = run(capsys, tmp_path, "tile", "is-tile", "--set", f"@{f}")
    assert code == 0 and doc["isTile"]


def test_tile_exit_codes(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "tile", "verify", "--group", "6", "--set", "0,3", "--translates", "0,2,4")
    assert code == 0 and "certificate" in doc
    code, doc, _ = run(capsys, tmp_path, "tile", "verify", "--group", "6", "--set", "0,1", "--translates", "0,1,2")
    assert code == 1 and "refutation" in doc
    code, doc, _ = run(capsys, tmp_path, "tile", "is-tile", "--group", "8", "--set", "0,1,2,4")
    assert code == 1 and doc["isTile"] is False


def test_spec_verify(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "spec", "verify", "--group", "6", "--set", "0,1,2", "--freqs", "0,2,4")
    assert code == 0 and doc["certificate"]["parsevalResidual"] == 0.0
    code, doc, _ = run(capsys, tmp_path, "spec", "verify", "--group", "6", "--set", "0,1,2", "--freqs", "0,1,4")
    assert code == 1 and doc["refutation"]["reason"] == "pair"


def test_usage_errors(capsys, tmp_path):
    code, doc, err = run(capsys, tmp_path, "spec", "find", "--group", "4", "--set", "0,9")
    assert code == 2 and doc is None and "error" in err
    code, _, err = run(capsys, tmp_path, "euclid", "ft", "0", "0", "--polygon", "{bad")
    assert code == 2 and "bad JSON" in err
    code, _, err = run(capsys, tmp_path, "spec", "scan", "--group", "40", "--budget", "small")
    assert code == 2 and "budget" in err
    code, _, _ = run(capsys, tmp_path, "spec", "scan", "--budget", "nonsense")
    assert code == 2
    assert main(["nope"]) == 2


def test_spec_scan_writes_artifacts(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "spec", "scan", "--max-order", "6")
    assert code == 0 and len(doc) == 5
    assert (tmp_path / "scan_6.json").exists()


def test_scan_threads_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FUGLAB_THREADS", "2")
    code, doc, _ = run(capsys, tmp_path, "spec", "scan", "--group", "8")
    assert code == 0 and doc[0]["counts"]["discrepancies"] == 0


def test_euclid_commands(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "euclid", "ft", "0", "0")
    assert doc["re"] == pytest.approx(0.5)
    code, doc, _ = run(capsys, tmp_path, "euclid", "zeros", "--radius", "5")
    assert code == 0 and doc["points"] == 121
    lines = (tmp_path / "zero_grid.csv").read_text().splitlines()
    assert lines[0] == "m,n,inZ,absFT" and len(lines) == 122
    code, doc, _ = run(capsys, tmp_path, "euclid", "strip", "--K", "2", "--eps", "0.1", "--step", "0.02", "--csv")
    assert code == 0 and doc["passed"]
    assert (tmp_path / "strip.csv").read_text().startswith("xi,eta,absFT\n")
    code, doc, _ = run(capsys, tmp_path, "euclid", "density", "--radii", "10")
    assert doc == [{"R": 10.0, "count": 15, "density": pytest.approx(0.0477464829)}]
    code, doc, _ = run(capsys, tmp_path, "euclid", "parseval", "--t", "0", "0")
    assert code == 0 and doc["residual"] == 0.0


def test_disk_commands(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "disk", "orth", "--radius", "0.7")
    assert doc["size"] == 3
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"points": doc["points"]}))
    code, gaps, _ = run(capsys, tmp_path, "disk", "gaps", "--input", f"@{f}")
    assert code == 0 and (tmp_path / "gaps.csv").exists()
    code, doc, _ = run(capsys, tmp_path, "disk", "zeros", "--count", "5")
    assert len(doc["zeros"]) == 5
    f.write_text(json.dumps({"points": [[0, 0], [0.5, 0]]}))
    code, _, err = run(capsys, tmp_path, "disk", "gaps", "--input", f"@{f}")
    assert code == 2 and "not disk-orthogonal" in err


def test_repro(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "repro", "list")
    assert [d["criterion"] for d in doc] == list(range(1, 13))
    code, doc, err = run(capsys, tmp_path, "repro", "4")
    assert code == 0 and doc[0]["passed"] and "[PASS]" in err
    assert (tmp_path / "acceptance.csv").read_text().startswith("criterion,title,passed,seconds\n4,")
    code, doc, _ = run(capsys, tmp_path, "repro", "7")
    assert code == 1 and not doc[0]["passed"]
    code, _, _ = run(capsys, tmp_path, "repro", "13")
    assert code == 2


def test_json_flag_forms(capsys, tmp_path):
    code, doc, _ = run(capsys, tmp_path, "spec", "find", "--group", '{"factors":[4]}', "--set", "[0,1]")
    assert code == 0 and doc == [{"spectrum": [0, 2]}]
    code, doc, _ = run(capsys, tmp_path, "tile", "is-tile", "--group", '{"factors":[5]}', "--set", "[0,1,2]")
    assert code == 1 and doc["isTile"] is False


def test_unknown_flag_prints_usage(capsys):
    assert main(["spec", "find", "--bogus"]) == 2
    assert "usage:" in capsys.readouterr().err


def test_zero_grid_radius_ten(capsys, tmp_path):
    run(capsys, tmp_path, "euclid", "zeros", "--radius", "10")
    rows = (tmp_path / "zero_grid.csv").read_text().splitlines()[1:]
    assert len(rows) == 441
    assert {r.split(",")[2] for r in rows} == {"true", "false"}
