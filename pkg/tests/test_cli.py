import json
import subprocess
import sys
from pathlib import Path

import pytest

from veritas import pipeline
from veritas.cli import main
from veritas.complexes import Complex

CLAIM_LIST = Path(__file__).with_name("claims.txt").read_text().split()


def test_registry_matches_claim_list():
    assert list(pipeline.REGISTRY) == CLAIM_LIST
    assert len(set(CLAIM_LIST)) == 16


def test_resolve():
    assert pipeline.resolve(["all"]) == CLAIM_LIST
    assert pipeline.resolve(["C05", "C01_colorings_600cell"]) == CLAIM_LIST[:1] + CLAIM_LIST[4:5]
    with pytest.raises(KeyError):
        pipeline.resolve(["C17"])


def test_verify_single_claim(tmp_path, capsys):
    assert main(["verify", "C01_colorings_600cell", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "C01_colorings_600cell" in out and "10 / 10" in out
    report = json.loads((tmp_path / "report.json").read_text())
    (rec,) = report["claims"]
    assert rec["expected"] == rec["observed"] == 10 and rec["status"] == "pass"
    assert "elapsed_ms" not in rec
    assert "C01_colorings_600cell" in json.loads((tmp_path / "timings.json").read_text())


def test_failing_claim_exits_one(tmp_path):
    assert main(["verify", "C12", "--out", str(tmp_path), "--emit", "json"]) == 1
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["summary"]["failed"] == ["C12_eta_automorphism"]


def test_usage_errors(tmp_path, capsys):
    assert main(["verify", "C99", "--out", str(tmp_path)]) == 2
    assert main(["verify", "--jobs", "0", "--out", str(tmp_path)]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["export", "dodecahedron", str(tmp_path / "x.json")]) == 2
    assert "valid names" in capsys.readouterr().err


def test_reports_are_byte_identical(tmp_path):
    claims = ["C01", "C05", "C06", "C07", "C08", "C12"]
    a, b = tmp_path / "a", tmp_path / "b"
    main(["verify", *claims, "--out", str(a), "--jobs", "1"])
    main(["verify", *claims, "--out", str(a), "--jobs", "1"])  # second run reads the cache
    main(["verify", *claims, "--out", str(b), "--jobs", "3"])
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    assert (a / "report.txt").read_bytes() == (b / "report.txt").read_bytes()


@pytest.mark.parametrize("name,shape", [("600cell", (120, 600)), ("grid", (25, 10)), ("sigma3", (60, 300)), ("B", (25, 10))])
def test_export_round_trip(tmp_path, name, shape):
    path = tmp_path / f"{name}.json"
    assert main(["export", name, str(path)]) == 0
    cx = Complex.load(path)
    assert (cx.num_vertices, len(cx)) == shape
    again = cx.save(tmp_path / "again.json")
    assert again.read_bytes() == path.read_bytes()


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "veritas", "verify", "C02", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0, res.stderr
    assert "1/1 claims pass" in res.stdout
