import json
import subprocess
import sys
from pathlib import Path

import pytest

from deltaraag.cli import SCHEMA, main

EXAMPLES = Path(__file__).resolve().parents[1] / "docs" / "examples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out else None
    return code, doc, out.err


def test_recognize_c4(capsys):
    code, doc, _ = run(capsys, "recognize", "--graph", EXAMPLES / "c4.json")
    assert code == 0
    assert doc["schema"] == SCHEMA
    assert doc["in_GrP"] is False
    assert doc["reason"] == "connected, no dominating vertex"


def test_analyze_empty(capsys):
    code, doc, _ = run(capsys, "analyze", "--graph", EXAMPLES / "empty.json")
    assert code == 0
    assert doc["gocha"]["coefficients"][:3] == [1, 1, 0]
    assert doc["recognition"]["in_GrP"] is True


def test_analyze_consistency(capsys):
    code, doc, _ = run(capsys, "analyze", "--graph", EXAMPLES / "gamma1.json", "--z", EXAMPLES / "z1.json", "--trunc", "5")
    assert code == 0
    assert all(v for v in doc["checks"].values())
    assert doc["h2_dim"] == 5 + 2 + 1
    assert doc["realizability"]["sum_mode"] == "d+1"
    assert doc["realizability"]["witness"] is not None


def test_pbw_c4(capsys):
    code, doc, _ = run(
        capsys, "pbw", "--graph", EXAMPLES / "c4.json", "--z", EXAMPLES / "z0.json", "--order", "x0,x1,x3,x2,x4"
    )
    assert code == 0
    assert doc["confluent"] is True


def test_dual_raag(capsys):
    code, doc, _ = run(capsys, "dual", "--graph", EXAMPLES / "c4.json", "--raag")
    assert code == 0 and doc["h2_dim"] == 4


def test_cupzero_summary(capsys):
    code, doc, _ = run(capsys, "cupzero", "--target", "c4-delta")
    assert code == 0
    assert doc["classes"] == {"G13": 12, "G24": 12, "shift": 18}


def test_cupzero_nonvanishing_is_domain_error(capsys):
    code, doc, _ = run(capsys, "cupzero", "--alpha", "0,1,0,0,0;0,0,1,0,0")
    assert code == 1
    assert "error" in doc


def test_massey_example(capsys):
    code, doc, _ = run(capsys, "massey", "--target", "c4-delta", "--alpha", "0,1,0,0,0;1,1,0,0,0;0,1,0,0,0")
    assert code == 0
    assert doc["verification"]["ok"]
    assert doc["blocks"][0]["case"] == "a"


def test_massey_fuzz_deterministic(capsys):
    args = ("massey", "--target", "c4-raag", "--seed", "7", "--count", "5")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a["all_ok"]


def test_ku_witness(capsys):
    code, doc, _ = run(capsys, "ku-witness", "--target", "sap", "--word", "y1^-1*y2^-1*y1*y2", "--trunc", "6")
    assert code == 0
    assert doc["value"] == ["101", "010", "001"]
    code, doc, _ = run(capsys, "ku-witness", "--target", "sap", "--word", "y1*y1")
    assert code == 1


def test_lemmquad(capsys):
    code, doc, _ = run(capsys, "lemmquad", "--n", "4")
    assert code == 0 and all(doc["checks"].values())
    code, _, _ = run(capsys, "lemmquad", "--n", "2")
    assert code == 1


def test_series_and_realizable(capsys):
    code, doc, _ = run(capsys, "series", "--graph", EXAMPLES / "c4.json", "--trunc", "4")
    assert doc["gocha"]["coefficients"] == [1, 5, 16, 44, 112]
    code, doc, _ = run(capsys, "realizable", "--graph", EXAMPLES / "c4.json", "--sum-mode", "d")
    assert code == 0 and doc["witness"] is None


def test_enumerate(capsys):
    code, doc, _ = run(capsys, "enumerate", "--n", "4")
    assert doc["count"] == 1 + 1 + 2 + 4 + 8


@pytest.mark.parametrize(
    "content, fragment",
    [
        ('{"vertices": 3, "edges": [[1, 4]]}', "edges[0]"),
        ('{"vertices": 3,\n "edges": [', "line 2"),
    ],
)
def test_input_errors(tmp_path, capsys, content, fragment):
    f = tmp_path / "g.json"
    f.write_text(content)
    code, doc, err = run(capsys, "recognize", "--graph", f)
    assert code == 2
    assert doc is None
    assert fragment in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "recognize", "--graph", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["recognize", "--bogus"])
    assert exc.value.code == 2


def test_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "deltaraag", "analyze", "--graph", str(EXAMPLES / "c4.json"), "--trunc", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
