import io
import json
import subprocess
import sys

import pytest

from blfkit.cli import run

from golden_cases import GOLDEN, cases


def blf(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("name, data", sorted(cases().items()))
def test_golden_files_match_library(name, data):
    assert (GOLDEN / name).read_bytes() == data


@pytest.mark.parametrize("argv, expected", [
    (["catalog", "build", "cp2"], "cp2.json"),
    (["build", "s4"], "s4.json"),
    (["build", "X", "--n", "2", "--l", "1"], "x_2_1.json"),
    (["catalog", "build", "Y", "--n", "1", "--m", "2", "--l", "1"], "y_1_2_1.json"),
])
def test_build_matches_golden(argv, expected):
    code, out, _ = blf(*argv)
    assert code == 0
    assert out == golden(expected)


def test_sum_selfsum_trade_invariants_render():
    g = str(GOLDEN)
    assert blf("sum", f"{g}/cp2.json", f"{g}/cp2.json", "--at", "A:0", "B:2")[1] == golden("cp2_sum_cp2.json")
    assert blf("selfsum", f"{g}/s2xs2.json", "--at", "1", "3")[1] == golden("s2xs2_selfsum.json")
    assert blf("trade", "smooth", f"{g}/s4.json", "--corner", "0")[1] == golden("s4_smooth.json")
    assert blf("invariants", f"{g}/x_2_1.json")[1] == golden("x_2_1_invariants.json")
    assert blf("render", f"{g}/x_2_1.json")[1] == golden("x_2_1.svg")


def test_output_file(tmp_path):
    target = tmp_path / "out.svg"
    code, out, _ = blf("render", str(GOLDEN / "cp2.json"), "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("<?xml")


def test_trade_round_trip(tmp_path):
    smooth = tmp_path / "smooth.json"
    blf("trade", "smooth", str(GOLDEN / "s4.json"), "--corner", "1", "-o", str(smooth))
    code, out, _ = blf("trade", "singularize", str(smooth), "--lefschetz", "L0", "--circle", "0",
                       "--elliptic-cycle", "1,0")
    assert code == 0
    assert json.loads(out)["circles"] == json.loads(golden("s4.json"))["circles"]
    code, _, err = blf("trade", "singularize", str(smooth), "--lefschetz", "L0", "--circle", "0",
                       "--elliptic-cycle", "1,-1")
    assert code == 2 and "dual pair" in err
    code, _, _ = blf("trade", "singularize", str(smooth), "--lefschetz", "L0", "--circle", "0")
    assert code == 2
    code, _, _ = blf("trade", "singularize", str(smooth), "--lefschetz", "L0", "--circle", "0",
                     "--assert-dual-pair")
    assert code == 0


def test_checks():
    code, out, _ = blf("check", "gcs", str(GOLDEN / "s4.json"))
    assert code == 0 and json.loads(out)["result"] is False
    code, out, _ = blf("check", "gcs", str(GOLDEN / "s2xs2.json"), "--mode", "total")
    assert json.loads(out) == {"check": "gcs", "mode": "total", "result": True}
    code, out, _ = blf("check", "valid", str(GOLDEN / "cp2.json"))
    assert json.loads(out)["result"] is True


@pytest.mark.parametrize("argv, chi", [(["build", "X", "--n", "1", "--l", "3"], -2),
                                       (["build", "Y", "--n", "1", "--m", "0", "--l", "2"], -1)])
def test_inadmissible_exit_code(argv, chi):
    code, out, err = blf(*argv)
    assert code == 2 and out == ""
    assert f"chi={chi}" in err


def test_exit_codes(tmp_path):
    assert blf("invariants", str(tmp_path / "missing.json"))[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text('{"version": 1,')
    code, _, err = blf("invariants", str(broken))
    assert code == 1 and "line 1" in err
    assert blf("frobnicate")[0] == 2
    assert blf("build", "k3")[0] == 2
    assert blf("selfsum", str(GOLDEN / "cp2.json"), "--at", "0", "0")[0] == 2
    assert blf("trade", "smooth", str(GOLDEN / "cp2.json"))[0] == 2


def test_catalog_list_and_manifest(tmp_path):
    code, out, _ = blf("catalog", "list")
    assert code == 0 and "cp2" in out.split() and "X" in out.split()
    target = tmp_path / "manifest.json"
    assert blf("catalog", "manifest", "--n-max", "1", "--m-max", "1", "-o", str(target))[0] == 0
    items = json.loads(target.read_text())
    passing = [i for i in items if i["label"] not in ("X(0,1)", "Y(0,1,1)")]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(passing))
    code, out, _ = blf("catalog", "verify", "--manifest", str(good))
    assert code == 0
    assert all(json.loads(line)["pass"] for line in out.splitlines())
    code, out, _ = blf("catalog", "verify", "--manifest", str(target))
    assert code == 2
    failed = [json.loads(line)["entry"] for line in out.splitlines() if not json.loads(line)["pass"]]
    assert failed == ["X(0,1)", "Y(0,1,1)"]


def test_verify_charts(monkeypatch):
    code, out, _ = blf("verify-charts", "--samples", "500")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert [x["op"] for x in lines] == ["verify_corner_sum_model", "verify_focus_focus_model"]
    assert all(x["pass"] and x["max_error"] < 1e-12 for x in lines)
    monkeypatch.setenv("BLF_SEED", "99")
    assert blf("verify-charts", "--samples", "50")[1] == blf("verify-charts", "--samples", "50", "--seed", "99")[1]
    assert blf("verify-charts", "--samples", "50")[1] != blf("verify-charts", "--samples", "50", "--seed", "1")[1]
    assert blf("verify-charts", "--samples", "0")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blfkit", "build", "cp2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == golden("cp2.json")
