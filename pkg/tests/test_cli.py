import json
import subprocess
import sys

import pytest

from taquin.cli import main
from taquin.poset import young


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    data = json.loads(out)
    # output is canonical: re-serializing gives the same text
    assert json.dumps(data, indent=2, sort_keys=True) + "\n" == out
    return code, data


def test_poset_show_and_check(capsys, tmp_path):
    code, data = run_json(capsys, "poset", "show", "--young", "2,1")
    assert code == 0 and data["n"] == 3 and data["maximal"] == ["B_{1,1}"]
    path = tmp_path / "p.json"
    path.write_text(json.dumps(young((3, 2)).to_json()))
    code, data = run_json(capsys, "poset", "check", "--file", str(path))
    assert code == 0 and data["linear_extensions"] == "5"
    path.write_text('{"n": 3, "covers": [[0, 1], [1, 2], [0, 2]]}')
    code, data = run_json(capsys, "poset", "check", "--file", str(path))
    assert code == 1 and data["valid"] is False


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "dcomplete", "check", "--file", str(path))
    assert code == 2 and "cannot read" in err


def test_dcomplete_commands(capsys):
    code, data = run_json(capsys, "dcomplete", "check", "--dtd", "4", "5")
    assert code == 1 and data["violation"]["condition"] == 1 and data["violation"]["k"] == 6
    code, data = run_json(capsys, "dcomplete", "check", "--dtd", "5,4")
    assert code == 0 and data["d_complete"] is True
    code, data = run_json(capsys, "dcomplete", "hooks", "--young", "2,1")
    assert data["hooks"] == {"B_{1,1}": 3, "B_{1,2}": 1, "B_{2,1}": 1}
    code, data = run_json(capsys, "dcomplete", "count", "--inset", "4:3,3,2,1", "--brute")
    assert code == 0 and data["hook_count"] == data["brute_count"] == "429"
    code, data = run_json(capsys, "dcomplete", "series", "--shifted", "3,1", "--degree", "8", "--brute")
    assert code == 0 and data["pass"] and data["hook_series"][0] == "1"


def test_jdt_run(capsys):
    code, data = run_json(capsys, "jdt", "run", "--dtd", "2", "2", "--pi", "4,3,2,1")
    assert code == 0
    assert data["output"] == {"B_{1,1}": 1, "B_{1,2}": 2, "B_{2,1}": 3, "B_{2,2}": 4}
    assert data["trace"][-1]["swaps"] == [["B_{1,1}", "B_{2,1}"], ["B_{2,1}", "B_{2,2}"]]
    code, data = run_json(capsys, "jdt", "run", "--young", "2,1", "--labels", "3,1,2")
    assert data["output"] == {"B_{1,1}": 1, "B_{1,2}": 3, "B_{2,1}": 2}


def test_jdt_census(capsys):
    code, data = run_json(capsys, "jdt", "census", "--dtd", "2,3", "--exhaustive")
    assert code == 0 and sorted(data["counts"].values()) == ["54", "66"]
    assert data["uniform"] is False
    code, data = run_json(capsys, "jdt", "census", "--young", "3,3,2,1", "--order", "column",
                          "--samples", "500", "--seed", "3")
    assert data["seed"] == 3 and 0 <= data["p_value"] <= 1
    code, again = run_json(capsys, "jdt", "census", "--young", "3,3,2,1", "--order", "column",
                           "--samples", "500", "--seed", "3")
    assert again == data


def test_jdt_census_csv(capsys):
    code, out, _ = run(capsys, "jdt", "census", "--young", "2,1", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "labeling,count" and len(lines) == 3


def test_dtd_commands(capsys):
    code, data = run_json(capsys, "dtd", "stats", "--m", "2", "--n", "3", "--brute")
    assert code == 0 and data["formula"]["counts"] == ["12", "54", "54"] and data["pass"]
    code, data = run_json(capsys, "dtd", "theorem", "--m", "2", "--n", "3", "--verify")
    assert data["difference"] == "12" and data["brute"] == {"s1": "66", "s2": "54"}
    code, data = run_json(capsys, "dtd", "theorem", "--m", "6", "--n", "5")
    assert data["difference"] == "0" and data["uniform"] is True


def test_phi_commands(capsys):
    code, data = run_json(capsys, "phi", "apply", "--m", "4", "--n", "4", "--pi", "2,5,6,3,1,7,4,8")
    assert data["image"] == [7, 4, 5, 2, 1, 6, 3, 8]
    code, data = run_json(capsys, "phi", "apply", "--m", "2", "--n", "3", "--pi", "5,3,4,1,2")
    assert data["exceptional"] is True and data["image"] is None
    code, data = run_json(capsys, "phi", "verify", "--m", "2", "--n", "3")
    assert code == 0 and data["exceptional"] == "12"


def test_syt_and_inset(capsys):
    code, data = run_json(capsys, "syt", "count", "--shape", "3,3,2,1", "--brute")
    assert data["hook_count"] == "168" and data["pass"]
    code, data = run_json(capsys, "syt", "expect", "--shape", "3,3,2,1", "--brute")
    assert data["ratio"] == "429/168" and data["expectation"] == {"num": "143", "den": "56"}
    code, data = run_json(capsys, "inset", "count", "--k", "4", "--shape", "3,2,2,1", "--brute")
    assert code == 0 and data["pass"]
    code, out, _ = run(capsys, "syt", "count", "--shape", "3,3,2,1", "--format", "pretty")
    assert "hook_count: 168" in out


def test_families(capsys):
    code, data = run_json(capsys, "families", "check")
    assert code == 0 and data["hooks"]["2"]["value"] == {"num": "5", "den": "2"}


@pytest.mark.parametrize("argv", [
    ["jdt", "census", "--young", "2,1", "--samples", "10"],
    ["syt", "count", "--shape", "2,3"],
    ["jdt", "census", "--young", "4,4,3", "--guard", "10"],
    ["frobnicate"],
    ["jdt", "run", "--young", "2,1"],
    ["dcomplete", "check", "--dtd", "3"],
    ["phi", "verify", "--m", "5", "--n", "4"],
])
def test_usage_errors(capsys, argv):
    code = main(argv)
    capsys.readouterr()
    assert code == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "taquin.cli", "syt", "count", "--shape", "2,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["hook_count"] == "2"
