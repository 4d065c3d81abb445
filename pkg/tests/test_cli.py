import json
import subprocess
import sys

import pytest

from treeramsey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_blocking_query(tmp_path, capsys):
    f = write(tmp_path, {"members": [["00", "01"], ["01", "10"], ["10", "00"]]})
    assert run(capsys, "query", "blocking", f, "--l", "2") == (0, [{"blocking_set": ["00", "01"]}])
    assert run(capsys, "query", "blocking", f, "--l", "1") == (0, [{"blocking_set": None}])


def test_scattered_query(tmp_path, capsys):
    f = write(tmp_path, {"members": [["0"], ["1"]]})
    assert run(capsys, "query", "scattered", f)[1] == [{"scattered": True, "l": 1}]
    assert run(capsys, "query", "scattered", f, "--k", "2")[1][0]["group_scattered"] is False


def test_refine_and_witness(tmp_path, capsys):
    split = {"k": 2, "tree": ["", "0", "1"], "values": {"": ["0", "1"], "0": ["00"], "1": ["10", "11"]}}
    code, out = run(capsys, "query", "refine", write(tmp_path, split))
    assert code == 0 and out[0]["fixed_point"] is True
    code, out = run(capsys, "query", "witness", write(tmp_path, {"split": split, "subtree": ["", "0"]}))
    assert out == [{"witness": {"": "0", "0": "00"}}]


def test_cross_query(tmp_path, capsys):
    f0 = {"k": 2, "tree": ["", "0", "1"], "values": {"0": ["00"], "1": ["10"], "": ["0", "1"]}}
    f1 = {"k": 2, "tree": ["", "0", "1"], "values": {"0": ["00"], "1": ["00"], "": ["0"]}}
    code, out = run(capsys, "query", "cross", write(tmp_path, {"f0": f0, "f1": f1}))
    assert code == 0 and out[0]["split"]["values"][""] == ["0", "2"]


def test_threshold_query(capsys):
    code, out = run(capsys, "query", "ramsey-threshold", "--height", "2", "--k", "2")
    assert code == 0 and out[0]["threshold"] == 3


def test_parse_error_exit_code(tmp_path, capsys):
    code, out = run(capsys, "query", "blocking", write(tmp_path, "{not json"))
    assert code == 2 and out[0]["error"] == "parse-error"
    code, out = run(capsys, "query", "blocking", str(tmp_path / "missing.json"))
    assert code == 2


def test_missing_file_argument(capsys):
    assert run(capsys, "query", "refine")[0] == 2


def test_operation_error_exit_code(tmp_path, capsys):
    h = {"layers": [[["", "0", "1"]], [["00", "000", "001"], ["10", "100", "101"]]], "E": ["000"],
         "g": {"000": 0}}
    code, out = run(capsys, "query", "select-cover", write(tmp_path, h))
    assert code == 1 and out[0]["error"] == "precondition-violated"


def test_unknown_suite(capsys):
    code, out = run(capsys, "run", "--suite", "nope")
    assert code == 2 and out[0]["error"] == "unknown-suite"


def test_budget_exit_code(capsys):
    code, out = run(capsys, "run", "--suite", "scatter-duality", "--budget-ms", "1")
    assert code == 3 and out[-1]["status"] == "budget-exceeded"


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["query", "no-such-op"])
    assert e.value.code == 2


def test_run_output_is_byte_stable():
    cmd = [sys.executable, "-m", "treeramsey", "run", "--suite", "tt2-finite", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    summary = json.loads(a.splitlines()[-1])
    assert summary["status"] == "ok" and "wall_ms" not in summary


def test_suites_listing(capsys):
    code, out = run(capsys, "suites")
    assert code == 0 and {o["suite"] for o in out} >= {"scatter-duality", "tt2-finite", "sufficiency-kernel"}
