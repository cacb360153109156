"""Tests for the batch front end."""

import json
from fractions import Fraction

import pytest

from preproj import cli
from preproj.algebra import get_algebra
from preproj.quiver import DoubleQuiver


def _run(argv):
    return cli.main(argv)


def test_verify_full_run_passes(tmp_path):
    out = tmp_path / "report.json"
    code = _run(["verify", "--type", "t", "--n", "1", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["type"] == "t"
    assert doc["config"]["n"] == 1
    assert doc["config"]["suites"] == list(cli.SUITES)
    assert doc["checks"]
    assert all(r["status"] == "PASS" for r in doc["checks"])
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["passed"] == len(doc["checks"])


def test_chain_family_skips_loop_only_suites(tmp_path):
    out = tmp_path / "report.json"
    code = _run(["verify", "--type", "a", "--n", "4", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["suites"] == [s for s in cli.SUITES
                                       if s not in cli.T_ONLY]
    assert all(r["status"] == "PASS" for r in doc["checks"])


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--type", "t", "--n", "2", "--suite", "hilbert",
            "--suite", "resolution", "--out"]
    assert _run(argv + [str(a)]) == 0
    assert _run(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_tsv_report_shape(tmp_path):
    out = tmp_path / "report.tsv"
    code = _run(["verify", "--type", "t", "--n", "2", "--suite", "hilbert",
                 "--format", "tsv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "suite\tcheck\tstatus\tdetail"
    assert len(lines) > 1
    for line in lines[1:]:
        fields = line.split("\t")
        assert len(fields) == 4
        assert fields[0] == "hilbert"
        assert fields[2] == "PASS"


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "b", "--n", "2"],
    ["verify", "--type", "t", "--n", "2", "--suite", "nope"],
    ["verify", "--type", "a", "--n", "3", "--suite", "cup"],
    ["verify", "--type", "a", "--n", "3", "--suite", "calculus"],
    ["verify", "--type", "t", "--n", "0"],
    ["verify", "--type", "a", "--n", "1"],
    ["verify", "--type", "t", "--n", "2", "--periods", "1"],
    ["verify", "--n", "2"],
    ["dump", "--type", "t", "--n", "-1"],
])
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        _run(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_check_failure_exits_one(tmp_path, monkeypatch):
    monkeypatch.setattr(cli.ver, "check_hilbert",
                        lambda kind, size: ["forced failure"])
    out = tmp_path / "report.json"
    code = _run(["verify", "--type", "t", "--n", "1", "--suite", "hilbert",
                 "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    rows = {r["check"]: r for r in doc["checks"]}
    assert rows["hilbert closed form"]["status"] == "FAIL"
    assert rows["hilbert closed form"]["detail"] == ["forced failure"]
    assert doc["summary"]["failed"] == 1


def test_dump_schema(tmp_path):
    out = tmp_path / "algebra.json"
    assert _run(["dump", "--type", "t", "--n", "2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"quiver", "basis", "hilbert", "structure_constants"}
    A = get_algebra("T", 2)
    assert len(doc["basis"]) == A.dim
    q = DoubleQuiver.from_dict(doc["quiver"])
    assert q.kind == "T" and q.size == 2
    assert len(doc["hilbert"]) == A.top_degree + 1
    nv = len(q.vertices)
    assert doc["hilbert"][0] == [[1 if i == j else 0 for j in range(nv)]
                                 for i in range(nv)]
    for i, j, k, c in doc["structure_constants"]:
        assert 0 <= i < A.dim and 0 <= j < A.dim and 0 <= k < A.dim
        assert Fraction(c) != 0
