import json

import pytest
from click.testing import CliRunner

from hochdual.cli import main
from hochdual.specio import corpus_dir


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)
    return go


def table(res, name):
    rep = json.loads(res.output)
    return {int(k): v for k, v in rep["results"][0]["tables"][name].items()}


def test_compute_hh_dual_numbers(run):
    res = run("compute", "hh", "dual_numbers", "--window", "0:4", "--format", "json")
    assert res.exit_code == 0
    assert table(res, "HH") == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_compute_from_file_path(run):
    res = run("compute", "hh", str(corpus_dir() / "k.json"), "--window", "0:2", "--format", "json")
    assert res.exit_code == 0
    assert table(res, "HH") == {0: 1, 1: 0, 2: 0}


def test_compute_koszul(run):
    res = run("compute", "koszul", "dual_numbers", "--n", "1", "--window", "-4:0", "--format", "json")
    assert table(res, "D1") == {n: 1 for n in range(-4, 1)}


def test_compute_cyclic_marks_uncertified(run):
    res = run("compute", "hc", "dual_numbers", "--window", "0:4", "--format", "json")
    tabs = json.loads(res.output)["results"][0]["tables"]
    assert {int(k): v for k, v in tabs["HC"].items()} == {0: 2, 1: 0, 2: 2, 3: 0, 4: 2}
    assert tabs["HC-"] is None and tabs["HP"] is None
    text = run("compute", "hc", "dual_numbers", "--window", "0:4").output
    assert "not certified on this window" in text


@pytest.mark.parametrize("kind,name,expect", [
    ("cochains", "dual_numbers", {-4: 1, -3: 1, -2: 1, -1: 1, 0: 2}),
    ("bar", "dual_numbers", {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}),
    ("circle", "dual_numbers", {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}),
])
def test_compute_other_kinds(run, kind, name, expect):
    res = run("compute", kind, name, "--format", "json")
    assert res.exit_code == 0
    (tab,) = json.loads(res.output)["results"][0]["tables"].values()
    assert {int(k): v for k, v in tab.items()} == expect


def test_compute_csv(run):
    res = run("compute", "hh", "k", "--window", "0:1", "--format", "csv")
    lines = res.output.strip().splitlines()
    assert lines[0] == "case,table,degree,dim,verdict"
    assert lines[1].endswith("HH,0,1,PASS")


def test_invalid_spec_exits_2(run, tmp_path):
    p = tmp_path / "bad.json"
    spec = json.loads((corpus_dir() / "x3.json").read_text())
    spec["mult"] = [[spec["basis"][1]["label"], spec["basis"][1]["label"],
                     [{"k": spec["basis"][1]["label"], "coeff": "1/1"}]],
                    [spec["basis"][1]["label"], spec["basis"][2]["label"],
                     [{"k": spec["basis"][0]["label"], "coeff": "1/1"}]]]
    p.write_text(json.dumps(spec))
    res = run("compute", "hh", str(p))
    assert res.exit_code == 2
    assert "violates" in res.stderr


def test_truncation_exits_3(run):
    res = run("compute", "bar", "k_plus_k1", "--weight-bound", "0", "--window", "2:4")
    assert res.exit_code == 3
    assert "not certified" in res.stderr


def test_completion_exits_3(run):
    assert run("compute", "ce", "dual_numbers").exit_code == 3


def test_verify_text_and_exit_code(run):
    res = run("verify", "morita")
    assert res.exit_code == 0
    assert res.output.splitlines()[-1] == "PASS"


def test_verify_is_byte_identical(run):
    a = run("verify", "pbw", "--format", "json").output
    b = run("verify", "pbw", "--format", "json").output
    assert a == b and "wall_time" not in a and "seconds" not in a


def test_timings_flag(run):
    rep = json.loads(run("verify", "morita", "--format", "json", "--timings").output)
    assert "wall_time" in rep and "seconds" in rep["results"][0]


def test_report_merge(run, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(run("verify", "morita", "--format", "json").output)
    res = run("report", str(good), str(good))
    assert res.exit_code == 0 and res.output.splitlines()[-1] == "PASS"
    bad_rep = json.loads(good.read_text())
    bad_rep["results"][0]["ok"] = False
    bad_rep["verdict"] = "FAIL"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(bad_rep))
    res = run("report", str(good), str(bad))
    assert res.exit_code == 1 and res.output.splitlines()[-1] == "FAIL"


def test_report_schema_errors_exit_4(run, tmp_path):
    assert run("report").exit_code == 4
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"schema": "other/9", "results": []}))
    assert run("report", str(p)).exit_code == 4
    p.write_text("not json")
    assert run("report", str(p)).exit_code == 4
