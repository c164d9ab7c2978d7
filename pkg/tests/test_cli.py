import json
import shutil

import pytest

from strongseq import cli, report
from strongseq.regression import ENV_DIR, load_table
from strongseq.specfile import SpecError, parse_spec

from conftest import FIXTURES


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_gr52(capsys):
    code, out, _ = run(capsys, "analyze", FIXTURES / "gr52.json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == "1" and doc["command"] == "analyze"
    assert [M["label"] for M in doc["nef"]["vb_plus"]] == ["[1,0]"]
    assert doc["nef"]["coefficients"] == [{"module": "[1,0]", "m": "5"}]
    assert {a["name"] for a in doc["assumptions"]} >= {"free-action", "invariants-trivial"}


def test_analyze_cycle_is_hypothesis_failure(capsys):
    code, out, err = run(capsys, "analyze", FIXTURES / "cycle.json")
    assert code == 2 and "K[V]^T != K" in err
    doc = json.loads(out)
    assert doc["diagnostic"]["hypothesis"] == "invariants-trivial"
    assert sorted(w["weight"] for w in doc["diagnostic"]["witness"]) == [[-1, 1], [1, -1]]


def test_collection_gr52(capsys):
    code, out, _ = run(capsys, "collection", FIXTURES / "gr52.json")
    doc = json.loads(out)
    assert code == 0 and len(doc["collection"]["entries"]) == 10
    assert doc["collection"]["verification"]["passed"] and doc["collection"]["verification"]["pairs"] == 45


def test_collection_tower_flag(capsys):
    code, out, _ = run(capsys, "collection", FIXTURES / "flag421.json", "--mode", "tower")
    assert code == 0 and len(json.loads(out)["collection"]["entries"]) == 12


def test_collection_relative_records_improvement(capsys):
    code, out, _ = run(capsys, "collection", FIXTURES / "a3_r_gt.json", "--mode", "relative")
    doc = json.loads(out)
    assert code == 0
    assert ["[0 | 1,0]", 3, 2] in doc["comparison"]["absolute_boxes"]
    assert any(s["module"] == "[0 | 1,0]" and s["box"] == [5, 2] for s in doc["collection"]["slots"])
    assert doc["comparison"]["absolute_subset"]


def test_collection_mode_needs_section(capsys):
    code, _, err = run(capsys, "collection", FIXTURES / "gr52.json", "--mode", "tower")
    assert code == 1 and "tower" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", FIXTURES / "gr52.json")
    doc = json.loads(out)
    assert code == 0 and doc["oracle"]["verdict"] == "pass" and len(doc["oracle"]["ext"]) == 100
    code, out, _ = run(capsys, "oracle", FIXTURES / "p1.json")
    assert code == 0 and json.loads(out)["oracle"]["modules"] == ["[0]", "[1]"]
    code, _, err = run(capsys, "oracle", FIXTURES / "a3_r_gt.json")
    assert code == 3


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n')
    code, _, err = run(capsys, "analyze", bad)
    assert code == 1 and "bad.json:2:1" in err
    code, _, err = run(capsys, "analyze", tmp_path / "missing.json")
    assert code == 1
    code, _, _ = run(capsys, "analyze", FIXTURES / "gr52.json", "--threads", "0")
    assert code == 1


def test_output_flag(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", FIXTURES / "p1.json", "-o", target)
    assert code == 0 and out == "" and json.loads(target.read_text())["name"] == "p1"


def test_spec_validation():
    base = {"vertices": [{"id": "f", "dim": 2, "frozen": True}, {"id": "v", "dim": 1}],
            "arrows": [{"tail": "f", "head": "v"}]}
    spec = parse_spec(base)
    assert spec.quiver.arrows[0].id == "f->v"
    for doc, where in [
        (dict(base, extra=1), "unknown field"),
        (dict(base, vertices=[{"id": "v", "dim": "2"}]), "vertices[0].dim"),
        (dict(base, arrows=[{"tail": "f", "head": "x"}]), "<spec>"),
        (dict(base, arrows=[{"tail": "f", "head": "v", "multiplicity": 1.5}]), "multiplicity"),
        (dict(base, order_vector=[1, 2]), "order_vector"),
        (dict(base, relative={"subquiver": "f->v"}), "relative.subquiver"),
        (dict(base, tower=[[1]]), "tower[0]"),
    ]:
        with pytest.raises(SpecError) as exc:
            parse_spec(doc)
        assert where in str(exc.value)
    spec = parse_spec(dict(base, order_vector=["1/2"]))
    assert spec.order_vector == (0.5,)


def test_large_integers_are_strings():
    assert report.canon(2 ** 60) == str(2 ** 60)
    assert report.canon(12) == 12


def _copy_fixtures(tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(FIXTURES, d)
    return d


def test_fixtures_filter(capsys):
    code, _, err = run(capsys, "fixtures", "--filter", "gr")
    assert code == 0
    names = [line.split()[1] for line in err.splitlines() if line.startswith(("ok", "FAIL"))]
    assert names == ["gr52", "p1", "p3"]


def test_corrupted_expectation_exits_4(capsys, tmp_path, monkeypatch):
    d = _copy_fixtures(tmp_path)
    table = json.loads((d / "expectations.json").read_text())
    for fx in table["fixtures"]:
        if fx["name"] == "gr52":
            fx["expect"]["collection_size"] = 11
    (d / "expectations.json").write_text(json.dumps(table))
    monkeypatch.setenv(ENV_DIR, str(d))
    code, _, err = run(capsys, "fixtures", "--filter", "gr52")
    assert code == 4 and "collection_size" in err and "gr52" in err


def test_fixture_dir_override(capsys, tmp_path, monkeypatch):
    d = _copy_fixtures(tmp_path)
    table = json.loads((d / "expectations.json").read_text())
    table["fixtures"] = [fx for fx in table["fixtures"] if fx["name"] == "p1"]
    (d / "expectations.json").write_text(json.dumps(table))
    monkeypatch.setenv(ENV_DIR, str(d))
    assert [fx["name"] for fx in load_table()] == ["p1"]
    code, _, _ = run(capsys, "fixtures")
    assert code == 0


@pytest.mark.parametrize("name,mode", [("gr52", "absolute"), ("flag421", "tower"), ("a3_r_gt", "relative")])
def test_thread_count_does_not_change_output(capsys, name, mode):
    _, one, _ = run(capsys, "collection", FIXTURES / f"{name}.json", "--mode", mode, "--threads", "1")
    _, four, _ = run(capsys, "collection", FIXTURES / f"{name}.json", "--mode", mode, "--threads", "4")
    assert one == four
