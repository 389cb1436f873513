"""End-to-end runs of the command line through main(argv)."""

import json

import pytest

from main import main
from supergrade import catalog
from supergrade.deform import phi_cochain
from supergrade.files import dump_algebra, dump_cochain, load_any
from supergrade.superalg import SuperAlgebra


def _run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def ng_file(tmp_path):
    path = tmp_path / "ng33.json"
    dump_algebra(catalog.ng_law(3, 3), path)
    return str(path)


@pytest.fixture
def remark_file(tmp_path):
    path = tmp_path / "remark.json"
    dump_algebra(catalog.remark_example(), path)
    return str(path)


def test_catalog_show_ng(capsys):
    code, report = _run(capsys, "catalog", "show", "NG", "--n", "4", "--m", "3")
    assert code == 0
    assert report["command"] == "catalog show"
    products = {(p["left"], p["right"]): p["result"] for p in report["data"]["algebra"]["products"]}
    assert products[("Y3", "Y1")] == [{"basis": "X4", "coeff": "1"}]


def test_catalog_show_writes_file(capsys, tmp_path):
    out = tmp_path / "law.json"
    code = main(["catalog", "show", "L+phi12", "--n", "3", "--m", "4", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    assert isinstance(load_any(out), SuperAlgebra)


def test_catalog_list_filters(capsys):
    code, report = _run(capsys, "catalog", "list", "--kind", "leibniz", "--n", "4", "--m", "4")
    assert code == 0
    ids = [e["id"] for e in report["data"]["entries"]]
    assert "NG" in ids
    assert all(e["kind"] == "leibniz" for e in report["data"]["entries"])


def test_check_ng(capsys, ng_file):
    code, report = _run(capsys, "check", ng_file)
    assert code == 0, report["verdicts"]
    names = [v["name"] for v in report["verdicts"]]
    assert names[:2] == ["super leibniz", "nilpotent"]
    assert "Ann two-sided ideal" in names
    assert report["data"]["s_nilindex"] == [3, 3]


def test_check_require_lie_fails_for_leibniz(capsys, ng_file):
    code, report = _run(capsys, "check", ng_file, "--require-lie")
    assert code == 1
    failed = [v["name"] for v in report["verdicts"] if not v["ok"]]
    assert failed == ["lie superalgebra"]


def test_check_cochain(capsys, tmp_path):
    path = tmp_path / "phi12.json"
    dump_cochain(phi_cochain(catalog.model(3, 4), "phi12"), path)
    code, report = _run(capsys, "check", str(path))
    verdicts = {v["name"]: v["ok"] for v in report["verdicts"]}
    assert verdicts["infinitesimal deformation"]
    assert verdicts["declared weight"]
    assert report["data"]["cochain"]["weight"] == 0


def test_check_parametric_samples(capsys, tmp_path):
    path = tmp_path / "mu1.json"
    dump_algebra(catalog.mu1_alpha(), path)
    _, first = _run(capsys, "check", str(path), "--seed", "7")
    _, second = _run(capsys, "check", str(path), "--seed", "7")
    assert list(first["data"]["sample_point"]) == ["alpha"]
    assert first["data"]["sample_point"] == second["data"]["sample_point"]


def test_natgrade_remark_fails(capsys, remark_file):
    code, report = _run(capsys, "natgrade", remark_file)
    assert code == 1
    assert report["verdicts"][0]["detail"].startswith("gr not graded")


def test_gr_remark_layers(capsys, remark_file):
    code, report = _run(capsys, "gr", remark_file)
    assert code == 1
    assert report["data"]["graded"] is False
    assert report["data"]["naturally_graded"] is False


def test_max_dim_cap(capsys, ng_file):
    code, report = _run(capsys, "check", ng_file, "--max-dim", "3")
    assert code == 2
    assert report["error"]["type"] == "ArgumentRangeError"


def test_invalid_json_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    code, report = _run(capsys, "check", str(path))
    assert code == 2
    assert report["error"]["type"] == "StructureError"
    assert report["error"]["details"]["line"] == 1


def test_classify_list(capsys):
    code, report = _run(capsys, "classify", "list")
    assert code == 0
    scenarios = {s["id"]: s for s in report["data"]["scenarios"]}
    assert "leibniz-degenerate" in scenarios
    assert scenarios["lie-6-3"]["aliases"] == ["4.8"]


def test_classify_run(capsys):
    code, report = _run(capsys, "classify", "run", "leibniz-degenerate")
    assert code == 0
    assert report["verdicts"][0]["name"] == "leibniz-degenerate"


@pytest.mark.slow
def test_classify_run_by_theorem_number(capsys):
    code, report = _run(capsys, "classify", "run", "4.8")
    assert code == 0, report["verdicts"]
    assert report["verdicts"][0]["name"] == "lie-6-3"
    assert [law["catalog_id"] for law in report["data"]["laws"]] == ["L63+phibar36"]


def test_classify_unknown_scenario(capsys):
    code, report = _run(capsys, "classify", "run", "lie-99-1")
    assert code == 2
    assert report["error"]["type"] == "UnknownEntryError"


def test_human_output(capsys, remark_file):
    code = main(["natgrade", remark_file])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL naturally graded" in out


def test_remark_algebra_is_lie(capsys, remark_file):
    code, report = _run(capsys, "check", remark_file, "--require-lie")
    assert code == 0, report["verdicts"]
    assert {v["name"] for v in report["verdicts"]} >= {"lie superalgebra", "skew ideal in Ann"}
