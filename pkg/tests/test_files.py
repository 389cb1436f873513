"""Algebra and cochain files: schema checks, JSON errors, dump/load."""

import json

import pytest

from supergrade import catalog
from supergrade.deform import Cochain2, phi_cochain, psi_cochain
from supergrade.errors import StructureError
from supergrade.files import (
    algebra_to_dict,
    cochain_to_dict,
    dump_algebra,
    dump_cochain,
    load_algebra,
    load_any,
    load_cochain,
    validate,
)
from supergrade.superalg import SuperAlgebra


@pytest.mark.parametrize("build", [
    lambda: catalog.model(3, 4),
    lambda: catalog.ng_law(4, 4),
    lambda: catalog.mu1_alpha(),
    lambda: catalog.remark_example(),
])
def test_algebra_dump_load(tmp_path, build):
    alg = build()
    path = tmp_path / "alg.json"
    dump_algebra(alg, path)
    assert algebra_to_dict(load_algebra(path)) == algebra_to_dict(alg)


def test_parameters_survive(tmp_path):
    alg = catalog.mu1_alpha()
    dump_algebra(alg, tmp_path / "mu1.json")
    assert load_algebra(tmp_path / "mu1.json").parameters == alg.parameters


@pytest.mark.parametrize("build", [
    lambda: phi_cochain(catalog.model(3, 4), "phi12"),
    lambda: psi_cochain(catalog.model(3, 5), 2, 3),
])
def test_cochain_dump_load(tmp_path, build):
    c = build()
    path = tmp_path / "c.json"
    dump_cochain(c, path)
    loaded = load_cochain(path)
    assert cochain_to_dict(loaded) == cochain_to_dict(c)
    assert loaded.declared_weight == c.declared_weight


def test_load_any_tells_cochains_from_algebras(tmp_path):
    dump_cochain(phi_cochain(catalog.model(3, 2), "phi12"), tmp_path / "c.json")
    dump_algebra(catalog.model(3, 2), tmp_path / "a.json")
    assert isinstance(load_any(tmp_path / "c.json"), Cochain2)
    assert isinstance(load_any(tmp_path / "a.json"), SuperAlgebra)


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x",\n  "kind": }\n', encoding="utf-8")
    with pytest.raises(StructureError) as info:
        load_algebra(path)
    assert info.value.details["line"] == 2
    assert info.value.details["column"] == 11


def test_missing_file(tmp_path):
    with pytest.raises(StructureError, match="cannot read"):
        load_algebra(tmp_path / "absent.json")


def test_schema_violation_names_the_path(tmp_path):
    document = {"name": "x", "kind": "jordan", "even_basis": ["X1"], "odd_basis": [], "products": []}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(StructureError, match="at kind") as info:
        load_algebra(path)
    assert info.value.details["schema"] == "algebra"


def test_every_violation_is_listed():
    with pytest.raises(StructureError) as info:
        validate({"name": 3, "kind": "lie"}, "algebra")
    assert len(info.value.details["errors"]) >= 2


def test_table_errors_surface_after_schema(tmp_path):
    document = {
        "name": "x", "kind": "leibniz", "even_basis": ["X1"], "odd_basis": [],
        "products": [{"left": "X1", "right": "Z9", "result": [{"basis": "X1", "coeff": "1"}]}],
    }
    path = tmp_path / "unknown.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(StructureError, match="Z9"):
        load_algebra(path)
