"""
Supergrade - Algebra and Cochain Files

JSON in, JSON out. Documents are checked against the bundled Draft 2020-12
schemas before any structure is built, so a malformed file fails with a
path into the document instead of a KeyError deep in the library.

Scalars are written with format_scalar and read back with parse_scalar,
which makes dump -> load bit-exact for every table the library builds.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Union

from jsonschema import Draft202012Validator

from config import logger
from .deform import Cochain2
from .errors import StructureError
from .exact import format_scalar
from .superalg import SuperAlgebra

SCHEMA_DIR = Path(__file__).parent / "schemas"


@lru_cache(maxsize=None)
def schema(name: str) -> Dict[str, Any]:
    with open(SCHEMA_DIR / f"{name}.json", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _validator(name: str) -> Draft202012Validator:
    return Draft202012Validator(schema(name))


def validate(document: Any, name: str) -> None:
    """Raise StructureError listing every schema violation, first by path."""
    errors = sorted(_validator(name).iter_errors(document), key=lambda e: list(e.path))
    if not errors:
        return
    first = errors[0]
    where = "/".join(str(p) for p in first.path) or "<root>"
    raise StructureError(
        f"{name} document invalid at {where}: {first.message}",
        {
            "schema": name,
            "errors": [
                {"path": "/".join(str(p) for p in e.path) or "<root>", "message": e.message}
                for e in errors
            ],
        },
    )


def _products_to_list(alg: SuperAlgebra) -> List[Dict[str, Any]]:
    return [
        {
            "left": left,
            "right": right,
            "result": [{"basis": k, "coeff": format_scalar(c)} for k, c in result.items()],
        }
        for left, right, result in alg.products_by_name()
    ]


def _products_from_list(items: List[Dict[str, Any]]):
    return [
        (item["left"], item["right"], {r["basis"]: r["coeff"] for r in item["result"]})
        for item in items
    ]


# ============================================================================
# ALGEBRAS
# ============================================================================

def algebra_to_dict(alg: SuperAlgebra) -> Dict[str, Any]:
    return {
        "name": alg.name,
        "kind": alg.kind,
        "even_basis": list(alg.even_basis),
        "odd_basis": list(alg.odd_basis),
        "parameters": list(alg.parameters),
        "products": _products_to_list(alg),
    }


def algebra_from_dict(data: Any) -> SuperAlgebra:
    validate(data, "algebra")
    return SuperAlgebra.build(
        data["name"],
        data["kind"],
        data["even_basis"],
        data["odd_basis"],
        _products_from_list(data["products"]),
        data.get("parameters"),
    )


# ============================================================================
# COCHAINS
# ============================================================================

def cochain_to_dict(c: Cochain2) -> Dict[str, Any]:
    return {
        "name": c.name,
        "declared_weight": c.declared_weight,
        "parameters": list(c.parameters),
        "base": algebra_to_dict(c.base),
        "products": _products_to_list(c.law),
    }


def cochain_from_dict(data: Any) -> Cochain2:
    validate(data, "cochain")
    base = algebra_from_dict(data["base"])
    law = SuperAlgebra.build(
        data["name"],
        base.kind,
        base.even_basis,
        base.odd_basis,
        _products_from_list(data["products"]),
        data.get("parameters"),
    )
    return Cochain2(data["name"], base, law, data["declared_weight"])


# ============================================================================
# FILE I/O
# ============================================================================

def _read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StructureError(f"cannot read {path}: {e.strerror}", {"path": str(path)})
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureError(
            f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}",
            {"path": str(path), "line": e.lineno, "column": e.colno},
        )


def _write_json(path: Union[str, Path], document: Dict[str, Any]) -> None:
    Path(path).write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def load_algebra(path: Union[str, Path]) -> SuperAlgebra:
    alg = algebra_from_dict(_read_json(path))
    logger.debug(f"[FILES] loaded algebra {alg.name} ({alg.even_dim}|{alg.odd_dim}) from {path}")
    return alg


def dump_algebra(alg: SuperAlgebra, path: Union[str, Path]) -> None:
    _write_json(path, algebra_to_dict(alg))


def load_cochain(path: Union[str, Path]) -> Cochain2:
    c = cochain_from_dict(_read_json(path))
    logger.debug(f"[FILES] loaded cochain {c.name} on {c.base.name} from {path}")
    return c


def dump_cochain(c: Cochain2, path: Union[str, Path]) -> None:
    _write_json(path, cochain_to_dict(c))


def load_any(path: Union[str, Path]) -> Union[SuperAlgebra, Cochain2]:
    """A document with a `base` object is a cochain; anything else is an algebra."""
    data = _read_json(path)
    if isinstance(data, dict) and "base" in data:
        return cochain_from_dict(data)
    return algebra_from_dict(data)
