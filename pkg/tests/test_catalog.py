"""Catalog entries: every printed law passes its identity or carries an erratum that names the failing triple."""

import pytest

from supergrade import catalog
from supergrade.deform import weight
from supergrade.errors import ArgumentRangeError, PreconditionError, UnknownEntryError
from supergrade.superalg import LIE, check_identity, check_super_leibniz

LAWS = catalog.list_entries(cap=6)


def _law_id(record):
    return f"{record.id}{sorted(record.args.items())}"


@pytest.mark.parametrize("record", LAWS, ids=_law_id)
def test_printed_law_identity(record):
    violations = check_identity(record.build())
    if record.erratum:
        assert record.erratum_triple in [v.args for v in violations]
    else:
        assert violations == []


@pytest.mark.slow
@pytest.mark.parametrize("record", catalog.list_entries(cap=catalog.SWEEP_MAX), ids=_law_id)
def test_printed_law_identity_full_sweep(record):
    violations = check_identity(record.build())
    assert bool(violations) == bool(record.erratum)


@pytest.mark.parametrize("record", catalog.list_entries(role=catalog.COCHAIN, cap=5), ids=_law_id)
def test_catalog_cochains_have_expected_weight(record):
    c = record.build()
    assert weight(c) == c.declared_weight


def test_ng_show_example():
    alg = catalog.make("NG", n=4, m=3)
    named = {(left, right): result for left, right, result in alg.products_by_name()}
    assert named[("Y3", "Y1")] == {"X4": 1}


def test_ng_erratum_beyond_valid_range():
    record = catalog.entry("NG", n=5, m=3)
    assert record.erratum_triple == ("Y3", "Y1", "X1")
    assert record.erratum_triple in [v.args for v in check_identity(record.build())]


@pytest.mark.parametrize("n, m", [(3, 4), (4, 4), (5, 6), (4, 3), (5, 4)])
def test_gamma_family_is_leibniz_for_free_gammas(n, m):
    assert check_super_leibniz(catalog.leibniz_family(n, m)) == []


@pytest.mark.slow
@pytest.mark.parametrize("n, m", [(n, m) for m in range(3, 8) for n in range(3, m + 1)])
def test_gamma_family_case_one_sweep(n, m):
    assert check_super_leibniz(catalog.leibniz_family(n, m)) == []


def test_gamma_family_dependent_gammas():
    alg = catalog.leibniz_family(4, 5)
    assert "gamma2" not in alg.parameters
    with pytest.raises(PreconditionError, match="gamma2"):
        catalog.leibniz_family(4, 5, {"gamma2": 1})


def test_family_constraints_case_mismatch():
    with pytest.raises(ArgumentRangeError, match="case 2"):
        catalog.family_constraints(4, 3, case=1)


def test_find_law_recognizes_ng():
    record = catalog.find_law(catalog.ng_law(4, 4))
    assert record is not None and record.id == "NG" and record.args == {"n": 4, "m": 4}


def test_unknown_id_and_arguments():
    with pytest.raises(UnknownEntryError):
        catalog.make("nope")
    with pytest.raises(ArgumentRangeError, match="takes"):
        catalog.make("NG", n=3, m=4, k=1)
    with pytest.raises(ArgumentRangeError):
        catalog.make("Q", n=6)


def test_list_filters():
    lie = catalog.list_entries(kind=LIE, n=4, m=3)
    assert lie and all(r.kind == LIE and r.dims == (4, 3) for r in lie)
    assert {r.id for r in lie} >= {"L43+phi24", "L43+phi12+t*phi24"}
