"""Superalgebra tables, identity checks, annihilators and basis changes."""

import pytest

from supergrade import catalog
from supergrade.errors import ParityError, PreconditionError, StructureError
from supergrade.exact import MatrixQ, Poly
from supergrade.superalg import (
    LEIBNIZ,
    LIE,
    LinearMap,
    SuperAlgebra,
    check_identity,
    check_super_jacobi,
    check_super_leibniz,
    ideal_generated,
    identity_residuals,
    instantiate,
    is_lie_superalgebra,
    retag,
    right_annihilator,
    right_mult_closure,
    skew_ideal,
    transport,
    verify_homomorphism,
)


def _broken_lie(coeff="1"):
    return SuperAlgebra.build(
        "broken", LIE, ["X0", "X1", "X2"], [],
        [("X0", "X1", {"X2": 1}), ("X1", "X2", {"X1": coeff})],
    )


def test_lie_mirror_products(model_3_4):
    x0, x1, x2 = (model_3_4.index(n) for n in ("X0", "X1", "X2"))
    assert model_3_4.basis_product(x0, x1) == {x2: Poly.const(1)}
    assert model_3_4.basis_product(x1, x0) == {x2: Poly.const(-1)}
    assert (x1, x0) not in model_3_4.table


def test_conflicting_orders_rejected():
    with pytest.raises(StructureError, match="inconsistent"):
        SuperAlgebra.build("t", LIE, ["X0", "X1", "X2"], [],
                           [("X0", "X1", {"X2": 1}), ("X1", "X0", {"X2": 1})])


def test_wrong_parity_rejected():
    with pytest.raises(ParityError):
        SuperAlgebra.build("t", LIE, ["X1", "X2"], ["Y1"], [("X1", "Y1", {"X2": 1})])


def test_unknown_basis_name():
    with pytest.raises(StructureError, match="Z9"):
        SuperAlgebra.build("t", LEIBNIZ, ["X1"], [], [("X1", "Z9", {"X1": 1})])


def test_even_self_bracket_must_vanish():
    with pytest.raises(StructureError, match="must vanish"):
        SuperAlgebra.build("t", LIE, ["X1", "X2"], [], [("X1", "X1", {"X2": 1})])


@pytest.mark.parametrize("build", [
    lambda: catalog.model(3, 4),
    lambda: catalog.model(5, 2),
    lambda: catalog.q_law(5),
    lambda: catalog.q_law(7, 3),
])
def test_lie_laws_satisfy_jacobi_and_leibniz(build):
    """A Lie superalgebra re-read as a Leibniz table satisfies super Leibniz."""
    alg = build()
    assert check_super_jacobi(alg) == []
    assert check_super_leibniz(retag(alg, LEIBNIZ)) == []


def test_jacobi_violation_is_reported():
    violations = check_identity(_broken_lie())
    assert [v.args for v in violations] == [("X0", "X1", "X2")]
    assert violations[0].to_dict()["difference"]


def test_parametric_residuals_carry_the_parameter():
    rows = identity_residuals(_broken_lie("a"))
    assert rows
    assert all("a" in c.variables for _, lhs, rhs in rows for c in list(lhs.values()) + list(rhs.values()))
    assert check_identity(instantiate(_broken_lie("a"), {"a": 0})) == []


def test_kind_specific_checks_refuse_the_other_kind(ng_3_3, model_3_4):
    with pytest.raises(PreconditionError):
        check_super_jacobi(ng_3_3)
    with pytest.raises(PreconditionError):
        check_super_leibniz(model_3_4)


def test_ng_annihilator(ng_3_3):
    ann = right_annihilator(ng_3_3)
    assert (ann.even_dim, ann.odd_dim) == (2, 2)


LEIBNIZ_LAWS = [r for r in catalog.list_entries(kind=LEIBNIZ, cap=6) if not r.erratum]


def _concrete(record):
    alg = record.build()
    return instantiate(alg, {p: 3 + 2 * i for i, p in enumerate(alg.parameters)})


@pytest.mark.parametrize("record", LEIBNIZ_LAWS, ids=lambda r: f"{r.id}{sorted(r.args.items())}")
def test_annihilator_is_two_sided_ideal(record):
    alg = _concrete(record)
    ann = right_annihilator(alg)
    assert ann.contains(ideal_generated(alg, ann.vectors()))


@pytest.mark.parametrize("record", LEIBNIZ_LAWS, ids=lambda r: f"{r.id}{sorted(r.args.items())}")
def test_skew_products_lie_in_annihilator(record):
    alg = _concrete(record)
    assert right_annihilator(alg).contains(skew_ideal(alg))


def test_right_multiplications_close(ng_3_3):
    assert right_mult_closure(ng_3_3) == []


def test_remark_algebra_is_lie(remark_algebra):
    assert remark_algebra.kind == LEIBNIZ
    assert is_lie_superalgebra(remark_algebra)


def test_transport_scales_structure_constants(model_3_4):
    even = MatrixQ.from_rows([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    odd = MatrixQ.identity(4)
    f = transport(model_3_4, even, odd, name="scaled")
    assert verify_homomorphism(f).ok
    assert f.source.basis_product(0, 1) == {2: Poly.const(2)}


def test_from_images_checks_parity(model_3_4):
    images = {name: model_3_4.unit(model_3_4.index(name)) for name in model_3_4.basis}
    images["X0"] = model_3_4.unit(model_3_4.index("Y1"))
    with pytest.raises(ParityError):
        LinearMap.from_images(model_3_4, model_3_4, images)


def test_identity_map_is_homomorphism(ng_3_3):
    report = verify_homomorphism(LinearMap.identity(ng_3_3))
    assert report.ok and report.even_det == 1
