"""Cochains on the model law: weights, first-order conditions, weight-0 pairings."""

from fractions import Fraction

import pytest

from supergrade import catalog
from supergrade.deform import (
    INHOMOGENEOUS,
    Cochain2,
    combine,
    deform,
    first_order_residuals,
    is_infinitesimal_deformation,
    pairing_cochain,
    phi_cochain,
    psi_cochain,
    psi_compose_psi,
    weight,
    weight_zero_pairings,
)
from supergrade.errors import ArgumentRangeError, PreconditionError
from supergrade.exact import Poly
from supergrade.superalg import check_identity

PSI_CASES = [
    (n, m, k, s)
    for n in range(2, 6)
    for m in range(2, 6)
    for k in range(1, n + 1)
    for s in range(k + 1, m + 1)
]

PHI_HOMES = [
    ("phi12", 2, 3), ("phi12", 3, 2), ("phi12", 3, 5), ("phi12", 4, 2), ("phi12", 4, 3),
    ("phi24", 4, 3), ("phibar24", 4, 2), ("phibar24", 5, 3), ("phibar36", 6, 3),
]


@pytest.mark.parametrize("n, m, k, s", PSI_CASES)
def test_psi_weight(n, m, k, s):
    c = psi_cochain(catalog.model(n, m), k, s)
    assert weight(c) == s - k - 1 == c.declared_weight


def test_psi_components_follow_binomial_rule():
    c = psi_cochain(catalog.model(3, 5), 2, 3)
    named = {(left, right): result for left, right, result in c.products_by_name()}
    # (-1)^(k-i) C(j-1, k-i) Y_{i+j}
    assert named[("X1", "Y2")] == {"Y3": -1}
    assert named[("X2", "Y1")] == {"Y3": 1}
    assert named[("X1", "Y3")] == {"Y4": -2}


def test_psi_out_of_range():
    with pytest.raises(ArgumentRangeError):
        psi_cochain(catalog.model(3, 3), 2, 2)


@pytest.mark.parametrize("which, n, m", PHI_HOMES)
def test_phi_weight_zero_on_home(which, n, m):
    assert weight(phi_cochain(catalog.model(n, m), which)) == 0


def test_phi_not_tabulated():
    with pytest.raises(ArgumentRangeError, match="not tabulated"):
        phi_cochain(catalog.model(7, 3), "phibar36")


def test_phi12_is_infinitesimal_deformation():
    c = phi_cochain(catalog.model(3, 4), "phi12")
    assert is_infinitesimal_deformation(c)
    assert check_identity(deform(c.base, c)) == []


def test_first_order_failure_is_localized():
    base = catalog.model(3, 2)
    c = pairing_cochain(base, "bad", {(1, 1): 1})
    triples = [tuple(base.basis[i] for i in t) for t, _ in first_order_residuals(base, c)]
    assert ("X0", "Y1", "Y1") in triples


def test_mixed_weights_are_inhomogeneous():
    base = catalog.model(3, 4)
    c = combine(base, [(1, phi_cochain(base, "phi12")), (1, psi_cochain(base, 1, 3))])
    assert weight(c) == INHOMOGENEOUS
    assert c.declared_weight is None


def test_combine_rejects_foreign_cochain():
    with pytest.raises(PreconditionError):
        combine(catalog.model(3, 2), [(1, phi_cochain(catalog.model(3, 4), "phi12"))])


def test_pairing_range():
    with pytest.raises(ArgumentRangeError):
        pairing_cochain(catalog.model(3, 2), "p", {(2, 2): 1})


def test_weight_zero_pairings_on_l32():
    (only,) = weight_zero_pairings(catalog.model(3, 2))
    named = {(left, right): result for left, right, result in only.products_by_name()}
    assert named[("Y1", "Y2")]["X3"] / named[("Y1", "Y1")]["X2"] == Fraction(1, 2)


@pytest.mark.parametrize("n, m", [(3, 1), (4, 1), (5, 1), (5, 2), (7, 3)])
def test_no_weight_zero_pairings(n, m):
    assert weight_zero_pairings(catalog.model(n, m)) == []


def test_cochain_subst():
    base = catalog.model(3, 2)
    c = pairing_cochain(base, "p", {(1, 1): "2*a", (1, 2): "a"})
    assert isinstance(c.subst({"a": 0}), Cochain2)
    assert c.subst({"a": 0}).is_zero()


def _psi_sum(n, m, coeffs):
    base = catalog.model(n, m)
    terms = [(1, phi_cochain(base, "phi12"))]
    terms += [(c, psi_cochain(base, k, k + 1)) for k, c in enumerate(coeffs, start=1)]
    return base, combine(base, terms)


def test_psi_square_on_l2m():
    base, c = _psi_sum(2, 5, ["a", "b"])
    assert psi_compose_psi(c, "X1", "X2", "Y1") == {base.index("Y4"): Poly.coerce("2*b^2")}


def test_psi_square_on_l34():
    base, c = _psi_sum(3, 4, ["a1", "a2", "a3"])
    assert psi_compose_psi(c, "Y1", "Y1", "Y1") == {base.index("Y3"): Poly.coerce("3*a2")}
    flat = c.subst({"a2": 0})
    assert psi_compose_psi(flat, "X1", "X2", "Y1") == {base.index("Y4"): Poly.coerce("-a1*a3")}
