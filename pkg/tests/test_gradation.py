"""Central sequences, natural layers and the naturally graded decision."""

import pytest

from supergrade import catalog
from supergrade.errors import NotGradedError, PreconditionError
from supergrade.exact import MatrixQ
from supergrade.gradation import (
    adapted_basis,
    associated_graded,
    grading_defects,
    is_filiform,
    is_max_nilindex_leibniz,
    is_naturally_graded,
    layer_layout,
    s_nilindex,
    structure_invariants,
)
from supergrade.superalg import instantiate, transport, verify_homomorphism


def test_model_nilindex(model_3_4):
    assert s_nilindex(model_3_4) == (3, 4)
    assert is_filiform(model_3_4)


def test_central_vector_breaks_filiform():
    assert not is_filiform(catalog.with_center(3, 2))


def test_ng_has_maximal_nilindex(ng_3_3):
    assert s_nilindex(ng_3_3) == (3, 3)
    assert is_max_nilindex_leibniz(ng_3_3)
    assert not is_filiform(ng_3_3)


def test_model_layout(model_3_4):
    assert layer_layout(model_3_4) == [(2, 1), (1, 1), (1, 1), (0, 1)]


def test_parametric_input_needs_a_point():
    law = catalog.deformed_law(3, 2, [("a", "phi12")])
    with pytest.raises(PreconditionError, match="instantiate"):
        s_nilindex(law)
    assert s_nilindex(instantiate(law, {"a": 1})) == (3, 2)


@pytest.mark.parametrize("build", [
    lambda: catalog.model(3, 4),
    lambda: catalog.ng_law(3, 3),
    lambda: catalog.ng_law(4, 4),
    lambda: catalog.null_filiform(5),
])
def test_naturally_graded_laws(build):
    alg = build()
    result = is_naturally_graded(alg)
    assert result.naturally_graded
    assert verify_homomorphism(result.witness).ok


def test_remark_algebra_fails_at_gradedness(remark_algebra):
    defects = grading_defects(remark_algebra)
    assert [d.describe() for d in defects] == ["(Y1,Y1) lands in layer 3"]
    with pytest.raises(NotGradedError):
        associated_graded(remark_algebra)
    result = is_naturally_graded(remark_algebra)
    assert not result.naturally_graded
    assert result.reason.startswith("gr not graded: (Y1,Y1) lands in layer 3")


def test_structure_invariants_survive_basis_change(model_3_4):
    even = MatrixQ.from_rows([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    moved = transport(model_3_4, even, MatrixQ.identity(4)).source
    assert structure_invariants(moved) == structure_invariants(model_3_4)


def test_adapted_basis_of_model_is_the_model():
    alg = catalog.model(3, 2)
    f = adapted_basis(alg)
    assert verify_homomorphism(f).ok
    assert f.source.table == alg.table


def test_adapted_basis_of_ng(ng_3_3):
    f = adapted_basis(ng_3_3)
    assert verify_homomorphism(f).ok
    assert f.source.table == ng_3_3.table
