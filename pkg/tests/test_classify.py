"""Constraint solving, normalization moves and the scripted classification scenarios."""

import pytest

from supergrade import catalog
from supergrade.classify import (
    DEGENERATED,
    IDENTITY,
    PSI,
    Branch,
    ConstraintSystem,
    RENAME,
    SCALE,
    annihilator_ansatz,
    build_problem,
    degenerate_cases,
    extract_constraints,
    get_scenario,
    list_scenarios,
    ng_ansatz,
    normalize,
    rename,
    run_scenario,
    solve,
    subcase_system,
)
from supergrade.errors import ArgumentRangeError, UnknownEntryError
from supergrade.exact import Poly, canonical_equation, format_scalar, row_reduce


def _subs(branch):
    return {k: format_scalar(v) for k, v in branch.substitutions.items()}


# ----------------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------------

def test_scenario_ids_are_listed():
    ids = [sid for sid, _ in list_scenarios()]
    for sid in ("lie-2-1", "lie-3-4", "lie-4-3", "lie-5-3-q", "lie-n-gt-2m",
                "leibniz-ng-4-3", "leibniz-family-5-6", "leibniz-degenerate"):
        assert sid in ids
    assert len(ids) == len(set(ids))


@pytest.mark.parametrize("alias, sid", [
    ("4.3", "lie-3-4"), ("4.6", "lie-4-3"), ("4.7-Q5", "lie-5-3-q"), ("4.8", "lie-6-3"),
    ("5.3-case1.1", "leibniz-ng-3-5"), ("5.3-degenerate", "leibniz-degenerate"),
])
def test_theorem_aliases(alias, sid):
    assert get_scenario(alias).id == sid


def test_unknown_scenario():
    with pytest.raises(UnknownEntryError, match="lie-9-9"):
        get_scenario("lie-9-9")


def test_ansatz_refuses_psi_source():
    with pytest.raises(ArgumentRangeError, match="only the identity source"):
        build_problem(get_scenario("leibniz-ng-4-3"), PSI)


def test_unknown_constraint_source():
    with pytest.raises(ArgumentRangeError, match="unknown constraint source"):
        build_problem(get_scenario("lie-3-2"), "guess")


# ----------------------------------------------------------------------------
# constraint systems and the solver
# ----------------------------------------------------------------------------

def test_system_deduplicates_scaled_equations():
    system = ConstraintSystem.of(["2*a - 4*b", "a - 2*b", "0"])
    assert len(system.equations) == 1
    assert system.equations[0] == Poly.coerce("a - 2*b")


def test_linear_chain_solves_to_one_branch():
    branches = solve(ConstraintSystem.of(["a - 2*b", "b - 3"]))
    assert len(branches) == 1
    assert _subs(branches[0]) == {"a": "6", "b": "3"}
    assert branches[0].alive and not branches[0].flagged


def test_product_splits_into_cases():
    branches = solve(ConstraintSystem.of(["a*b"]))
    assert [_subs(b) for b in branches] == [{"a": "0"}, {"b": "0"}]
    assert [format_scalar(p) for p in branches[1].nonzero] == ["a"]


def test_nonzero_condition_kills_branch():
    system = ConstraintSystem.of(["a"], inequations=[["a"]])
    assert solve(system) == []
    (dead,) = solve(system, keep_dead=True)
    assert not dead.alive
    assert "contradicts the nonzero conditions" in dead.contradiction


def test_contradiction_keeps_origin_labels():
    system = ConstraintSystem.build([("c", "jacobi (X1,Y2,Y2) @ X4")], inequations=[["c"]])
    (dead,) = solve(system, keep_dead=True)
    assert dead.contradiction_origins == ("jacobi (X1,Y2,Y2) @ X4",)


def test_assumed_nonzero_prunes_factor():
    branches = solve(ConstraintSystem.of(["a*b"]), nonzero=["a"])
    assert [_subs(b) for b in branches] == [{"b": "0"}]


def test_rename_move():
    law = catalog.model(3, 2)
    (out,) = normalize(Branch(), [rename("d", "t")], law, {})
    assert _subs(out) == {"d": "t"}
    assert out.moves[0].kind == RENAME


def test_identity_constraints_are_labelled():
    system = extract_constraints(ng_ansatz(4, 3))
    assert system.equations
    assert all(o.startswith("leibniz (") for origins in system.origins for o in origins)
    assert not extract_constraints(catalog.model(3, 4)).equations


def _canon(text):
    return canonical_equation(Poly.coerce(text))


def test_psi_constraints_of_l34():
    system = build_problem(get_scenario("lie-3-4"), PSI).system
    assert _canon("a2") in system.equations
    assert _canon("a1*a3") in system.subst({"a2": Poly()}).equations


def test_psi_constraints_of_l43():
    system = build_problem(get_scenario("lie-4-3"), PSI).system
    assert _canon("a2*c") in system.equations
    assert _canon("a1*d + (a2 - a1)*(c/2 - d)") in system.equations


def test_ng_ansatz_shape():
    alg = ng_ansatz(4, 3)
    assert set(alg.parameters) == {"beta1", "beta2", "gamma1", "gamma2", "gamma3"}
    y1, x2 = alg.index("Y1"), alg.index("X2")
    assert alg.basis_product(y1, y1) == {x2: Poly.var("gamma1")}


# ----------------------------------------------------------------------------
# degenerate sub-cases
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("k,size", [(6, 0), (7, 1), (8, 2)])
def test_n_plus_one_systems_full_rank(k, size):
    matrix, names = subcase_system("n+1", k, k)
    assert len(names) == size
    if names:
        assert row_reduce(matrix).rank == size


def test_n_plus_one_at_nine_is_rank_deficient():
    matrix, names = subcase_system("n+1", 9, 9)
    assert names == ["gamma3", "gamma4", "gamma5"]
    assert row_reduce(matrix).rank == 2


def test_n_plus_two_system_is_triangular():
    matrix, names = subcase_system("n+2", 7, 3)
    assert names == ["gamma2", "gamma3", "gamma4", "gamma5"]
    assert row_reduce(matrix).rank == 4


def test_unknown_subcase():
    with pytest.raises(ArgumentRangeError):
        subcase_system("n+5", 4, 3)


def test_annihilator_ansatz_shape():
    alg = annihilator_ansatz(5, 4, 3)
    x1, y2, y3 = alg.index("X1"), alg.index("Y2"), alg.index("Y3")
    assert alg.basis_product(x1, y2) == {y3: Poly.var("alpha")}
    assert {p for p in alg.parameters if p.startswith("gamma")} == {
        "gamma1_1", "gamma2_1", "gamma3_1", "gamma4_1", "gamma1_2", "gamma2_2", "gamma3_2",
    }
    assert all(not alg.basis_product(b, y3) for b in range(alg.dim))


@pytest.mark.parametrize("n, m, k", [(5, 5, 3), (6, 4, 4), (6, 4, 2)])
def test_annihilator_ansatz_range(n, m, k):
    with pytest.raises(ArgumentRangeError):
        annihilator_ansatz(n, m, k)


def test_every_degenerate_case_closes():
    rows = degenerate_cases()
    assert len(rows) == 33
    contradictions = [r for r in rows if r["subcase"] == "m >= n+3"]
    assert all(r["verdict"] == "contradiction" for r in contradictions)
    (gap,) = [r for r in rows if r["verdict"] == "undetermined"]
    assert (gap["subcase"], gap["k"], gap["rank"], gap["unknowns"]) == ("m = n+1", 9, 2, 3)
    assert gap["known_open"]
    closed = [r for r in rows if r["subcase"] != "m >= n+3" and r is not gap]
    assert all(r["verdict"] == DEGENERATED for r in closed)
    assert len([r for r in closed if r["subcase"] == "n > m"]) == 4


# ----------------------------------------------------------------------------
# scenarios
# ----------------------------------------------------------------------------

def test_degenerate_scenario():
    report = run_scenario("leibniz-degenerate")
    assert report.ok
    assert report.outcome == "degenerated: 32 of 33 sub-case instances; undetermined: m = n+1 k=9 (rank 2 of 3)"


@pytest.mark.parametrize("sid", ["leibniz-family-3-4", "leibniz-family-4-3"])
def test_family_scenarios(sid):
    report = run_scenario(sid)
    assert report.ok
    assert report.outcome.startswith("identity holds for free")


def test_leibniz_ansatz_finds_mu12():
    report = run_scenario("leibniz-ng-4-3")
    assert report.ok, report.outcome
    assert [r.entry.id for r in report.laws] == ["mu12"]
    assert all(r.identity_ok for r in report.laws)


def test_leibniz_ansatz_without_law():
    report = run_scenario("leibniz-ng-5-3")
    assert report.ok, report.outcome
    assert not report.laws
    assert report.outcome.startswith("no law:")


def test_generic_pairing_has_no_solution():
    report = run_scenario("lie-3-1")
    assert report.ok, report.outcome
    assert report.outcome.startswith("no law:")
    assert report.source == PSI


def test_report_dict_names_its_scenario():
    data = run_scenario("leibniz-family-3-4").to_dict()
    assert data["scenario"] == "leibniz-family-3-4"
    assert data["source"] == IDENTITY
    assert data["expected"] == "valid"


def _scale_moves(report):
    return [m for b in report.branches for m in b.moves if m.kind == SCALE]


@pytest.mark.parametrize("sid", ["lie-3-2", "lie-3-4"])
def test_scale_moves_verify(sid):
    moves = _scale_moves(run_scenario(sid))
    assert moves
    assert all(m.verified is True for m in moves), [m.detail for m in moves]


@pytest.mark.slow
def test_scale_moves_verify_on_l43():
    moves = _scale_moves(run_scenario("lie-4-3"))
    assert {m.parameter for m in moves} >= {"c", "d"}
    assert all(m.verified is True for m in moves), [m.detail for m in moves]


@pytest.mark.slow
@pytest.mark.parametrize("sid", [f"lie-2-{m}" for m in range(1, 8)] + [f"lie-3-{m}" for m in range(2, 8)])
def test_small_lie_scenarios(sid):
    assert run_scenario(sid).ok


@pytest.mark.slow
@pytest.mark.parametrize("sid", ["lie-4-2", "lie-4-3", "lie-5-3", "lie-6-3", "leibniz-ng-3-5"])
def test_larger_scenarios(sid):
    report = run_scenario(sid)
    assert report.ok, report.outcome


@pytest.mark.slow
def test_q_super_contradiction_origin():
    report = run_scenario("lie-5-3-q")
    assert report.ok
    assert any("(X1,Y2,Y2)" in o for b in report.dead for o in b.contradiction_origins)


@pytest.mark.slow
def test_pairing_sweep():
    report = run_scenario("lie-n-gt-2m")
    assert report.ok
    assert all(row["pairings"] == 0 for row in report.details)
