"""
Supergrade - Constraint Extraction, Branch Solver and Classification Scenarios

The classification arguments all follow one pattern: write a parametric law
(the model plus a combination of cochains, or a leibniz ansatz), collect the
polynomial conditions the identity imposes, split into cases on products
that must vanish, and normalize surviving coefficients by a change of scale.

  - extract_constraints / extract_psi_constraints turn residual vectors into
    a ConstraintSystem (equations = 0, groups of "not all zero" inequations)
  - solve explores the case tree: linear substitution first, otherwise a
    split on the linear factors of the simplest equation; it never divides
    by a parameter
  - normalize applies the recorded moves (group rescale, X1 -> X1 - aX0,
    rename) and validates each one as a homomorphism at a sample point
  - scenarios are plain records; run_scenario executes one and compares the
    terminal laws with the catalog

Scenario ids are descriptive (lie-<n>-<m>, leibniz-ng-<n>-<m>, ...).
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, isqrt
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from config import logger
from . import catalog
from .catalog import CatalogEntry
from .deform import (
    Cochain2,
    combine,
    deform,
    first_order_residuals,
    pairing_cochain,
    phi_cochain,
    psi_cochain,
    psi_square_residuals,
    weight_zero_pairings,
)
from .errors import ArgumentRangeError, MoveInapplicableError, NonRationalScaleError, UnknownEntryError
from .exact import (
    ONE,
    MatrixQ,
    Poly,
    ScalarLike,
    canonical_equation,
    format_scalar,
    known_nonzero,
    linear_factors,
    row_reduce,
)
from .superalg import (
    LEIBNIZ,
    LIE,
    LinearMap,
    SuperAlgebra,
    Violation,
    check_identity,
    identity_residuals,
    instantiate,
    vec_sub,
    verify_homomorphism,
)

PSI = "psi"
IDENTITY = "identity"
SOURCES = (PSI, IDENTITY)

DEFORMATION = "deformation"
ANSATZ = "ansatz"
PAIRINGS = "pairings"
FAMILY = "family"
LINEAR_SYSTEM = "linear-system"

LAWS = "laws"
NONE = "none"
VALID = "valid"
DEGENERATED = "degenerated"

SCALE_SAMPLE = 4
_SAMPLES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _sort_key(p: Poly) -> Tuple[int, int, str]:
    return (p.degree(), len(p.terms), format_scalar(p))


def _merge(left: Tuple[str, ...], right: Iterable[str]) -> Tuple[str, ...]:
    out = list(left)
    for item in right:
        if item not in out:
            out.append(item)
    return tuple(out)


# ============================================================================
# CONSTRAINT SYSTEMS
# ============================================================================

@dataclass(frozen=True)
class ConstraintSystem:
    """Equations (each = 0, canonical, deduplicated) and inequation groups.

    An inequation group means "not all of these vanish"; a one-element group
    is a plain p != 0. origins[i] lists where equations[i] came from.
    """

    equations: Tuple[Poly, ...] = ()
    inequations: Tuple[Tuple[Poly, ...], ...] = ()
    origins: Tuple[Tuple[str, ...], ...] = ()

    @classmethod
    def build(
        cls,
        rows: Iterable[Tuple[ScalarLike, str]],
        inequations: Iterable[Sequence[ScalarLike]] = (),
    ) -> "ConstraintSystem":
        return cls._assemble(
            ((Poly.coerce(value), (origin,) if origin else ()) for value, origin in rows), inequations
        )

    @classmethod
    def of(cls, equations: Iterable[ScalarLike], inequations: Iterable[Sequence[ScalarLike]] = ()) -> "ConstraintSystem":
        """Equations without origin labels."""
        return cls.build(((e, "") for e in equations), inequations)

    @classmethod
    def _assemble(
        cls,
        rows: Iterable[Tuple[Poly, Tuple[str, ...]]],
        inequations: Iterable[Sequence[ScalarLike]],
    ) -> "ConstraintSystem":
        merged: Dict[Poly, Tuple[str, ...]] = {}
        for p, origins in rows:
            if p.is_zero():
                continue
            key = canonical_equation(p)
            merged[key] = _merge(merged.get(key, ()), origins)
        ordered = sorted(merged, key=_sort_key)
        groups: List[Tuple[Poly, ...]] = []
        for group in inequations:
            values = [Poly.coerce(v) for v in group]
            entries = tuple(sorted({canonical_equation(v) for v in values if not v.is_zero()}, key=_sort_key))
            if entries not in groups:
                groups.append(entries)
        return cls(tuple(ordered), tuple(groups), tuple(merged[p] for p in ordered))

    @property
    def variables(self) -> Tuple[str, ...]:
        names = {v for p in self.equations for v in p.variables}
        names |= {v for group in self.inequations for p in group for v in p.variables}
        return tuple(sorted(names))

    def is_empty(self) -> bool:
        return not self.equations and not self.inequations

    def subst(self, bindings: Mapping[str, Poly]) -> "ConstraintSystem":
        return ConstraintSystem._assemble(
            ((p.subst(bindings), o) for p, o in zip(self.equations, self.origins)),
            [[p.subst(bindings) for p in group] for group in self.inequations],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "equations": [
                {"equation": format_scalar(p), "origins": list(o)} for p, o in zip(self.equations, self.origins)
            ],
            "inequations": [[format_scalar(p) for p in group] for group in self.inequations],
        }


def _triple_text(alg: SuperAlgebra, triple: Tuple[int, int, int]) -> str:
    return "(" + ",".join(alg.basis[t] for t in triple) + ")"


def extract_constraints(
    alg: SuperAlgebra, inequations: Iterable[Sequence[ScalarLike]] = ()
) -> ConstraintSystem:
    """Every coefficient of every identity residual, as an equation."""
    label = "jacobi" if alg.kind == LIE else "leibniz"
    rows = []
    for triple, lhs, rhs in identity_residuals(alg):
        for k, coeff in vec_sub(lhs, rhs).items():
            rows.append((coeff, f"{label} {_triple_text(alg, triple)} @ {alg.basis[k]}"))
    system = ConstraintSystem.build(rows, inequations)
    logger.debug(f"[CLASSIFY] {alg.name}: {len(system.equations)} identity equations")
    return system


def extract_psi_constraints(
    base: SuperAlgebra, c: Cochain2, inequations: Iterable[Sequence[ScalarLike]] = ()
) -> ConstraintSystem:
    """First-order conditions on base + c plus the printed Psi o Psi on sorted triples."""
    rows = []
    for triple, vec in first_order_residuals(base, c):
        for k, coeff in vec.items():
            rows.append((coeff, f"first-order {_triple_text(base, triple)} @ {base.basis[k]}"))
    for triple, vec in psi_square_residuals(c):
        for k, coeff in vec.items():
            rows.append((coeff, f"psi-square {_triple_text(base, triple)} @ {base.basis[k]}"))
    system = ConstraintSystem.build(rows, inequations)
    logger.debug(f"[CLASSIFY] {c.name} on {base.name}: {len(system.equations)} psi equations")
    return system


# ============================================================================
# BRANCHES
# ============================================================================

@dataclass(frozen=True)
class MoveRecord:
    kind: str
    parameter: str
    description: str
    verified: Optional[bool] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "description": self.description,
            "verified": self.verified,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Branch:
    substitutions: Dict[str, Poly] = field(default_factory=dict)
    nonzero: Tuple[Poly, ...] = ()
    residual: ConstraintSystem = field(default_factory=ConstraintSystem)
    moves: Tuple[MoveRecord, ...] = ()
    contradiction: Optional[str] = None
    contradiction_origins: Tuple[str, ...] = ()

    @property
    def alive(self) -> bool:
        return self.contradiction is None

    @property
    def flagged(self) -> bool:
        """Live branch with equations the solver could not reduce."""
        return self.alive and bool(self.residual.equations)

    def sort_key(self) -> str:
        subs = "; ".join(f"{k}={format_scalar(v)}" for k, v in sorted(self.substitutions.items()))
        nz = "; ".join(format_scalar(p) for p in self.nonzero)
        return f"{subs} | {nz} | {self.contradiction or ''}"

    def describe(self) -> str:
        parts = [f"{k} = {format_scalar(v)}" for k, v in sorted(self.substitutions.items())]
        parts += [f"{format_scalar(p)} != 0" for p in self.nonzero]
        parts += [f"{format_scalar(p)} = 0 (unresolved)" for p in self.residual.equations]
        return "{" + ", ".join(parts) + "}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "substitutions": {k: format_scalar(v) for k, v in sorted(self.substitutions.items())},
            "nonzero": [format_scalar(p) for p in self.nonzero],
            "residual": self.residual.to_dict(),
            "moves": [m.to_dict() for m in self.moves],
            "flagged": self.flagged,
            "contradiction": self.contradiction,
            "origins": list(self.contradiction_origins),
        }


# ============================================================================
# SOLVER
# ============================================================================

@dataclass
class _State:
    subs: Dict[str, Poly]
    equations: Dict[Poly, Tuple[str, ...]]
    inequations: List[Tuple[Poly, ...]]
    nonzero: List[Poly]
    stuck: Set[Poly]

    def copy(self) -> "_State":
        return _State(dict(self.subs), dict(self.equations), list(self.inequations), list(self.nonzero),
                      set(self.stuck))


def _settle(state: _State) -> Optional[Tuple[str, Tuple[str, ...]]]:
    """Substitute and prune until stable; returns (reason, origins) on a contradiction."""
    while True:
        grew = False
        nonzero: List[Poly] = []
        for p in state.nonzero:
            q = p.subst(state.subs)
            if q.is_zero():
                return f"{format_scalar(p)} != 0 fails", ()
            if q.is_constant():
                continue
            q = canonical_equation(q)
            if q not in nonzero:
                nonzero.append(q)
        inequations: List[Tuple[Poly, ...]] = []
        for group in state.inequations:
            left = [canonical_equation(e) for e in (p.subst(state.subs) for p in group) if not e.is_zero()]
            if not left:
                names = ", ".join(format_scalar(p) for p in group)
                return f"{names} all vanish", ()
            if any(known_nonzero(e, nonzero) for e in left):
                continue
            distinct = tuple(sorted(set(left), key=_sort_key))
            if len(distinct) == 1:
                nonzero.append(distinct[0])
                grew = True
            elif distinct not in inequations:
                inequations.append(distinct)
        equations: Dict[Poly, Tuple[str, ...]] = {}
        for p, origins in state.equations.items():
            q = p.subst(state.subs)
            if q.is_zero():
                continue
            if known_nonzero(q, nonzero):
                return f"{format_scalar(canonical_equation(q))} = 0 contradicts the nonzero conditions", origins
            q = canonical_equation(q)
            equations[q] = _merge(equations.get(q, ()), origins)
        state.nonzero = sorted(nonzero, key=_sort_key)
        state.inequations = inequations
        state.equations = equations
        state.stuck = {p for p in state.stuck if p in equations}
        if not grew:
            return None


def _linear_step(active: Sequence[Poly]) -> Optional[Tuple[str, Poly]]:
    """First equation with a variable of degree 1 and constant coefficient; prefer +-1, then the last name."""
    for eq in active:
        options = []
        for name in eq.variables:
            if eq.degree_in(name) != 1:
                continue
            coeff, rest = eq.split_linear(name)
            if coeff.is_constant():
                options.append((abs(coeff.constant()) == 1, name, coeff.constant(), rest))
        if options:
            _, name, coeff, rest = max(options, key=lambda o: (o[0], o[1]))
            return name, -rest / coeff
    return None


def _bind(state: _State, name: str, value: Poly) -> None:
    one = {name: value}
    state.subs = {k: v.subst(one) for k, v in state.subs.items()}
    state.subs[name] = value
    logger.debug(f"[CLASSIFY] substitute {name} := {format_scalar(value)}")


def _split(state: _State, active: Sequence[Poly]) -> List[_State]:
    eq = active[0]
    origins = state.equations[eq]
    parts = linear_factors(eq)
    factors: List[Poly] = []
    for f, _ in parts.factors:
        f = canonical_equation(f)
        if not known_nonzero(f, state.nonzero) and f not in factors:
            factors.append(f)
    residual = parts.residual
    rest = None if residual.is_constant() or known_nonzero(residual, state.nonzero) else canonical_equation(residual)
    if not factors:
        state.stuck.add(eq)
        logger.warning(f"[CLASSIFY] cannot split {format_scalar(eq)}; leaving it unresolved")
        return [state]
    children = []
    for i, f in enumerate(factors):
        child = state.copy()
        del child.equations[eq]
        child.equations[f] = _merge(child.equations.get(f, ()), origins)
        child.nonzero = child.nonzero + factors[:i]
        children.append(child)
    if rest is not None:
        child = state.copy()
        del child.equations[eq]
        child.equations[rest] = _merge(child.equations.get(rest, ()), origins)
        child.nonzero = child.nonzero + factors
        child.stuck.add(rest)
        children.append(child)
    logger.debug(f"[CLASSIFY] split {format_scalar(eq)} into {len(children)} cases")
    return children


def _to_branch(state: _State, contradiction: Optional[Tuple[str, Tuple[str, ...]]] = None) -> Branch:
    kept = sorted(state.stuck if contradiction is None else state.equations, key=_sort_key)
    residual = ConstraintSystem(
        tuple(kept), tuple(state.inequations), tuple(state.equations.get(p, ()) for p in kept)
    )
    return Branch(
        substitutions=dict(sorted(state.subs.items())),
        nonzero=tuple(state.nonzero),
        residual=residual,
        contradiction=contradiction[0] if contradiction else None,
        contradiction_origins=contradiction[1] if contradiction else (),
    )


def _explore(pending: List[_State], keep_dead: bool) -> List[Branch]:
    out: List[Branch] = []
    while pending:
        state = pending.pop()
        dead = _settle(state)
        if dead is not None:
            if keep_dead:
                out.append(_to_branch(state, dead))
            continue
        active = sorted((p for p in state.equations if p not in state.stuck), key=_sort_key)
        if not active:
            out.append(_to_branch(state))
            continue
        step = _linear_step(active)
        if step is not None:
            _bind(state, *step)
            pending.append(state)
            continue
        pending.extend(reversed(_split(state, active)))
    out.sort(key=Branch.sort_key)
    return out


def solve(
    system: ConstraintSystem,
    keep_dead: bool = False,
    nonzero: Sequence[ScalarLike] = (),
) -> List[Branch]:
    """Complete case tree of the system; dead branches are kept with their contradiction on request."""
    start = _State(
        subs={},
        equations={p: o for p, o in zip(system.equations, system.origins)},
        inequations=list(system.inequations),
        nonzero=[canonical_equation(Poly.coerce(p)) for p in nonzero],
        stuck=set(),
    )
    branches = _explore([start], keep_dead)
    live = sum(1 for b in branches if b.alive)
    logger.info(f"[CLASSIFY] solved {len(system.equations)} equations: {live} live of {len(branches)} branches")
    for b in branches:
        if b.flagged:
            logger.warning(f"[CLASSIFY] branch {b.describe()} keeps unresolved equations")
    return branches


def _extend(branch: Branch, equations: Sequence[Tuple[ScalarLike, str]] = (),
            nonzero: Sequence[ScalarLike] = ()) -> List[Branch]:
    """Re-enter the solver from a branch with extra conditions."""
    residual = branch.residual
    state = _State(
        subs=dict(branch.substitutions),
        equations={p: o for p, o in zip(residual.equations, residual.origins)},
        inequations=list(residual.inequations),
        nonzero=list(branch.nonzero) + [canonical_equation(Poly.coerce(p)) for p in nonzero],
        stuck=set(residual.equations),
    )
    for value, origin in equations:
        key = canonical_equation(Poly.coerce(value).subst(state.subs))
        state.equations[key] = _merge(state.equations.get(key, ()), (origin,))
    return [replace(b, moves=branch.moves) for b in _explore([state], keep_dead=True)]


# ============================================================================
# NORMALIZATION MOVES
# ============================================================================

SCALE = "scale"
SHEAR = "shear"
RENAME = "rename"


@dataclass(frozen=True)
class Move:
    kind: str
    parameters: Tuple[str, ...]
    group: str = ""
    target: str = ""


def scale(group: str, *candidates: str) -> Move:
    """Rescale the group so the first nonzero candidate becomes 1."""
    return Move(SCALE, tuple(candidates), group=group)


def shear(parameter: str) -> Move:
    """X1 -> X1 - a X0, removing a (lie laws with n = 2)."""
    return Move(SHEAR, (parameter,))


def rename(old: str, new: str) -> Move:
    return Move(RENAME, (old,), target=new)


def substitute_law(law: SuperAlgebra, bindings: Mapping[str, Poly], name: Optional[str] = None) -> SuperAlgebra:
    """law with bindings applied; the parameter list is recomputed from what is left."""
    table = {pair: {k: c.subst(bindings) for k, c in vec.items()} for pair, vec in law.table.items()}
    return SuperAlgebra.from_table(name or law.name, law.kind, law.even_basis, law.odd_basis, table)


def _homogeneous(p: Poly, members: Set[str], degree: Optional[int] = None) -> bool:
    degrees = {sum(e for v, e in mono if v in members) for mono in p.terms}
    if len(degrees) > 1:
        return False
    return degree is None or not degrees or degrees == {degree}


def _rational_sqrt(value: Fraction) -> Fraction:
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    if num <= 0 or isqrt(num) ** 2 != num or isqrt(den) ** 2 != den:
        raise NonRationalScaleError(f"{value} is not the square of a nonzero rational", {"value": str(value)})
    return Fraction(isqrt(num), isqrt(den))


def _diag(values: Sequence[Fraction]) -> MatrixQ:
    size = len(values)
    return MatrixQ.from_rows([[values[r] if r == c else 0 for c in range(size)] for r in range(size)], size)


def _scale_blocks(law: SuperAlgebra, group: str, value: Fraction) -> Tuple[MatrixQ, MatrixQ]:
    """Diagonal change of basis carrying the normalized law onto the one with coefficient `value`."""
    root = _rational_sqrt(value)
    if law.kind == LIE:
        n, m = law.even_dim - 1, law.odd_dim
        x0, x1, y1 = (value, Fraction(1), root) if group == "mu" else (Fraction(1), Fraction(1), 1 / root)
        even = [x0] + [x0 ** (i - 1) * x1 for i in range(1, n + 1)]
        odd = [x0 ** (j - 1) * y1 for j in range(1, m + 1)]
    else:
        x1, y1 = Fraction(1), 1 / root
        even = [x1 ** i for i in range(1, law.even_dim + 1)]
        odd = [y1 * x1 ** (j - 1) for j in range(1, law.odd_dim + 1)]
    return _diag(even), _diag(odd)


def _sample_point(names: Sequence[str]) -> Dict[str, Fraction]:
    return {name: Fraction(_SAMPLES[i % len(_SAMPLES)]) for i, name in enumerate(sorted(names))}


def _check_scale(law: SuperAlgebra, before: Branch, after: Branch, group: str, name: str,
                 members: Set[str]) -> Tuple[Optional[bool], str]:
    value = Fraction(SCALE_SAMPLE)
    normalized = substitute_law(law, after.substitutions)
    original = substitute_law(law, before.substitutions)
    point = _sample_point(normalized.parameters)
    lifted = {p: (value * v if p in members else v) for p, v in point.items()}
    lifted[name] = value
    source = instantiate(normalized, point)
    target = instantiate(original, lifted)
    if source.is_parametric() or target.is_parametric():
        return None, "sample point left parameters free"
    even, odd = _scale_blocks(law, group, value)
    report = verify_homomorphism(LinearMap(source, target, even, odd))
    shown = ", ".join(f"{k}={v}" for k, v in sorted(lifted.items()))
    return report.ok, f"checked against {shown}"


def _normalize_scale(branch: Branch, move: Move, name: str, law: SuperAlgebra,
                     groups: Mapping[str, Sequence[str]]) -> Branch:
    members = set(groups.get(move.group, ()))
    for key, value in branch.substitutions.items():
        if key in members and not _homogeneous(value, members, 1):
            raise MoveInapplicableError(
                f"{key} = {format_scalar(value)} is not linear in the {move.group} group",
                {"parameter": name, "group": move.group},
            )
        if key not in members and any(v in members for v in value.variables):
            raise MoveInapplicableError(f"{key} depends on the {move.group} group", {"parameter": name})
    for p in branch.nonzero + branch.residual.equations:
        if not _homogeneous(p, members):
            raise MoveInapplicableError(f"{format_scalar(p)} is not homogeneous in the {move.group} group")
    one = {name: ONE}
    subs = {k: v.subst(one) for k, v in branch.substitutions.items()}
    subs[name] = ONE
    nonzero = tuple(
        sorted({canonical_equation(q) for q in (p.subst(one) for p in branch.nonzero) if not q.is_constant()},
               key=_sort_key)
    )
    after = replace(branch, substitutions=dict(sorted(subs.items())), nonzero=nonzero,
                    residual=branch.residual.subst(one))
    verified, detail = _check_scale(law, branch, after, move.group, name, members)
    record = MoveRecord(SCALE, name, f"{move.group} rescale sets {name} = 1", verified, detail)
    logger.debug(f"[CLASSIFY] {record.description} (verified={verified})")
    return replace(after, moves=branch.moves + (record,))


def _apply_scale(branch: Branch, move: Move, candidates: Sequence[str], law: SuperAlgebra,
                 groups: Mapping[str, Sequence[str]]) -> List[Branch]:
    free = set(substitute_law(law, branch.substitutions).parameters)
    for i, name in enumerate(candidates):
        if name in branch.substitutions or name not in free:
            continue
        var = Poly.var(name)
        if known_nonzero(var, branch.nonzero):
            return [_normalize_scale(branch, move, name, law, groups)]
        out: List[Branch] = []
        for child in _extend(branch, equations=[(var, f"case {name} = 0")]):
            out.extend(_apply_scale(child, move, candidates[i + 1:], law, groups) if child.alive else [child])
        for child in _extend(branch, nonzero=[var]):
            out.append(_normalize_scale(child, move, name, law, groups) if child.alive else child)
        return out
    return [branch]


def _apply_shear(branch: Branch, move: Move, law: SuperAlgebra) -> List[Branch]:
    name = move.parameters[0]
    if name in branch.substitutions or name not in substitute_law(law, branch.substitutions).parameters:
        return [branch]
    if law.kind != LIE or law.even_basis[:2] != ("X0", "X1"):
        raise MoveInapplicableError(f"the shear X1 -> X1 - {name} X0 needs a lie law on X0, X1, ...")
    subs = {k: v.subst({name: Poly()}) for k, v in branch.substitutions.items()}
    subs[name] = Poly()
    after = replace(branch, substitutions=dict(sorted(subs.items())))
    normalized = substitute_law(law, after.substitutions)
    original = substitute_law(law, branch.substitutions)
    point = _sample_point(list(normalized.parameters) + [name])
    source = instantiate(normalized, {k: v for k, v in point.items() if k != name})
    target = instantiate(original, point)
    images = {b: {target.index(b): ONE} for b in source.basis}
    images["X1"] = {target.index("X1"): ONE, target.index("X0"): Poly.const(-point[name])}
    verified = verify_homomorphism(LinearMap.from_images(source, target, images)).ok
    record = MoveRecord(SHEAR, name, f"X1 -> X1 - {name} X0 removes {name}", verified,
                        f"checked at {name}={point[name]}")
    return [replace(after, moves=branch.moves + (record,))]


def _apply_rename(branch: Branch, move: Move) -> List[Branch]:
    old, new = move.parameters[0], move.target
    if old in branch.substitutions:
        return [branch]
    to = {old: Poly.var(new)}
    subs = {k: v.subst(to) for k, v in branch.substitutions.items()}
    subs[old] = Poly.var(new)
    nonzero = tuple(canonical_equation(p.subst(to)) for p in branch.nonzero)
    record = MoveRecord(RENAME, old, f"{old} renamed to {new}")
    return [replace(branch, substitutions=dict(sorted(subs.items())), nonzero=nonzero,
                    residual=branch.residual.subst(to), moves=branch.moves + (record,))]


def normalize(branch: Branch, moves: Sequence[Move], law: SuperAlgebra,
              groups: Mapping[str, Sequence[str]]) -> List[Branch]:
    """Apply moves in order. A scale move on a free candidate splits into zero and nonzero cases."""
    current = [branch]
    for move in moves:
        step: List[Branch] = []
        for b in current:
            if not b.alive:
                step.append(b)
            elif move.kind == SCALE:
                step.extend(_apply_scale(b, move, move.parameters, law, groups))
            elif move.kind == SHEAR:
                step.extend(_apply_shear(b, move, law))
            elif move.kind == RENAME:
                step.extend(_apply_rename(b, move))
            else:
                raise MoveInapplicableError(f"unknown move kind {move.kind!r}")
        current = step
    return sorted(current, key=Branch.sort_key)


# ============================================================================
# SCENARIOS
# ============================================================================

Term = Tuple[str, Union[str, Tuple[int, int]]]
ExpectedLaw = Tuple[str, Tuple[Tuple[str, Any], ...]]


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    kind: str
    n: int
    m: int
    method: str = DEFORMATION
    base: str = "L"
    terms: Tuple[Term, ...] = ()
    generic_pairing: bool = False
    inequations: Tuple[Tuple[str, ...], ...] = ()
    groups: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    moves: Tuple[Move, ...] = ()
    expected: Tuple[ExpectedLaw, ...] = ()
    expect: str = LAWS
    expected_origin: Optional[str] = None
    source: str = PSI
    sweep: Tuple[Tuple[int, int], ...] = ()
    note: str = ""

    def expected_entries(self) -> List[CatalogEntry]:
        return [catalog.entry(eid, **dict(args)) for eid, args in self.expected]

    def expectation(self) -> str:
        if self.expect == LAWS:
            return "laws: " + ", ".join(_entry_label(e) for e in self.expected_entries())
        if self.expect == NONE and self.expected_origin:
            return f"none (contradiction from {self.expected_origin})"
        return self.expect


SCENARIOS: Dict[str, Scenario] = {}


def _add(scenario: Scenario) -> None:
    SCENARIOS[scenario.id] = scenario


def _entry_label(e: CatalogEntry) -> str:
    args = ",".join(f"{k}={v}" for k, v in sorted(e.args.items()) if v is not None)
    return f"{e.id}({args})" if args else e.id


def _entry_key(e: CatalogEntry) -> Tuple[str, Tuple[Tuple[str, str], ...]]:
    return e.id, tuple(sorted((k, str(v)) for k, v in e.args.items()))


def _args(**kw) -> Tuple[Tuple[str, Any], ...]:
    return tuple(sorted(kw.items()))


def ng_ansatz(n: int, m: int) -> SuperAlgebra:
    """Chains plus [X1,Y1] = beta1 Y2, [Xi,Y1] = beta_i Y_{i+1}, [Yi,Y1] = gamma_i X_{i+1}."""
    products = [(f"X{i}", "X1", {f"X{i + 1}": 1}) for i in range(1, n)]
    products += [(f"Y{j}", "X1", {f"Y{j + 1}": 1}) for j in range(1, m)]
    for i in range(1, min(n, m - 1) + 1):
        products.append((f"X{i}", "Y1", {f"Y{i + 1}": f"beta{i}"}))
    for i in range(1, min(n - 1, m) + 1):
        products.append((f"Y{i}", "Y1", {f"X{i + 1}": f"gamma{i}"}))
    return SuperAlgebra.build(
        f"ansatz^{{{n},{m}}}", LEIBNIZ, [f"X{i}" for i in range(1, n + 1)], [f"Y{j}" for j in range(1, m + 1)],
        products,
    )


def annihilator_ansatz(n: int, m: int, k: int) -> SuperAlgebra:
    """Leibniz ansatz for n > m with [X1,Y_{k-1}] = alpha Y_k and Y_k, ..., Y_m in the right annihilator.

    [X1,Yj] = -Y_{j+1} (j <= k-2), [Xi,Yj] = beta_i_j Y_{i+j} (2 <= i <= m-j),
    [Yi,Yj] = gamma_i_j X_{i+j} (i <= min(m, n-j)), for 1 <= j <= k-1.
    """
    if not (n > m and 3 <= k <= m - 1):
        raise ArgumentRangeError("the annihilator ansatz needs n > m and 3 <= k <= m-1", {"n": n, "m": m, "k": k})
    products: List[Tuple[str, str, Dict[str, Any]]] = [(f"X{i}", "X1", {f"X{i + 1}": 1}) for i in range(1, n)]
    products += [(f"Y{j}", "X1", {f"Y{j + 1}": 1}) for j in range(1, m)]
    for j in range(1, k):
        products.append(("X1", f"Y{j}", {f"Y{j + 1}": -1 if j <= k - 2 else "alpha"}))
        products += [(f"X{i}", f"Y{j}", {f"Y{i + j}": f"beta{i}_{j}"}) for i in range(2, m - j + 1)]
        products += [(f"Y{i}", f"Y{j}", {f"X{i + j}": f"gamma{i}_{j}"}) for i in range(1, min(m, n - j) + 1)]
    return SuperAlgebra.build(
        f"ansatz^{{{n},{m}}}_{k}", LEIBNIZ, [f"X{i}" for i in range(1, n + 1)], [f"Y{j}" for j in range(1, m + 1)],
        products,
    )


def _psi_label(key: Union[str, Tuple[int, int]]) -> str:
    return f"Psi^{key[1]}_{key[0]},1" if isinstance(key, tuple) else key


def _lie_title(n: int, m: int, terms: Sequence[Term], base: str = "L") -> str:
    head = f"Q_{n} on L^{{{n},{m}}}" if base == "Q-super" else f"L^{{{n},{m}}}"
    body = " + ".join(_psi_label(k) if c == "1" else f"{c} {_psi_label(k)}" for c, k in terms)
    return f"{head}: {body}"


def _register_lie() -> None:
    for m in range(1, 8):
        terms: List[Term] = [("1", "phi12")]
        if m >= 2:
            terms.append(("a", (1, 2)))
        if m >= 3:
            terms.append(("b", (2, 3)))
        _add(Scenario(
            f"lie-2-{m}", _lie_title(2, m, terms), LIE, 2, m, terms=tuple(terms),
            groups=(("mu", ("a", "b")),), moves=(shear("a"),),
            expected=(("L+phi12", _args(n=2, m=m)),),
        ))
    psi3 = {2: [("a1", (1, 2))], 3: [("a1", (1, 2)), ("a2", (2, 3))]}
    for m in range(2, 8):
        terms = [("1", "phi12")] + psi3.get(m, [("a1", (1, 2)), ("a2", (2, 3)), ("a3", (3, 4))])
        expected = [("L+phi12", _args(n=3, m=m)), ("L+phi12+psi2", _args(m=m))]
        candidates: Tuple[str, ...] = ("a1",)
        if m == 4:
            expected.append(("L34+phi12+psi4", ()))
            candidates = ("a1", "a3")
        _add(Scenario(
            f"lie-3-{m}", _lie_title(3, m, terms), LIE, 3, m, terms=tuple(terms),
            groups=(("mu", tuple(c for c, _ in terms[1:])),), moves=(scale("mu", *candidates),),
            expected=tuple(expected),
        ))
    for n in (3, 4, 5):
        _add(Scenario(
            f"lie-{n}-1", f"L^{{{n},1}}: generic weight-0 pairing", LIE, n, 1, generic_pairing=True, expect=NONE,
        ))
    _add(Scenario(
        "lie-4-2", _lie_title(4, 2, [("c", "phibar24"), ("a1", (1, 2))]), LIE, 4, 2,
        terms=(("c", "phibar24"), ("a1", (1, 2))), inequations=(("c",),),
        groups=(("lambda", ("c",)), ("mu", ("a1",))), moves=(scale("lambda", "c"),),
        expected=(("L42+phibar24", ()),),
    ))
    terms43: Tuple[Term, ...] = (("c", "phi12"), ("d", "phi24"), ("a1", (1, 2)), ("a2", (2, 3)))
    _add(Scenario(
        "lie-4-3", _lie_title(4, 3, terms43), LIE, 4, 3, terms=terms43, inequations=(("c", "d"),),
        groups=(("lambda", ("c", "d")), ("mu", ("a1", "a2"))),
        moves=(scale("lambda", "c", "d"), scale("mu", "a1", "a2"), rename("d", "t")),
        expected=(("L43+phi24", ()), ("L43+phi24+psi2+2psi3", ()), ("L43+phi12+t*phi24", _args(t="t")),
                  ("L43+4phi12+phi24+psi2", ())),
        note="the t-family is reported without deciding which t give isomorphic laws",
    ))
    for n, key in ((5, "phibar24"), (6, "phibar36")):
        terms = (("c", key), ("a1", (1, 2)), ("a2", (2, 3)))
        _add(Scenario(
            f"lie-{n}-3", _lie_title(n, 3, terms), LIE, n, 3, terms=terms, inequations=(("c",),),
            groups=(("lambda", ("c",)), ("mu", ("a1", "a2"))), moves=(scale("lambda", "c"),),
            expected=((f"L{n}3+{'phibar24' if n == 5 else 'phibar36'}", ()),),
        ))
    terms_q = (("c", "phibar24"), ("a1", (1, 2)), ("a2", (2, 3)))
    _add(Scenario(
        "lie-5-3-q", _lie_title(5, 3, terms_q, "Q-super"), LIE, 5, 3, base="Q-super", terms=terms_q,
        inequations=(("c",),), expect=NONE, expected_origin="(X1,Y2,Y2)",
        note="[X1,X4] = 0 forces the pairing coefficient to vanish",
    ))
    pairs = tuple((n, m) for m in range(1, 6) for n in range(2 * m + 1, 13 - m))
    _add(Scenario(
        "lie-n-gt-2m", "no weight-0 pairing cocycle on L^{n,m} with n > 2m", LIE, 0, 0, method=PAIRINGS,
        expect=NONE, sweep=pairs,
    ))


def _register_leibniz() -> None:
    for n, m, expected in ((3, 5, ("NG", _args(n=3, m=5))), (4, 3, ("mu12", _args(n=4, m=3))), (5, 3, None)):
        gammas = tuple(f"gamma{i}" for i in range(1, min(n - 1, m) + 1))
        _add(Scenario(
            f"leibniz-ng-{n}-{m}", f"leibniz ansatz on ({n},{m}) with [Y1,Y1] != 0", LEIBNIZ, n, m,
            method=ANSATZ, base="NG-ansatz", inequations=(("1 + beta1",), gammas),
            groups=(("gamma", gammas),), moves=(scale("gamma", "gamma1"),),
            expected=(expected,) if expected else (), expect=LAWS if expected else NONE, source=IDENTITY,
            note="" if expected else "every gamma vanishes: the law degenerates",
        ))
    for n, m in ((3, 4), (4, 4), (5, 6), (4, 3), (5, 4)):
        _add(Scenario(
            f"leibniz-family-{n}-{m}", f"gamma family on ({n},{m}) satisfies the identity", LEIBNIZ, n, m,
            method=FAMILY, expect=VALID, source=IDENTITY,
        ))
    _add(Scenario(
        "leibniz-degenerate", "degenerate sub-cases with [Y1,Y1] = 0", LEIBNIZ, 0, 0,
        method=LINEAR_SYSTEM, expect=DEGENERATED, source=IDENTITY,
        note="n > m instances run the annihilator ansatz through the solver; m = n+1 at k = 9 stays open",
    ))


_register_lie()
_register_leibniz()


def list_scenarios() -> List[Tuple[str, str]]:
    return [(s.id, s.title) for s in SCENARIOS.values()]


# theorem-numbered ids used in the write-up of the classification
ALIASES: Dict[str, str] = {
    "4.1": "lie-4-2",
    "4.2": "lie-2-5",
    "4.3": "lie-3-4",
    "4.4": "lie-3-5",
    "4.5": "lie-n-gt-2m",
    "4.6": "lie-4-3",
    "4.7": "lie-5-3",
    "4.7-Q5": "lie-5-3-q",
    "4.8": "lie-6-3",
    "5.3": "leibniz-ng-4-3",
    "5.3-case1.1": "leibniz-ng-3-5",
    "5.3-degenerate": "leibniz-degenerate",
}


def get_scenario(scenario_id: str) -> Scenario:
    scenario = SCENARIOS.get(ALIASES.get(scenario_id, scenario_id))
    if scenario is None:
        raise UnknownEntryError(f"unknown scenario {scenario_id!r}", {"known": list(SCENARIOS) + list(ALIASES)})
    return scenario


# ============================================================================
# DEGENERATE LINEAR SYSTEMS
# ============================================================================

def subcase_system(subcase: str, n: int, k: int) -> Tuple[MatrixQ, List[str]]:
    """The gamma system of one degenerate sub-case, with known-zero gammas dropped.

    "n+2": rows sum_s (-1)^s C(k-2,s) gamma_{j+1+s}, 1 <= j <= n-k, over gamma_2..gamma_{n-k+1}
    "n+1": rows sum_{s=1}^{j-2} (-1)^s C(j-1,s) gamma_{2+s} + ((-1)^{j-1}+1) gamma_{j+1},
           4 <= j <= k-3, over gamma_3..gamma_{k-4}
    """
    if subcase == "n+2":
        first, last = 2, n - k + 1
        rows = []
        for j in range(1, n - k + 1):
            row = [Fraction(0)] * max(last - first + 1, 0)
            for s in range(k - 1):
                idx = j + 1 + s
                if idx <= last:
                    row[idx - first] += (-1) ** s * comb(k - 2, s)
            rows.append(row)
    elif subcase == "n+1":
        first, last = 3, k - 4
        rows = []
        for j in range(4, k - 2):
            row = [Fraction(0)] * max(last - first + 1, 0)
            for s in range(1, j - 1):
                if 2 + s <= last:
                    row[2 + s - first] += (-1) ** s * comb(j - 1, s)
            if j + 1 <= last:
                row[j + 1 - first] += (-1) ** (j - 1) + 1
            rows.append(row)
    else:
        raise ArgumentRangeError(f"unknown sub-case {subcase!r}", {"known": ["n+2", "n+1"]})
    names = [f"gamma{i}" for i in range(first, last + 1)]
    return MatrixQ.from_rows(rows, len(names)), names


ANNIHILATOR_CASES: Tuple[Tuple[int, int, int], ...] = ((5, 4, 3), (6, 4, 3), (6, 5, 3), (6, 5, 4))
# the printed m = n+1 system stops determining gamma at k = 9
KNOWN_OPEN: Tuple[Tuple[str, int], ...] = (("m = n+1", 9),)


def _annihilator_row(n: int, m: int, k: int) -> Dict[str, Any]:
    alg = annihilator_ansatz(n, m, k)
    gammas = tuple(p for p in alg.parameters if p.startswith("gamma"))
    system = extract_constraints(alg, inequations=[("1 + alpha",), gammas])
    live = solve(system)
    logger.debug(f"[CLASSIFY] annihilator ansatz ({n},{m}) k={k}: {len(live)} live branch(es)")
    return {
        "subcase": "n > m", "n": n, "m": m, "k": k, "unknowns": len(alg.parameters), "rank": None,
        "verdict": DEGENERATED if not live else "undetermined",
        "reason": f"every branch of {len(system.equations)} identity constraints sets all gamma to 0" if not live
        else f"{len(live)} branch(es) keep some gamma nonzero",
    }


def degenerate_cases() -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for n in range(3, 7):
        for k in range(3, n + 1):
            a, b = Fraction(-(k - 2), n), Fraction(-(k - 3), n)
            rows.append({
                "subcase": "m >= n+3", "n": n, "k": k, "unknowns": 0, "rank": 0,
                "verdict": "contradiction" if a != b else "undetermined",
                "reason": f"alpha = {a} from (X{n},X1,Y1) and alpha = {b} from (X{n},X1,Y2)",
            })
    for subcase, label, cases in (
        ("n+2", "m = n+2", [(n, k) for n in range(4, 9) for k in range(3, n)]),
        ("n+1", "m = n+1", [(k, k) for k in (6, 7, 8, 9)]),
    ):
        for n, k in cases:
            matrix, names = subcase_system(subcase, n, k)
            rank = row_reduce(matrix).rank if names else 0
            full = rank == len(names)
            rows.append({
                "subcase": label, "n": n, "k": k, "unknowns": len(names), "rank": rank,
                "verdict": DEGENERATED if full else "undetermined",
                "reason": "unique solution gamma = 0, then gamma1 = 0 from (Y1,Y1,Y_k-1)" if full
                else f"rank {rank} of {len(names)}",
                "known_open": (label, k) in KNOWN_OPEN,
            })
    for n, m, k in ANNIHILATOR_CASES:
        rows.append(_annihilator_row(n, m, k))
    return rows


# ============================================================================
# RUNNING SCENARIOS
# ============================================================================

@dataclass(frozen=True)
class LawResult:
    law: SuperAlgebra
    entry: Optional[CatalogEntry]
    violations: Tuple[Violation, ...]
    branch: Branch

    @property
    def identity_ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "law": self.law.name,
            "catalog_id": self.entry.id if self.entry else None,
            "args": {k: v if isinstance(v, int) else str(v) for k, v in self.entry.args.items()}
            if self.entry else {},
            "parameters": list(self.law.parameters),
            "identity_ok": self.identity_ok,
            "violations": len(self.violations),
            "first_violation": self.violations[0].label() if self.violations else None,
            "erratum": self.entry.erratum if self.entry else None,
            "branch": self.branch.describe(),
        }


@dataclass
class ScenarioReport:
    scenario: Scenario
    source: str
    ok: bool
    outcome: str
    constraints: Optional[ConstraintSystem] = None
    branches: List[Branch] = field(default_factory=list)
    dead: List[Branch] = field(default_factory=list)
    laws: List[LawResult] = field(default_factory=list)
    details: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario.id,
            "title": self.scenario.title,
            "method": self.scenario.method,
            "source": self.source,
            "expected": self.scenario.expectation(),
            "outcome": self.outcome,
            "ok": self.ok,
            "note": self.scenario.note,
            "constraints": self.constraints.to_dict() if self.constraints else None,
            "branches": [b.to_dict() for b in self.branches],
            "dead": [b.to_dict() for b in self.dead],
            "laws": [law.to_dict() for law in self.laws],
            "details": self.details,
        }


@dataclass(frozen=True)
class _Problem:
    law: SuperAlgebra
    system: ConstraintSystem


_BASES: Dict[str, Callable[[int, int], SuperAlgebra]] = {"L": catalog.model, "Q-super": catalog.q_law}


def _named_cochain(base: SuperAlgebra, key: Union[str, Tuple[int, int]]) -> Cochain2:
    return psi_cochain(base, *key) if isinstance(key, tuple) else phi_cochain(base, key)


def build_problem(scenario: Scenario, source: str) -> _Problem:
    """The parametric law of a scenario and the constraints taken from `source`."""
    if source not in SOURCES:
        raise ArgumentRangeError(f"unknown constraint source {source!r}", {"sources": list(SOURCES)})
    if scenario.method == ANSATZ:
        if source != IDENTITY:
            raise ArgumentRangeError(f"{scenario.id} is a leibniz ansatz; only the identity source applies")
        law = ng_ansatz(scenario.n, scenario.m)
        return _Problem(law, extract_constraints(law, scenario.inequations))
    base = _BASES[scenario.base](scenario.n, scenario.m)
    pieces = [(Poly.coerce(coeff), _named_cochain(base, key)) for coeff, key in scenario.terms]
    inequations: List[Sequence[ScalarLike]] = list(scenario.inequations)
    if scenario.generic_pairing:
        pairs = [(i, j) for i in range(1, scenario.m + 1) for j in range(i, scenario.m + 1) if i + j <= scenario.n]
        names = [f"c{i}_{j}" for i, j in pairs]
        generic = pairing_cochain(base, "generic pairing", {p: Poly.var(v) for p, v in zip(pairs, names)})
        pieces.append((ONE, generic))
        inequations.append(tuple(names))
    cochain = combine(base, pieces, name="Psi")
    law = deform(base, cochain, name=f"{base.name}+Psi")
    if source == PSI:
        return _Problem(law, extract_psi_constraints(base, cochain, inequations))
    return _Problem(law, extract_constraints(law, inequations))


def _run_cases(scenario: Scenario, source: str) -> ScenarioReport:
    problem = build_problem(scenario, source)
    groups = dict(scenario.groups)
    branches = solve(problem.system, keep_dead=True)
    final: List[Branch] = []
    dead = [b for b in branches if not b.alive]
    for b in branches:
        if not b.alive:
            continue
        for out in normalize(b, scenario.moves, problem.law, groups):
            (final if out.alive else dead).append(out)
    final.sort(key=Branch.sort_key)
    dead.sort(key=Branch.sort_key)
    expected = scenario.expected_entries()
    pool = expected + catalog.list_entries(kind=scenario.kind, n=scenario.n, m=scenario.m)
    laws = []
    for b in final:
        alg = substitute_law(problem.law, b.substitutions)
        record = catalog.find_law(alg, pool)
        violations = tuple(check_identity(alg))
        if record is not None:
            alg = alg.with_name(_entry_label(record))
        if violations and record is not None and record.erratum:
            logger.warning(f"[CLASSIFY] {record.id} matches a documented erratum: fails at {violations[0].label()}")
        laws.append(LawResult(alg, record, violations, b))
    failed_moves = [m for b in final for m in b.moves if m.verified is False]
    if scenario.expect == LAWS:
        found = sorted(_entry_key(r.entry) for r in laws if r.entry)
        ok = (found == sorted(_entry_key(e) for e in expected) and all(r.entry for r in laws)
              and not any(b.flagged for b in final) and not failed_moves)
        outcome = f"{len(laws)} law(s): " + ", ".join(r.law.name for r in laws)
    else:
        reached = any(scenario.expected_origin in o for b in dead for o in b.contradiction_origins) \
            if scenario.expected_origin else True
        ok = not final and reached
        first = dead[0].contradiction if dead else "no branch"
        outcome = f"no law: {first}" if not final else f"{len(final)} unexpected branch(es)"
    return ScenarioReport(scenario, source, ok, outcome, problem.system, final, dead, laws)


def _run_pairings(scenario: Scenario, source: str) -> ScenarioReport:
    rows = []
    for n, m in scenario.sweep:
        found = weight_zero_pairings(catalog.model(n, m))
        rows.append({"n": n, "m": m, "pairings": len(found)})
    bad = [r for r in rows if r["pairings"]]
    outcome = (f"no weight-0 pairing cocycle on {len(rows)} models" if not bad
               else "pairing cocycles on " + ", ".join(f"({r['n']},{r['m']})" for r in bad))
    return ScenarioReport(scenario, PSI, not bad, outcome, details=rows)


def _run_family(scenario: Scenario, source: str) -> ScenarioReport:
    alg = catalog.leibniz_family(scenario.n, scenario.m)
    system = extract_constraints(alg)
    ok = not system.equations
    outcome = (f"identity holds for free {', '.join(alg.parameters)}" if ok
               else f"{len(system.equations)} identity constraint(s) remain")
    return ScenarioReport(scenario, IDENTITY, ok, outcome, constraints=system)


def _run_linear(scenario: Scenario, source: str) -> ScenarioReport:
    rows = degenerate_cases()
    open_rows = [r for r in rows if r["verdict"] == "undetermined"]
    unexpected = [r for r in open_rows if not r.get("known_open")]
    outcome = f"{DEGENERATED}: {len(rows) - len(open_rows)} of {len(rows)} sub-case instances"
    if open_rows:
        outcome += "; undetermined: " + ", ".join(f"{r['subcase']} k={r['k']} ({r['reason']})" for r in open_rows)
    for r in unexpected:
        logger.warning(f"[CLASSIFY] {r['subcase']} n={r['n']} k={r['k']} left undetermined: {r['reason']}")
    return ScenarioReport(scenario, IDENTITY, not unexpected, outcome, details=rows)


_RUNNERS: Dict[str, Callable[[Scenario, str], ScenarioReport]] = {
    DEFORMATION: _run_cases,
    ANSATZ: _run_cases,
    PAIRINGS: _run_pairings,
    FAMILY: _run_family,
    LINEAR_SYSTEM: _run_linear,
}


def run_scenario(scenario_id: str, source: Optional[str] = None) -> ScenarioReport:
    scenario = get_scenario(scenario_id)
    logger.info(f"[CLASSIFY] running {scenario.id}: {scenario.title}")
    report = _RUNNERS[scenario.method](scenario, source or scenario.source)
    logger.info(f"[CLASSIFY] {scenario.id}: {report.outcome} ({'as expected' if report.ok else 'MISMATCH'})")
    return report
