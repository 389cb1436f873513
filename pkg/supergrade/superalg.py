"""
Supergrade - Superalgebras by Structure Constants

A SuperAlgebra is a Z2-graded algebra given on a basis: even names first
(X0.. or X1..), odd names after (Y1..). Products of basis elements are a
sparse table (i, j) -> {k: coefficient}; anything absent is zero.

Storage follows the usual conventions for the two kinds:
  - lie: only canonical pairs are stored ([Xi,Xj] with i<j, [Xi,Yj],
    (Yi,Yj) with i<=j); the mirror products come from super
    skew-symmetry, [b,a] = -(-1)^{|a||b|}[a,b].
  - leibniz: every ordered pair is stored explicitly.

Identity checks return lists of Violation rather than raising, so callers
(gradation, deform, classify) can treat a failing identity as data. Every
triple check also works on parametric tables: a residual is a vector of
polynomials, and the identity holds when they vanish identically.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from config import logger
from .errors import (
    DimensionMismatch,
    ParityError,
    PreconditionError,
    StructureError,
)
from .exact import (
    MatrixQ,
    Poly,
    ScalarLike,
    ZERO,
    determinant,
    format_scalar,
    nullspace,
    rref_rational,
)

LIE = "lie"
LEIBNIZ = "leibniz"
KINDS = (LIE, LEIBNIZ)

Vec = Dict[int, Poly]
Table = Dict[Tuple[int, int], Dict[int, Poly]]
ProductSpec = Tuple[str, str, Mapping[str, ScalarLike]]


# ============================================================================
# SPARSE VECTORS
# ============================================================================

def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a: Vec, s: Union[Poly, int, Fraction]) -> Vec:
    s = Poly.coerce(s)
    if s.is_zero():
        return {}
    out = {}
    for k, v in a.items():
        p = v * s
        if not p.is_zero():
            out[k] = p
    return out


def vec_sub(a: Vec, b: Vec) -> Vec:
    return vec_add(a, vec_scale(b, -1))


def vec_from_dense(values: Sequence[ScalarLike]) -> Vec:
    out = {}
    for k, v in enumerate(values):
        p = Poly.coerce(v)
        if not p.is_zero():
            out[k] = p
    return out


def vec_to_dense(vec: Vec, size: int) -> Tuple[Poly, ...]:
    return tuple(vec.get(k, ZERO) for k in range(size))


# ============================================================================
# REPORT TYPES
# ============================================================================

NamedVec = Tuple[Tuple[str, Poly], ...]


def _render(vec: NamedVec) -> Dict[str, str]:
    return {name: format_scalar(value) for name, value in vec}


@dataclass(frozen=True)
class Violation:
    """One failing instance of a checked identity.

    `args` are basis names, `lhs` and `rhs` the two sides, `difference`
    their difference (the residual). Vectors are sparse, keyed by basis name.
    """

    check: str
    args: Tuple[str, ...]
    lhs: NamedVec
    rhs: NamedVec
    difference: NamedVec

    def label(self) -> str:
        return "(" + ",".join(self.args) + ")"

    def to_dict(self) -> Dict:
        return {
            "check": self.check,
            "args": list(self.args),
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "difference": _render(self.difference),
        }


# ============================================================================
# SUPERALGEBRA
# ============================================================================

@dataclass(frozen=True)
class SuperAlgebra:
    name: str
    kind: str
    even_basis: Tuple[str, ...]
    odd_basis: Tuple[str, ...]
    table: Table = field(repr=False)
    parameters: Tuple[str, ...] = ()

    # -- construction -------------------------------------------------------

    @classmethod
    def build(
        cls,
        name: str,
        kind: str,
        even_basis: Sequence[str],
        odd_basis: Sequence[str],
        products: Iterable[ProductSpec] = (),
        parameters: Optional[Sequence[str]] = None,
    ) -> "SuperAlgebra":
        """Build from name-keyed products [left, right] = {basis: coeff}.

        For lie kind a product may be given in either order; it is folded
        onto its canonical pair. Giving both orders is allowed only when
        they agree with super skew-symmetry.
        """
        if kind not in KINDS:
            raise StructureError(f"unknown algebra kind {kind!r}")
        names = list(even_basis) + list(odd_basis)
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate basis names in {name}", {"basis": names})
        index = {n: i for i, n in enumerate(names)}
        p = len(even_basis)

        def lookup(basis_name: str) -> int:
            if basis_name not in index:
                raise StructureError(f"unknown basis name {basis_name!r} in {name}", {"basis_name": basis_name})
            return index[basis_name]

        table: Table = {}
        seen: Dict[Tuple[int, int], Tuple[str, str]] = {}
        for left, right, result in products:
            i, j = lookup(left), lookup(right)
            vec: Vec = {}
            for target, coeff in result.items():
                k = lookup(target)
                value = Poly.coerce(coeff)
                if not value.is_zero():
                    vec[k] = vec.get(k, ZERO) + value
            vec = {k: v for k, v in vec.items() if not v.is_zero()}
            if kind == LIE and j < i:
                sign = 1 if (i >= p and j >= p) else -1
                i, j = j, i
                vec = vec_scale(vec, sign)
            if (i, j) in seen:
                if table.get((i, j), {}) != vec:
                    raise StructureError(
                        f"inconsistent products for [{names[i]},{names[j]}] in {name}",
                        {"first": "[%s,%s]" % seen[(i, j)], "second": f"[{left},{right}]"},
                    )
                continue
            seen[(i, j)] = (left, right)
            if vec:
                table[(i, j)] = vec
        return cls.from_table(name, kind, even_basis, odd_basis, table, parameters)

    @classmethod
    def from_table(
        cls,
        name: str,
        kind: str,
        even_basis: Sequence[str],
        odd_basis: Sequence[str],
        table: Mapping[Tuple[int, int], Mapping[int, Poly]],
        parameters: Optional[Sequence[str]] = None,
    ) -> "SuperAlgebra":
        p = len(even_basis)
        size = p + len(odd_basis)
        clean: Table = {}
        for (i, j), vec in table.items():
            if not (0 <= i < size and 0 <= j < size):
                raise DimensionMismatch(f"product index ({i},{j}) outside a basis of size {size}")
            entries = {k: v for k, v in vec.items() if not v.is_zero()}
            if not entries:
                continue
            expected = ((i >= p) + (j >= p)) % 2
            for k in entries:
                if (k >= p) != bool(expected):
                    names = list(even_basis) + list(odd_basis)
                    raise ParityError(
                        f"[{names[i]},{names[j]}] has a component on {names[k]} of the wrong parity",
                        {"left": names[i], "right": names[j], "component": names[k]},
                    )
            if kind == LIE:
                if j < i:
                    raise StructureError("lie tables store canonical pairs only")
                if i == j and i < p:
                    raise StructureError(f"lie bracket [{even_basis[i]},{even_basis[i]}] must vanish")
            clean[(i, j)] = dict(sorted(entries.items()))
        found = sorted({v for vec in clean.values() for c in vec.values() for v in c.variables})
        params = tuple(sorted(set(parameters or ()) | set(found))) if parameters is not None else tuple(found)
        return cls(name, kind, tuple(even_basis), tuple(odd_basis), dict(sorted(clean.items())), params)

    # -- shape --------------------------------------------------------------

    @property
    def even_dim(self) -> int:
        return len(self.even_basis)

    @property
    def odd_dim(self) -> int:
        return len(self.odd_basis)

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def basis(self) -> Tuple[str, ...]:
        return self.even_basis + self.odd_basis

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {n: i for i, n in enumerate(self.basis)}

    def index(self, basis_name: str) -> int:
        if basis_name not in self._index:
            raise StructureError(f"unknown basis name {basis_name!r} in {self.name}")
        return self._index[basis_name]

    def parity(self, i: int) -> int:
        return 0 if i < self.even_dim else 1

    def indices(self, parity: int) -> range:
        return range(0, self.even_dim) if parity == 0 else range(self.even_dim, self.dim)

    def is_parametric(self) -> bool:
        return bool(self.parameters)

    # -- products -----------------------------------------------------------

    @cached_property
    def full_table(self) -> Table:
        """Every nonzero ordered product, mirrors included for lie kind."""
        if self.kind == LEIBNIZ:
            return dict(self.table)
        full: Table = {}
        for (i, j), vec in self.table.items():
            full[(i, j)] = vec
            if i != j:
                sign = 1 if (self.parity(i) and self.parity(j)) else -1
                full[(j, i)] = vec_scale(vec, sign)
        return full

    def basis_product(self, i: int, j: int) -> Vec:
        return self.full_table.get((i, j), {})

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, ui in u.items():
            for j, vj in v.items():
                prod = self.full_table.get((i, j))
                if prod:
                    out = vec_add(out, vec_scale(prod, ui * vj))
        return out

    def unit(self, i: int) -> Vec:
        return {i: Poly.const(1)}

    def named(self, vec: Vec) -> NamedVec:
        return tuple((self.basis[k], vec[k]) for k in sorted(vec))

    def vec_from_names(self, values: Mapping[str, ScalarLike]) -> Vec:
        out: Vec = {}
        for n, v in values.items():
            p = Poly.coerce(v)
            if not p.is_zero():
                out[self.index(n)] = p
        return out

    def products_by_name(self, stored_only: bool = True) -> List[Tuple[str, str, Dict[str, Poly]]]:
        table = self.table if stored_only else self.full_table
        return [
            (self.basis[i], self.basis[j], {self.basis[k]: c for k, c in vec.items()})
            for (i, j), vec in sorted(table.items())
        ]

    def with_name(self, name: str) -> "SuperAlgebra":
        return SuperAlgebra(name, self.kind, self.even_basis, self.odd_basis, self.table, self.parameters)

    def __str__(self):
        lines = [f"{self.name} ({self.kind}, even {list(self.even_basis)}, odd {list(self.odd_basis)})"]
        for left, right, result in self.products_by_name():
            rhs = " + ".join(
                f"({format_scalar(c)}){k}" if len(c.terms) > 1 else (k if c == 1 else f"{format_scalar(c)}*{k}")
                for k, c in result.items()
            )
            lines.append(f"  [{left},{right}] = {rhs}")
        return "\n".join(lines)


# ============================================================================
# OPERATIONS
# ============================================================================

def product(alg: SuperAlgebra, u: Sequence[ScalarLike], v: Sequence[ScalarLike]) -> Tuple[Poly, ...]:
    """Bilinear product of two coordinate vectors over alg's basis."""
    if len(u) != alg.dim or len(v) != alg.dim:
        raise DimensionMismatch(
            f"vectors of length {len(u)} and {len(v)} for an algebra of dimension {alg.dim}",
            {"expected": alg.dim},
        )
    return vec_to_dense(alg.mul(vec_from_dense(u), vec_from_dense(v)), alg.dim)


def _jacobi_terms(alg: SuperAlgebra, a: int, b: int, c: int) -> Tuple[Vec, Vec]:
    pa, pb, pc = alg.parity(a), alg.parity(b), alg.parity(c)
    ua, ub, uc = alg.unit(a), alg.unit(b), alg.unit(c)
    first = vec_scale(alg.mul(ua, alg.mul(ub, uc)), (-1) ** (pc * pa))
    second = vec_scale(alg.mul(ub, alg.mul(uc, ua)), (-1) ** (pa * pb))
    third = vec_scale(alg.mul(uc, alg.mul(ua, ub)), (-1) ** (pb * pc))
    return first, vec_scale(vec_add(second, third), -1)


def _leibniz_terms(alg: SuperAlgebra, x: int, y: int, z: int) -> Tuple[Vec, Vec]:
    ux, uy, uz = alg.unit(x), alg.unit(y), alg.unit(z)
    lhs = alg.mul(ux, alg.mul(uy, uz))
    sign = (-1) ** (alg.parity(y) * alg.parity(z))
    rhs = vec_sub(alg.mul(alg.mul(ux, uy), uz), vec_scale(alg.mul(alg.mul(ux, uz), uy), sign))
    return lhs, rhs


def identity_triples(alg: SuperAlgebra) -> Iterable[Tuple[int, int, int]]:
    """Basis triples the kind's identity is checked on.

    Lie kind uses sorted triples (the super Jacobi identity is
    graded-symmetric, so they cover all of them); leibniz kind uses every
    ordered triple.
    """
    n = alg.dim
    if alg.kind == LIE:
        return [(a, b, c) for a in range(n) for b in range(a, n) for c in range(b, n)]
    return [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]


def _identity_terms(alg: SuperAlgebra, triple: Tuple[int, int, int]) -> Tuple[Vec, Vec]:
    if alg.kind == LIE:
        return _jacobi_terms(alg, *triple)
    return _leibniz_terms(alg, *triple)


def identity_value(alg: SuperAlgebra, triple: Tuple[int, int, int]) -> Vec:
    """lhs - rhs of the kind's identity on one basis triple."""
    lhs, rhs = _identity_terms(alg, triple)
    return vec_sub(lhs, rhs)


def identity_residuals(alg: SuperAlgebra) -> List[Tuple[Tuple[int, int, int], Vec, Vec]]:
    """(triple, lhs, rhs) for every basis triple where the kind's identity fails."""
    out = []
    for triple in identity_triples(alg):
        lhs, rhs = _identity_terms(alg, triple)
        if vec_sub(lhs, rhs):
            out.append((triple, lhs, rhs))
    return out


def _violations(alg: SuperAlgebra, check: str, rows) -> List[Violation]:
    return [
        Violation(
            check,
            tuple(alg.basis[t] for t in triple),
            alg.named(lhs),
            alg.named(rhs),
            alg.named(vec_sub(lhs, rhs)),
        )
        for triple, lhs, rhs in rows
    ]


def check_super_jacobi(alg: SuperAlgebra) -> List[Violation]:
    if alg.kind != LIE:
        raise PreconditionError(f"{alg.name} is a {alg.kind} table; the Jacobi check needs lie kind")
    found = _violations(alg, "super-jacobi", identity_residuals(alg))
    logger.debug(f"[SUPERALG] super Jacobi on {alg.name}: {len(found)} violating triples")
    return found


def check_super_leibniz(alg: SuperAlgebra) -> List[Violation]:
    if alg.kind != LEIBNIZ:
        raise PreconditionError(f"{alg.name} is a {alg.kind} table; the Leibniz check needs leibniz kind")
    found = _violations(alg, "super-leibniz", identity_residuals(alg))
    logger.debug(f"[SUPERALG] super Leibniz on {alg.name}: {len(found)} violating triples")
    return found


def check_identity(alg: SuperAlgebra) -> List[Violation]:
    return check_super_jacobi(alg) if alg.kind == LIE else check_super_leibniz(alg)


def skew_violations(alg: SuperAlgebra) -> List[Violation]:
    """Pairs where [x,y] + (-1)^{|x||y|}[y,x] is nonzero."""
    out = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            sign = (-1) ** (alg.parity(i) * alg.parity(j))
            lhs = alg.basis_product(i, j)
            rhs = vec_scale(alg.basis_product(j, i), -sign)
            if vec_sub(lhs, rhs):
                out.append(
                    Violation("super-skew", (alg.basis[i], alg.basis[j]), alg.named(lhs), alg.named(rhs),
                              alg.named(vec_sub(lhs, rhs)))
                )
    return out


def retag(alg: SuperAlgebra, kind: str) -> SuperAlgebra:
    """Reinterpret a table under the other kind.

    lie -> leibniz materializes every mirrored product. leibniz -> lie keeps
    the canonical pairs and needs super skew-symmetry to hold.
    """
    if kind == alg.kind:
        return alg
    if kind == LEIBNIZ:
        return SuperAlgebra.from_table(alg.name, LEIBNIZ, alg.even_basis, alg.odd_basis, alg.full_table, alg.parameters)
    broken = skew_violations(alg)
    if broken:
        raise PreconditionError(
            f"{alg.name} is not super skew-symmetric at {broken[0].label()}",
            {"violations": len(broken)},
        )
    canonical = {(i, j): v for (i, j), v in alg.table.items() if i <= j}
    return SuperAlgebra.from_table(alg.name, LIE, alg.even_basis, alg.odd_basis, canonical, alg.parameters)


def is_lie_superalgebra(alg: SuperAlgebra) -> bool:
    if alg.kind == LIE:
        return not check_super_jacobi(alg)
    if skew_violations(alg):
        return False
    return not check_super_jacobi(retag(alg, LIE))


def instantiate(alg: SuperAlgebra, point: Mapping[str, ScalarLike], name: Optional[str] = None) -> SuperAlgebra:
    """Substitute parameter values (partial points are fine)."""
    bindings = {k: Poly.coerce(v) for k, v in point.items()}
    table = {
        pair: {k: c.subst(bindings) for k, c in vec.items()}
        for pair, vec in alg.table.items()
    }
    left = [p for p in alg.parameters if p not in bindings]
    return SuperAlgebra.from_table(name or alg.name, alg.kind, alg.even_basis, alg.odd_basis, table, left)


# ============================================================================
# SUBSPACES
# ============================================================================

@dataclass(frozen=True)
class Subspace:
    """A graded subspace, stored as RREF rows per parity over that parity's coordinates."""

    even_basis: Tuple[str, ...]
    odd_basis: Tuple[str, ...]
    even_rows: Tuple[Tuple[Fraction, ...], ...]
    odd_rows: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, alg: SuperAlgebra, vectors: Iterable[Vec]) -> "Subspace":
        p = alg.even_dim
        even: List[List[Fraction]] = []
        odd: List[List[Fraction]] = []
        for vec in vectors:
            if not vec:
                continue
            if any(not c.is_constant() for c in vec.values()):
                raise PreconditionError(f"subspace of {alg.name} needs parameter-free vectors")
            e = [Fraction(0)] * alg.even_dim
            o = [Fraction(0)] * alg.odd_dim
            for k, c in vec.items():
                if k < p:
                    e[k] = c.constant()
                else:
                    o[k - p] = c.constant()
            if any(e):
                even.append(e)
            if any(o):
                odd.append(o)
        return cls(alg.even_basis, alg.odd_basis, _canonical(even), _canonical(odd))

    @classmethod
    def whole(cls, alg: SuperAlgebra, parities: Sequence[int] = (0, 1)) -> "Subspace":
        vectors = [alg.unit(i) for par in parities for i in alg.indices(par)]
        return cls.span(alg, vectors)

    @property
    def even_dim(self) -> int:
        return len(self.even_rows)

    @property
    def odd_dim(self) -> int:
        return len(self.odd_rows)

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def part(self, parity: int) -> Tuple[Tuple[Fraction, ...], ...]:
        return self.even_rows if parity == 0 else self.odd_rows

    def vectors(self, parity: Optional[int] = None) -> List[Vec]:
        p = len(self.even_basis)
        out: List[Vec] = []
        if parity in (None, 0):
            out += [{k: Poly.const(c) for k, c in enumerate(row) if c} for row in self.even_rows]
        if parity in (None, 1):
            out += [{p + k: Poly.const(c) for k, c in enumerate(row) if c} for row in self.odd_rows]
        return out

    def contains_vec(self, vec: Vec) -> bool:
        p = len(self.even_basis)
        e = [Fraction(0)] * len(self.even_basis)
        o = [Fraction(0)] * len(self.odd_basis)
        for k, c in vec.items():
            if not c.is_constant():
                raise PreconditionError("membership test needs a parameter-free vector")
            if k < p:
                e[k] = c.constant()
            else:
                o[k - p] = c.constant()
        return _in_rows(self.even_rows, e) and _in_rows(self.odd_rows, o)

    def contains(self, other: "Subspace") -> bool:
        return all(_in_rows(self.even_rows, list(r)) for r in other.even_rows) and all(
            _in_rows(self.odd_rows, list(r)) for r in other.odd_rows
        )

    def describe(self) -> Dict[str, List[str]]:
        def text(rows, names):
            out = []
            for row in rows:
                out.append(" + ".join(n if c == 1 else f"{format_scalar(Poly.const(c))}*{n}" for c, n in zip(row, names) if c))
            return out

        return {"even": text(self.even_rows, self.even_basis), "odd": text(self.odd_rows, self.odd_basis)}


def _canonical(rows: List[List[Fraction]]) -> Tuple[Tuple[Fraction, ...], ...]:
    if not rows:
        return ()
    grid = [list(r) for r in rows]
    pivots = rref_rational(grid)
    return tuple(tuple(grid[r]) for r in range(len(pivots)))


def _in_rows(rows: Sequence[Sequence[Fraction]], vec: List[Fraction]) -> bool:
    if not any(vec):
        return True
    grid = [list(r) for r in rows] + [list(vec)]
    return len(rref_rational(grid)) == len(rows)


def right_annihilator(alg: SuperAlgebra) -> Subspace:
    """Ann(L) = {x : [b, x] = 0 for every basis b}, solved per parity."""
    if alg.is_parametric():
        raise PreconditionError(f"instantiate {', '.join(alg.parameters)} before computing Ann({alg.name})")
    vectors: List[Vec] = []
    for parity in (0, 1):
        cols = list(alg.indices(parity))
        rows = []
        for b in range(alg.dim):
            images = [alg.basis_product(b, x) for x in cols]
            for k in range(alg.dim):
                row = [img.get(k, ZERO) for img in images]
                if any(not c.is_zero() for c in row):
                    rows.append(row)
        if not rows:
            vectors += [alg.unit(x) for x in cols]
            continue
        for kernel in nullspace(MatrixQ.from_rows(rows, len(cols))):
            vectors.append({cols[t]: Poly.const(c) for t, c in enumerate(kernel) if c})
    return Subspace.span(alg, vectors)


def _closure(alg: SuperAlgebra, seed: List[Vec], two_sided: bool = True) -> Subspace:
    space = Subspace.span(alg, seed)
    while True:
        grown = list(space.vectors())
        for v in space.vectors():
            for b in range(alg.dim):
                u = alg.unit(b)
                grown.append(alg.mul(v, u))
                if two_sided:
                    grown.append(alg.mul(u, v))
        bigger = Subspace.span(alg, grown)
        if bigger.dim == space.dim:
            return space
        space = bigger


def skew_ideal(alg: SuperAlgebra) -> Subspace:
    """Two-sided ideal generated by [x,y] + (-1)^{|x||y|}[y,x] on basis pairs."""
    if alg.kind != LEIBNIZ:
        raise PreconditionError(f"skew ideal is defined for leibniz tables, {alg.name} is {alg.kind}")
    if alg.is_parametric():
        raise PreconditionError(f"instantiate {', '.join(alg.parameters)} before computing the skew ideal")
    gens = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            sign = (-1) ** (alg.parity(i) * alg.parity(j))
            gens.append(vec_add(alg.basis_product(i, j), vec_scale(alg.basis_product(j, i), sign)))
    return _closure(alg, gens)


def ideal_generated(alg: SuperAlgebra, vectors: Sequence[Vec]) -> Subspace:
    return _closure(alg, list(vectors))


# ============================================================================
# RIGHT MULTIPLICATION OPERATORS
# ============================================================================

Operator = Dict[int, Vec]


def right_operator(alg: SuperAlgebra, b: int) -> Operator:
    """R_b as columns: R_b(e_y) = [e_y, e_b]."""
    return {y: alg.basis_product(y, b) for y in range(alg.dim)}


def _apply(op: Operator, vec: Vec) -> Vec:
    out: Vec = {}
    for k, c in vec.items():
        out = vec_add(out, vec_scale(op.get(k, {}), c))
    return out


def _compose(a: Operator, b: Operator, size: int) -> Operator:
    return {y: _apply(a, b.get(y, {})) for y in range(size)}


def _op_combo(terms: Sequence[Tuple[Union[int, Poly], Operator]], size: int) -> Operator:
    out: Operator = {y: {} for y in range(size)}
    for coeff, op in terms:
        for y in range(size):
            out[y] = vec_add(out[y], vec_scale(op.get(y, {}), coeff))
    return out


def _op_nonzero(op: Operator) -> bool:
    return any(v for v in op.values())


def _supercommutator(a: Operator, pa: int, b: Operator, pb: int, size: int) -> Operator:
    return _op_combo([(1, _compose(a, b, size)), (-((-1) ** (pa * pb)), _compose(b, a, size))], size)


def right_mult_closure(alg: SuperAlgebra) -> List[Violation]:
    """Check R_[a,b] = <R_b, R_a> and super Jacobi for <.,.> on the R's.

    <R_a, R_b> = R_a R_b - (-1)^{|a||b|} R_b R_a. Needs a leibniz table that
    already satisfies the super Leibniz identity.
    """
    if alg.kind != LEIBNIZ:
        raise PreconditionError(f"right multiplications are checked on leibniz tables, {alg.name} is {alg.kind}")
    if check_super_leibniz(alg):
        raise PreconditionError(f"{alg.name} fails the super Leibniz identity")
    n = alg.dim
    ops = [right_operator(alg, b) for b in range(n)]
    found: List[Violation] = []
    for a in range(n):
        for b in range(n):
            bracket = alg.basis_product(a, b)
            lhs = _op_combo([(c, ops[k]) for k, c in bracket.items()], n)
            rhs = _supercommutator(ops[b], alg.parity(b), ops[a], alg.parity(a), n)
            diff = _op_combo([(1, lhs), (-1, rhs)], n)
            if _op_nonzero(diff):
                found.append(_operator_violation(alg, "right-multiplication", (a, b), diff))
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                pa, pb, pc = alg.parity(a), alg.parity(b), alg.parity(c)
                bc = _supercommutator(ops[b], pb, ops[c], pc, n)
                ca = _supercommutator(ops[c], pc, ops[a], pa, n)
                ab = _supercommutator(ops[a], pa, ops[b], pb, n)
                total = _op_combo(
                    [
                        ((-1) ** (pc * pa), _supercommutator(ops[a], pa, bc, (pb + pc) % 2, n)),
                        ((-1) ** (pa * pb), _supercommutator(ops[b], pb, ca, (pc + pa) % 2, n)),
                        ((-1) ** (pb * pc), _supercommutator(ops[c], pc, ab, (pa + pb) % 2, n)),
                    ],
                    n,
                )
                if _op_nonzero(total):
                    found.append(_operator_violation(alg, "operator-jacobi", (a, b, c), total))
    logger.debug(f"[SUPERALG] right multiplication closure on {alg.name}: {len(found)} violations")
    return found


def _operator_violation(alg: SuperAlgebra, check: str, args: Tuple[int, ...], diff: Operator) -> Violation:
    column = next(y for y, v in diff.items() if v)
    residual = alg.named(diff[column])
    return Violation(check, tuple(alg.basis[i] for i in args) + (alg.basis[column],), residual, (), residual)


# ============================================================================
# LINEAR MAPS
# ============================================================================

@dataclass(frozen=True)
class LinearMap:
    """Parity-preserving map; column j of a block is the image of source basis j."""

    source: SuperAlgebra
    target: SuperAlgebra
    even_block: MatrixQ
    odd_block: MatrixQ

    def __post_init__(self):
        for label, block, rows, cols in (
            ("even", self.even_block, self.target.even_dim, self.source.even_dim),
            ("odd", self.odd_block, self.target.odd_dim, self.source.odd_dim),
        ):
            if block.nrows != rows or block.ncols != cols:
                raise DimensionMismatch(
                    f"{label} block is {block.nrows}x{block.ncols}, expected {rows}x{cols}",
                    {"block": label},
                )

    @classmethod
    def identity(cls, alg: SuperAlgebra) -> "LinearMap":
        return cls(alg, alg, MatrixQ.identity(alg.even_dim), MatrixQ.identity(alg.odd_dim))

    @classmethod
    def from_images(cls, source: SuperAlgebra, target: SuperAlgebra, images: Mapping[str, Vec]) -> "LinearMap":
        """Build from source-name -> target vector; every source name must be given."""
        even_cols, odd_cols = [], []
        for name in source.basis:
            if name not in images:
                raise PreconditionError(f"no image given for {name}")
            vec = images[name]
            parity = source.parity(source.index(name))
            wrong = [target.basis[k] for k in vec if target.parity(k) != parity]
            if wrong:
                raise ParityError(f"image of {name} has components of the wrong parity: {wrong}")
            offset = 0 if parity == 0 else target.even_dim
            size = target.even_dim if parity == 0 else target.odd_dim
            col = [vec.get(offset + r, ZERO) for r in range(size)]
            (even_cols if parity == 0 else odd_cols).append(col)
        even = MatrixQ.from_rows(zip(*even_cols), source.even_dim) if even_cols else MatrixQ.from_rows(
            [[] for _ in range(target.even_dim)], 0)
        odd = MatrixQ.from_rows(zip(*odd_cols), source.odd_dim) if odd_cols else MatrixQ.from_rows(
            [[] for _ in range(target.odd_dim)], 0)
        return cls(source, target, even, odd)

    def image(self, i: int) -> Vec:
        if i < self.source.even_dim:
            col = self.even_block.column(i)
            return {r: c for r, c in enumerate(col) if not c.is_zero()}
        col = self.odd_block.column(i - self.source.even_dim)
        off = self.target.even_dim
        return {off + r: c for r, c in enumerate(col) if not c.is_zero()}

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for i, c in vec.items():
            out = vec_add(out, vec_scale(self.image(i), c))
        return out

    def images_by_name(self) -> Dict[str, Dict[str, str]]:
        return {
            self.source.basis[i]: _render(self.target.named(self.image(i)))
            for i in range(self.source.dim)
        }

    def to_dict(self) -> Dict:
        return {"source": self.source.name, "target": self.target.name, "images": self.images_by_name()}


@dataclass(frozen=True)
class HomomorphismReport:
    violations: List[Violation]
    invertible: bool
    even_det: Poly
    odd_det: Poly

    @property
    def ok(self) -> bool:
        return not self.violations and self.invertible

    def to_dict(self) -> Dict:
        return {
            "violations": [v.to_dict() for v in self.violations],
            "invertible": self.invertible,
            "even_det": format_scalar(self.even_det),
            "odd_det": format_scalar(self.odd_det),
        }


def verify_homomorphism(f: LinearMap) -> HomomorphismReport:
    """f([u,v]) against [f(u), f(v)] on all source basis pairs, plus block determinants."""
    src, tgt = f.source, f.target
    found: List[Violation] = []
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = f.apply(src.basis_product(i, j))
            rhs = tgt.mul(f.image(i), f.image(j))
            if vec_sub(lhs, rhs):
                found.append(
                    Violation("homomorphism", (src.basis[i], src.basis[j]), tgt.named(lhs), tgt.named(rhs),
                              tgt.named(vec_sub(lhs, rhs)))
                )
    square = src.even_dim == tgt.even_dim and src.odd_dim == tgt.odd_dim
    even_det = determinant(f.even_block) if square else ZERO
    odd_det = determinant(f.odd_block) if square else ZERO
    invertible = square and not even_det.is_zero() and not odd_det.is_zero()
    return HomomorphismReport(found, invertible, even_det, odd_det)


def _inverse(block: MatrixQ) -> MatrixQ:
    if not block.is_constant():
        raise PreconditionError("change of basis must be parameter-free to be inverted")
    if block.nrows == 0:
        return block
    inv = block.to_sympy().inv()
    return MatrixQ.from_rows(
        [[Poly.from_sympy(inv[r, c]) for c in range(inv.cols)] for r in range(inv.rows)], inv.cols
    )


def transport(
    alg: SuperAlgebra,
    even_block: MatrixQ,
    odd_block: MatrixQ,
    name: Optional[str] = None,
    even_names: Optional[Sequence[str]] = None,
    odd_names: Optional[Sequence[str]] = None,
) -> LinearMap:
    """Rewrite alg's law in a new basis whose vectors are the block columns.

    Returns the map new -> alg; its source is the transported law
    l2(x, y) = f^-1(l1(f x, f y)), so verify_homomorphism on it is empty.
    """
    if even_block.nrows != alg.even_dim or odd_block.nrows != alg.odd_dim:
        raise DimensionMismatch("change of basis does not match the algebra's dimensions")
    inv_even, inv_odd = _inverse(even_block), _inverse(odd_block)
    evens = tuple(even_names or alg.even_basis)
    odds = tuple(odd_names or alg.odd_basis)
    shell = SuperAlgebra.from_table("shell", alg.kind, evens, odds, {})
    trial = LinearMap(shell, alg, even_block, odd_block)
    back = LinearMap(alg, shell, inv_even, inv_odd)
    table: Table = {}
    for i in range(shell.dim):
        for j in range(shell.dim):
            if alg.kind == LIE and j < i:
                continue
            vec = back.apply(alg.mul(trial.image(i), trial.image(j)))
            if vec:
                table[(i, j)] = vec
    moved = SuperAlgebra.from_table(name or f"{alg.name}'", alg.kind, evens, odds, table)
    return LinearMap(moved, alg, even_block, odd_block)
