"""
Supergrade - Exact Scalars and Linear Algebra

Scalars are sparse multivariate polynomials over the rationals in named
parameters (a1, a2, c, d, t, alpha, gamma3, ...). A parameter-free scalar
is just a constant polynomial, so one type covers both the numeric and the
symbolic law tables.

Arithmetic, substitution and evaluation are done here on plain dicts of
Fractions. sympy is used where it actually earns its keep: parsing the
text form, factoring, and fraction-free determinants.

Canonical form:
  - a monomial is a tuple of (name, exponent) pairs sorted by name
  - terms print in degree-lexicographic order, variables ordered by name
  - "a1*a3 - 2*c", "-3/2", "a2^2 + 1/2*c"
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from config import logger
from .errors import (
    CyclicBindingError,
    DimensionMismatch,
    ParametricRankError,
    PreconditionError,
    ScalarParseError,
)

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]


def _mono_mul(left: Monomial, right: Monomial) -> Monomial:
    if not left:
        return right
    if not right:
        return left
    merged = dict(left)
    for name, exp in right:
        merged[name] = merged.get(name, 0) + exp
    return tuple(sorted(merged.items()))


def _mono_degree(mono: Monomial) -> int:
    return sum(exp for _, exp in mono)


class Poly:
    """Immutable polynomial with Fraction coefficients. Zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            value = Fraction(coeff)
            if value:
                clean[tuple(sorted(mono))] = value
        self._terms = clean
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, value: Number) -> "Poly":
        return cls({(): value})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, value: Union["Poly", Number, str]) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a scalar")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted({name for mono in self._terms for name, _ in mono}))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise PreconditionError(f"scalar {self} still depends on {', '.join(self.variables)}")
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(_mono_degree(mono) for mono in self._terms)

    def degree_in(self, name: str) -> int:
        return max((dict(mono).get(name, 0) for mono in self._terms), default=0)

    def split_linear(self, name: str) -> Tuple["Poly", "Poly"]:
        """Write self = coeff*name + rest with `name` absent from coeff and rest."""
        if self.degree_in(name) > 1:
            raise PreconditionError(f"{name} occurs non-linearly in {self}")
        coeff: Dict[Monomial, Fraction] = {}
        rest: Dict[Monomial, Fraction] = {}
        for mono, value in self._terms.items():
            powers = dict(mono)
            if name in powers:
                del powers[name]
                coeff[tuple(sorted(powers.items()))] = value
            else:
                rest[mono] = value
        return Poly(coeff), Poly(rest)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        names = self.variables

        def key(item):
            powers = dict(item[0])
            return (-_mono_degree(item[0]), tuple(-powers.get(n, 0) for n in names))

        return sorted(self._terms.items(), key=key)

    def leading_coefficient(self) -> Fraction:
        ordered = self.sorted_terms()
        return ordered[0][1] if ordered else Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, value in rhs._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + value
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({mono: -value for mono, value in self._terms.items()})

    def __sub__(self, other):
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        lhs = self._other(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other):
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, v1 in self._terms.items():
            for m2, v2 in rhs._terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, Fraction(0)) + v1 * v2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            other = other.constant()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        divisor = Fraction(other)
        if not divisor:
            raise ZeroDivisionError("division of a scalar by zero")
        return Poly({mono: value / divisor for mono, value in self._terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Poly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- substitution -------------------------------------------------------

    def subst(self, bindings: Mapping[str, "Poly"]) -> "Poly":
        return poly_subst(self, bindings)

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        return evaluate(self, point)

    # -- sympy bridge -------------------------------------------------------

    def to_sympy(self) -> sympy.Expr:
        expr = sympy.Integer(0)
        for mono, value in self._terms.items():
            term = sympy.Rational(value.numerator, value.denominator)
            for name, exp in mono:
                term = term * sympy.Symbol(name) ** exp
            expr = expr + term
        return expr

    @classmethod
    def from_sympy(cls, expr: sympy.Expr) -> "Poly":
        expr = sympy.expand(expr)
        symbols = sorted(expr.free_symbols, key=lambda s: s.name)
        if not symbols:
            value = sympy.Rational(expr)
            return cls.const(Fraction(int(value.p), int(value.q)))
        poly = sympy.Poly(expr, *symbols, domain="QQ")
        terms: Dict[Monomial, Fraction] = {}
        for exps, coeff in poly.terms():
            mono = tuple((s.name, e) for s, e in zip(symbols, exps) if e)
            terms[mono] = Fraction(int(coeff.numerator), int(coeff.denominator))
        return cls(terms)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Poly({format_scalar(self)!r})"


ZERO = Poly()
ONE = Poly.const(1)
ScalarLike = Union[Poly, Number, str]


# ============================================================================
# TEXT FORM
# ============================================================================

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|([-+*/^()]))")


def _check_grammar(text: str) -> List[str]:
    """Tokenize against the scalar grammar; returns the identifiers seen."""
    names: List[str] = []
    pos = 0
    previous = None
    stripped = text.rstrip()
    if not stripped.strip():
        raise ScalarParseError(text, 0, "empty scalar")
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match:
            bad = pos + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
            raise ScalarParseError(text, bad, f"unexpected character {stripped[bad]!r}")
        number, name, op = match.groups()
        start = match.start(1 if number else 2 if name else 3)
        kind = "num" if number else "name" if name else op
        # No implicit multiplication: "2a", "a b", "a(b)" and ")(" are all rejected.
        if previous in ("num", "name", ")") and kind in ("num", "name", "("):
            raise ScalarParseError(text, start, "missing operator")
        if name:
            names.append(name)
        previous = kind
        pos = match.end()
    return names


def parse_scalar(text: str) -> Poly:
    """Parse the scalar text form into a Poly.

    Examples:
        "-3/2"          -> constant -3/2
        "a1*a3 - 2*c"   -> a1*a3 - 2*c
        "(g1 + g3)^2"   -> g1^2 + 2*g1*g3 + g3^2
    """
    names = _check_grammar(text)
    local = {name: sympy.Symbol(name) for name in names}
    try:
        expr = parse_expr(
            text,
            local_dict=local,
            transformations=standard_transformations + (convert_xor,),
            evaluate=True,
        )
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        offset = getattr(e, "offset", None) or len(text)
        raise ScalarParseError(text, max(0, min(offset - 1, len(text) - 1)), "malformed expression") from e
    symbols = [local[n] for n in sorted(local)]
    if not isinstance(expr, sympy.Expr) or not expr.is_polynomial(*symbols):
        raise ScalarParseError(text, 0, "not a polynomial in the parameters")
    return Poly.from_sympy(expr)


def _format_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(p: Poly) -> str:
    ordered = p.sorted_terms()
    if not ordered:
        return "0"
    pieces: List[str] = []
    for index, (mono, value) in enumerate(ordered):
        negative = value < 0
        magnitude = -value if negative else value
        factors = [name if exp == 1 else f"{name}^{exp}" for name, exp in mono]
        if not factors:
            body = _format_coeff(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(magnitude)] + factors)
        if index == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# ============================================================================
# POLYNOMIAL OPERATIONS
# ============================================================================

def poly_arith(lhs: ScalarLike, rhs: ScalarLike, op: str) -> Poly:
    a, b = Poly.coerce(lhs), Poly.coerce(rhs)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def resolve_bindings(bindings: Mapping[str, ScalarLike]) -> Dict[str, Poly]:
    """Close a binding map under itself so no value mentions a bound name.

    A chain a -> b + 1, b -> c resolves to a -> c + 1. Any name that
    reaches itself (including a -> a) raises CyclicBindingError.
    """
    raw = {name: Poly.coerce(value) for name, value in bindings.items()}
    resolved: Dict[str, Poly] = {}

    def visit(name: str, trail: Tuple[str, ...]) -> Poly:
        if name in resolved:
            return resolved[name]
        if name in trail:
            cycle = " -> ".join(trail[trail.index(name):] + (name,))
            raise CyclicBindingError(f"cyclic bindings: {cycle}", {"cycle": cycle})
        value = raw[name]
        inner = {v: visit(v, trail + (name,)) for v in value.variables if v in raw}
        result = _subst_resolved(value, inner) if inner else value
        resolved[name] = result
        return result

    for name in raw:
        visit(name, ())
    return resolved


def _subst_resolved(p: Poly, values: Mapping[str, Poly]) -> Poly:
    out = ZERO
    powers: Dict[Tuple[str, int], Poly] = {}
    for mono, coeff in p.terms.items():
        term = Poly.const(coeff)
        kept: List[Tuple[str, int]] = []
        for name, exp in mono:
            if name in values:
                key = (name, exp)
                if key not in powers:
                    powers[key] = values[name] ** exp
                term = term * powers[key]
            else:
                kept.append((name, exp))
        if kept:
            term = term * Poly({tuple(kept): 1})
        out = out + term
    return out


def poly_subst(p: ScalarLike, bindings: Mapping[str, ScalarLike]) -> Poly:
    poly = Poly.coerce(p)
    if not bindings:
        return poly
    resolved = resolve_bindings(bindings)
    relevant = {name: value for name, value in resolved.items() if name in poly.variables}
    return _subst_resolved(poly, relevant) if relevant else poly


def evaluate(p: ScalarLike, point: Mapping[str, Number]) -> Fraction:
    poly = Poly.coerce(p)
    missing = [name for name in poly.variables if name not in point]
    if missing:
        raise PreconditionError(f"no value given for {', '.join(missing)}", {"missing": missing})
    total = Fraction(0)
    for mono, coeff in poly.terms.items():
        term = coeff
        for name, exp in mono:
            term *= Fraction(point[name]) ** exp
        total += term
    return total


def canonical_equation(p: Poly) -> Poly:
    """Scale p (read as p = 0) to primitive integer coefficients with a positive leading term."""
    if p.is_zero():
        return p
    values = list(p.terms.values())
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    content = 0
    for v in values:
        content = gcd(content, abs(int(v * lcm)))
    scaled = p * Fraction(lcm, content)
    return -scaled if scaled.leading_coefficient() < 0 else scaled


class FactorResult(NamedTuple):
    constant: Fraction
    factors: List[Tuple[Poly, int]]
    residual: Poly


def linear_factors(p: ScalarLike) -> FactorResult:
    """Pull out the degree-1 factors of p.

    Factors are normalized to leading coefficient 1 (a2, c, a1 - 2*c) and
    sorted by text. Whatever does not split into linear pieces is returned
    as `residual`, so p == constant * prod(f^k) * residual.

    Examples:
        a2*c   -> constant 1, [(a2, 1), (c, 1)], residual 1
        2*b^2  -> constant 2, [(b, 2)], residual 1
    """
    poly = Poly.coerce(p)
    if poly.is_zero():
        return FactorResult(Fraction(0), [], ONE)
    if poly.is_constant():
        return FactorResult(poly.constant(), [], ONE)
    coeff, pieces = sympy.factor_list(poly.to_sympy())
    constant = Fraction(int(sympy.Rational(coeff).p), int(sympy.Rational(coeff).q))
    factors: Dict[Poly, int] = {}
    residual = ONE
    for expr, mult in pieces:
        piece = Poly.from_sympy(expr)
        if piece.degree() == 1:
            lead = piece.leading_coefficient()
            monic = piece / lead
            constant *= lead ** mult
            factors[monic] = factors.get(monic, 0) + int(mult)
        else:
            residual = residual * piece ** int(mult)
    ordered = sorted(factors.items(), key=lambda fm: format_scalar(fm[0]))
    return FactorResult(constant, ordered, residual)


# ============================================================================
# MATRICES
# ============================================================================

@dataclass(frozen=True)
class MatrixQ:
    """Dense matrix of Poly entries. A 0-row matrix still records its column count."""

    entries: Tuple[Tuple[Poly, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[ScalarLike]], ncols: Optional[int] = None) -> "MatrixQ":
        grid = tuple(tuple(Poly.coerce(x) for x in row) for row in rows)
        width = ncols if ncols is not None else (len(grid[0]) if grid else 0)
        for row in grid:
            if len(row) != width:
                raise DimensionMismatch(f"row of length {len(row)} in a matrix with {width} columns")
        return cls(grid, width)

    @classmethod
    def identity(cls, size: int) -> "MatrixQ":
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def is_constant(self) -> bool:
        return all(x.is_constant() for row in self.entries for x in row)

    def column(self, j: int) -> Tuple[Poly, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "MatrixQ":
        return MatrixQ.from_rows([self.column(j) for j in range(self.ncols)], self.nrows)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.nrows, self.ncols, lambda i, j: self.entries[i][j].to_sympy())

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.entries) + "]"


class RowReduction(NamedTuple):
    reduced: MatrixQ
    rank: int
    pivot_cols: List[int]


def rref_rational(grid: List[List[Fraction]]) -> List[int]:
    """In-place reduced row echelon form over Q; returns pivot columns."""
    n_rows = len(grid)
    n_cols = len(grid[0]) if grid else 0
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if grid[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            grid[piv_r], grid[i_row] = grid[i_row], grid[piv_r]
        fp = grid[piv_r][piv_c]
        if fp != 1:
            grid[piv_r] = [x / fp for x in grid[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = grid[r][piv_c]
            if fr == 0:
                continue
            grid[r] = [x - y * fr for x, y in zip(grid[r], grid[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return pivots


def known_nonzero(entry: Poly, assumptions: Sequence[Poly]) -> bool:
    if entry.is_constant():
        return not entry.is_zero()
    known = {canonical_equation(a) for a in assumptions}
    if canonical_equation(entry) in known:
        return True
    split = linear_factors(entry)
    if not split.residual.is_constant() and canonical_equation(split.residual) not in known:
        return False
    return all(canonical_equation(f) in known for f, _ in split.factors)


def row_reduce(m: MatrixQ, assume_nonzero: Optional[Sequence[ScalarLike]] = None) -> RowReduction:
    """Row-reduce m exactly.

    Parameter-free input gets the reduced row echelon form. Parametric
    input is reduced fraction-free (never dividing by a parameter) and may
    only pivot on entries that are constants or products of the polynomials
    listed in `assume_nonzero`; anything else raises ParametricRankError.
    """
    if m.is_constant():
        grid = [[x.constant() for x in row] for row in m.entries]
        pivots = rref_rational(grid)
        reduced = MatrixQ.from_rows(grid[: len(pivots)], m.ncols)
        return RowReduction(reduced, len(pivots), pivots)

    assumptions = [Poly.coerce(a) for a in (assume_nonzero or [])]
    rows = [list(row) for row in m.entries]
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(m.ncols):
        if piv_r == len(rows):
            break
        candidates = [r for r in range(piv_r, len(rows)) if not rows[r][piv_c].is_zero()]
        if not candidates:
            continue
        chosen = next((r for r in candidates if rows[r][piv_c].is_constant()), None)
        if chosen is None:
            chosen = next((r for r in candidates if known_nonzero(rows[r][piv_c], assumptions)), None)
        if chosen is None:
            raise ParametricRankError(piv_c, str(rows[candidates[0]][piv_c]))
        rows[piv_r], rows[chosen] = rows[chosen], rows[piv_r]
        fp = rows[piv_r][piv_c]
        for r in range(piv_r + 1, len(rows)):
            fr = rows[r][piv_c]
            if fr.is_zero():
                continue
            rows[r] = [fp * x - fr * y for x, y in zip(rows[r], rows[piv_r])]
        logger.debug(f"[EXACT] fraction-free pivot {fp} at column {piv_c}")
        pivots.append(piv_c)
        piv_r += 1
    reduced = MatrixQ.from_rows(rows[: len(pivots)], m.ncols)
    return RowReduction(reduced, len(pivots), pivots)


def nullspace(m: MatrixQ) -> List[Tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} for a parameter-free matrix, one vector per free column."""
    if not m.is_constant():
        raise PreconditionError("nullspace needs a parameter-free matrix")
    grid = [[x.constant() for x in row] for row in m.entries]
    pivots = rref_rational(grid) if grid else []
    free = [c for c in range(m.ncols) if c not in pivots]
    basis: List[Tuple[Fraction, ...]] = []
    for f in free:
        vec = [Fraction(0)] * m.ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -grid[r][f]
        basis.append(tuple(vec))
    return basis


def determinant(m: MatrixQ) -> Poly:
    if m.nrows != m.ncols:
        raise DimensionMismatch(f"determinant of a {m.nrows}x{m.ncols} matrix")
    if m.nrows == 0:
        return ONE
    return Poly.from_sympy(m.to_sympy().det(method="bareiss"))
