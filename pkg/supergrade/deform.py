"""
Supergrade - Cochains and Deformations of Model Laws

A Cochain2 is an even bilinear map stored exactly like an algebra table (it
is held as a SuperAlgebra named after the cochain), so parity checks, the
lie mirror rule and the skew/symmetric extension come for free:
  - [X, Y] components are skew, (Y, Y) components symmetric
  - leibniz cochains are general bilinear maps, every product explicit

Deforming is table addition. Infinitesimal deformations are detected from
the t-linear term of the identity for base + t*c, obtained by polarization:
  J(base + c) - J(base) - J(c)

Named cochains on the model L^{n,m} (basis X0..Xn, Y1..Ym):
  Psi^s_{k,1}:  [X_i, Y_j] = (-1)^{k-i} C(j-1, k-i) Y_{i+j+s-k-1},  1 <= i <= k
  phi pairings: (Y_i, Y_j) = c_ij X_{i+j}, tabulated per dimension
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from config import logger
from .errors import ArgumentRangeError, PreconditionError
from .exact import MatrixQ, Poly, ScalarLike, nullspace
from .superalg import (
    LIE,
    ProductSpec,
    SuperAlgebra,
    Table,
    Vec,
    identity_value,
    identity_triples,
    vec_add,
    vec_scale,
    vec_sub,
)

INHOMOGENEOUS = "inhomogeneous"
Weight = Union[int, str]


# ============================================================================
# COCHAINS
# ============================================================================

@dataclass(frozen=True)
class Cochain2:
    name: str
    base: SuperAlgebra
    law: SuperAlgebra
    declared_weight: Optional[Weight] = None

    @classmethod
    def build(
        cls,
        base: SuperAlgebra,
        name: str,
        products: Iterable[ProductSpec],
        declared_weight: Optional[Weight] = None,
    ) -> "Cochain2":
        law = SuperAlgebra.build(name, base.kind, base.even_basis, base.odd_basis, products)
        return cls(name, base, law, declared_weight)

    @classmethod
    def from_table(cls, base: SuperAlgebra, name: str, table: Table,
                   declared_weight: Optional[Weight] = None) -> "Cochain2":
        law = SuperAlgebra.from_table(name, base.kind, base.even_basis, base.odd_basis, table)
        return cls(name, base, law, declared_weight)

    @property
    def components(self) -> Table:
        return self.law.table

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.law.parameters

    def is_zero(self) -> bool:
        return not self.law.table

    def value(self, u: Vec, v: Vec) -> Vec:
        return self.law.mul(u, v)

    def subst(self, bindings: Mapping[str, ScalarLike]) -> "Cochain2":
        values = {k: Poly.coerce(v) for k, v in bindings.items()}
        table = {pair: {k: c.subst(values) for k, c in vec.items()} for pair, vec in self.law.table.items()}
        return Cochain2.from_table(self.base, self.name, table, self.declared_weight)

    def products_by_name(self) -> List[Tuple[str, str, Dict[str, Poly]]]:
        return self.law.products_by_name()


def combine(base: SuperAlgebra, terms: Sequence[Tuple[ScalarLike, Cochain2]], name: Optional[str] = None) -> Cochain2:
    """sum of coeff * cochain, all on the same base."""
    table: Dict[Tuple[int, int], Vec] = {}
    for coeff, cochain in terms:
        if cochain.base.basis != base.basis:
            raise PreconditionError(f"cochain {cochain.name} lives on {cochain.base.name}, not {base.name}")
        for pair, vec in cochain.components.items():
            table[pair] = vec_add(table.get(pair, {}), vec_scale(vec, Poly.coerce(coeff)))
    label = name or " + ".join(f"{Poly.coerce(c)}*{ch.name}" for c, ch in terms)
    weights = {ch.declared_weight for _, ch in terms}
    declared = weights.pop() if len(weights) == 1 else None
    return Cochain2.from_table(base, label, {p: v for p, v in table.items() if v}, declared)


def deform(base: SuperAlgebra, c: Cochain2, name: Optional[str] = None) -> SuperAlgebra:
    if c.base.basis != base.basis or c.base.kind != base.kind:
        raise PreconditionError(f"cochain {c.name} does not match {base.name}")
    table = {pair: dict(vec) for pair, vec in base.table.items()}
    for pair, vec in c.components.items():
        table[pair] = vec_add(table.get(pair, {}), vec)
    return SuperAlgebra.from_table(name or f"{base.name}+{c.name}", base.kind, base.even_basis, base.odd_basis,
                                   {p: v for p, v in table.items() if v})


# ============================================================================
# WEIGHT
# ============================================================================

def basis_degrees(base: SuperAlgebra) -> Dict[int, int]:
    """Layer degree of each basis vector; the base must be graded in its own basis."""
    from .gradation import natural_layers

    layers = natural_layers(base)
    degrees: Dict[int, int] = {}
    for e in layers.elements:
        k = base.index(e.name)
        if e.vector != base.unit(k):
            raise PreconditionError(f"{base.name} is not graded in its own basis ({e.name})")
        degrees[k] = e.degree
    return degrees


def weight(c: Cochain2) -> Weight:
    """The shift w with (layer i, layer j) -> layer i+j+w; 0 for the zero cochain."""
    degrees = basis_degrees(c.base)
    shifts = {
        degrees[k] - degrees[i] - degrees[j]
        for (i, j), vec in c.law.full_table.items()
        for k in vec
    }
    if not shifts:
        return 0
    if len(shifts) > 1:
        logger.debug(f"[DEFORM] {c.name}: shifts {sorted(shifts)}")
        return INHOMOGENEOUS
    return shifts.pop()


# ============================================================================
# FIRST ORDER TERM AND PSI o PSI
# ============================================================================

def first_order_residuals(base: SuperAlgebra, c: Cochain2) -> List[Tuple[Tuple[int, int, int], Vec]]:
    """Nonzero t-linear terms of the identity for base + t*c, per basis triple."""
    deformed = deform(base, c)
    out = []
    for triple in identity_triples(base):
        term = vec_sub(
            vec_sub(identity_value(deformed, triple), identity_value(base, triple)),
            identity_value(c.law, triple),
        )
        if term:
            out.append((triple, term))
    return out


def is_infinitesimal_deformation(c: Cochain2) -> bool:
    return not first_order_residuals(c.base, c)


def _as_vec(alg: SuperAlgebra, x: Union[int, str, Vec]) -> Vec:
    if isinstance(x, dict):
        return x
    return alg.unit(alg.index(x) if isinstance(x, str) else x)


def psi_compose_psi(c: Cochain2, x, y, z, graded: bool = False) -> Vec:
    """Psi(Psi(x,y),z) + Psi(Psi(z,x),y) + Psi(Psi(y,z),x).

    Taken as printed, with no graded signs; Psi(y,x) comes from the skew or
    symmetric extension of the stored components. graded=True returns the
    super Jacobiator of Psi on its own instead.
    """
    law = c.law
    u, v, w = (_as_vec(law, t) for t in (x, y, z))
    if graded:
        if len(u) != 1 or len(v) != 1 or len(w) != 1:
            raise PreconditionError("graded form needs basis arguments")
        triple = (next(iter(u)), next(iter(v)), next(iter(w)))
        return identity_value(law, triple)
    total = law.mul(law.mul(u, v), w)
    total = vec_add(total, law.mul(law.mul(w, u), v))
    return vec_add(total, law.mul(law.mul(v, w), u))


def psi_square_residuals(c: Cochain2) -> List[Tuple[Tuple[int, int, int], Vec]]:
    """Printed Psi o Psi on sorted basis triples (other orders agree up to sign)."""
    n = c.law.dim
    out = []
    for a in range(n):
        for b in range(a, n):
            for d in range(b, n):
                vec = psi_compose_psi(c, a, b, d)
                if vec:
                    out.append(((a, b, d), vec))
    return out


# ============================================================================
# NAMED COCHAINS ON THE MODEL
# ============================================================================

def _model_dims(base: SuperAlgebra) -> Tuple[int, int]:
    if base.kind != LIE or not base.even_basis or base.even_basis[0] != "X0":
        raise PreconditionError(f"{base.name} is not a model filiform lie law with basis X0..Xn, Y1..Ym")
    return base.even_dim - 1, base.odd_dim


def psi_cochain(base: SuperAlgebra, k: int, s: int) -> Cochain2:
    """Psi^s_{k,1} on L^{n,m}; weight s-k-1."""
    n, m = _model_dims(base)
    if not (1 <= k <= n and k + 1 <= s <= m):
        raise ArgumentRangeError(
            f"Psi^{s}_{{{k},1}} needs 1 <= k <= n={n} and k+1 <= s <= m={m}",
            {"k": k, "s": s, "n": n, "m": m},
        )
    shift = s - k - 1
    products = []
    for i in range(1, k + 1):
        for j in range(1, m + 1):
            target = i + j + shift
            coeff = (-1) ** (k - i) * comb(j - 1, k - i)
            if coeff and target <= m:
                products.append((f"X{i}", f"Y{j}", {f"Y{target}": coeff}))
    return Cochain2.build(base, f"Psi^{s}_{k},1", products, declared_weight=shift)


def pairing_cochain(base: SuperAlgebra, name: str, coeffs: Mapping[Tuple[int, int], ScalarLike]) -> Cochain2:
    """(Y_i, Y_j) = c_ij X_{i+j}; pairs out of range are rejected."""
    n, m = _model_dims(base)
    products = []
    for (i, j), c in sorted(coeffs.items()):
        if not (1 <= i <= m and 1 <= j <= m and i + j <= n):
            raise ArgumentRangeError(f"pairing (Y{i},Y{j}) -> X{i + j} is outside L^{{{n},{m}}}")
        products.append((f"Y{i}", f"Y{j}", {f"X{i + j}": c}))
    return Cochain2.build(base, name, products, declared_weight=0)


# (name, n, m) -> pairing coefficients; m=None means any m >= the smallest odd index used
PHI_TABLES: Dict[Tuple[str, int, Optional[int]], Dict[Tuple[int, int], object]] = {
    ("phi12", 2, None): {(1, 1): 1},
    ("phi12", 3, None): {(1, 1): 1, (1, 2): Fraction(1, 2)},
    ("phi12", 4, 2): {(1, 1): 1, (1, 2): Fraction(1, 2), (2, 2): Fraction(1, 2)},
    ("phi12", 4, 3): {(1, 1): 1, (1, 2): Fraction(1, 2), (1, 3): Fraction(1, 2)},
    ("phi24", 4, 3): {(1, 3): -1, (2, 2): 1},
    ("phibar24", 4, 2): {(1, 1): 2, (1, 2): 1, (2, 2): 1},
    ("phibar24", 5, 3): {(1, 1): 3, (1, 2): Fraction(3, 2), (1, 3): Fraction(1, 2), (2, 2): 1, (2, 3): Fraction(1, 2)},
    ("phibar36", 6, 3): {(1, 1): 6, (1, 2): 3, (1, 3): 1, (2, 2): 2, (2, 3): 1, (3, 3): 1},
}

PHI_LABELS = {"phi12": "phi_1,2", "phi24": "phi_2,4", "phibar24": "phibar_2,4", "phibar36": "phibar_3,6"}


def phi_cochain(base: SuperAlgebra, which: str) -> Cochain2:
    n, m = _model_dims(base)
    table = PHI_TABLES.get((which, n, m)) or PHI_TABLES.get((which, n, None))
    if table is None:
        raise ArgumentRangeError(
            f"{which} is not tabulated on L^{{{n},{m}}}",
            {"cochain": which, "n": n, "m": m, "known": sorted({f"{k[0]}@{k[1]},{k[2]}" for k in PHI_TABLES})},
        )
    if max(max(pair) for pair in table) > m:
        raise ArgumentRangeError(f"{which} on n={n} needs m >= {max(max(p) for p in table)}, got m={m}")
    return pairing_cochain(base, PHI_LABELS[which], table)


def weight_zero_pairings(base: SuperAlgebra) -> List[Cochain2]:
    """Basis of symmetric weight-0 pairings S^2 g1 -> g0 that are cocycles on base.

    Solved as the linear system of first-order conditions on a generic
    pairing; an empty list means every such pairing vanishes.
    """
    n, m = _model_dims(base)
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i, m + 1) if i + j <= n]
    if not pairs:
        return []
    names = [f"c{i}_{j}" for i, j in pairs]
    generic = pairing_cochain(base, "generic", {p: Poly.var(v) for p, v in zip(pairs, names)})
    rows = []
    for _, vec in first_order_residuals(base, generic):
        for coeff in vec.values():
            rows.append([coeff.split_linear(v)[0] for v in names])
    kernel = nullspace(MatrixQ.from_rows(rows, len(pairs)))
    out = []
    for t, vector in enumerate(kernel, 1):
        coeffs = {p: c for p, c in zip(pairs, vector) if c}
        out.append(pairing_cochain(base, f"pairing{t}", coeffs))
    logger.info(f"[DEFORM] weight-0 pairings on {base.name}: dimension {len(out)}")
    return out
