"""
Supergrade - Central Sequences and Natural Gradations

Filtration side:
  - C^k(g) = [C^{k-1}(g), g]
  - lie: C^k(g_i) = [g_0, C^{k-1}(g_i)]
  - leibniz: C^k(L_i) = [C^{k-1}(L_i), L_0]   (right action, as in the
    adapted basis [X_i, X_1] = X_{i+1})

Layers g^i = C^{i-1}/C^i are realized by complements: the RREF rows of
C^{i-1} whose pivot column is not a pivot of C^i. Each complement row is
named after its pivot column, so an adapted basis keeps its own names. All
complement rows together form the "flag basis" used to read products off
layer by layer.

is_naturally_graded works in three stages:
  1. graded in the flag basis -> the flag map gr -> g is the witness
  2. cheap isomorphism invariants differ -> proven not naturally graded
  3. otherwise search generator-determined maps gr -> g with the classify
     solver; failure there is reported as "no isomorphism within search
     class", not as a proof.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config import logger
from .errors import NotGradedError, PreconditionError
from .exact import MatrixQ, Poly, ZERO, rref_rational
from .superalg import (
    LIE,
    LEIBNIZ,
    LinearMap,
    SuperAlgebra,
    Subspace,
    Vec,
    right_annihilator,
    transport,
    vec_add,
    vec_scale,
    vec_sub,
    verify_homomorphism,
)


# ============================================================================
# CENTRAL SEQUENCES
# ============================================================================

@dataclass(frozen=True)
class CentralSequences:
    whole: Tuple[Subspace, ...]
    even_part: Tuple[Subspace, ...]
    odd_part: Tuple[Subspace, ...]
    nilpotent: bool

    def dims(self) -> Dict[str, List[int]]:
        return {
            "whole": [s.dim for s in self.whole],
            "even": [s.even_dim for s in self.even_part],
            "odd": [s.odd_dim for s in self.odd_part],
        }


def _descend(start: Subspace, step) -> Tuple[List[Subspace], bool]:
    chain = [start]
    while not chain[-1].is_zero():
        nxt = step(chain[-1])
        if nxt.dim == chain[-1].dim:
            return chain, False
        chain.append(nxt)
    return chain, True


def central_sequences(alg: SuperAlgebra) -> CentralSequences:
    if alg.is_parametric():
        raise PreconditionError(f"instantiate {', '.join(alg.parameters)} before computing central sequences")
    units = [alg.unit(i) for i in range(alg.dim)]
    evens = [alg.unit(i) for i in alg.indices(0)]

    def whole_step(space: Subspace) -> Subspace:
        return Subspace.span(alg, [alg.mul(v, u) for v in space.vectors() for u in units])

    def part_step(space: Subspace) -> Subspace:
        if alg.kind == LIE:
            return Subspace.span(alg, [alg.mul(x, v) for x in evens for v in space.vectors()])
        return Subspace.span(alg, [alg.mul(v, x) for v in space.vectors() for x in evens])

    whole, ok_whole = _descend(Subspace.whole(alg), whole_step)
    even, ok_even = _descend(Subspace.whole(alg, (0,)), part_step)
    odd, ok_odd = _descend(Subspace.whole(alg, (1,)), part_step)
    nilpotent = ok_whole and ok_even and ok_odd
    if not nilpotent:
        logger.info(f"[GRADATION] {alg.name}: descending sequences stabilize at a nonzero subspace")
    return CentralSequences(tuple(whole), tuple(even), tuple(odd), nilpotent)


def s_nilindex(alg: SuperAlgebra) -> Tuple[int, int]:
    """(p, q) with C^{p-1}(g_0) != 0 = C^p(g_0), likewise q for g_1."""
    seq = central_sequences(alg)
    if not seq.nilpotent:
        raise PreconditionError(f"{alg.name} is not nilpotent; s-nilindex undefined")
    return len(seq.even_part) - 1, len(seq.odd_part) - 1


def is_filiform(alg: SuperAlgebra) -> bool:
    if alg.kind != LIE:
        return False
    try:
        return s_nilindex(alg) == (alg.even_dim - 1, alg.odd_dim)
    except PreconditionError:
        return False


def is_max_nilindex_leibniz(alg: SuperAlgebra) -> bool:
    if alg.kind != LEIBNIZ:
        return False
    try:
        return s_nilindex(alg) == (alg.even_dim, alg.odd_dim)
    except PreconditionError:
        return False


# ============================================================================
# LAYERS AND THE FLAG BASIS
# ============================================================================

@dataclass(frozen=True)
class FlagElement:
    name: str
    parity: int
    degree: int
    vector: Vec


@dataclass(frozen=True)
class NaturalGradationLayers:
    algebra: str
    elements: Tuple[FlagElement, ...]

    @property
    def depth(self) -> int:
        return max((e.degree for e in self.elements), default=0)

    def layer(self, degree: int) -> Tuple[List[str], List[str]]:
        even = [e.name for e in self.elements if e.degree == degree and e.parity == 0]
        odd = [e.name for e in self.elements if e.degree == degree and e.parity == 1]
        return even, odd

    def layout(self) -> List[Tuple[int, int]]:
        return [tuple(len(part) for part in self.layer(d)) for d in range(1, self.depth + 1)]

    def to_dict(self) -> List[Dict[str, List[str]]]:
        return [dict(zip(("even", "odd"), self.layer(d))) for d in range(1, self.depth + 1)]


def _pivot(row: Sequence[Fraction]) -> int:
    return next(i for i, c in enumerate(row) if c)


def natural_layers(alg: SuperAlgebra, seq: Optional[CentralSequences] = None) -> NaturalGradationLayers:
    seq = seq or central_sequences(alg)
    if not seq.nilpotent:
        raise PreconditionError(f"{alg.name} is not nilpotent; natural gradation undefined")
    elements: List[FlagElement] = []
    for parity, chain in ((0, seq.even_part), (1, seq.odd_part)):
        offset = 0 if parity == 0 else alg.even_dim
        for degree in range(1, len(chain)):
            deeper = {_pivot(r) for r in chain[degree].part(parity)}
            for row in chain[degree - 1].part(parity):
                piv = _pivot(row)
                if piv in deeper:
                    continue
                vec = {offset + k: Poly.const(c) for k, c in enumerate(row) if c}
                elements.append(FlagElement(alg.basis[offset + piv], parity, degree, vec))
    return NaturalGradationLayers(alg.name, tuple(elements))


def layer_layout(alg: SuperAlgebra) -> List[Tuple[int, int]]:
    return natural_layers(alg).layout()


class _FlagFrame:
    """Coordinates with respect to the flag basis, per parity."""

    def __init__(self, alg: SuperAlgebra, layers: NaturalGradationLayers):
        self.alg = alg
        self.elements = list(layers.elements)
        self._inverse: Dict[int, List[List[Fraction]]] = {}
        self._members: Dict[int, List[int]] = {}
        for parity in (0, 1):
            members = [i for i, e in enumerate(self.elements) if e.parity == parity]
            size = alg.even_dim if parity == 0 else alg.odd_dim
            offset = 0 if parity == 0 else alg.even_dim
            if len(members) != size:
                raise PreconditionError(f"flag basis of {alg.name} does not span the parity-{parity} part")
            grid = []
            for r in range(size):
                row = [self.elements[i].vector.get(offset + r, ZERO).constant() for i in members]
                row += [Fraction(int(r == c)) for c in range(size)]
                grid.append(row)
            if size:
                rref_rational(grid)
            self._inverse[parity] = [row[size:] for row in grid]
            self._members[parity] = members

    def coords(self, vec: Vec) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for parity in (0, 1):
            offset = 0 if parity == 0 else self.alg.even_dim
            inv = self._inverse[parity]
            comps = {k - offset: c.constant() for k, c in vec.items() if self.alg.parity(k) == parity}
            if not comps:
                continue
            for r, member in enumerate(self._members[parity]):
                value = sum((inv[r][k] * c for k, c in comps.items()), Fraction(0))
                if value:
                    out[member] = value
        return out


@dataclass(frozen=True)
class GradingDefect:
    left: str
    right: str
    left_layer: int
    right_layer: int
    stray_layer: int
    parity: str
    breaks_filtration: bool
    odd_pair: bool = False

    def describe(self) -> str:
        pair = f"({self.left},{self.right})" if self.odd_pair else f"[{self.left},{self.right}]"
        return f"{pair} lands in layer {self.stray_layer}"

    def to_dict(self) -> Dict:
        return {
            "left": self.left,
            "right": self.right,
            "left_layer": self.left_layer,
            "right_layer": self.right_layer,
            "stray_layer": self.stray_layer,
            "parity": self.parity,
            "reason": self.describe(),
        }


def grading_defects(alg: SuperAlgebra, layers: Optional[NaturalGradationLayers] = None) -> List[GradingDefect]:
    """Flag-basis products with components outside layer i+j."""
    layers = layers or natural_layers(alg)
    frame = _FlagFrame(alg, layers)
    out: List[GradingDefect] = []
    for a in frame.elements:
        for b in frame.elements:
            prod = alg.mul(a.vector, b.vector)
            if not prod:
                continue
            target = a.degree + b.degree
            strays = sorted({frame.elements[i].degree for i in frame.coords(prod)} - {target})
            if strays:
                out.append(
                    GradingDefect(a.name, b.name, a.degree, b.degree, strays[0],
                                  "odd" if (a.parity + b.parity) % 2 else "even", strays[0] < target,
                                  a.parity == 1 and b.parity == 1)
                )
    return out


def is_graded(alg: SuperAlgebra, layers: Optional[NaturalGradationLayers] = None) -> bool:
    return not grading_defects(alg, layers)


@dataclass(frozen=True)
class GradedQuotient:
    algebra: SuperAlgebra
    layers: NaturalGradationLayers
    degrees: Dict[str, int]


def associated_graded(alg: SuperAlgebra, strict: bool = True) -> GradedQuotient:
    """gr(alg) on the flag basis.

    strict: any product leaving layer i+j raises NotGradedError. Otherwise
    only a product falling below the filtration raises, and stray
    components in deeper layers are dropped (the quotient product).
    """
    layers = natural_layers(alg)
    defects = grading_defects(alg, layers)
    blocking = defects if strict else [d for d in defects if d.breaks_filtration]
    if blocking:
        d = blocking[0]
        raise NotGradedError(d.left_layer, d.right_layer, d.parity, d.describe())
    frame = _FlagFrame(alg, layers)
    elements = frame.elements
    order = [i for i, e in enumerate(elements) if e.parity == 0] + [i for i, e in enumerate(elements) if e.parity == 1]
    position = {flag: pos for pos, flag in enumerate(order)}
    table: Dict[Tuple[int, int], Dict[int, Poly]] = {}
    for ia in order:
        for ib in order:
            a, b = elements[ia], elements[ib]
            pa, pb = position[ia], position[ib]
            if alg.kind == LIE and pb < pa:
                continue
            target = a.degree + b.degree
            coords = frame.coords(alg.mul(a.vector, b.vector))
            vec = {position[i]: Poly.const(c) for i, c in coords.items() if elements[i].degree == target}
            if vec:
                table[(pa, pb)] = vec
    even = [elements[i].name for i in order if elements[i].parity == 0]
    odd = [elements[i].name for i in order if elements[i].parity == 1]
    gr = SuperAlgebra.from_table(f"gr({alg.name})", alg.kind, even, odd, table)
    return GradedQuotient(gr, layers, {e.name: e.degree for e in elements})


# ============================================================================
# INVARIANTS
# ============================================================================

def structure_invariants(alg: SuperAlgebra) -> Dict[str, object]:
    """Basis-independent numbers that any isomorphism must preserve."""
    seq = central_sequences(alg)
    ann = right_annihilator(alg) if alg.kind == LEIBNIZ else None
    brackets = {}
    for pa in (0, 1):
        for pb in (0, 1):
            prods = [alg.basis_product(i, j) for i in alg.indices(pa) for j in alg.indices(pb)]
            brackets[f"[g{pa},g{pb}]"] = Subspace.span(alg, prods).dim
    out: Dict[str, object] = {
        "C^k(g0)": [s.even_dim for s in seq.even_part],
        "C^k(g1)": [s.odd_dim for s in seq.odd_part],
        "C^k(g)": [s.dim for s in seq.whole],
    }
    out.update({f"dim {k}": v for k, v in brackets.items()})
    if ann is not None:
        out["dim Ann"] = [ann.even_dim, ann.odd_dim]
    return out


# ============================================================================
# NATURALLY GRADED
# ============================================================================

SEARCH_FAILURE = "no isomorphism within search class (generator-determined maps)"


@dataclass(frozen=True)
class NaturalGradingResult:
    naturally_graded: bool
    stage: str
    reason: str
    violation: Optional[Dict] = None
    witness: Optional[LinearMap] = None

    def to_dict(self) -> Dict:
        return {
            "naturally_graded": self.naturally_graded,
            "stage": self.stage,
            "reason": self.reason,
            "violation": self.violation,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _flag_map(gr: GradedQuotient, alg: SuperAlgebra) -> LinearMap:
    vectors = {e.name: e.vector for e in gr.layers.elements}
    return LinearMap.from_images(gr.algebra, alg, vectors)


def is_naturally_graded(alg: SuperAlgebra) -> NaturalGradingResult:
    if alg.is_parametric():
        raise PreconditionError(f"instantiate {', '.join(alg.parameters)} before testing natural gradedness")
    seq = central_sequences(alg)
    if not seq.nilpotent:
        raise PreconditionError(f"{alg.name} is not nilpotent")
    layers = natural_layers(alg, seq)
    defects = grading_defects(alg, layers)

    if not defects:
        gr = associated_graded(alg)
        witness = _flag_map(gr, alg)
        report = verify_homomorphism(witness)
        if report.ok:
            logger.info(f"[GRADATION] {alg.name}: graded in its flag basis")
            return NaturalGradingResult(True, "graded-basis", "graded in its flag basis", None, witness)

    first = defects[0] if defects else None
    not_graded = f"gr not graded: {first.describe()}" if first else "flag map is not a homomorphism"
    try:
        gr = associated_graded(alg, strict=False)
    except NotGradedError as e:
        return NaturalGradingResult(False, "filtration", e.message, first.to_dict() if first else None)

    mine, theirs = structure_invariants(alg), structure_invariants(gr.algebra)
    for key in mine:
        if mine[key] != theirs[key]:
            reason = f"{not_graded}; invariants differ: {key} {mine[key]} vs {theirs[key]} in gr"
            logger.info(f"[GRADATION] {alg.name}: {reason}")
            return NaturalGradingResult(False, "invariants", reason, first.to_dict() if first else None)

    witness, why = generator_search(alg, gr)
    if witness is not None:
        logger.info(f"[GRADATION] {alg.name}: isomorphism to gr found by generator search")
        return NaturalGradingResult(True, "search", f"{not_graded}; isomorphic to gr via generator images",
                                    first.to_dict() if first else None, witness)
    return NaturalGradingResult(False, "search", f"{not_graded}; {why}", first.to_dict() if first else None)


def _solve_columns(columns: List[Vec], size: int) -> List[Dict[int, Fraction]]:
    """For each unit vector e_k, its coordinates over the given (square, independent) columns."""
    grid = []
    for r in range(size):
        row = [col.get(r, ZERO).constant() for col in columns]
        row += [Fraction(int(r == c)) for c in range(size)]
        grid.append(row)
    rref_rational(grid)
    return [{w: grid[w][size + k] for w in range(size) if grid[w][size + k]} for k in range(size)]


def generator_search(alg: SuperAlgebra, gr: GradedQuotient) -> Tuple[Optional[LinearMap], str]:
    """Look for f: gr -> alg fixed by images of the first-layer generators.

    Each generator goes to its flag vector plus unknown multiples of every
    deeper flag vector of the same parity. The rest of f follows from
    brackets of generators; the homomorphism equations on all pairs are
    handed to the branch solver, free unknowns are set to zero, and each
    candidate is verified before it is returned.
    """
    from .classify import ConstraintSystem, solve

    g = gr.algebra
    elements = {e.name: e for e in gr.layers.elements}
    gens = [i for i in range(g.dim) if gr.degrees[g.basis[i]] == 1]
    images: Dict[int, Vec] = {}
    unknowns: List[str] = []
    for gi in gens:
        head = elements[g.basis[gi]]
        vec = dict(head.vector)
        for other in gr.layers.elements:
            if other.parity == head.parity and other.degree > 1:
                u = f"u_{head.name}_{other.name}"
                unknowns.append(u)
                vec = vec_add(vec, vec_scale(other.vector, Poly.var(u)))
        images[gi] = vec

    words: List[Tuple[Vec, Vec]] = [(g.unit(gi), images[gi]) for gi in gens]
    span = Subspace.span(g, [w for w, _ in words])
    frontier = list(words)
    while frontier and span.dim < g.dim:
        grown = []
        for w, img in frontier:
            for gi in gens:
                for prod, pimg in ((g.mul(w, g.unit(gi)), lambda: alg.mul(img, images[gi])),
                                   (g.mul(g.unit(gi), w), lambda: alg.mul(images[gi], img))):
                    if prod and not span.contains_vec(prod):
                        span = Subspace.span(g, span.vectors() + [prod])
                        entry = (prod, pimg())
                        words.append(entry)
                        grown.append(entry)
        frontier = grown
    if span.dim < g.dim:
        return None, "gr is not generated by its first layer"

    coeffs = _solve_columns([w for w, _ in words], g.dim)
    f_images: List[Vec] = []
    for k in range(g.dim):
        vec: Vec = {}
        for w, c in coeffs[k].items():
            vec = vec_add(vec, vec_scale(words[w][1], Poly.const(c)))
        f_images.append(vec)

    equations: List[Poly] = []
    for a in range(g.dim):
        for b in range(g.dim):
            lhs: Vec = {}
            for k, c in g.basis_product(a, b).items():
                lhs = vec_add(lhs, vec_scale(f_images[k], c))
            diff = vec_sub(lhs, alg.mul(f_images[a], f_images[b]))
            equations.extend(diff.values())
    logger.debug(f"[GRADATION] generator search on {alg.name}: {len(unknowns)} unknowns, {len(equations)} equations")

    for branch in solve(ConstraintSystem.of(equations)):
        point = {u: branch.substitutions.get(u, ZERO) for u in unknowns}
        zeros = {v: ZERO for p in point.values() for v in p.variables}
        chosen = {u: p.subst(zeros) for u, p in point.items()}
        concrete = {
            g.basis[k]: {i: c.subst(chosen) for i, c in f_images[k].items()}
            for k in range(g.dim)
        }
        concrete = {n: {i: c for i, c in v.items() if not c.is_zero()} for n, v in concrete.items()}
        witness = LinearMap.from_images(g, alg, concrete)
        if verify_homomorphism(witness).ok:
            return witness, "isomorphic"
    return None, SEARCH_FAILURE


# ============================================================================
# ADAPTED BASIS
# ============================================================================

def _small_combos(limit: int = 3) -> List[Tuple[int, int]]:
    seen = [(1, 0), (0, 1), (1, 1), (1, -1)]
    rest = [
        (a, b)
        for a in range(-limit, limit + 1)
        for b in range(-limit, limit + 1)
        if (a, b) != (0, 0) and (a, b) not in seen
    ]
    rest.sort(key=lambda ab: (max(abs(ab[0]), abs(ab[1])), abs(ab[0]) + abs(ab[1]), -ab[0], -ab[1]))
    return seen + rest


def _power_chain(step, start: Vec, length: int) -> List[Vec]:
    chain = [start]
    for _ in range(length):
        chain.append(step(chain[-1]))
    return chain


def _rank(alg: SuperAlgebra, vectors: Sequence[Vec]) -> int:
    return Subspace.span(alg, vectors).dim


def _block(alg: SuperAlgebra, vectors: Sequence[Vec], parity: int) -> MatrixQ:
    offset = 0 if parity == 0 else alg.even_dim
    size = alg.even_dim if parity == 0 else alg.odd_dim
    return MatrixQ.from_rows(
        [[v.get(offset + r, ZERO) for v in vectors] for r in range(size)], len(vectors)
    )


def adapted_basis(alg: SuperAlgebra) -> LinearMap:
    """Map from an adapted copy of alg onto alg.

    lie (filiform, dim g_0 = n+1): [X0,Xi] = X_{i+1}, [X0,Yj] = Y_{j+1}.
    leibniz (s-nilindex (n,m)): [Xi,X1] = X_{i+1}, [Yj,X1] = Y_{j+1}.
    The source of the returned map carries the law in the adapted basis.
    """
    layers = natural_layers(alg)
    first_even = [e.vector for e in layers.elements if e.degree == 1 and e.parity == 0]
    first_odd = [e.vector for e in layers.elements if e.degree == 1 and e.parity == 1]

    if alg.kind == LIE:
        if not is_filiform(alg):
            raise PreconditionError(f"{alg.name} is not filiform")
        n, m = alg.even_dim - 1, alg.odd_dim
        if len(first_even) != 2 or len(first_odd) != (1 if m else 0):
            raise PreconditionError(f"{alg.name}: first layer is not <X0, X1, Y1>")
        y1 = first_odd[0] if m else {}
        evens = [alg.unit(i) for i in alg.indices(0)]
        combos = _small_combos()

        def combo(a: int, b: int) -> Vec:
            return vec_add(vec_scale(first_even[0], a), vec_scale(first_even[1], b))

        x0 = None
        for a, b in combos:
            cand = combo(a, b)
            ad = lambda v, c=cand: alg.mul(c, v)
            even_ok = n < 2 or any(_power_chain(ad, e, n - 1)[-1] for e in evens)
            odd_ok = m < 2 or bool(_power_chain(ad, y1, m - 1)[-1])
            if even_ok and odd_ok:
                x0 = cand
                break
        if x0 is None:
            raise PreconditionError(f"{alg.name}: no characteristic X0 among small combinations")
        ad0 = lambda v: alg.mul(x0, v)
        x_chain = None
        for a, b in combos:
            cand = combo(a, b)
            chain = _power_chain(ad0, cand, n - 1)
            if _rank(alg, [x0] + chain) == n + 1:
                x_chain = chain
                break
        if x_chain is None:
            raise PreconditionError(f"{alg.name}: no X1 completing X0 to an adapted basis")
        y_chain = _power_chain(ad0, y1, m - 1) if m else []
        even_vecs = [x0] + x_chain
        even_names = [f"X{i}" for i in range(n + 1)]
        odd_names = [f"Y{j}" for j in range(1, m + 1)]
    else:
        if not is_max_nilindex_leibniz(alg):
            raise PreconditionError(f"{alg.name} does not have maximal s-nilindex")
        n, m = alg.even_dim, alg.odd_dim
        if len(first_even) != 1 or len(first_odd) != (1 if m else 0):
            raise PreconditionError(f"{alg.name}: first layer is not <X1, Y1>")
        x1 = first_even[0]
        right = lambda v: alg.mul(v, x1)
        even_vecs = _power_chain(right, x1, n - 1)
        y_chain = _power_chain(right, first_odd[0], m - 1) if m else []
        even_names = [f"X{i}" for i in range(1, n + 1)]
        odd_names = [f"Y{j}" for j in range(1, m + 1)]

    if _rank(alg, even_vecs) != alg.even_dim or _rank(alg, y_chain) != alg.odd_dim:
        raise PreconditionError(f"{alg.name}: generator chains do not span the algebra")
    f = transport(
        alg,
        _block(alg, even_vecs, 0),
        _block(alg, y_chain, 1),
        name=f"{alg.name} (adapted)",
        even_names=even_names,
        odd_names=odd_names,
    )
    logger.info(f"[GRADATION] adapted basis for {alg.name} found")
    return f
