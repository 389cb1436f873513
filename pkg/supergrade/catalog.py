"""
Supergrade - Catalog of Named Algebras, Cochains and Classified Laws

Every algebra the tool knows by name is built here from its printed
structure constants. Two basis conventions coexist and are never
reindexed into each other:
  - lie filiform laws: even X0..Xn (dim n+1), odd Y1..Ym, chains driven by X0
  - leibniz laws of maximal s-nilindex: even X1..Xn (dim n), odd Y1..Ym,
    chains driven by right multiplication with X1

A recipe is a constructor plus metadata. list_entries() expands recipes
into concrete CatalogEntry records (arguments filled in) over a sweep of
small dimensions; make() builds one instance from an id and arguments.

Printed laws that fail their own identity stay in the catalog: the entry
carries the erratum text and one violating basis triple, and sweeps assert
that recorded failure instead of validity.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from config import logger
from .deform import Cochain2, combine, deform, phi_cochain, psi_cochain
from .errors import ArgumentRangeError, PreconditionError, UnknownEntryError
from .exact import Poly, ScalarLike, rref_rational
from .superalg import LEIBNIZ, LIE, ProductSpec, SuperAlgebra

SWEEP_MAX = 8

LAW = "law"
MODEL = "model"
COCHAIN = "cochain"
FAMILY = "family"
EXAMPLE = "example"
ROLES = (LAW, MODEL, COCHAIN, FAMILY, EXAMPLE)

Built = Union[SuperAlgebra, Cochain2]
Erratum = Tuple[str, Tuple[str, str, str]]


# ============================================================================
# ENTRY RECORDS
# ============================================================================

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    role: str
    title: str
    source: str
    dims: Tuple[int, int]
    args: Dict[str, Any]
    naturally_graded: bool
    valid_range: str
    erratum: Optional[str] = None
    erratum_triple: Optional[Tuple[str, str, str]] = None

    def build(self) -> Built:
        return make(self.id, **self.args)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind,
            "role": self.role,
            "title": self.title,
            "source": self.source,
            "dims": list(self.dims),
            "args": {k: str(v) for k, v in self.args.items()},
            "naturally_graded": self.naturally_graded,
            "valid_range": self.valid_range,
            "erratum": self.erratum,
            "erratum_triple": list(self.erratum_triple) if self.erratum_triple else None,
        }


@dataclass(frozen=True)
class _Recipe:
    id: str
    kind: str
    role: str
    title: str
    source: str
    params: Tuple[str, ...]
    build: Callable[..., Built]
    dims: Callable[..., Tuple[int, int]]
    sweep: Callable[[int], Iterable[Dict[str, Any]]]
    defaults: Mapping[str, Any] = field(default_factory=dict)
    naturally_graded: bool = False
    valid_range: str = "all admissible arguments"
    erratum: Optional[Callable[..., Optional[Erratum]]] = None


_RECIPES: Dict[str, _Recipe] = {}


def _register(recipe: _Recipe) -> None:
    _RECIPES[recipe.id] = recipe


def _fixed(**args) -> Callable[[int], Iterable[Dict[str, Any]]]:
    return lambda cap: [dict(args)]


# ============================================================================
# LIE SIDE: MODELS AND FILIFORM LAWS
# ============================================================================

def _need(condition: bool, message: str, **details) -> None:
    if not condition:
        raise ArgumentRangeError(message, details)


def model(n: int, m: int) -> SuperAlgebra:
    """L^{n,m}: [X0,Xi]=X_{i+1}, [X0,Yj]=Y_{j+1}; m=0 gives the filiform lie algebra L_n."""
    _need(n >= 2, f"the model law needs n >= 2, got n={n}", n=n)
    _need(m >= 0, f"the model law needs m >= 0, got m={m}", m=m)
    products: List[ProductSpec] = [("X0", f"X{i}", {f"X{i + 1}": 1}) for i in range(1, n)]
    products += [("X0", f"Y{j}", {f"Y{j + 1}": 1}) for j in range(1, m)]
    name = f"L_{n}" if m == 0 else f"L^{{{n},{m}}}"
    return SuperAlgebra.build(
        name, LIE, [f"X{i}" for i in range(n + 1)], [f"Y{j}" for j in range(1, m + 1)], products
    )


def _q_brackets(n: int) -> List[ProductSpec]:
    return [(f"X{i}", f"X{n - i}", {f"X{n}": (-1) ** i}) for i in range(1, (n - 1) // 2 + 1)]


def q_law(n: int, m: int = 0) -> SuperAlgebra:
    """Q_n (m=0) or its super extension L^{n,m} + [X_i, X_{n-i}] = (-1)^i X_n."""
    _need(n >= 5 and n % 2 == 1, f"Q_n requires n odd and n >= 5, got n={n}", n=n)
    base = model(n, m)
    products = base.products_by_name() + _q_brackets(n)
    name = f"Q_{n}" if m == 0 else f"Q^{{{n},{m}}}"
    return SuperAlgebra.build(name, LIE, base.even_basis, base.odd_basis, products)


def _cochain(base: SuperAlgebra, key: Union[str, Tuple[int, int]]) -> Cochain2:
    if isinstance(key, tuple):
        return psi_cochain(base, *key)
    return phi_cochain(base, key)


_LABELS = {"phi12": "phi_1,2", "phi24": "phi_2,4", "phibar24": "phibar_2,4", "phibar36": "phibar_3,6"}


def _term_label(coeff: ScalarLike, key: Union[str, Tuple[int, int]]) -> str:
    label = f"Psi^{key[1]}_{key[0]},1" if isinstance(key, tuple) else _LABELS[key]
    text = str(Poly.coerce(coeff))
    return label if text == "1" else f"{text}{label}" if text.isdigit() else f"({text}){label}"


def deformed_law(n: int, m: int, terms: Sequence[Tuple[ScalarLike, Union[str, Tuple[int, int]]]]) -> SuperAlgebra:
    """model(n, m) plus a combination of named cochains; psi keys are (k, s)."""
    base = model(n, m)
    pieces = [(coeff, _cochain(base, key)) for coeff, key in terms]
    name = base.name + "".join("+" + _term_label(coeff, key) for coeff, key in terms)
    return deform(base, combine(base, pieces), name)


def _lie_dims(n: int, m: int = 0, **_) -> Tuple[int, int]:
    return (n, m)


def _sweep_phi12(cap: int):
    for n in (2, 3):
        for m in range(1 if n == 2 else 2, cap + 1):
            yield {"n": n, "m": m}


_register(_Recipe(
    "L", LIE, MODEL, "model filiform law L^{n,m}", "adapted basis of a filiform lie superalgebra",
    ("n", "m"), model, _lie_dims,
    lambda cap: ({"n": n, "m": m} for n in range(2, cap + 1) for m in range(1, cap + 1)),
))
_register(_Recipe(
    "Ln", LIE, MODEL, "filiform lie algebra L_n", "naturally graded filiform lie algebras",
    ("n",), lambda n: model(n, 0), _lie_dims,
    lambda cap: ({"n": n} for n in range(2, cap + 1)), naturally_graded=True,
))
_register(_Recipe(
    "Q", LIE, MODEL, "filiform lie algebra Q_n", "naturally graded filiform lie algebras",
    ("n",), lambda n: q_law(n), _lie_dims,
    lambda cap: ({"n": n} for n in range(5, cap + 2, 2)), naturally_graded=True,
    valid_range="n odd, n >= 5",
))
_register(_Recipe(
    "Q-super", LIE, EXAMPLE, "Q_n brackets on the model L^{n,m}", "base of the Q_5 nonexistence argument",
    ("n", "m"), q_law, _lie_dims, _fixed(n=5, m=3), valid_range="n odd, n >= 5",
))
_register(_Recipe(
    "L+phi12", LIE, LAW, "L^{n,m} + phi_1,2", "naturally graded laws with n = 2 or n = 3",
    ("n", "m"), lambda n, m: deformed_law(n, m, [(1, "phi12")]), _lie_dims, _sweep_phi12,
    naturally_graded=True, valid_range="n = 2 with m >= 1; n = 3 with m >= 2",
))
_register(_Recipe(
    "L+phi12+psi2", LIE, LAW, "L^{3,m} + phi_1,2 + Psi^2_1,1", "naturally graded laws with n = 3",
    ("m",), lambda m: deformed_law(3, m, [(1, "phi12"), (1, (1, 2))]), lambda m: (3, m),
    lambda cap: ({"m": m} for m in range(2, cap + 1)),
    naturally_graded=True, valid_range="m >= 2",
    erratum=lambda m: (
        "printed law fails super Jacobi: [X1,(Y1,Y1)] = 0 but 2([X1,Y1],Y1) = X3",
        ("X1", "Y1", "Y1"),
    ),
))
_register(_Recipe(
    "L34+phi12+psi4", LIE, LAW, "L^{3,4} + phi_1,2 + Psi^4_3,1", "naturally graded laws with n = 3, m = 4",
    (), lambda: deformed_law(3, 4, [(1, "phi12"), (1, (3, 4))]), lambda: (3, 4), _fixed(),
    naturally_graded=True,
))
_register(_Recipe(
    "L42+phibar24", LIE, LAW, "L^{4,2} + phibar_2,4", "naturally graded laws of dimension at most 7",
    (), lambda: deformed_law(4, 2, [(1, "phibar24")]), lambda: (4, 2), _fixed(), naturally_graded=True,
))
_register(_Recipe(
    "L43+phi24", LIE, LAW, "L^{4,3} + phi_2,4", "naturally graded laws with n = 4, m = 3",
    (), lambda: deformed_law(4, 3, [(1, "phi24")]), lambda: (4, 3), _fixed(), naturally_graded=True,
))
_register(_Recipe(
    "L43+phi24+psi2+2psi3", LIE, LAW, "L^{4,3} + phi_2,4 + Psi^2_1,1 + 2Psi^3_2,1",
    "naturally graded laws with n = 4, m = 3",
    (), lambda: deformed_law(4, 3, [(1, "phi24"), (1, (1, 2)), (2, (2, 3))]), lambda: (4, 3), _fixed(),
    naturally_graded=True,
    erratum=lambda: (
        "printed table lists [X2,Y1]=Y3 where the cochain sum gives 2Y3; "
        "either way super Jacobi fails: (Y2,Y2) + (Y1,[X1,Y2]) = 2X4",
        ("X1", "Y1", "Y2"),
    ),
))
_register(_Recipe(
    "L43+phi12+t*phi24", LIE, LAW, "L^{4,3} + phi_1,2 + t phi_2,4", "naturally graded laws with n = 4, m = 3",
    ("t",), lambda t="t": deformed_law(4, 3, [(1, "phi12"), (t, "phi24")]), lambda t="t": (4, 3),
    _fixed(), defaults={"t": "t"}, naturally_graded=True, valid_range="t any scalar",
))
_register(_Recipe(
    "L43+4phi12+phi24+psi2", LIE, LAW, "L^{4,3} + 4phi_1,2 + phi_2,4 + Psi^2_1,1",
    "naturally graded laws with n = 4, m = 3",
    (), lambda: deformed_law(4, 3, [(4, "phi12"), (1, "phi24"), (1, (1, 2))]), lambda: (4, 3), _fixed(),
    naturally_graded=True,
    erratum=lambda: (
        "printed law fails super Jacobi: [X1,(Y1,Y1)] = 0 but 2([X1,Y1],Y1) = 4X3",
        ("X1", "Y1", "Y1"),
    ),
))
_register(_Recipe(
    "L53+phibar24", LIE, LAW, "L^{5,3} + phibar_2,4", "naturally graded laws with n = 5, m = 3",
    (), lambda: deformed_law(5, 3, [(1, "phibar24")]), lambda: (5, 3), _fixed(), naturally_graded=True,
))
_register(_Recipe(
    "L63+phibar36", LIE, LAW, "L^{6,3} + phibar_3,6", "naturally graded laws with n = 6, m = 3",
    (), lambda: deformed_law(6, 3, [(1, "phibar36")]), lambda: (6, 3), _fixed(), naturally_graded=True,
))


# ============================================================================
# LIE SIDE: COCHAINS AND SMALL EXAMPLES
# ============================================================================

def _phi_recipe(key: str, homes: Sequence[Tuple[int, int]]) -> _Recipe:
    return _Recipe(
        key, LIE, COCHAIN, f"pairing cochain {_LABELS[key]}", "weight-0 pairings S^2 g1 -> g0",
        ("n", "m"), lambda n, m: phi_cochain(model(n, m), key), _lie_dims,
        lambda cap: ({"n": n, "m": m} for n, m in homes if n <= cap and m <= cap),
        valid_range="tabulated dimensions only",
    )


for _key, _homes in (
    ("phi12", [(2, m) for m in range(1, SWEEP_MAX + 1)] + [(3, m) for m in range(2, SWEEP_MAX + 1)]
     + [(4, 2), (4, 3)]),
    ("phi24", [(4, 3)]),
    ("phibar24", [(4, 2), (5, 3)]),
    ("phibar36", [(6, 3)]),
):
    _register(_phi_recipe(_key, _homes))

_register(_Recipe(
    "psi", LIE, COCHAIN, "cochain Psi^s_k,1", "weight s-k-1 cocycles on the model",
    ("n", "m", "k", "s"), lambda n, m, k, s: psi_cochain(model(n, m), k, s), _lie_dims,
    lambda cap: (
        {"n": n, "m": m, "k": k, "s": s}
        for n in range(2, cap + 1) for m in range(2, cap + 1)
        for k in range(1, n + 1) for s in range(k + 1, m + 1)
    ),
    valid_range="1 <= k <= n, k+1 <= s <= m",
))


def remark_example() -> SuperAlgebra:
    """Graded pieces <X1,X2,Y1>, <X3>, <X4> with (Y1,Y1) = X4 jumping a layer."""
    return SuperAlgebra.build(
        "gr-not-graded example", LEIBNIZ, ["X1", "X2", "X3", "X4"], ["Y1"],
        [
            ("X2", "X1", {"X3": 1}),
            ("X3", "X1", {"X4": 1}),
            ("X1", "X2", {"X3": -1}),
            ("X1", "X3", {"X4": -1}),
            ("Y1", "Y1", {"X4": 1}),
        ],
    )


def abelian(p: int, q: int) -> SuperAlgebra:
    _need(p >= 0 and q >= 0, "abelian superalgebra needs p, q >= 0", p=p, q=q)
    return SuperAlgebra.build(
        f"abelian({p}|{q})", LIE, [f"X{i}" for i in range(p)], [f"Y{j}" for j in range(1, q + 1)]
    )


def with_center(n: int, m: int) -> SuperAlgebra:
    """L^{n,m} plus one central even vector Z; nilpotent but not filiform."""
    base = model(n, m)
    return SuperAlgebra.build(
        f"{base.name}+Z", LIE, base.even_basis + ("Z",), base.odd_basis, base.products_by_name()
    )


def shifted_pairing_example() -> SuperAlgebra:
    base = model(3, 1)
    return SuperAlgebra.build(
        "L^{3,1}+(Y1,Y1)=X3", LIE, base.even_basis, base.odd_basis,
        base.products_by_name() + [("Y1", "Y1", {"X3": 1})],
    )


def _lie_shape(alg: SuperAlgebra) -> Tuple[int, int]:
    return (alg.even_dim - 1, alg.odd_dim)


_register(_Recipe(
    "remark-graded", LEIBNIZ, EXAMPLE, "nilpotent superalgebra whose gr is not graded",
    "counterexample to dropping the gradedness condition",
    (), remark_example, lambda: (4, 1), _fixed(),
))
_register(_Recipe(
    "abelian", LIE, EXAMPLE, "abelian superalgebra", "trivial products",
    ("p", "q"), abelian, lambda p, q: (p - 1, q), _fixed(p=2, q=2),
))
_register(_Recipe(
    "zero", LIE, EXAMPLE, "zero superalgebra", "trivial products",
    (), lambda: abelian(0, 0), lambda: (-1, 0), _fixed(),
))
_register(_Recipe(
    "L+center", LIE, EXAMPLE, "model law plus a central even vector", "non-filiform nilpotent example",
    ("n", "m"), with_center, lambda n, m: (n + 1, m), _fixed(n=3, m=2),
))
_register(_Recipe(
    "L31+Y1Y1=X3", LIE, EXAMPLE, "L^{3,1} with (Y1,Y1)=X3", "weight-1 pairing example",
    (), shifted_pairing_example, lambda: (3, 1), _fixed(),
))


# ============================================================================
# LEIBNIZ SIDE
# ============================================================================

def _leibniz(name: str, n: int, m: int, products: Iterable[ProductSpec]) -> SuperAlgebra:
    return SuperAlgebra.build(
        name, LEIBNIZ, [f"X{i}" for i in range(1, n + 1)], [f"Y{j}" for j in range(1, m + 1)], products
    )


def _chains(n: int, m: int) -> List[ProductSpec]:
    products: List[ProductSpec] = [(f"X{i}", "X1", {f"X{i + 1}": 1}) for i in range(1, n)]
    products += [(f"Y{j}", "X1", {f"Y{j + 1}": 1}) for j in range(1, m)]
    return products


def null_filiform(n: int) -> SuperAlgebra:
    """NF^n: [X_i, X1] = X_{i+1}."""
    _need(n >= 2, f"NF^n needs n >= 2, got n={n}", n=n)
    return _leibniz(f"NF^{n}", n, 0, _chains(n, 0))


def ng_law(n: int, m: int) -> SuperAlgebra:
    """NG^{n,m}: chains plus [Y_i, Y1] = X_{i+1} for i <= min(n-1, m)."""
    _need(n >= 2 and m >= 1, f"NG^{{n,m}} needs n >= 2, m >= 1, got ({n},{m})", n=n, m=m)
    products = _chains(n, m) + [(f"Y{i}", "Y1", {f"X{i + 1}": 1}) for i in range(1, min(n - 1, m) + 1)]
    return _leibniz(f"NG^{{{n},{m}}}", n, m, products)


def _ng_erratum(n: int, m: int) -> Optional[Erratum]:
    if n < m + 2:
        return None
    return (
        f"[[Y{m},Y1],X1] = X{m + 2} has no matching term once Y{m} is the last odd vector",
        (f"Y{m}", "Y1", "X1"),
    )


def _mu(name: str, n: int, m: int, extra: Iterable[ProductSpec], chains: bool = True) -> SuperAlgebra:
    return _leibniz(name, n, m, (_chains(n, m) if chains else []) + list(extra))


def mu1_alpha(alpha: ScalarLike = "alpha") -> SuperAlgebra:
    return _leibniz("mu_1^alpha", 2, 2, [
        ("X1", "X1", {"X2": 1}),
        ("X1", "Y1", {"Y2": alpha}),
        ("Y1", "X1", {"Y2": 1}),
        ("Y1", "Y1", {"X2": 1}),
    ])


_LOW_LEIBNIZ: Dict[Tuple[str, int, int], Callable[[], SuperAlgebra]] = {
    ("mu2", 3, 2): lambda: _mu("mu_2", 3, 2, [("Y1", "Y1", {"X2": 1}), ("Y2", "Y1", {"X3": 1})]),
    ("mu3", 3, 2): lambda: _mu("mu_3", 3, 2, [
        ("X1", "Y1", {"Y2": -1}), ("Y1", "Y2", {"X3": 1}), ("Y1", "Y1", {"X2": 1}),
    ]),
    ("mu1", 2, 3): lambda: _mu("mu_1", 2, 3, [("Y1", "Y1", {"X2": 1})]),
    ("mu3", 2, 3): lambda: _mu("mu_3", 2, 3, [
        ("Y1", "Y1", {"X2": 1}), ("X1", "Y1", {"Y2": -1}), ("X1", "Y2", {"Y3": -1}),
    ]),
    ("mu1", 3, 3): lambda: _mu("mu_1", 3, 3, [("Y1", "Y2", {"X3": 1}), ("Y2", "Y1", {"X3": -1})]),
    ("mu8", 3, 3): lambda: _mu("mu_8", 3, 3, [
        ("X1", "Y2", {"Y3": -1}), ("Y1", "Y1", {"X2": 1}), ("Y1", "Y2", {"X3": 1}),
    ]),
    ("mu9", 4, 3): lambda: _mu("mu_9", 4, 3, [
        ("X1", "Y1", {"Y2": -1}), ("X1", "Y2", {"Y3": -1}),
        ("Y1", "Y3", {"X4": 1}), ("Y2", "Y2", {"X4": -1}), ("Y3", "Y1", {"X4": 1}),
    ]),
    ("mu12", 4, 3): lambda: ng_law(4, 3).with_name("mu_12"),
}

_LOW_ERRATA: Dict[Tuple[str, int, int], Erratum] = {
    ("mu1", 3, 3): (
        "printed law fails super Leibniz: [Y1,[X1,Y1]] = 0 but [[Y1,X1],Y1] = [Y2,Y1] = -X3",
        ("Y1", "X1", "Y1"),
    ),
    ("mu8", 3, 3): (
        "printed law fails super Leibniz without [X1,Y1] = -Y2: "
        "[Y1,[X1,Y1]] = 0 but [[Y1,X1],Y1] - [[Y1,Y1],X1] = -X3",
        ("Y1", "X1", "Y1"),
    ),
}


def _low_builder(key: str) -> Callable[..., SuperAlgebra]:
    def build(n: int, m: int) -> SuperAlgebra:
        maker = _LOW_LEIBNIZ.get((key, n, m))
        if maker is None:
            homes = sorted((a, b) for k, a, b in _LOW_LEIBNIZ if k == key)
            raise ArgumentRangeError(f"{key} is printed only for (n,m) in {homes}", {"n": n, "m": m})
        return maker()
    return build


for _key in sorted({k for k, _, _ in _LOW_LEIBNIZ}):
    _homes = sorted((a, b) for k, a, b in _LOW_LEIBNIZ if k == _key)
    _register(_Recipe(
        _key, LEIBNIZ, LAW, f"low-dimensional leibniz law {_key}", "naturally graded leibniz list, low dimensions",
        ("n", "m"), _low_builder(_key), _lie_dims,
        (lambda homes: lambda cap: ({"n": a, "m": b} for a, b in homes))(_homes),
        naturally_graded=True, valid_range=f"(n,m) in {_homes}",
        erratum=(lambda key: lambda n, m: _LOW_ERRATA.get((key, n, m)))(_key),
    ))


def mu_m_minus_1(m: int) -> SuperAlgebra:
    _need(m >= 4, f"mu_(m-1) is printed for m >= 4, got m={m}", m=m)
    return ng_law(2, m).with_name(f"mu_{m - 1}")


def mu_m_plus_1(m: int) -> SuperAlgebra:
    _need(m >= 4, f"mu_(m+1) is printed for m >= 4, got m={m}", m=m)
    base = ng_law(2, m)
    extra = [("X1", f"Y{j}", {f"Y{j + 1}": -1}) for j in range(2, m)]
    return _leibniz(f"mu_{m + 1}", 2, m, base.products_by_name() + extra)


_register(_Recipe(
    "mu1-alpha", LEIBNIZ, LAW, "one-parameter family mu_1^alpha", "naturally graded leibniz list, (2,2)",
    ("alpha",), mu1_alpha, lambda alpha="alpha": (2, 2), _fixed(), defaults={"alpha": "alpha"},
    naturally_graded=True, valid_range="alpha any scalar",
))
_register(_Recipe(
    "mu_m-1", LEIBNIZ, LAW, "leibniz law mu_(m-1) on (2,m)", "naturally graded leibniz list, n = 2",
    ("m",), mu_m_minus_1, lambda m: (2, m), lambda cap: ({"m": m} for m in range(4, cap + 1)),
    naturally_graded=True, valid_range="m >= 4",
))
_register(_Recipe(
    "mu_m+1", LEIBNIZ, LAW, "leibniz law mu_(m+1) on (2,m)", "naturally graded leibniz list, n = 2",
    ("m",), mu_m_plus_1, lambda m: (2, m), lambda cap: ({"m": m} for m in range(4, cap + 1)),
    naturally_graded=True, valid_range="m >= 4",
    erratum=lambda m: (
        "printed law fails super Leibniz: [X1,[Y1,X1]] = -Y3 but [[X1,Y1],X1] - [[X1,X1],Y1] = 0",
        ("X1", "Y1", "X1"),
    ),
))
_register(_Recipe(
    "NF", LEIBNIZ, MODEL, "null-filiform leibniz algebra NF^n", "even part of every maximal s-nilindex law",
    ("n",), null_filiform, lambda n: (n, 0), lambda cap: ({"n": n} for n in range(2, cap + 1)),
    naturally_graded=True,
))
_register(_Recipe(
    "NG", LEIBNIZ, LAW, "leibniz law NG^{n,m}", "naturally graded leibniz laws with n >= 3, m >= 4",
    ("n", "m"), ng_law, _lie_dims,
    lambda cap: ({"n": n, "m": m} for m in range(4, cap + 1) for n in range(3, min(m + 1, cap) + 1)),
    naturally_graded=True, valid_range="n <= m + 1", erratum=_ng_erratum,
))


# ============================================================================
# LEIBNIZ GAMMA FAMILY
# ============================================================================

def gamma_name(i: int) -> str:
    return f"gamma{i}"


def _gamma_count(n: int, m: int) -> int:
    return n - 1 if n <= m else m


def _family_relations(n: int, m: int) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Linear relations among gamma_1..gamma_N (each dict sums to zero) and the dependent-first order."""
    count = _gamma_count(n, m)
    relations: List[Dict[int, Fraction]] = []
    if count >= 2:
        relations.append({2: Fraction(1)})
    top = (n - 1) // 2 if n <= m else m // 2
    for j in range(2, top + 1):
        row = {2 * j: Fraction(1)}
        for s in range(0, j - 1):
            idx = j + s + 1
            row[idx] = row.get(idx, Fraction(0)) - (-1) ** j * (-1) ** s * comb(j - 1, s)
        relations.append(row)
    extra = []
    if n > m:
        for i in range(1, min(n - m - 1, count) + 1):
            row = {i: Fraction(1)}
            for s in range(1, m - i + 1):
                row[i + s] = row.get(i + s, Fraction(0)) - (-1) ** (s + 1) * comb(m, s)
            relations.append(row)
            extra.append(i)
    preferred = [i for i in range(2, count + 1, 2)] + [i for i in extra if i % 2]
    order = preferred + [i for i in range(1, count + 1) if i not in preferred]
    return relations, order


def _solve_gammas(n: int, m: int, given: Mapping[int, Poly]) -> Dict[int, Poly]:
    count = _gamma_count(n, m)
    relations, order = _family_relations(n, m)
    grid = [[row.get(i, Fraction(0)) for i in order] for row in relations]
    pivots = rref_rational(grid) if grid else []
    dependent = {order[c]: r for r, c in enumerate(pivots)}
    values: Dict[int, Poly] = {}
    for i in range(1, count + 1):
        if i not in dependent:
            values[i] = given.get(i, Poly.var(gamma_name(i)))
    for i, r in dependent.items():
        expr = Poly()
        for c, idx in enumerate(order):
            if idx != i and grid[r][c]:
                expr = expr - values[idx] * grid[r][c]
        if i in given and given[i] != expr:
            raise PreconditionError(
                f"{gamma_name(i)} is determined as {expr} by the free gammas, not {given[i]}",
                {"gamma": gamma_name(i), "computed": str(expr), "given": str(given[i])},
            )
        values[i] = expr
    logger.debug(f"[CATALOG] family ({n},{m}): dependent gammas {sorted(dependent)}")
    return values


def _parse_gammas(n: int, m: int, gammas: Optional[Mapping[Union[str, int], ScalarLike]]) -> Dict[int, Poly]:
    count = _gamma_count(n, m)
    out: Dict[int, Poly] = {}
    for key, value in (gammas or {}).items():
        text = str(key)
        index = int(text[len("gamma"):]) if text.startswith("gamma") and text[len("gamma"):].isdigit() else (
            int(text) if text.isdigit() else 0
        )
        if not 1 <= index <= count:
            raise ArgumentRangeError(
                f"{key!r} is not a gamma of the ({n},{m}) family (gamma1..gamma{count})",
                {"gamma": str(key), "count": count},
            )
        out[index] = Poly.coerce(value)
    return out


def _family_products(n: int, m: int, g: Mapping[int, Poly]) -> List[ProductSpec]:
    products = _chains(n, m) + [("X1", f"Y{j}", {f"Y{j + 1}": -1}) for j in range(1, m)]
    if n >= 2 and m >= 1:
        products.append(("Y1", "Y1", {"X2": g[1]}))
    top = n - 1 if n <= m else m
    for i in range(3, top + 1):
        products.append((f"Y{i}", "Y1", {f"X{i + 1}": g[i]}))
    if n <= m:
        pairs = [(i, j) for i in range(1, n - 1) for j in range(2, n - i + 1)]
    else:
        pairs = [(i, j) for j in range(2, m + 1) for i in range(1, min(m, n - j) + 1)]
    for i, j in pairs:
        bound = j - 1 if n <= m else min(j - 1, m - i)
        total = Poly()
        for s in range(bound + 1):
            total = total + g[i + s] * ((-1) ** s * comb(j - 1, s))
        products.append((f"Y{i}", f"Y{j}", {f"X{i + j}": total}))
    return products


def leibniz_family(
    n: int, m: int, gammas: Optional[Mapping[Union[str, int], ScalarLike]] = None
) -> SuperAlgebra:
    """The binomial gamma family of maximal s-nilindex laws.

    Free gammas default to parameters gamma<i>; dependent ones (gamma2 = 0,
    the even-index recurrence, and for n > m the extra relation) are computed.
    Supplying a dependent gamma is allowed only when it agrees.
    """
    _need(n >= 2 and m >= 1, f"the gamma family needs n >= 2 and m >= 1, got ({n},{m})", n=n, m=m)
    values = _solve_gammas(n, m, _parse_gammas(n, m, gammas))
    case = 1 if n <= m else 2
    return _leibniz(f"gamma-family^{{{n},{m}}} (case {case})", n, m, _family_products(n, m, values))


def family_constraints(n: int, m: int, case: Optional[int] = None):
    """Identity constraints on the family with every gamma free (no relations imposed)."""
    from .classify import extract_constraints

    actual = 1 if n <= m else 2
    if case is not None and case != actual:
        raise ArgumentRangeError(f"(n,m)=({n},{m}) belongs to case {actual}, not case {case}")
    g = {i: Poly.var(gamma_name(i)) for i in range(1, _gamma_count(n, m) + 1)}
    alg = _leibniz(f"gamma-family^{{{n},{m}}} (free)", n, m, _family_products(n, m, g))
    return extract_constraints(alg)


_register(_Recipe(
    "family", LEIBNIZ, FAMILY, "binomial gamma family", "non-NG naturally graded leibniz laws, n >= 3, m >= 4",
    ("n", "m", "gammas"), leibniz_family, lambda n, m, gammas=None: (n, m),
    lambda cap: ({"n": n, "m": m} for n in range(3, min(cap, 7) + 1) for m in range(4, min(cap, 7) + 1)
                 if n <= m + 1),
    defaults={"gammas": None}, naturally_graded=True,
    valid_range="n <= m (case 1) and n = m + 1 (case 2); other n > m degenerate or fail",
))


# ============================================================================
# PUBLIC API
# ============================================================================

def ids() -> List[str]:
    return sorted(_RECIPES)


def recipe_params(entry_id: str) -> Tuple[str, ...]:
    return _recipe(entry_id).params


def _recipe(entry_id: str) -> _Recipe:
    recipe = _RECIPES.get(entry_id)
    if recipe is None:
        raise UnknownEntryError(f"unknown catalog id {entry_id!r}", {"known": ids()})
    return recipe


def _arguments(recipe: _Recipe, args: Mapping[str, Any]) -> Dict[str, Any]:
    unknown = sorted(set(args) - set(recipe.params))
    if unknown:
        raise ArgumentRangeError(
            f"{recipe.id} takes {list(recipe.params) or 'no arguments'}, got {unknown}",
            {"id": recipe.id, "unknown": unknown},
        )
    full = {k: v for k, v in recipe.defaults.items()}
    full.update({k: v for k, v in args.items() if v is not None or k not in full})
    missing = [p for p in recipe.params if p not in full]
    if missing:
        raise ArgumentRangeError(f"{recipe.id} needs {missing}", {"id": recipe.id, "missing": missing})
    return full


def make(entry_id: str, **args) -> Built:
    recipe = _recipe(entry_id)
    built = recipe.build(**_arguments(recipe, args))
    logger.debug(f"[CATALOG] built {entry_id} {args} -> {built.name}")
    return built


def entry(entry_id: str, **args) -> CatalogEntry:
    recipe = _recipe(entry_id)
    full = _arguments(recipe, args)
    found = recipe.erratum(**full) if recipe.erratum else None
    return CatalogEntry(
        id=recipe.id,
        kind=recipe.kind,
        role=recipe.role,
        title=recipe.title,
        source=recipe.source,
        dims=recipe.dims(**full),
        args=dict(full),
        naturally_graded=recipe.naturally_graded,
        valid_range=recipe.valid_range,
        erratum=found[0] if found else None,
        erratum_triple=found[1] if found else None,
    )


def list_entries(
    kind: Optional[str] = None,
    n: Optional[int] = None,
    m: Optional[int] = None,
    role: Optional[str] = LAW,
    cap: int = SWEEP_MAX,
) -> List[CatalogEntry]:
    """Concrete entries, sorted by (kind, dims, id, args); role=None lists every role."""
    if role is not None and role not in ROLES:
        raise ArgumentRangeError(f"unknown role {role!r}", {"roles": list(ROLES)})
    out = []
    for recipe in _RECIPES.values():
        if (kind and recipe.kind != kind) or (role and recipe.role != role):
            continue
        for args in recipe.sweep(cap):
            record = entry(recipe.id, **args)
            if (n is not None and record.dims[0] != n) or (m is not None and record.dims[1] != m):
                continue
            out.append(record)
    out.sort(key=lambda e: (e.kind, e.dims, e.id, sorted((k, str(v)) for k, v in e.args.items())))
    return out


def find_law(alg: SuperAlgebra, candidates: Optional[Sequence[CatalogEntry]] = None) -> Optional[CatalogEntry]:
    """The catalog law whose stored table equals alg's exactly, if any."""
    pool = candidates if candidates is not None else list_entries(kind=alg.kind, n=None, m=None)
    for record in pool:
        built = record.build()
        if isinstance(built, SuperAlgebra) and built.basis == alg.basis and built.table == alg.table:
            return record
    return None
