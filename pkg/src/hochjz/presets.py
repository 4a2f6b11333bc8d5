"""Preset algebras and the named scenarios used by the CLI and the test corpus."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, character_module, regular_module,
    subalgebra_inclusion, validate_algebra,
)
from .linalg import QQ, Field, Matrix, Subspace


def _check(a: Algebra) -> Algebra:
    rep = validate_algebra(a)
    if not rep:
        raise ValueError(f"preset {a.name} failed validation: {rep.message}")
    return a


def ground_field(field: Field = QQ) -> Algebra:
    return _check(Algebra(field, [[{0: 1}]], {0: 1}, ["1"], "k"))


def truncated_polynomial(n: int, field: Field = QQ) -> Algebra:
    """k[x]/(x^n) with basis 1, x, .., x^{n-1}."""
    if n < 1:
        raise ValueError("truncated_polynomial needs n >= 1")
    mult = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    labels = ["1"] + [("x" if i == 1 else f"x^{i}") for i in range(1, n)]
    return _check(Algebra(field, mult, {0: 1}, labels, f"k[x]/(x^{n})"))


def dual_numbers(field: Field = QQ) -> Algebra:
    a = truncated_polynomial(2, field)
    a.name = "k[x]/(x^2)"
    return a


def product(m: int, field: Field = QQ) -> Algebra:
    """k x .. x k (m factors) with orthogonal idempotents."""
    if m < 1:
        raise ValueError("product needs m >= 1")
    mult = [[({i: 1} if i == j else {}) for j in range(m)] for i in range(m)]
    name = "k" if m == 1 else "x".join(["k"] * m)
    return _check(Algebra(field, mult, {i: 1 for i in range(m)}, [f"f{i + 1}" for i in range(m)], name))


@dataclass
class UpperTriangular:
    algebra: Algebra
    diagonal: AlgebraMorphism
    strict_upper: Ideal


def upper_triangular(n: int, field: Field = QQ) -> UpperTriangular:
    """T_n with basis e_ij (i <= j), in row-major order."""
    if n < 1:
        raise ValueError("upper_triangular needs n >= 1")
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {pr: k for k, pr in enumerate(pairs)}
    mult = [[({pos[(i, l)]: 1} if j == k else {}) for (k, l) in pairs] for (i, j) in pairs]
    unit = {pos[(i, i)]: 1 for i in range(n)}
    labels = [f"e{i + 1}{j + 1}" for i, j in pairs]
    a = _check(Algebra(field, mult, unit, labels, f"T_{n}"))
    diag = Subspace.coordinate(field, a.dim, [pos[(i, i)] for i in range(n)])
    upper = Subspace.coordinate(field, a.dim, [pos[pr] for pr in pairs if pr[0] < pr[1]])
    return UpperTriangular(a, subalgebra_inclusion(a, diag, "D"), Ideal(a, upper))


@dataclass
class MonoidAlgebra:
    algebra: Algebra
    inclusion: AlgebraMorphism    # B -> B[G], b |-> b (x) identity


def monoid_algebra(table: Sequence[Sequence[int]], base: Algebra | None = None,
                   names: Sequence[str] | None = None, name: str = "") -> MonoidAlgebra:
    """B[G] for a finite monoid G given by its multiplication table."""
    g = len(table)
    if g < 1 or any(len(row) != g for row in table):
        raise ValueError("monoid table must be a non-empty square array")
    for row in table:
        for x in row:
            if not (isinstance(x, int) and 0 <= x < g):
                raise ValueError("monoid table entries must be element indices")
    for x in range(g):
        for y in range(g):
            for z in range(g):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise ValueError(f"monoid table is not associative at {(x, y, z)}")
    ident = [e for e in range(g) if all(table[e][x] == x and table[x][e] == x for x in range(g))]
    if not ident:
        raise ValueError("monoid table has no identity element")
    e = ident[0]
    base = base or ground_field()
    f = base.field
    names = list(names) if names else ["1" if x == e else f"g{x}" for x in range(g)]
    d = base.dim
    p = f.characteristic
    mult = []
    for i in range(d):
        for x in range(g):
            row = []
            for j in range(d):
                for y in range(g):
                    z = table[x][y]
                    out = {}
                    for k, c in base.mult[i][j].items():
                        out[k * g + z] = c % p if p else c
                    row.append(out)
            mult.append(row)
    unit = {k * g + e: c for k, c in base.unit.items()}
    if base.dim == 1:
        labels = list(names)
    else:
        labels = [f"{bl}*{gn}" if gn != "1" else bl for bl in base.labels for gn in names]
    a = _check(Algebra(f, mult, unit, labels, name or f"{base.name}[G]"))
    incl = Matrix(f, a.dim, d, [{k * g + e: 1} for k in range(d)])
    return MonoidAlgebra(a, AlgebraMorphism(base, a, incl))


def cyclic_group_table(n: int) -> list:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


PRESETS = {
    "ground_field": "the ground field k",
    "truncated_polynomial": "k[x]/(x^n), n >= 1 (finite stand-in for k[x])",
    "upper_triangular": "upper triangular n x n matrices T_n with diagonal subalgebra and strictly upper ideal",
    "product": "k x .. x k",
    "monoid_algebra": "B[G] for a finite monoid G (finite stand-in for B[x] and group algebras)",
    "dual_numbers": "k[x]/(x^2)",
}


def build_preset(name: str, field: Field = QQ, **params):
    """Build a preset algebra; T_n and monoid algebras also return their extras."""
    if name == "ground_field":
        return ground_field(field)
    if name == "truncated_polynomial":
        return truncated_polynomial(params.get("n", 2), field)
    if name == "upper_triangular":
        return upper_triangular(params.get("n", 2), field)
    if name == "product":
        return product(params.get("m", 2), field)
    if name == "monoid_algebra":
        base = params.get("base") or ground_field(field)
        return monoid_algebra(params.get("table", cyclic_group_table(2)), base)
    if name == "dual_numbers":
        return dual_numbers(field)
    raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")


# ---------------------------------------------------------------- scenarios

@dataclass
class Scenario:
    """A named instance: an algebra map plus the modules the checks need."""
    name: str
    description: str
    algebra: Algebra
    morphism: AlgebraMorphism | None = None
    ideal: Ideal | None = None
    right_modules: dict = dc_field(default_factory=dict)
    left_modules: dict = dc_field(default_factory=dict)
    bimodule: Module | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def kind(self) -> str:
        return self.morphism.kind if self.morphism is not None else "none"

    def tor_pairs(self) -> list:
        return [(x, y) for x in self.right_modules.values() for y in self.left_modules.values()]


def _simples(a: Algebra, values: dict) -> tuple:
    right = {k: character_module(a, v, "right", name=f"S{k}") for k, v in values.items()}
    left = {k: character_module(a, v, "left", name=f"S{k}") for k, v in values.items()}
    return right, left


def _dual_numbers_scenario(field):
    a = dual_numbers(field)
    r, l = _simples(a, {"k": [1, 0]})
    return Scenario("dual-numbers", "k[x]/(x^2) over k", a, _unit_inclusion(a), None, r, l,
                    regular_module(a, "bi"))


def _unit_inclusion(a: Algebra) -> AlgebraMorphism:
    k = ground_field(a.field)
    return AlgebraMorphism(k, a, Matrix(a.field, a.dim, 1, [dict(a.unit)]))


def _t2_diag(field):
    t = upper_triangular(2, field)
    a = t.algebra
    r, l = _simples(a, {"1": [1, 0, 0], "2": [0, 0, 1]})
    return Scenario("t2-diag", "diagonal D = k x k inside T_2", a, t.diagonal, t.strict_upper, r, l,
                    regular_module(a, "bi"))


def _kxk_proj_k(field):
    a = product(2, field)
    k = ground_field(field)
    phi = AlgebraMorphism(a, k, Matrix(field, 1, 2, [{}, {0: 1}]))
    from .algebra import ideal_from_vectors
    i = ideal_from_vectors(a, [[1, 0]])
    r, l = _simples(k, {"k": [1]})
    return Scenario("kxk-proj-k", "projection k x k -> k onto the second factor, kernel k x 0",
                    k, phi, i, r, l, regular_module(k, "bi"))


def _kxk_ideal(field):
    a = product(2, field)
    from .algebra import ideal_from_vectors
    i = ideal_from_vectors(a, [[1, 0]])
    r, l = _simples(a, {"2": [0, 1]})
    return Scenario("kxk-ideal", "B = k x k, I = k x 0, X = Y = k through the second projection",
                    a, None, i, r, l, None)


def _t2_sqzero(field):
    t = upper_triangular(2, field)
    a = t.algebra
    r, l = _simples(a, {"1": [1, 0, 0], "2": [0, 0, 1]})
    return Scenario("t2-sqzero", "B = T_2 with the square-zero ideal span{e12}", a, None, t.strict_upper,
                    r, l, None)


def _k_kxk(field):
    a = product(2, field)
    r, l = _simples(a, {"1": [1, 0], "2": [0, 1]})
    return Scenario("k-kxk", "k inside k x k", a, _unit_inclusion(a), None, r, l, regular_module(a, "bi"))


def _dual_in_t2(field):
    t = upper_triangular(2, field)
    a = t.algebra
    span = Subspace.from_dense(field, [[1, 0, 1], [0, 1, 0]])
    incl = subalgebra_inclusion(a, span, "k[e12]")
    r, l = _simples(a, {"1": [1, 0, 0], "2": [0, 0, 1]})
    return Scenario("dual-in-t2", "span{1, e12} inside T_2", a, incl, None, r, l, regular_module(a, "bi"))


def _t2_in_t2z2(field):
    t = upper_triangular(2, field)
    ma = monoid_algebra(cyclic_group_table(2), t.algebra, name="T_2[Z/2]")
    a = ma.algebra
    # simple modules of T_2[Z/2]: e_ii acts as in the simple of T_2, g acts by 1
    vals = {"1+": [1, 1, 0, 0, 0, 0], "2+": [0, 0, 0, 0, 1, 1]}
    r, l = _simples(a, vals)
    return Scenario("t2-in-t2z2", "T_2 inside the group algebra T_2[Z/2]", a, ma.inclusion, None, r, l,
                    regular_module(a, "bi"))


def _t2_proj_diag(field):
    k3 = product(3, field)
    t = upper_triangular(2, field)
    a = t.algebra
    # f1 -> e11, f2 -> e22, f3 -> 0; the kernel k f3 is unital, the image is D
    phi = AlgebraMorphism(k3, a, Matrix(field, a.dim, 3, [{0: 1}, {2: 1}, {}]))
    r, l = _simples(a, {"1": [1, 0, 0], "2": [0, 0, 1]})
    return Scenario("t2-proj-diag", "k x k x k -> T_2, (x, y, z) |-> diag(x, y)", a, phi, None, r, l,
                    regular_module(a, "bi"))


SCENARIOS: dict[str, Callable] = {
    "dual-numbers": _dual_numbers_scenario,
    "t2-diag": _t2_diag,
    "kxk-proj-k": _kxk_proj_k,
    "kxk-ideal": _kxk_ideal,
    "t2-sqzero": _t2_sqzero,
    "k-kxk": _k_kxk,
    "dual-in-t2": _dual_in_t2,
    "t2-in-t2z2": _t2_in_t2z2,
    "t2-proj-diag": _t2_proj_diag,
}


def scenario(name: str, field: Field = QQ) -> Scenario:
    if name not in SCENARIOS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(SCENARIOS)}")
    return SCENARIOS[name](field)


def corpus(field: Field = QQ) -> list:
    """(algebra, right modules, left modules) triples used for corpus-wide properties."""
    out = []
    k = ground_field(field)
    out.append((k, *_simples(k, {"k": [1]})))
    d = dual_numbers(field)
    out.append((d, *_simples(d, {"k": [1, 0]})))
    kk = product(2, field)
    out.append((kk, *_simples(kk, {"1": [1, 0], "2": [0, 1]})))
    t = upper_triangular(2, field).algebra
    out.append((t, *_simples(t, {"1": [1, 0, 0], "2": [0, 0, 1]})))
    kz = monoid_algebra(cyclic_group_table(2), ground_field(field), name="k[Z/2]").algebra
    vals = {"+": [1, 1]} if field.characteristic == 2 else {"+": [1, 1], "-": [1, -1]}
    out.append((kz, *_simples(kz, vals)))
    return out
