"""Finite-dimensional associative algebras, morphisms, ideals and modules.

An algebra is given by structure constants: ``mult[i][j]`` is the sparse
vector e_i * e_j.  Modules carry one action matrix per algebra basis
element; ``left[i]`` is v -> e_i v and ``right[i]`` is v -> v e_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import (
    Field, Matrix, Subspace, Solver, _axpy, coordinate_quotient, kernel_basis, sparse,
)


class SpecError(ValueError):
    """Malformed or invalid input; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _vec_label(v: dict, labels: Sequence[str], field: Field) -> str:
    parts = []
    for k in sorted(v):
        c = field.to_json(v[k])
        if c == 1:
            parts.append(labels[k])
        elif c == -1:
            parts.append(f"-{labels[k]}")
        else:
            parts.append(f"{c}*{labels[k]}")
    return "+".join(parts).replace("+-", "-") if parts else "0"


class Algebra:
    """A finite-dimensional associative algebra, unital unless ``unit`` is None."""

    def __init__(self, field: Field, mult: Sequence[Sequence[dict]], unit: dict | None,
                 labels: Sequence[str] | None = None, name: str = ""):
        d = len(mult)
        self.field = field
        self.dim = d
        self.mult = tuple(tuple(dict(mult[i][j]) for j in range(d)) for i in range(d))
        self.unit = dict(unit) if unit is not None else None
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(d))
        self.name = name
        self._left = None
        self._right = None

    @classmethod
    def from_structure_constants(cls, field: Field, c, unit: Sequence | None,
                                 labels: Sequence[str] | None = None, name: str = "") -> "Algebra":
        d = len(c)
        mult = [[sparse(c[i][j], field) for j in range(d)] for i in range(d)]
        u = sparse(unit, field) if unit is not None else None
        return cls(field, mult, u, labels, name)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field!r})"

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    @property
    def structure_constants(self) -> list:
        d = self.dim
        return [[[self.mult[i][j].get(k, 0) for k in range(d)] for j in range(d)] for i in range(d)]

    def product(self, u: dict, v: dict) -> dict:
        p = self.field.characteristic
        out: dict = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                _axpy(out, a * b, row[j], p)
        return out

    def left_matrices(self) -> tuple:
        """L_i: x -> e_i x."""
        if self._left is None:
            d = self.dim
            self._left = tuple(Matrix(self.field, d, d, [self.mult[i][j] for j in range(d)])
                               for i in range(d))
        return self._left

    def right_matrices(self) -> tuple:
        """R_i: x -> x e_i."""
        if self._right is None:
            d = self.dim
            self._right = tuple(Matrix(self.field, d, d, [self.mult[j][i] for j in range(d)])
                                for i in range(d))
        return self._right

    def opposite(self) -> "Algebra":
        d = self.dim
        mult = [[self.mult[j][i] for j in range(d)] for i in range(d)]
        return Algebra(self.field, mult, self.unit, self.labels, f"{self.name}^op")

    def vector_label(self, v: dict) -> str:
        return _vec_label(v, self.labels, self.field)

    def to_json(self) -> dict:
        f = self.field
        d = self.dim
        return {
            "field": {"char": f.characteristic},
            "basis": list(self.labels),
            "unit": [f.to_json((self.unit or {}).get(k, 0)) for k in range(d)],
            "table": [[[f.to_json(self.mult[i][j].get(k, 0)) for k in range(d)]
                       for j in range(d)] for i in range(d)],
        }


@dataclass
class ValidationReport:
    ok: bool
    message: str = ""
    triple: tuple | None = None
    kind: str = ""

    def __bool__(self):
        return self.ok


def validate_algebra(a: Algebra) -> ValidationReport:
    """Exhaustive associativity and unit check; reports the first bad triple."""
    d = a.dim
    for i in range(d):
        for j in range(d):
            ij = a.mult[i][j]
            for k in range(d):
                lhs = a.product(ij, {k: 1})
                rhs = a.product({i: 1}, a.mult[j][k])
                if lhs != rhs:
                    lab = a.labels
                    return ValidationReport(
                        False, f"not associative at ({i},{j},{k}): "
                               f"({lab[i]}*{lab[j]})*{lab[k]} != {lab[i]}*({lab[j]}*{lab[k]})",
                        (i, j, k), "associativity")
    if a.unit is not None:
        for i in range(d):
            e = {i: 1}
            if a.product(a.unit, e) != e or a.product(e, a.unit) != e:
                return ValidationReport(False, f"unit does not act as identity on {a.labels[i]}",
                                        (i,), "unit")
    return ValidationReport(True)


def _lin_comb(mats: Sequence[Matrix], v: dict, field: Field, n: int) -> Matrix:
    """Sum_k v[k] * mats[k]."""
    p = field.characteristic
    cols = []
    for j in range(n):
        col: dict = {}
        for k, c in v.items():
            _axpy(col, c, mats[k].cols[j], p)
        cols.append(col)
    return Matrix(field, n, n, cols)


# ---------------------------------------------------------------- morphisms

class AlgebraMorphism:
    """A unital algebra map given by its matrix (target coords x source coords)."""

    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix, check: bool = True):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"morphism matrix has shape {matrix.shape}, "
                             f"expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self._rank = None
        if check:
            msg = self.violation()
            if msg:
                raise ValueError(msg)

    def __call__(self, v: dict) -> dict:
        return self.matrix.apply(v)

    def violation(self) -> str:
        s, t = self.source, self.target
        if s.unit is not None and t.unit is not None and self(s.unit) != t.unit:
            return "morphism does not preserve the unit"
        for i in range(s.dim):
            for j in range(s.dim):
                if self(s.mult[i][j]) != t.product(self({i: 1}), self({j: 1})):
                    return (f"morphism does not preserve the product "
                            f"{s.labels[i]}*{s.labels[j]}")
        return ""

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = self.matrix.rank()
        return self._rank

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    @property
    def kind(self) -> str:
        if self.is_injective:
            return "inclusion"
        if self.is_surjective:
            return "epimorphism"
        return "general"

    def image(self) -> Subspace:
        return Subspace.span(self.target.field, self.target.dim, self.matrix.cols)

    def kernel(self) -> "Ideal":
        return Ideal(self.source, kernel_basis(self.matrix))

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self after other."""
        return AlgebraMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)


def identity_morphism(a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, Matrix.identity(a.field, a.dim), check=False)


# ---------------------------------------------------------------- ideals

class Ideal:
    """A two-sided ideal; carries its own (possibly non-unital) algebra."""

    def __init__(self, ambient: Algebra, space: Subspace, check: bool = True):
        self.ambient = ambient
        self.space = space
        if check:
            for v in space.basis:
                for i in range(ambient.dim):
                    e = {i: 1}
                    if not space.contains(ambient.product(e, v)) or \
                            not space.contains(ambient.product(v, e)):
                        raise ValueError("span is not a two-sided ideal")
        self._alg = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def as_algebra(self) -> Algebra:
        """The ideal with the multiplication restricted from the ambient."""
        if self._alg is None:
            a = self.ambient
            basis = self.space.basis
            mult = [[self.space.coordinates(a.product(u, v)) for v in basis] for u in basis]
            labels = [a.vector_label(u) for u in basis]
            self._alg = Algebra(a.field, mult, None, labels, f"ideal in {a.name}")
        return self._alg

    def annihilates(self, m: "Module") -> bool:
        """True iff every element of the ideal acts by zero on m."""
        for v in self.space.basis:
            for mats in (m.left, m.right):
                if mats is not None and not _lin_comb(mats, v, m.algebra.field, m.dim).is_zero():
                    return False
        return True


def ideal_from_vectors(a: Algebra, vectors: Sequence) -> Ideal:
    return Ideal(a, Subspace.from_dense(a.field, vectors, a.dim) if vectors else Subspace.zero(a.field, a.dim))


def whole_ideal(a: Algebra) -> Ideal:
    return Ideal(a, Subspace.full(a.field, a.dim), check=False)


def zero_ideal(a: Algebra) -> Ideal:
    return Ideal(a, Subspace.zero(a.field, a.dim), check=False)


def ideal_power(i: Ideal, other: Ideal | None = None) -> Ideal:
    """Span of products x y with x in i, y in other (default i)."""
    a = i.ambient
    other = other or i
    prods = [a.product(u, v) for u in i.space.basis for v in other.space.basis]
    return Ideal(a, Subspace.span(a.field, a.dim, prods), check=False)


def is_nilpotent(i: Ideal) -> bool:
    power = i
    for _ in range(i.ambient.dim + 1):
        if power.dim == 0:
            return True
        nxt = ideal_power(power, i)
        if nxt.dim == power.dim:
            return False
        power = nxt
    return power.dim == 0


# ---------------------------------------------------------------- modules

PARITIES = ("left", "right", "bi")


class Module:
    """A finite-dimensional module; ``left``/``right`` are tuples of Matrix."""

    def __init__(self, algebra: Algebra, parity: str, dim: int,
                 left: Sequence[Matrix] | None = None, right: Sequence[Matrix] | None = None,
                 name: str = "", labels: Sequence[str] | None = None):
        if parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")
        if parity in ("left", "bi") and left is None:
            raise ValueError("left action missing")
        if parity in ("right", "bi") and right is None:
            raise ValueError("right action missing")
        self.algebra = algebra
        self.parity = parity
        self.dim = dim
        self.left = tuple(left) if parity in ("left", "bi") else None
        self.right = tuple(right) if parity in ("right", "bi") else None
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"v{i}" for i in range(dim))

    def __repr__(self):
        return f"Module({self.name or '?'}, {self.parity}, dim={self.dim})"

    @property
    def field(self) -> Field:
        return self.algebra.field

    def act_left(self, a: dict) -> Matrix:
        return _lin_comb(self.left, a, self.field, self.dim)

    def act_right(self, a: dict) -> Matrix:
        return _lin_comb(self.right, a, self.field, self.dim)

    def as_left(self) -> "Module":
        return Module(self.algebra, "left", self.dim, left=self.left, name=self.name, labels=self.labels)

    def as_right(self) -> "Module":
        return Module(self.algebra, "right", self.dim, right=self.right, name=self.name, labels=self.labels)

    def to_json(self) -> dict:
        f = self.field
        out = {"parity": self.parity, "dim": self.dim}
        if self.left is not None:
            out["left_action"] = [[[f.to_json(x) for x in row] for row in m.to_rows()] for m in self.left]
        if self.right is not None:
            out["right_action"] = [[[f.to_json(x) for x in row] for row in m.to_rows()] for m in self.right]
        return out


def validate_module(m: Module) -> ValidationReport:
    a = m.algebra
    d = a.dim
    for side, mats in (("left", m.left), ("right", m.right)):
        if mats is None:
            continue
        if len(mats) != d:
            return ValidationReport(False, f"{side} action needs {d} matrices", None, "shape")
        for i, x in enumerate(mats):
            if x.shape != (m.dim, m.dim):
                return ValidationReport(False, f"{side}_action[{i}] has shape {x.shape}", (i,), "shape")
        if a.unit is not None:
            u = _lin_comb(mats, a.unit, a.field, m.dim)
            if u != Matrix.identity(a.field, m.dim):
                return ValidationReport(False, f"unit does not act as identity on the {side}", None, "unit")
        for i in range(d):
            for j in range(d):
                prod = _lin_comb(mats, a.mult[i][j], a.field, m.dim)
                comp = mats[i] @ mats[j] if side == "left" else mats[j] @ mats[i]
                if prod != comp:
                    return ValidationReport(
                        False, f"{side} action not compatible with {a.labels[i]}*{a.labels[j]}",
                        (i, j), "associativity")
    if m.left is not None and m.right is not None:
        for i in range(d):
            for j in range(d):
                if m.left[i] @ m.right[j] != m.right[j] @ m.left[i]:
                    return ValidationReport(
                        False, f"left {a.labels[i]} and right {a.labels[j]} actions do not commute",
                        (i, j), "bimodule")
    return ValidationReport(True)


def regular_module(a: Algebra, parity: str = "bi") -> Module:
    left = a.left_matrices() if parity in ("left", "bi") else None
    right = a.right_matrices() if parity in ("right", "bi") else None
    return Module(a, parity, a.dim, left, right, name=f"{a.name or 'A'} regular", labels=a.labels)


def character_module(a: Algebra, values: Sequence, parity: str = "left", name: str = "") -> Module:
    """One-dimensional module where e_i acts by the scalar values[i]."""
    f = a.field
    mats = [Matrix.from_rows(f, [[v]]) for v in values]
    m = Module(a, parity, 1, mats if parity in ("left", "bi") else None,
               mats if parity in ("right", "bi") else None, name=name)
    rep = validate_module(m)
    if not rep:
        raise ValueError(f"not a character: {rep.message}")
    return m


def restrict_module(m: Module, phi: AlgebraMorphism) -> Module:
    """Pull back along phi: B -> A (e_i of B acts as phi(e_i))."""
    if phi.target is not m.algebra and phi.target.dim != m.algebra.dim:
        raise ValueError("morphism target is not the module's algebra")
    src = phi.source
    left = [_lin_comb(m.left, phi({i: 1}), m.field, m.dim) for i in range(src.dim)] if m.left else None
    right = [_lin_comb(m.right, phi({i: 1}), m.field, m.dim) for i in range(src.dim)] if m.right else None
    return Module(src, m.parity, m.dim, left, right, name=m.name, labels=m.labels)


def dual_module(m: Module) -> Module:
    """Hom_k(m, k); left and right swap, action matrices transpose."""
    left = [x.T for x in m.right] if m.right is not None else None
    right = [x.T for x in m.left] if m.left is not None else None
    parity = {"left": "right", "right": "left", "bi": "bi"}[m.parity]
    return Module(m.algebra, parity, m.dim, left, right, name=f"{m.name}*",
                  labels=[f"{l}*" for l in m.labels])


def quotient_module(m: Module, sub: Subspace) -> Module:
    """m / sub for an invariant subspace, on the non-pivot coordinates."""
    keep, proj = coordinate_quotient(sub)

    def induce(mats):
        if mats is None:
            return None
        out = []
        for x in mats:
            for v in sub.basis:
                if not sub.contains(x.apply(v)):
                    raise ValueError("subspace is not a submodule")
            out.append(Matrix(m.field, len(keep), len(keep), [proj.apply(x.cols[j]) for j in keep]))
        return out

    return Module(m.algebra, m.parity, len(keep), induce(m.left), induce(m.right),
                  name=f"{m.name}/sub", labels=[m.labels[j] for j in keep])


# ---------------------------------------------------------------- constructions

def subalgebra_inclusion(a: Algebra, span: Subspace, name: str = "") -> AlgebraMorphism:
    """Algebra structure on a span containing 1 and closed under products."""
    if a.unit is None or not span.contains(a.unit):
        raise ValueError("span does not contain the unit")
    basis = span.basis
    mult = []
    for u in basis:
        row = []
        for v in basis:
            w = a.product(u, v)
            if not span.contains(w):
                raise ValueError(f"span is not closed under multiplication: "
                                 f"({a.vector_label(u)})*({a.vector_label(v)})")
            row.append(span.coordinates(w))
        mult.append(row)
    sub = Algebra(a.field, mult, span.coordinates(a.unit), [a.vector_label(u) for u in basis],
                  name or f"sub({a.name})")
    return AlgebraMorphism(sub, a, Matrix(a.field, a.dim, len(basis), basis), check=False)


def quotient_algebra(a: Algebra, i: Ideal) -> tuple:
    """(A/I, projection), with basis the non-pivot coordinates of I."""
    if i.ambient is not a and i.ambient.dim != a.dim:
        raise ValueError("ideal lives in a different algebra")
    Ideal(a, i.space)  # re-check the ideal property
    keep, proj = coordinate_quotient(i.space)
    mult = [[proj.apply(a.mult[x][y]) for y in keep] for x in keep]
    unit = proj.apply(a.unit) if a.unit is not None else None
    q = Algebra(a.field, mult, unit, [a.labels[k] for k in keep], f"{a.name}/I")
    return q, AlgebraMorphism(a, q, proj, check=False)


def quotient_bimodule(incl: AlgebraMorphism) -> Module:
    """A/B as a B-bimodule for an inclusion B -> A."""
    if not incl.is_injective:
        raise ValueError("quotient_bimodule needs an inclusion")
    a, b = incl.target, incl.source
    keep, proj = coordinate_quotient(incl.image())
    n = len(keep)
    left, right = [], []
    for i in range(b.dim):
        phi_i = incl({i: 1})
        left.append(Matrix(a.field, n, n, [proj.apply(a.product(phi_i, {k: 1})) for k in keep]))
        right.append(Matrix(a.field, n, n, [proj.apply(a.product({k: 1}, phi_i)) for k in keep]))
    return Module(b, "bi", n, left, right, name=f"{a.name}/{b.name}",
                  labels=[a.labels[k] for k in keep])


def enveloping_algebra(a: Algebra) -> Algebra:
    """A (x) A^op with basis e_i(x)e_j at index i*d + j."""
    d = a.dim
    p = a.field.characteristic
    mult = [[None] * (d * d) for _ in range(d * d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    left, right = a.mult[i][k], a.mult[l][j]
                    out: dict = {}
                    for x, cx in left.items():
                        for y, cy in right.items():
                            _axpy(out, cx * cy, {x * d + y: 1}, p)
                    mult[i * d + j][k * d + l] = out
    unit = None
    if a.unit is not None:
        unit = {}
        for x, cx in a.unit.items():
            for y, cy in a.unit.items():
                _axpy(unit, cx * cy, {x * d + y: 1}, p)
    labels = [f"{a.labels[i]}|{a.labels[j]}" for i in range(d) for j in range(d)]
    return Algebra(a.field, mult, unit, labels, f"{a.name}^e")


def envelope_left(m: Module, env: Algebra | None = None) -> Module:
    """Bimodule m as a left A^e-module: (a(x)a') v = a v a'."""
    if m.parity != "bi":
        raise ValueError("need a bimodule")
    a = m.algebra
    env = env or enveloping_algebra(a)
    d = a.dim
    mats = [m.left[i] @ m.right[j] for i in range(d) for j in range(d)]
    return Module(env, "left", m.dim, left=mats, name=f"{m.name} as left A^e", labels=m.labels)


def envelope_right(m: Module, env: Algebra | None = None) -> Module:
    """Bimodule m as a right A^e-module: v (a(x)a') = a' v a."""
    if m.parity != "bi":
        raise ValueError("need a bimodule")
    a = m.algebra
    env = env or enveloping_algebra(a)
    d = a.dim
    mats = [m.left[j] @ m.right[i] for i in range(d) for j in range(d)]
    return Module(env, "right", m.dim, right=mats, name=f"{m.name} as right A^e", labels=m.labels)


@dataclass
class TensorProduct:
    """x (x)_B y as the cokernel of x(x)B(x)y -> x(x)y."""
    dim: int
    basis: list           # kept (xi, eta) index pairs
    projection: Matrix    # dim x (dim x * dim y)
    relations: Subspace


def tensor_relations(b: Algebra, x: Module, y: Module) -> Subspace:
    p = b.field.characteristic
    dy = y.dim
    rels = []
    for xi in range(x.dim):
        for beta in range(b.dim):
            xb = x.right[beta].cols[xi]
            for eta in range(dy):
                r: dict = {}
                for k, c in xb.items():
                    _axpy(r, c, {k * dy + eta: 1}, p)
                for k, c in y.left[beta].cols[eta].items():
                    _axpy(r, -c, {xi * dy + k: 1}, p)
                if r:
                    rels.append(r)
    return Subspace.span(b.field, x.dim * dy, rels)


def tensor_over(b: Algebra, x: Module, y: Module) -> TensorProduct:
    if x.right is None or y.left is None:
        raise ValueError("tensor_over needs a right module and a left module")
    if x.algebra.dim != b.dim or y.algebra.dim != b.dim:
        raise ValueError("modules are not over the given algebra")
    rel = tensor_relations(b, x, y)
    keep, proj = coordinate_quotient(rel)
    return TensorProduct(len(keep), [divmod(k, y.dim) for k in keep], proj, rel)


# ---------------------------------------------------------------- radical and flatness

class RadicalUnavailable(RuntimeError):
    """No radical algorithm in positive characteristic; supply one."""


def radical(a: Algebra, supplied: Sequence | Subspace | None = None) -> Ideal:
    """Jacobson radical: trace-form kernel in characteristic 0.

    In characteristic p a supplied basis is required; it is checked to be a
    nilpotent ideal.
    """
    if supplied is not None:
        space = supplied if isinstance(supplied, Subspace) else (
            Subspace.from_dense(a.field, supplied, a.dim) if len(supplied) else Subspace.zero(a.field, a.dim))
        rad = Ideal(a, space)
        if not is_nilpotent(rad):
            raise ValueError("supplied radical is not nilpotent")
        return rad
    if a.field.characteristic != 0:
        raise RadicalUnavailable(
            f"radical not computable in characteristic {a.field.characteristic}; "
            "supply a radical basis or a test family of modules")
    d = a.dim
    tr = [sum(a.mult[k][i].get(i, 0) for i in range(d)) for k in range(d)]
    rows = [[sum(c * tr[k] for k, c in a.mult[i][j].items()) for j in range(d)] for i in range(d)]
    rad = Ideal(a, kernel_basis(Matrix.from_rows(a.field, rows)))
    if not is_nilpotent(rad):
        raise AssertionError("trace-form kernel is not nilpotent")
    return rad


def semisimple_quotient(a: Algebra, side: str, rad: Ideal) -> Module:
    """A/rad A as a one-sided A-module."""
    reg = regular_module(a, side)
    return quotient_module(reg, rad.space)


@dataclass
class FlatnessReport:
    flat: bool
    sides: dict                       # side -> flat?
    witness: dict                     # side -> list of Tor_1 dims
    basis: str                        # "radical" or "supplied family"
    notes: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.flat


def _tor1(x: Module, b: Algebra, y: Module) -> int:
    from .builders import two_sided_bar
    from .complexes import homology
    c = two_sided_bar(x, b, y, 2)
    return homology(c).dims[1]


def is_flat(b: Algebra, m: Module, side: str | None = None, radical_basis=None,
            test_family: Sequence[Module] | None = None) -> FlatnessReport:
    """Flatness of a finite-dimensional module via Tor_1 against B/rad B.

    ``side`` selects left/right/both for bimodules.  With ``test_family``
    the verdict is relative to the supplied modules (opposite parity to the
    side tested).
    """
    if side is None:
        side = {"left": "left", "right": "right", "bi": "left"}[m.parity]
    sides = ["left", "right"] if side == "both" else [side]
    for s in sides:
        if (s == "left" and m.left is None) or (s == "right" and m.right is None):
            raise ValueError(f"module has no {s} action")
    if test_family is not None:
        basis = "supplied family"
    else:
        basis = "radical"
        rad = radical(b, radical_basis)
    verdicts, witness = {}, {}
    for s in sides:
        if s == "left":
            mm = m.as_left()
            probes = [t for t in test_family if t.right is not None] if test_family is not None \
                else [semisimple_quotient(b, "right", rad)]
            dims = [_tor1(t, b, mm) for t in probes]
        else:
            mm = m.as_right()
            probes = [t for t in test_family if t.left is not None] if test_family is not None \
                else [semisimple_quotient(b, "left", rad)]
            dims = [_tor1(mm, b, t) for t in probes]
        witness[s] = dims
        verdicts[s] = all(x == 0 for x in dims)
    rep = FlatnessReport(all(verdicts.values()), verdicts, witness, basis)
    if basis == "supplied family":
        rep.notes.append("flat relative to supplied family")
    return rep


def is_projective(b: Algebra, m: Module, side: str = "left") -> bool:
    """Look for a B-linear section of the free cover B^d -> m."""
    if side == "right":
        m = Module(b.opposite(), "left", m.dim, left=m.right)
        b = m.algebra
    elif m.left is None:
        raise ValueError("module has no left action")
    f = b.field
    p = f.characteristic
    n, db = m.dim, b.dim
    nrow = db * n               # rows of the section S: free coordinates (copy k, basis j)

    def var(r, c):
        return r * n + c

    eqs = []  # (dict over unknowns, rhs)
    L = b.left_matrices()
    for i in range(db):
        Li = m.left[i]
        for r in range(nrow):
            k, j = divmod(r, db)
            for c in range(n):
                e: dict = {}
                for t, x in Li.cols[c].items():
                    _axpy(e, x, {var(r, t): 1}, p)
                # (F_i S)[r, c] with F_i = I (x) L_i
                for s in range(db):
                    x = L[i].cols[s].get(j, 0)
                    if x:
                        _axpy(e, -x, {var(k * db + s, c): 1}, p)
                if e:
                    eqs.append((e, 0))
    # pi S = id, pi(copy k, basis j) = e_j v_k
    for a_ in range(n):
        for c in range(n):
            e: dict = {}
            for r in range(nrow):
                k, j = divmod(r, db)
                x = m.left[j].cols[k].get(a_, 0)
                if x:
                    _axpy(e, x, {var(r, c): 1}, p)
            eqs.append((e, 1 if a_ == c else 0))
    nvar = nrow * n
    cols = [dict() for _ in range(nvar)]
    rhs = {}
    for row, (e, val) in enumerate(eqs):
        for v, x in e.items():
            cols[v][row] = x
        if val:
            rhs[row] = f(val)
    system = Matrix(f, len(eqs), nvar, cols)
    return Solver(system).solve(rhs) is not None


@dataclass
class RFlatReport:
    rflat: bool
    left: FlatnessReport
    right: FlatnessReport
    replaced_by_image: bool
    quotient_dim: int
    augmented: dict | None = None
    notes: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.rflat


def check_rflat(phi: AlgebraMorphism, splitting: AlgebraMorphism | None = None,
                radical_basis=None, test_family=None) -> RFlatReport:
    """r-flatness of im(phi) in A: A/im(phi) flat as a left module over im(phi)."""
    notes = []
    replaced = not phi.is_injective
    incl = phi
    if replaced:
        incl = subalgebra_inclusion(phi.target, phi.image(), name=f"im({phi.source.name})")
        notes.append("non-injective morphism: base replaced by its image")
    b = incl.source
    quot = quotient_bimodule(incl)
    fam_right = fam_left = None
    if test_family is not None:
        fam_right = [t for t in test_family if t.right is not None]
        fam_left = [t for t in test_family if t.left is not None]
    left = is_flat(b, quot, "left", radical_basis, fam_right if test_family is not None else None)
    right = is_flat(b, quot, "right", radical_basis, fam_left if test_family is not None else None)
    rep = RFlatReport(left.flat, left, right, replaced, quot.dim, notes=notes)
    if splitting is not None:
        comp = splitting.compose(incl).matrix
        if comp != Matrix.identity(b.field, b.dim):
            raise ValueError("splitting is not a left inverse of the inclusion")
        a_mod = restrict_module(regular_module(incl.target, "left"), incl)
        af = is_flat(b, a_mod, "left", radical_basis, fam_right if test_family is not None else None)
        rep.augmented = {"A_flat": af.flat, "equivalent": af.flat == left.flat}
        notes.append("augmented extension: flatness of A and r-flatness coincide")
    return rep
