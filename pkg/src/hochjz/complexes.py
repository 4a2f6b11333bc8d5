"""Bounded chain complexes over an exact field.

A complex lives in degrees ``lo..hi`` with ``d[n]: C_n -> C_{n-1}``.
``certified_degree`` is the largest degree whose homology is trustworthy;
a complex cut off at N has certified degree N-1, because the boundaries
coming from degree N+1 are missing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import (
    Field, Matrix, Solver, Subquotient, Subspace, coordinate_quotient, image_basis,
    induced_map_on_subquotients, kernel_basis, preimage, rank,
)


class ChainComplex:
    def __init__(self, field: Field, dims: dict, diffs: dict, certified_degree: int | None = None,
                 name: str = "", labels: dict | None = None, validate: bool = True,
                 certified_from: int | None = None):
        if not dims:
            raise ValueError("a complex needs at least one degree")
        self.field = field
        self.dims = {int(n): int(d) for n, d in dims.items()}
        self.lo = min(self.dims)
        self.hi = max(self.dims)
        if sorted(self.dims) != list(range(self.lo, self.hi + 1)):
            raise ValueError("degrees must form a contiguous range")
        self.diffs = {}
        for n in range(self.lo + 1, self.hi + 1):
            m = diffs.get(n)
            if m is None:
                m = Matrix.zero(field, self.dims[n - 1], self.dims[n])
            if m.shape != (self.dims[n - 1], self.dims[n]):
                raise ValueError(f"d_{n} has shape {m.shape}, expected {(self.dims[n-1], self.dims[n])}")
            self.diffs[n] = m
        self.certified_degree = self.hi - 1 if certified_degree is None else certified_degree
        # lowest trustworthy degree; above lo only for re-indexed cochain complexes
        self.certified_from = self.lo if certified_from is None else certified_from
        self.name = name
        self.labels = labels or {}
        self._rank: dict = {}
        self._hspace: dict = {}
        if validate:
            bad = self.d_squared_violation()
            if bad is not None:
                raise ValueError(f"d^2 != 0 at degree {bad} in {name or 'complex'}")

    def __repr__(self):
        return f"ChainComplex({self.name or '?'}, dims={self.dim_list()}, cert={self.certified_degree})"

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def dim_list(self) -> list:
        return [self.dims[n] for n in range(self.lo, self.hi + 1)]

    def d(self, n: int) -> Matrix:
        if n in self.diffs:
            return self.diffs[n]
        return Matrix.zero(self.field, self.dim(n - 1), self.dim(n))

    def d_squared_violation(self):
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                return n
        return None

    def rank_d(self, n: int) -> int:
        if n not in self._rank:
            self._rank[n] = rank(self.diffs[n]) if n in self.diffs else 0
        return self._rank[n]

    def homology_space(self, n: int) -> Subquotient:
        """H_n as ker d_n / im d_{n+1} with a fixed coset basis."""
        if n not in self._hspace:
            z = kernel_basis(self.d(n)) if n > self.lo else Subspace.full(self.field, self.dim(n))
            b = image_basis(self.d(n + 1)) if n < self.hi else Subspace.zero(self.field, self.dim(n))
            self._hspace[n] = Subquotient(z, b, check=False)
        return self._hspace[n]

    def truncate(self, top: int) -> "ChainComplex":
        dims = {n: d for n, d in self.dims.items() if n <= top}
        diffs = {n: m for n, m in self.diffs.items() if n <= top}
        return ChainComplex(self.field, dims, diffs, min(self.certified_degree, top - 1),
                            self.name, self.labels, validate=False)


@dataclass
class HomologyTable:
    dims: dict                       # degree -> dim (all computed degrees)
    certified_degree: int
    lo: int = 0
    representatives: dict | None = None
    certified_from: int | None = None

    def __post_init__(self):
        if self.certified_from is None:
            self.certified_from = self.lo

    def certified(self, n: int) -> bool:
        return self.certified_from <= n <= self.certified_degree

    def table(self) -> list:
        """Dims over the certified window."""
        return [self.dims[n] for n in range(self.certified_from, self.certified_degree + 1)]

    def uncertified(self) -> dict:
        return {n: d for n, d in self.dims.items() if not self.certified(n)}


def homology(c: ChainComplex, representatives: bool = False) -> HomologyTable:
    dims = {}
    for n in range(c.lo, c.hi + 1):
        dims[n] = c.dim(n) - c.rank_d(n) - c.rank_d(n + 1)
    reps = None
    if representatives:
        reps = {n: c.homology_space(n).representatives for n in range(c.lo, c.certified_degree + 1)}
    return HomologyTable(dims, c.certified_degree, c.lo, reps, c.certified_from)


def validate_d_squared(c: ChainComplex) -> bool:
    return c.d_squared_violation() is None


# ---------------------------------------------------------------- chain maps

class ChainMap:
    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict,
                 validate: bool = True, name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        lo = max(source.lo, target.lo)
        hi = min(source.hi, target.hi)
        self.lo, self.hi = lo, hi
        comps = {}
        for n in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
            m = components.get(n)
            if m is None:
                m = Matrix.zero(source.field, target.dim(n), source.dim(n))
            if m.shape != (target.dim(n), source.dim(n)):
                raise ValueError(f"component {n} has shape {m.shape}")
            comps[n] = m
        self.components = comps
        if validate:
            bad = self.violation()
            if bad is not None:
                raise ValueError(f"not a chain map at degree {bad} ({name})")

    def __getitem__(self, n: int) -> Matrix:
        if n in self.components:
            return self.components[n]
        return Matrix.zero(self.source.field, self.target.dim(n), self.source.dim(n))

    def violation(self):
        s, t = self.source, self.target
        for n in range(max(s.lo, t.lo) + 1, min(s.hi, t.hi) + 1):
            if t.d(n) @ self[n] != self[n - 1] @ s.d(n):
                return n
        return None

    def is_injective(self) -> bool:
        return all(rank(self[n]) == self.source.dim(n) for n in range(self.source.lo, self.source.hi + 1))

    def on_homology(self, n: int) -> Matrix:
        return induced_map_on_subquotients(self[n], self.source.homology_space(n),
                                           self.target.homology_space(n))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        comps = {n: self[n] @ other[n] for n in range(other.source.lo, other.source.hi + 1)}
        return ChainMap(other.source, self.target, comps, validate=False)


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: Matrix.identity(c.field, c.dim(n)) for n in c.dims}, validate=False)


def zero_map(s: ChainComplex, t: ChainComplex) -> ChainMap:
    return ChainMap(s, t, {}, validate=False)


# ---------------------------------------------------------------- cone and suspension

def suspension(c: ChainComplex) -> ChainComplex:
    """(SC)_n = C_{n-1}, d = -d."""
    dims = {n + 1: d for n, d in c.dims.items()}
    diffs = {n + 1: -m for n, m in c.diffs.items()}
    return ChainComplex(c.field, dims, diffs, c.certified_degree + 1, f"S({c.name})", validate=False,
                        certified_from=c.certified_from + 1)


@dataclass
class Cone:
    complex: ChainComplex
    from_target: ChainMap          # a -> (0, a)
    to_suspension: ChainMap        # (b, a) -> b


def cone(f: ChainMap) -> Cone:
    """Degree n is source_{n-1} + target_n with (b, a) -> (-db, da - f(b))."""
    s, t = f.source, f.target
    field = s.field
    lo = min(s.lo + 1, t.lo)
    hi = max(s.hi + 1, t.hi)
    dims = {n: s.dim(n - 1) + t.dim(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        diffs[n] = Matrix.block(
            field,
            [[-s.d(n - 1), None], [-f[n - 1], t.d(n)]],
            [s.dim(n - 2), t.dim(n - 1)], [s.dim(n - 1), t.dim(n)])
    cert = min(t.certified_degree, s.certified_degree + 1)
    cc = ChainComplex(field, dims, diffs, cert, f"cone({f.name})")
    inc = {}
    proj = {}
    for n in range(lo, hi + 1):
        inc[n] = Matrix.block(field, [[None], [Matrix.identity(field, t.dim(n))]],
                              [s.dim(n - 1), t.dim(n)], [t.dim(n)])
        proj[n] = Matrix.block(field, [[Matrix.identity(field, s.dim(n - 1)), None]],
                               [s.dim(n - 1)], [s.dim(n - 1), t.dim(n)])
    return Cone(cc, ChainMap(t, cc, inc, name="target->cone"),
                ChainMap(cc, suspension(s), proj, name="cone->S(source)"))


# ---------------------------------------------------------------- sub- and quotient complexes

def quotient_by_subspaces(c: ChainComplex, subs: dict, name: str = "", check: bool = True):
    """C / S for a subcomplex given degreewise; returns (Q, projection)."""
    keeps, projs = {}, {}
    for n in range(c.lo, c.hi + 1):
        sub = subs.get(n) or Subspace.zero(c.field, c.dim(n))
        keeps[n], projs[n] = coordinate_quotient(sub)
    if check:
        for n in range(c.lo + 1, c.hi + 1):
            sub = subs.get(n)
            if sub is None:
                continue
            low = subs.get(n - 1) or Subspace.zero(c.field, c.dim(n - 1))
            for v in sub.basis:
                if not low.contains(c.d(n).apply(v)):
                    raise ValueError(f"relations are not a subcomplex at degree {n}")
    diffs = {}
    for n in range(c.lo + 1, c.hi + 1):
        d = c.d(n)
        diffs[n] = Matrix(c.field, len(keeps[n - 1]), len(keeps[n]),
                          [projs[n - 1].apply(d.cols[j]) for j in keeps[n]])
    labels = {}
    for n, keep in keeps.items():
        if n in c.labels:
            labels[n] = [c.labels[n][j] for j in keep]
    q = ChainComplex(c.field, {n: len(k) for n, k in keeps.items()}, diffs,
                     c.certified_degree, name or f"{c.name}/S", labels, certified_from=c.certified_from)
    return q, ChainMap(c, q, projs, validate=False, name="projection")


def subcomplex(c: ChainComplex, subs: dict, name: str = ""):
    """The subcomplex spanned by ``subs``; returns (K, inclusion)."""
    bases = {n: (subs.get(n) or Subspace.zero(c.field, c.dim(n))) for n in range(c.lo, c.hi + 1)}
    diffs = {}
    for n in range(c.lo + 1, c.hi + 1):
        d = c.d(n)
        cols = []
        for v in bases[n].basis:
            w = d.apply(v)
            try:
                cols.append(bases[n - 1].coordinates(w))
            except ValueError:
                raise ValueError(f"not a subcomplex at degree {n}") from None
        diffs[n] = Matrix(c.field, bases[n - 1].dim, bases[n].dim, cols)
    k = ChainComplex(c.field, {n: b.dim for n, b in bases.items()}, diffs,
                     c.certified_degree, name or f"sub({c.name})", certified_from=c.certified_from)
    incl = {n: Matrix(c.field, c.dim(n), b.dim, list(b.basis)) for n, b in bases.items()}
    return k, ChainMap(k, c, incl, validate=False, name="inclusion")


@dataclass
class QuotientResult:
    complex: ChainComplex
    projection: ChainMap
    connecting: dict                 # n -> H_n(Q) -> H_{n-1}(source)
    inclusion: ChainMap


def quotient_complex(incl: ChainMap) -> QuotientResult:
    """Q = target / image(incl) with explicit snake-lemma connecting maps."""
    s, c = incl.source, incl.target
    for n in range(s.lo, s.hi + 1):
        if rank(incl[n]) != s.dim(n):
            raise ValueError(f"inclusion is not injective in degree {n}")
    subs = {n: image_basis(incl[n]) for n in range(c.lo, c.hi + 1)}
    q, proj = quotient_by_subspaces(c, subs, f"{c.name}/{s.name}", check=False)
    q.certified_degree = min(c.certified_degree, s.certified_degree)
    conn = {}
    for n in range(q.lo + 1, q.certified_degree + 1):
        hq = q.homology_space(n)
        hs = s.homology_space(n - 1)
        solver = Solver(incl[n - 1])
        keep = [j for j in range(c.dim(n)) if j not in subs[n]._rows]
        cols = []
        for z in hq.representatives:
            lift = {keep[a]: x for a, x in z.items()}
            y = c.d(n).apply(lift)
            pre = solver.solve(y)
            if pre is None:
                raise AssertionError("boundary of a lifted cycle is not in the subcomplex")
            cols.append(hs.coords(pre))
        conn[n] = Matrix(c.field, hs.dim, hq.dim, cols)
    return QuotientResult(q, proj, conn, incl)


@dataclass
class ExactnessReport:
    ok: bool
    failures: list = dc_field(default_factory=list)     # (node index, message)
    ranks: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_exact_sequence(nodes: Sequence[int], maps: Sequence[Matrix]) -> ExactnessReport:
    """``maps[i]`` goes from node i to node i+1; interior nodes are checked."""
    if len(maps) != len(nodes) - 1:
        raise ValueError("need one map between each pair of consecutive nodes")
    for i, m in enumerate(maps):
        if m.shape != (nodes[i + 1], nodes[i]):
            raise ValueError(f"map {i} has shape {m.shape}, nodes are {nodes[i]} -> {nodes[i+1]}")
    ranks = [rank(m) for m in maps]
    failures = []
    for i in range(len(maps) - 1):
        if not (maps[i + 1] @ maps[i]).is_zero():
            failures.append((i + 1, "composite through this node is not zero"))
    for i in range(1, len(nodes) - 1):
        if ranks[i - 1] + ranks[i] != nodes[i]:
            failures.append((i, f"rank in {ranks[i-1]} + rank out {ranks[i]} != dim {nodes[i]}"))
    return ExactnessReport(not failures, failures, ranks)


@dataclass
class SnakeLES:
    nodes: list          # (label, dim)
    maps: list
    report: ExactnessReport
    quotient: QuotientResult


def snake_les(incl: ChainMap, names=("S", "C", "Q")) -> SnakeLES:
    """The homology LES of 0 -> S -> C -> C/S -> 0 down to degree lo.

    Starts at H_top(S) with top the common certified degree and ends with a
    zero node so that surjectivity onto the last group is tested.
    """
    qr = quotient_complex(incl)
    s, c, q = incl.source, incl.target, qr.complex
    top = min(s.certified_degree, c.certified_degree, q.certified_degree)
    lo = min(s.lo, c.lo)
    nodes, maps = [], []
    for n in range(top, lo - 1, -1):
        hs, hc, hq = s.homology_space(n), c.homology_space(n), q.homology_space(n)
        if n != top:
            maps.append(qr.connecting.get(n + 1) if (n + 1) in qr.connecting
                        else Matrix.zero(s.field, hs.dim, q.homology_space(n + 1).dim))
        nodes += [(f"H{n}({names[0]})", hs.dim), (f"H{n}({names[1]})", hc.dim), (f"H{n}({names[2]})", hq.dim)]
        maps.append(incl.on_homology(n) if n >= s.lo else Matrix.zero(s.field, hc.dim, hs.dim))
        maps.append(qr.projection.on_homology(n))
    nodes.append(("0", 0))
    maps.append(Matrix.zero(s.field, 0, nodes[-2][1]))
    rep = check_exact_sequence([d for _, d in nodes], maps)
    return SnakeLES(nodes, maps, rep, qr)


# ---------------------------------------------------------------- filtrations

class FilteredComplex:
    """Increasing filtration F_p C_n by subcomplexes.

    ``layers[(p, n)]`` holds F_p C_n for pmin <= p < pmax; below pmin the
    layer is 0 and from pmax on it is all of C_n.
    """

    def __init__(self, complex: ChainComplex, layers: dict, pmin: int, pmax: int,
                 validate: bool = True, degrees: dict | None = None, name: str = ""):
        self.complex = complex
        self.pmin = pmin
        self.pmax = pmax
        self._layers = dict(layers)
        self.degrees = degrees
        self.name = name
        if validate:
            msg = self.violation()
            if msg:
                raise ValueError(msg)

    @classmethod
    def from_degrees(cls, complex: ChainComplex, degrees: dict, name: str = "",
                     validate: bool = True) -> "FilteredComplex":
        """Coordinate filtration: basis vector j of C_n sits in F_p iff degrees[n][j] <= p."""
        f = complex.field
        vals = [x for n in degrees for x in degrees[n]]
        pmin = min(vals) if vals else 0
        pmax = max(vals) if vals else 0
        layers = {}
        for n in range(complex.lo, complex.hi + 1):
            deg = degrees.get(n, [])
            if len(deg) != complex.dim(n):
                raise ValueError(f"degree list for C_{n} has wrong length")
            for p in range(pmin, pmax):
                layers[(p, n)] = Subspace.coordinate(f, complex.dim(n), [j for j, x in enumerate(deg) if x <= p])
        fc = cls(complex, layers, pmin, pmax, validate=False, degrees=degrees, name=name)
        if validate:
            for n in range(complex.lo + 1, complex.hi + 1):
                d = complex.d(n)
                low = degrees[n - 1]
                for j, col in enumerate(d.cols):
                    dj = degrees[n][j]
                    for i in col:
                        if low[i] > dj:
                            raise ValueError(f"filtration is not a subcomplex at degree {n}")
        return fc

    def layer(self, p: int, n: int) -> Subspace:
        f, dim = self.complex.field, self.complex.dim(n)
        if p < self.pmin:
            return Subspace.zero(f, dim)
        if p >= self.pmax:
            return Subspace.full(f, dim)
        return self._layers.get((p, n)) or Subspace.full(f, dim)

    def range_at(self, n: int) -> tuple:
        """(first p with F_p C_n != 0, first p with F_p C_n = C_n)."""
        dim = self.complex.dim(n)
        if dim == 0:
            return (self.pmin, self.pmin)
        if self.degrees is not None:
            deg = self.degrees[n]
            return (min(deg), max(deg))
        lo = self.pmin
        while lo < self.pmax and self.layer(lo, n).dim == 0:
            lo += 1
        hi = lo
        while hi < self.pmax and self.layer(hi, n).dim < dim:
            hi += 1
        return (lo, hi)

    def violation(self) -> str:
        c = self.complex
        for n in range(c.lo, c.hi + 1):
            for p in range(self.pmin, self.pmax):
                if not self.layer(p - 1, n) <= self.layer(p, n):
                    return f"layers not increasing at p={p}, degree {n}"
                if n > c.lo:
                    img = self.layer(p, n).image(c.d(n))
                    if not img <= self.layer(p, n - 1):
                        return f"layer {p} is not a subcomplex at degree {n}"
        return ""

    def layer_complex(self, p: int):
        return subcomplex(self.complex, {n: self.layer(p, n) for n in self.complex.dims},
                          f"F{p}({self.complex.name})")


class SpectralSequence:
    """Pages of the spectral sequence of a filtered complex.

    E^r_{p,q} (total degree n = p+q) is Z^r_p / (Z^{r-1}_{p-1} + dZ^{r-1}_{p+r-1})
    with Z^r_p = {x in F_p C_n : dx in F_{p-r} C_{n-1}}.  Groups are built for
    total degrees up to the certified degree of the complex.
    """

    def __init__(self, fc: FilteredComplex, r_max: int | None = None):
        self.fc = fc
        c = fc.complex
        self.complex = c
        self.field = c.field
        self.certified_degree = c.certified_degree
        self.lo = c.lo
        self._range = {n: fc.range_at(n) for n in range(c.lo, c.hi + 1)}
        self.r_stable = max(1, fc.pmax - fc.pmin + 1)
        self.r_max = self.r_stable + 1 if r_max is None else r_max
        self._z: dict = {}
        self._img: dict = {}
        self._bd: dict = {}
        self._grp: dict = {}
        self._diff: dict = {}
        self._rank_in: dict = {}
        self._collapse = None

    # ---- building blocks
    def positions(self, n: int) -> range:
        lo, hi = self._range.get(n, (0, -1))
        return range(lo, hi + 1)

    def _F(self, p: int, n: int) -> Subspace:
        return self.fc.layer(p, n)

    def Z(self, r: int, p: int, n: int) -> Subspace:
        """Z^r_p in degree n; r = -1 gives F_p."""
        lo_prev = self._range.get(n - 1, (0, 0))[0]
        if r < 0 or n == self.lo:
            return self._F(p, n)
        if r > 0:
            r = min(r, max(p - lo_prev + 1, 1))
        key = (r, p, n)
        if key not in self._z:
            if r == 0:
                self._z[key] = self._F(p, n)
            else:
                self._z[key] = preimage(self.complex.d(n), self._F(p - r, n - 1), within=self._F(p, n))
        return self._z[key]

    def _image(self, q: int, n: int) -> Subspace:
        """d(F_q C_{n+1}) inside C_n."""
        hi_next = self._range.get(n + 1, (0, 0))[1]
        q = min(q, hi_next)
        key = (q, n)
        if key not in self._img:
            self._img[key] = self._F(q, n + 1).image(self.complex.d(n + 1))
        return self._img[key]

    def B(self, r: int, p: int, n: int) -> Subspace:
        """d(Z^{r-1}_{p+r-1}) = d(F_{p+r-1} C_{n+1}) cap F_p C_n for r >= 1."""
        if n >= self.complex.hi:
            return Subspace.zero(self.field, self.complex.dim(n))
        hi_next = self._range.get(n + 1, (0, 0))[1]
        q = min(p + r - 1, hi_next)
        key = (q, p, n)
        if key not in self._bd:
            img = self._image(q, n)
            fp = self._F(p, n)
            self._bd[key] = img if img <= fp else img.intersect(fp)
        return self._bd[key]

    def denominator(self, r: int, p: int, n: int) -> Subspace:
        if r == 0:
            return self._F(p - 1, n)
        return self.Z(r - 1, p - 1, n) + self.B(r, p, n)

    def group(self, r: int, p: int, n: int) -> Subquotient:
        key = (r, p, n)
        if key not in self._grp:
            self._grp[key] = Subquotient(self.Z(r, p, n), self.denominator(r, p, n), check=False)
        return self._grp[key]

    # ---- public accessors
    def dim(self, r: int, p: int, q: int) -> int:
        n = p + q
        if n < self.lo or n > self.certified_degree or p not in self.positions(n):
            return 0
        return self.group(r, p, n).dim

    def table(self, r: int) -> dict:
        """{(p, q): dim E^r_{p,q}} over the certified window (zeros omitted)."""
        out = {}
        for n in range(self.lo, self.certified_degree + 1):
            for p in self.positions(n):
                d = self.group(r, p, n).dim
                if d:
                    out[(p, n - p)] = d
        return out

    def differential(self, r: int, p: int, n: int) -> Matrix:
        """d^r: E^r_{p, n-p} -> E^r_{p-r, n-p+r-1}."""
        key = (r, p, n)
        if key not in self._diff:
            src = self.group(r, p, n)
            if n - 1 < self.lo or (p - r) not in self.positions(n - 1):
                m = Matrix.zero(self.field, 0, src.dim)
            else:
                m = induced_map_on_subquotients(self.complex.d(n), src, self.group(r, p - r, n - 1))
            self._diff[key] = m
        return self._diff[key]

    def rank_in(self, r: int, p: int, n: int) -> int:
        """Rank of d^r landing in E^r_{p, n-p}, from the boundary subspaces."""
        key = (r, p, n)
        if key not in self._rank_in:
            den = self.denominator(r, p, n)
            hit = self.B(r + 1, p, n) + den
            self._rank_in[key] = hit.dim - den.dim
        return self._rank_in[key]

    def rank_out(self, r: int, p: int, n: int) -> int:
        if n - 1 < self.lo or (p - r) not in self.positions(n - 1):
            return 0
        return rank(self.differential(r, p, n))

    def page_homology_mismatches(self, r: int) -> list:
        """Positions where dim H(E^r, d^r) != dim E^{r+1}."""
        bad = []
        for n in range(self.lo, self.certified_degree + 1):
            for p in self.positions(n):
                h = self.group(r, p, n).dim - self.rank_out(r, p, n) - self.rank_in(r, p, n)
                nxt = self.group(r + 1, p, n).dim
                if h != nxt:
                    bad.append((p, n - p, h, nxt))
        return bad

    def page_is_zero_differential(self, r: int) -> bool:
        for n in range(self.lo, self.certified_degree + 1):
            for p in self.positions(n):
                if self.rank_out(r, p, n) or self.rank_in(r, p, n):
                    return False
        return True

    @property
    def collapse_page(self):
        """First r after which every d^r in the window vanishes, or None."""
        if self._collapse is None:
            if self.r_max < self.r_stable:
                zero_from = None
            else:
                zero_from = self.r_max + 1
                for r in range(self.r_max, -1, -1):
                    if self.page_is_zero_differential(r):
                        zero_from = r
                    else:
                        break
            self._collapse = zero_from if zero_from is not None else -1
        return None if self._collapse == -1 else self._collapse

    @property
    def collapsed(self) -> bool:
        return self.collapse_page is not None

    def einf(self, p: int, q: int):
        r = self.collapse_page
        if r is None:
            return None
        return self.dim(r, p, q)

    def einf_table(self) -> dict:
        r = self.collapse_page
        if r is None:
            return {}
        return self.table(r)

    def convergence_mismatches(self) -> list:
        """Degrees where sum_p E^inf_{p,n-p} != dim H_n."""
        r = self.collapse_page
        if r is None:
            return []
        h = homology(self.complex)
        bad = []
        for n in range(self.lo, self.certified_degree + 1):
            tot = sum(self.group(r, p, n).dim for p in self.positions(n))
            if tot != h.dims[n]:
                bad.append((n, tot, h.dims[n]))
        return bad


def spectral_pages(fc: FilteredComplex, r_max: int | None = None) -> SpectralSequence:
    return SpectralSequence(fc, r_max)


# ---------------------------------------------------------------- dumps

def dump_complex(c: ChainComplex) -> str:
    f = c.field
    data = {
        "name": c.name,
        "field_char": f.characteristic,
        "lo": c.lo,
        "certified_degree": c.certified_degree,
        "dims": c.dim_list(),
        "differentials": {str(n): [[f.to_json(x) for x in row] for row in m.to_rows()]
                          for n, m in sorted(c.diffs.items())},
    }
    return json.dumps(data, indent=1)


def load_complex(text: str) -> ChainComplex:
    data = json.loads(text)
    f = Field(data["field_char"])
    lo = data["lo"]
    dims = {lo + i: d for i, d in enumerate(data["dims"])}
    diffs = {int(n): Matrix.from_rows(f, rows, dims[int(n)]) for n, rows in data["differentials"].items()}
    return ChainComplex(f, dims, diffs, data["certified_degree"], data.get("name", ""))
