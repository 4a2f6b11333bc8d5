"""Bar, Hochschild and cyclic complexes, their relative versions, and filtrations.

Chain groups are tensor words over basis indices, stored row-major (the
last slot varies fastest).  Relative and normalized complexes are built as
quotients of the absolute ones by explicit relation spans.  Anything that
needs "the slots lying in B" first moves A to an adapted basis in which B
is spanned by the first dim B basis vectors (see :class:`Extension`).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from typing import Callable, Iterable, Sequence

from .algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, _lin_comb, envelope_right, enveloping_algebra,
    regular_module, tensor_relations,
)
from .complexes import (
    ChainComplex, ChainMap, FilteredComplex, quotient_by_subspaces, subcomplex,
)
from .linalg import Field, Matrix, Subspace, _axpy, kernel_basis


# ---------------------------------------------------------------- tensor words

class Words:
    """Row-major index for words t with 0 <= t[i] < dims[i]."""

    def __init__(self, dims: Sequence[int]):
        self.dims = tuple(dims)
        strides = []
        s = 1
        for d in reversed(self.dims):
            strides.append(s)
            s *= d
        self.strides = tuple(reversed(strides))
        self.size = s if self.dims else 1

    def index(self, t) -> int:
        return sum(x * s for x, s in zip(t, self.strides))

    def __iter__(self):
        return iproduct(*(range(d) for d in self.dims))

    def __len__(self):
        return self.size


def _action_tables(mats: Sequence[Matrix], dim: int, left: bool):
    """left: tab[a][v] = terms of e_a v;  right: tab[v][a] = terms of v e_a."""
    if left:
        return [[tuple(mats[a].cols[v].items()) for v in range(dim)] for a in range(len(mats))]
    return [[tuple(mats[a].cols[v].items()) for a in range(len(mats))] for v in range(dim)]


def _mult_table(a: Algebra):
    return [[tuple(a.mult[x][y].items()) for y in range(a.dim)] for x in range(a.dim)]


def _matrix(field: Field, src: Iterable, tgt: Words | Callable, fn: Callable, nrows: int | None = None) -> Matrix:
    """Matrix whose column for word t is fn(t) = [(word, coeff), ...]."""
    p = field.characteristic
    index = tgt.index if isinstance(tgt, Words) else tgt
    n = len(tgt) if isinstance(tgt, Words) else nrows
    cols = []
    for t in src:
        col: dict = {}
        for u, c in fn(t):
            k = index(u)
            if k is None:
                continue
            y = col.get(k, 0) + c
            if p:
                y %= p
            if y:
                col[k] = y
            else:
                col.pop(k, None)
        cols.append(col)
    return Matrix(field, n, len(cols), cols)


def _sign(j: int) -> int:
    return -1 if j % 2 else 1


# ---------------------------------------------------------------- faces

def _bar_faces(prod, ract, lact):
    """Two-sided bar differential on (x, a_1..a_n, y)."""
    def fn(t):
        n = len(t) - 2
        out = []
        for z, c in ract[t[0]][t[1]]:
            out.append(((z,) + t[2:], c))
        for j in range(1, n):
            s = _sign(j)
            for z, c in prod[t[j]][t[j + 1]]:
                out.append((t[:j] + (z,) + t[j + 2:], s * c))
        s = _sign(n)
        for z, c in lact[t[n]][t[n + 1]]:
            out.append((t[:n] + (z,), s * c))
        return out
    return fn


def _bprime_faces(prod):
    """b' on (a_0..a_n): sum_{j<n} (-1)^j merge(j, j+1), no wrap term."""
    def fn(t):
        out = []
        for j in range(len(t) - 1):
            s = _sign(j)
            for z, c in prod[t[j]][t[j + 1]]:
                out.append((t[:j] + (z,) + t[j + 2:], s * c))
        return out
    return fn


def _hochschild_faces(prod, ract, lact):
    """b on (m, a_1..a_n) including the wrap term (-1)^n a_n m (x) a_1..a_{n-1}."""
    def fn(t):
        n = len(t) - 1
        out = []
        for z, c in ract[t[0]][t[1]]:
            out.append(((z,) + t[2:], c))
        for j in range(1, n):
            s = _sign(j)
            for z, c in prod[t[j]][t[j + 1]]:
                out.append((t[:j] + (z,) + t[j + 2:], s * c))
        s = _sign(n)
        for z, c in lact[t[n]][t[0]]:
            out.append(((z,) + t[1:n], s * c))
        return out
    return fn


def _slides(t, junctions, nb: int, cyclic=None):
    """Slide relations at a word: x b (x) y - x (x) b y for each junction.

    ``junctions`` is a list of (j, rtab_j, ltab_{j+1}); ``cyclic`` is
    (ltab_0, rtab_last) for the junction between the last and first slot.
    """
    rels = []
    for j, rtab, ltab in junctions:
        for b in range(nb):
            r = []
            for z, c in rtab[t[j]][b]:
                r.append((t[:j] + (z,) + t[j + 1:], c))
            for z, c in ltab[b][t[j + 1]]:
                r.append((t[:j + 1] + (z,) + t[j + 2:], -c))
            rels.append(r)
    if cyclic is not None:
        ltab0, rtab_last = cyclic
        k = len(t) - 1
        for b in range(nb):
            r = []
            for z, c in ltab0[b][t[0]]:
                r.append(((z,) + t[1:], c))
            for z, c in rtab_last[t[k]][b]:
                r.append((t[:k] + (z,), -c))
            rels.append(r)
    return rels


def _span_of_terms(field: Field, words: Words, term_lists: Iterable[list], extra: Iterable[dict] = ()) -> Subspace:
    p = field.characteristic
    vecs = []
    for terms in term_lists:
        v: dict = {}
        for u, c in terms:
            k = words.index(u)
            y = v.get(k, 0) + c
            if p:
                y %= p
            if y:
                v[k] = y
            else:
                v.pop(k, None)
        if v:
            vecs.append(v)
    vecs.extend(extra)
    return Subspace.span(field, len(words), vecs)


# ---------------------------------------------------------------- extensions

class Extension:
    """B <= A with A moved to a basis whose first dim B vectors span B.

    The B basis is the echelon basis of im(incl); the complement consists of
    the standard basis vectors of A at the non-pivot positions.
    """

    def __init__(self, incl: AlgebraMorphism):
        if not incl.is_injective:
            raise ValueError("Extension needs an injective morphism")
        a = incl.target
        f = a.field
        self.original = a
        self.incl = incl
        sub = incl.image()
        self.sub = sub
        self.dB = sub.dim
        self.complement = [j for j in range(a.dim) if j not in sub._rows]
        self.new_basis = list(sub.basis) + [{j: 1} for j in self.complement]
        self.change = Matrix(f, a.dim, a.dim, self.new_basis)
        labels = [a.vector_label(v) for v in sub.basis] + [a.labels[j] for j in self.complement]
        mult = [[self.to_new(a.product(u, v)) for v in self.new_basis] for u in self.new_basis]
        unit = self.to_new(a.unit) if a.unit is not None else None
        self.A = Algebra(f, mult, unit, labels, a.name)
        bmult = [[dict(mult[i][j]) for j in range(self.dB)] for i in range(self.dB)]
        self.B = Algebra(f, bmult, unit, labels[:self.dB], incl.source.name)
        self.B_in_A = AlgebraMorphism(self.B, self.A, Matrix(f, a.dim, self.dB, [{i: 1} for i in range(self.dB)]),
                                      check=False)

    @property
    def field(self) -> Field:
        return self.original.field

    @property
    def complement_labels(self) -> list:
        return [self.original.labels[j] for j in self.complement]

    def to_new(self, x: dict) -> dict:
        """Coordinates of an old-basis vector in the adapted basis."""
        r = self.sub.remainder(x)
        p = self.field.characteristic
        diff = dict(x)
        _axpy(diff, -1, r, p)
        out = dict(self.sub.coordinates(diff))
        pos = {j: self.dB + k for k, j in enumerate(self.complement)}
        for j, c in r.items():
            out[pos[j]] = c
        return out

    def adapt_module(self, m: Module) -> Module:
        mats = lambda ms: [_lin_comb(ms, v, self.field, m.dim) for v in self.new_basis] if ms else None
        return Module(self.A, m.parity, m.dim, mats(m.left), mats(m.right), m.name, m.labels)

    def restrict(self, m: Module) -> Module:
        """An adapted A-module viewed over B."""
        cut = lambda ms: list(ms[:self.dB]) if ms else None
        return Module(self.B, m.parity, m.dim, cut(m.left), cut(m.right), m.name, m.labels)

    def in_B(self, idx: int) -> bool:
        return idx < self.dB


def _as_extension(rel) -> Extension:
    return rel if isinstance(rel, Extension) else Extension(rel)


# ---------------------------------------------------------------- complexes

def two_sided_bar(x: Module, a: Algebra, y: Module, N: int, relative_to=None,
                  normalized: bool = False, name: str = "") -> ChainComplex:
    """CB_n(X; A; Y) = X (x) A^{(x)n} (x) Y, optionally over a subalgebra B."""
    if x.right is None or y.left is None:
        raise ValueError("two_sided_bar needs a right module X and a left module Y")
    if relative_to is not None:
        ext = _as_extension(relative_to)
        xa, ya = ext.adapt_module(x), ext.adapt_module(y)
        c = two_sided_bar(xa, ext.A, ya, N)
        return quotient_by_subspaces(c, bar_relations(ext, xa, ya, c.dims, normalized),
                                     name or f"CB(X;{a.name}|{ext.B.name};Y)")[0]
    f = a.field
    prod = _mult_table(a)
    ract = _action_tables(x.right, x.dim, left=False)
    lact = _action_tables(y.left, y.dim, left=True)
    words = {n: Words([x.dim] + [a.dim] * n + [y.dim]) for n in range(N + 1)}
    fn = _bar_faces(prod, ract, lact)
    diffs = {n: _matrix(f, words[n], words[n - 1], fn) for n in range(1, N + 1)}
    return ChainComplex(f, {n: len(w) for n, w in words.items()}, diffs, N - 1,
                        name or f"CB(X;{a.name};Y)")


def bar_relations(ext: Extension, x: Module, y: Module, degrees: Iterable[int], normalized: bool) -> dict:
    """Slide relations (and degenerate words when normalized) in CB(X; A; Y)."""
    a = ext.A
    prod = _mult_table(a)
    ract = _action_tables(x.right, x.dim, left=False)
    lact = _action_tables(y.left, y.dim, left=True)
    subs = {}
    for n in degrees:
        words = Words([x.dim] + [a.dim] * n + [y.dim])
        junc = []
        for j in range(n + 1):
            rtab = ract if j == 0 else prod
            ltab = lact if j == n else prod
            junc.append((j, rtab, ltab))
        extra = []
        if normalized:
            extra = [{words.index(t): 1} for t in words if any(ext.in_B(s) for s in t[1:n + 1])]
        subs[n] = _span_of_terms(a.field, words, (r for t in words for r in _slides(t, junc, ext.dB)), extra)
    return subs


def bar_complex(a: Algebra, N: int) -> ChainComplex:
    """CB_n(A) = A^{(x) n+2} with the alternating sum of adjacent products."""
    return two_sided_bar(regular_module(a, "right"), a, regular_module(a, "left"), N, name=f"CB({a.name})")


def wodzicki_bar(i: Ideal | Algebra, N: int) -> ChainComplex:
    """CB'_n(I) = I^{(x) n+1}, d = sum_{j<n} (-1)^j merge(j, j+1)."""
    alg = i.as_algebra() if isinstance(i, Ideal) else i
    f = alg.field
    prod = _mult_table(alg)
    words = {n: Words([alg.dim] * (n + 1)) for n in range(N + 1)}
    fn = _bprime_faces(prod)
    diffs = {n: _matrix(f, words[n], words[n - 1], fn) for n in range(1, N + 1)}
    return ChainComplex(f, {n: len(w) for n, w in words.items()}, diffs, N - 1, "CB'(I)")


def _coefficient_tables(a: Algebra, m: Module | None):
    if m is None:
        prod = _mult_table(a)
        return a.dim, prod, prod
    if m.parity != "bi":
        raise ValueError("Hochschild coefficients must be a bimodule")
    return m.dim, _action_tables(m.right, m.dim, left=False), _action_tables(m.left, m.dim, left=True)


def hochschild_complex(a: Algebra, m: Module | None, N: int, relative_to=None,
                       normalized: bool = False, name: str = "") -> ChainComplex:
    """CH_n(A, M) = M (x) A^{(x)n} with the Hochschild b.

    ``m = None`` means M = A (this also works for a non-unital algebra).
    ``relative_to`` quotients by all B-slides including the cyclic one;
    ``normalized`` also kills words with a B-entry in slots 1..n.
    """
    if relative_to is not None:
        ext = _as_extension(relative_to)
        ma = ext.adapt_module(m) if m is not None else None
        c = hochschild_complex(ext.A, ma, N)
        subs = hochschild_relations(ext, ma, c.dims, normalized)
        kind = "CH~" if normalized else "CH"
        return quotient_by_subspaces(c, subs, name or f"{kind}({a.name}|{ext.B.name})")[0]
    f = a.field
    dm, ract, lact = _coefficient_tables(a, m)
    prod = _mult_table(a)
    words = {n: Words([dm] + [a.dim] * n) for n in range(N + 1)}
    fn = _hochschild_faces(prod, ract, lact)
    diffs = {n: _matrix(f, words[n], words[n - 1], fn) for n in range(1, N + 1)}
    return ChainComplex(f, {n: len(w) for n, w in words.items()}, diffs, N - 1,
                        name or f"CH({a.name})")


def hochschild_relations(ext: Extension, m: Module | None, degrees: Iterable[int], normalized: bool) -> dict:
    a = ext.A
    dm, ract, lact = _coefficient_tables(a, m)
    prod = _mult_table(a)
    subs = {}
    for n in degrees:
        words = Words([dm] + [a.dim] * n)
        junc = []
        for j in range(n):
            junc.append((j, ract if j == 0 else prod, prod))
        cyc = (lact, ract if n == 0 else prod)
        extra = []
        if normalized:
            extra = [{words.index(t): 1} for t in words if any(ext.in_B(s) for s in t[1:])]
        rels = (r for t in words for r in _slides(t, junc, ext.dB, cyc))
        subs[n] = _span_of_terms(a.field, words, rels, extra)
    return subs


def relative_hochschild_complex(a, m, N, relative_to, normalized=False):
    return hochschild_complex(a, m, N, relative_to=relative_to, normalized=normalized)


def reduced_relative_hochschild(rel, N: int) -> ChainComplex:
    """Coefficient-free relative complex CH(A) / (CH(B) + slide relations).

    Besides the B-slides (including the cyclic one) the image of CH(B) is
    divided out, so for B = k this is the reduced Hochschild complex.
    """
    ext = _as_extension(rel)
    c = hochschild_complex(ext.A, None, N)
    return quotient_by_subspaces(c, reduced_relative_relations(ext, N),
                                 f"CH({ext.A.name}|{ext.B.name}) reduced")[0]


def reduced_relative_relations(ext: Extension, N: int) -> dict:
    """Per degree: span of the B-slides and of the words with every slot in B."""
    a = ext.A
    subs = {}
    for n in range(N + 1):
        words = Words([a.dim] * (n + 1))
        sub = hochschild_relations(ext, None, [n], False)[n]
        inner = [{words.index(t): 1} for t in iproduct(*(range(ext.dB) for _ in range(n + 1)))]
        subs[n] = sub + Subspace.span(a.field, len(words), inner)
    return subs


# ---------------------------------------------------------------- cyclic

@dataclass
class CyclicStructure:
    t: dict                     # n -> Matrix on CH_n(A) = A^{(x) n+1}

    def order_violations(self) -> list:
        bad = []
        for n, m in self.t.items():
            acc = Matrix.identity(m.field, m.nrows)
            for _ in range(n + 1):
                acc = m @ acc
            if acc != Matrix.identity(m.field, m.nrows):
                bad.append(n)
        return bad


def cyclic_operator(a: Algebra, n: int) -> Matrix:
    """t(a_0..a_n) = (-1)^n (a_n, a_0, .., a_{n-1})."""
    words = Words([a.dim] * (n + 1))
    s = _sign(n)
    return _matrix(a.field, words, words, lambda t: [((t[-1],) + t[:-1], s)])


def _norm(t: Matrix, n: int) -> Matrix:
    acc = Matrix.identity(t.field, t.nrows)
    power = Matrix.identity(t.field, t.nrows)
    for _ in range(n):
        power = t @ power
        acc = acc + power
    return acc


def cyclic_total_complex(a: Algebra, N: int, relative_to=None):
    """Total complex of the cyclic bicomplex, truncated at total degree N.

    Column p holds CH_q(A); even columns carry b, odd columns -b'; the
    horizontal maps are 1 - t (odd to even) and the norm N (even to odd).
    Returns (complex, CyclicStructure).  With ``relative_to`` the result is
    the quotient by the sub-bicomplex built on B (relative model).
    """
    if relative_to is not None:
        ext = _as_extension(relative_to)
        tot, cyc = cyclic_total_complex(ext.A, N)
        q, _ = quotient_by_subspaces(tot, cyclic_relative_relations(ext, N), f"Tot CC({a.name}|{ext.B.name})")
        return q, cyc
    f = a.field
    prod = _mult_table(a)
    words = {q: Words([a.dim] * (q + 1)) for q in range(N + 1)}
    b = {q: _matrix(f, words[q], words[q - 1], _hochschild_faces(prod, prod, prod)) for q in range(1, N + 1)}
    bp = {q: _matrix(f, words[q], words[q - 1], _bprime_faces(prod)) for q in range(1, N + 1)}
    t = {q: cyclic_operator(a, q) for q in range(N + 1)}
    one_minus_t = {q: Matrix.identity(f, len(words[q])) - t[q] for q in range(N + 1)}
    norm = {q: _norm(t[q], q) for q in range(N + 1)}
    dims = {n: sum(len(words[n - p]) for p in range(n + 1)) for n in range(N + 1)}
    diffs = {}
    for n in range(1, N + 1):
        src = [len(words[n - p]) for p in range(n + 1)]
        tgt = [len(words[n - 1 - p]) for p in range(n)]
        blocks = [[None] * (n + 1) for _ in range(n)]
        for p in range(n + 1):
            q = n - p
            if q >= 1:
                blocks[p][p] = b[q] if p % 2 == 0 else -bp[q]
            if p >= 1:
                blocks[p - 1][p] = one_minus_t[q] if p % 2 == 1 else norm[q]
        diffs[n] = Matrix.block(f, blocks, tgt, src)
    tot = ChainComplex(f, dims, diffs, N - 2, f"Tot CC({a.name})")
    return tot, CyclicStructure(t)


def cyclic_relative_relations(ext: Extension, N: int) -> dict:
    """Column-wise reduced relative relations inside Tot CC(A)."""
    col = reduced_relative_relations(ext, N)
    subs = {}
    for n in range(N + 1):
        vecs, off = [], 0
        for p in range(n + 1):
            sub = col[n - p]
            vecs += [{off + k: c for k, c in v.items()} for v in sub.basis]
            off += sub.ambient_dim
        subs[n] = Subspace.span(ext.A.field, off, vecs)
    return subs


def connes_complex(a: Algebra, N: int) -> ChainComplex:
    """C^lambda_n = A^{(x) n+1} / (1 - t) with the induced b (characteristic 0)."""
    if a.field.characteristic != 0:
        raise ValueError("the lambda complex only computes HC in characteristic 0")
    ch = hochschild_complex(a, None, N)
    subs = {}
    for n in ch.dims:
        t = cyclic_operator(a, n)
        subs[n] = Subspace.span(a.field, ch.dim(n), (Matrix.identity(a.field, ch.dim(n)) - t).cols)
    q, _ = quotient_by_subspaces(ch, subs, f"C^lambda({a.name})")
    return q


# ---------------------------------------------------------------- duals and cochains

def hom_dual_complex(c: ChainComplex) -> ChainComplex:
    """Degreewise dual, re-indexed homologically: D_{-n} = C_n^*, d = d^T.

    H_{-n}(D) is the n-th cohomology; the certified window is
    -certified_degree .. -lo.
    """
    dims = {-n: d for n, d in c.dims.items()}
    diffs = {-n + 1: c.d(n).T for n in range(c.lo + 1, c.hi + 1)}
    return ChainComplex(c.field, dims, diffs, -c.certified_from, f"Hom({c.name}, k)",
                        validate=False, certified_from=-c.certified_degree)


def cohomology_dims(c: ChainComplex) -> list:
    """Cohomology of a re-indexed cochain complex, listed from degree 0 up."""
    from .complexes import homology
    h = homology(c)
    return [h.dims[-n] for n in range(-c.certified_degree, -c.certified_from + 1)]


def ext_cochain_complex(x: Module, a: Algebra, z: Module, N: int, relative_to=None) -> ChainComplex:
    """Hom_A(CB(X; A; A), Z) = Hom_k(X (x) A^{(x)n}, Z) with the bar coboundary.

    X and Z are right modules.  Cochains are re-indexed homologically
    (degree -n).  With ``relative_to`` the subcomplex of cochains that kill
    the slide relations and are right B-linear in the last slot.
    """
    if x.right is None or z.right is None:
        raise ValueError("Ext cochains need right modules X and Z")
    ext = None
    if relative_to is not None:
        ext = _as_extension(relative_to)
        x, z, a = ext.adapt_module(x), ext.adapt_module(z), ext.A
    f = a.field
    p = f.characteristic
    dz = z.dim
    prod = _mult_table(a)
    ract = _action_tables(x.right, x.dim, left=False)
    zr = z.right
    words = {n: Words([x.dim] + [a.dim] * n) for n in range(N + 1)}

    def partial(t):
        # the terms of the coboundary that precompose with merges
        out = []
        n1 = len(t) - 1
        for zz, c in ract[t[0]][t[1]]:
            out.append(((zz,) + t[2:], c))
        for j in range(1, n1):
            s = _sign(j)
            for zz, c in prod[t[j]][t[j + 1]]:
                out.append((t[:j] + (zz,) + t[j + 2:], s * c))
        return out

    dims = {-n: len(words[n]) * dz for n in range(N + 1)}
    diffs = {}
    for n in range(N):
        # delta_n : C^n -> C^{n+1}; basis E_{t,zeta} at index t*dz + zeta
        src_w, tgt_w = words[n], words[n + 1]
        cols = [dict() for _ in range(len(src_w) * dz)]
        s_last = _sign(n + 1)
        for u in tgt_w:
            ui = tgt_w.index(u)
            for t, c in partial(u):
                ti = src_w.index(t)
                for zeta in range(dz):
                    col = cols[ti * dz + zeta]
                    k = ui * dz + zeta
                    y = col.get(k, 0) + c
                    col[k] = y % p if p else y
            ti = src_w.index(u[:-1])
            a_last = u[-1]
            for zeta in range(dz):
                col = cols[ti * dz + zeta]
                for zeta2, c in zr[a_last].cols[zeta].items():
                    k = ui * dz + zeta2
                    y = col.get(k, 0) + s_last * c
                    col[k] = y % p if p else y
        for col in cols:
            for k in [k for k, v in col.items() if not v]:
                del col[k]
        # delta_n goes from degree -n to -n-1, i.e. it is d_{-n} homologically
        diffs[-n] = Matrix(f, len(tgt_w) * dz, len(src_w) * dz, cols)
    cc = ChainComplex(f, dims, diffs, 0, f"Hom(CB(X;{a.name};A), Z)", certified_from=-(N - 1))
    if ext is None:
        return cc
    return subcomplex(cc, _relative_cochain_constraints(ext, x, z, words, N), cc.name + " rel")[0]


def _relative_cochain_constraints(ext: Extension, x: Module, z: Module, words: dict, N: int) -> dict:
    """Cochains killing slides and satisfying f(t b) = f(t) b."""
    a = ext.A
    f = a.field
    p = f.characteristic
    dz = z.dim
    prod = _mult_table(a)
    ract = _action_tables(x.right, x.dim, left=False)
    subs = {}
    for n in range(N + 1):
        w = words[n]
        nvar = len(w) * dz
        rows = []   # each row: dict over cochain coordinates
        junc = [(j, ract if j == 0 else prod, prod) for j in range(n)]
        for t in w:
            for rel in _slides(t, junc, ext.dB):
                vec: dict = {}
                for u, c in rel:
                    k = w.index(u)
                    vec[k] = (vec.get(k, 0) + c) % p if p else vec.get(k, 0) + c
                vec = {k: c for k, c in vec.items() if c}
                if not vec:
                    continue
                for zeta in range(dz):
                    rows.append({k * dz + zeta: c for k, c in vec.items()})
            last_tab = ract if n == 0 else prod
            for b in range(ext.dB):
                # f(t . b) - f(t) . b, componentwise in Z
                tb = [((t[:-1] + (zz,)), c) for zz, c in last_tab[t[-1]][b]]
                for zeta in range(dz):
                    row: dict = {}
                    for u, c in tb:
                        k = w.index(u) * dz + zeta
                        row[k] = row.get(k, 0) + c
                    ti = w.index(t)
                    for zeta2 in range(dz):
                        c = z.right[b].cols[zeta2].get(zeta, 0)
                        if c:
                            k = ti * dz + zeta2
                            row[k] = row.get(k, 0) - c
                    row = {k: (c % p if p else c) for k, c in row.items()}
                    row = {k: c for k, c in row.items() if c}
                    if row:
                        rows.append(row)
        cols = [dict() for _ in range(nvar)]
        for i, row in enumerate(rows):
            for k, c in row.items():
                cols[k][i] = c
        subs[-n] = kernel_basis(Matrix(f, len(rows), nvar, cols))
    return subs


# ---------------------------------------------------------------- Hochschild via the bar resolution

def bar_as_envelope_module(a: Algebra, n: int, env: Algebra) -> Module:
    """CB_n(A) = A^{(x) n+2} as a left A^e-module acting on the outer slots."""
    d = a.dim
    prod = _mult_table(a)
    words = Words([d] * (n + 2))
    mats = []
    for i in range(d):
        for j in range(d):
            def fn(t, i=i, j=j):
                out = []
                for z0, c0 in prod[i][t[0]]:
                    for z1, c1 in prod[t[-1]][j]:
                        out.append(((z0,) + t[1:-1] + (z1,), c0 * c1))
                return out
            mats.append(_matrix(a.field, words, words, fn))
    return Module(env, "left", len(words), left=mats, name=f"CB_{n}")


def hochschild_via_bar(a: Algebra, m: Module | None, N: int) -> ChainComplex:
    """M (x)_{A^e} CB_*(A), computed with ``tensor_over``-style relations."""
    if m is None:
        m = regular_module(a, "bi")
    env = enveloping_algebra(a)
    mr = envelope_right(m, env)
    cb = bar_complex(a, N)
    f = a.field
    dims, diffs, subs = {}, {}, {}
    for n in range(N + 1):
        cbn = bar_as_envelope_module(a, n, env)
        subs[n] = tensor_relations(env, mr, cbn)
        dims[n] = m.dim * cb.dim(n)
    for n in range(1, N + 1):
        dcb = cb.d(n)
        cols = []
        for mi in range(m.dim):
            for j in range(cb.dim(n)):
                cols.append({mi * cb.dim(n - 1) + k: c for k, c in dcb.cols[j].items()})
        diffs[n] = Matrix(f, dims[n - 1], dims[n], cols)
    tot = ChainComplex(f, dims, diffs, N - 1, f"M(x)CB({a.name})")
    return quotient_by_subspaces(tot, subs, f"M(x)_Ae CB({a.name})")[0]


# ---------------------------------------------------------------- filtrations

def _count_degrees(words: Words, slots: Sequence[int], outside: Callable) -> list:
    return [sum(1 for s in slots if outside(t[s])) for t in words]


def g_filtration(ext: Extension, m: Module | None, N: int, coefficient_free: bool = False) -> FilteredComplex:
    """G_p: words with at most p slots outside B.

    With coefficients M the slots counted are a_1..a_n; the coefficient-free
    variant counts all n+1 slots of A^{(x) n+1}.
    """
    a = ext.A
    if coefficient_free:
        c = hochschild_complex(a, None, N, name=f"CH({a.name})")
        degs = {n: _count_degrees(Words([a.dim] * (n + 1)), range(n + 1), lambda s: s >= ext.dB)
                for n in c.dims}
    else:
        ma = ext.adapt_module(m)
        c = hochschild_complex(a, ma, N, name=f"CH({a.name},M)")
        degs = {n: _count_degrees(Words([m.dim] + [a.dim] * n), range(1, n + 1), lambda s: s >= ext.dB)
                for n in c.dims}
    return FilteredComplex.from_degrees(c, degs, "G")


def g_filtration_cyclic_total(ext: Extension, N: int) -> FilteredComplex:
    """G on the cyclic total complex of A (slot count is t-invariant)."""
    a = ext.A
    tot, _ = cyclic_total_complex(a, N)
    degs = {}
    for n in tot.dims:
        d = []
        for p in range(n + 1):
            d += _count_degrees(Words([a.dim] * (n - p + 1)), range(n - p + 1), lambda s: s >= ext.dB)
        degs[n] = d
    return FilteredComplex.from_degrees(tot, degs, "G")


def l_filtration(ext: Extension, x: Module, y: Module, N: int) -> FilteredComplex:
    """L_p on CB(X; A; Y): words with at most p middle slots outside B."""
    a = ext.A
    xa, ya = ext.adapt_module(x), ext.adapt_module(y)
    c = two_sided_bar(xa, a, ya, N)
    degs = {n: _count_degrees(Words([x.dim] + [a.dim] * n + [y.dim]), range(1, n + 1), lambda s: s >= ext.dB)
            for n in c.dims}
    return FilteredComplex.from_degrees(c, degs, "L")


def ideal_extension(i: Ideal) -> Extension:
    """Adapted basis of the ambient algebra with I spanned by the first vectors.

    I need not contain the unit, so this bypasses the subalgebra check.
    """
    a = i.ambient
    ext = Extension.__new__(Extension)
    f = a.field
    sub = i.space
    ext.original = a
    ext.incl = None
    ext.sub = sub
    ext.dB = sub.dim
    ext.complement = [j for j in range(a.dim) if j not in sub._rows]
    ext.new_basis = list(sub.basis) + [{j: 1} for j in ext.complement]
    ext.change = Matrix(f, a.dim, a.dim, ext.new_basis)
    labels = [a.vector_label(v) for v in sub.basis] + [a.labels[j] for j in ext.complement]
    mult = [[ext.to_new(a.product(u, v)) for v in ext.new_basis] for u in ext.new_basis]
    ext.A = Algebra(f, mult, ext.to_new(a.unit) if a.unit is not None else None, labels, a.name)
    ext.B = None
    ext.B_in_A = None
    return ext


def f_filtration(i: Ideal, x: Module, y: Module, N: int) -> FilteredComplex:
    """F_p on CB(X; B; Y): words with at most p middle slots outside I."""
    if not i.annihilates(x) or not i.annihilates(y):
        raise ValueError("the ideal must act by zero on X and Y")
    ext = ideal_extension(i)
    b = ext.A
    xa, ya = ext.adapt_module(x), ext.adapt_module(y)
    c = two_sided_bar(xa, b, ya, N)
    degs = {n: _count_degrees(Words([x.dim] + [b.dim] * n + [y.dim]), range(1, n + 1), lambda s: s >= ext.dB)
            for n in c.dims}
    return FilteredComplex.from_degrees(c, degs, "F")


def build_filtration(kind: str, data: dict, N: int) -> FilteredComplex:
    """kind F: data {ideal, x, y}; L: {extension, x, y}; G: {extension, m} or {extension, cyclic: True}."""
    if kind == "F":
        return f_filtration(data["ideal"], data["x"], data["y"], N)
    ext = _as_extension(data["extension"])
    if kind == "L":
        return l_filtration(ext, data["x"], data["y"], N)
    if kind == "G":
        if data.get("cyclic"):
            return g_filtration(ext, None, N, coefficient_free=True)
        return g_filtration(ext, data["m"], N)
    raise ValueError(f"unknown filtration kind {kind!r}")


# ---------------------------------------------------------------- induced maps

def _word_inclusion(field: Field, src_words: Words, tgt_words: Words) -> Matrix:
    """Words over smaller alphabets mapped to the same words over larger ones."""
    return _matrix(field, src_words, tgt_words, lambda t: [(t, 1)])


def hochschild_inclusion_map(ext: Extension, m: Module | None, N: int, target: ChainComplex | None = None):
    """CH(B, M) -> CH(A, M) in adapted bases; returns (source, target, map).

    ``target`` may be an already built CH(A, M) in the same adapted basis.
    """
    a, b = ext.A, ext.B
    ma = ext.adapt_module(m) if m is not None else None
    tgt = target if target is not None else hochschild_complex(a, ma, N, name=f"CH({a.name},M)")
    if m is None:
        src = hochschild_complex(b, None, N, name=f"CH({b.name})")
        dm_b, dm_a = b.dim, a.dim
    else:
        src = hochschild_complex(b, ext.restrict(ma), N, name=f"CH({b.name},M)")
        dm_b = dm_a = m.dim
    comps = {n: _word_inclusion(a.field, Words([dm_b] + [b.dim] * n), Words([dm_a] + [a.dim] * n))
             for n in range(N + 1)}
    return src, tgt, ChainMap(src, tgt, comps, name="CH(B)->CH(A)")


def bar_inclusion_map(ext: Extension, x: Module, y: Module, N: int, target: ChainComplex | None = None):
    """CB(X; B; Y) -> CB(X; A; Y) in adapted bases."""
    a, b = ext.A, ext.B
    xa, ya = ext.adapt_module(x), ext.adapt_module(y)
    tgt = target if target is not None else two_sided_bar(xa, a, ya, N)
    src = two_sided_bar(ext.restrict(xa), b, ext.restrict(ya), N, name=f"CB(X;{b.name};Y)")
    comps = {n: _word_inclusion(a.field, Words([x.dim] + [b.dim] * n + [y.dim]),
                                Words([x.dim] + [a.dim] * n + [y.dim])) for n in range(N + 1)}
    return src, tgt, ChainMap(src, tgt, comps, name="CB(B)->CB(A)")


def tensor_power(phi: Matrix, k: int) -> Matrix:
    """phi^{(x) k} on words."""
    f = phi.field
    src = Words([phi.ncols] * k)
    tgt = Words([phi.nrows] * k)

    def fn(t):
        terms = [((), 1)]
        for s in t:
            terms = [(u + (z,), c * x) for u, c in terms for z, x in phi.cols[s].items()]
        return terms
    return _matrix(f, src, tgt, fn)


def hochschild_morphism_map(phi: AlgebraMorphism, N: int):
    """phi_*: CH(B) -> CH(A) for any algebra map; returns (source, target, map)."""
    src = hochschild_complex(phi.source, None, N, name=f"CH({phi.source.name})")
    tgt = hochschild_complex(phi.target, None, N, name=f"CH({phi.target.name})")
    comps = {n: tensor_power(phi.matrix, n + 1) for n in range(N + 1)}
    return src, tgt, ChainMap(src, tgt, comps, name="phi_*")


def cyclic_inclusion_map(ext: Extension, N: int):
    """Tot CC(B) -> Tot CC(A) induced by the inclusion."""
    a, b = ext.A, ext.B
    src, _ = cyclic_total_complex(b, N)
    tgt, _ = cyclic_total_complex(a, N)
    comps = {}
    for n in range(N + 1):
        blocks = [[None] * (n + 1) for _ in range(n + 1)]
        rd, cd = [], []
        for p in range(n + 1):
            q = n - p
            blocks[p][p] = _word_inclusion(a.field, Words([b.dim] * (q + 1)), Words([a.dim] * (q + 1)))
            rd.append(a.dim ** (q + 1))
            cd.append(b.dim ** (q + 1))
        comps[n] = Matrix.block(a.field, blocks, rd, cd)
    return src, tgt, ChainMap(src, tgt, comps, name="Tot CC(B)->Tot CC(A)")


def induced_inclusion_map(kind: str, data: dict, N: int):
    """Dispatch: hochschild {extension, m}, bar {extension, x, y}, cyclic {extension}, morphism {phi}."""
    if kind == "morphism":
        return hochschild_morphism_map(data["phi"], N)[2]
    ext = _as_extension(data["extension"])
    if kind == "hochschild":
        return hochschild_inclusion_map(ext, data.get("m"), N)[2]
    if kind == "bar":
        return bar_inclusion_map(ext, data["x"], data["y"], N)[2]
    if kind == "cyclic":
        return cyclic_inclusion_map(ext, N)[2]
    raise ValueError(f"unknown map kind {kind!r}")


# ---------------------------------------------------------------- requests

KINDS = ("bar", "wodzicki_bar", "two_sided_bar", "relative_two_sided_bar", "hochschild",
         "relative_hochschild", "normalized_relative_hochschild", "cyclic_total",
         "relative_cyclic_total", "hom_dual")


@dataclass
class ComplexRequest:
    kind: str
    algebra: Algebra | None = None
    N: int = 4
    sub: object = None               # inclusion morphism or Extension
    ideal: Ideal | None = None
    x: Module | None = None
    y: Module | None = None
    m: Module | None = None
    complex: ChainComplex | None = None
    options: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown complex kind {self.kind!r}")
        if self.x is not None and self.x.right is None:
            raise ValueError("X must be a right module")
        if self.y is not None and self.y.left is None:
            raise ValueError("Y must be a left module")
        if self.m is not None and self.m.parity != "bi":
            raise ValueError("M must be a bimodule")

    def build(self) -> ChainComplex:
        k, a, N = self.kind, self.algebra, self.N
        if k == "bar":
            return bar_complex(a, N)
        if k == "wodzicki_bar":
            return wodzicki_bar(self.ideal, N)
        if k == "two_sided_bar":
            return two_sided_bar(self.x, a, self.y, N)
        if k == "relative_two_sided_bar":
            return two_sided_bar(self.x, a, self.y, N, relative_to=self.sub,
                                 normalized=self.options.get("normalized", False))
        if k == "hochschild":
            return hochschild_complex(a, self.m, N)
        if k == "relative_hochschild":
            return hochschild_complex(a, self.m, N, relative_to=self.sub)
        if k == "normalized_relative_hochschild":
            return hochschild_complex(a, self.m, N, relative_to=self.sub, normalized=True)
        if k == "cyclic_total":
            return cyclic_total_complex(a, N)[0]
        if k == "relative_cyclic_total":
            return cyclic_total_complex(a, N, relative_to=self.sub)[0]
        return hom_dual_complex(self.complex)
