"""Exact linear algebra over the rationals and prime fields.

Vectors are sparse dicts ``{index: scalar}`` with no zero entries.  A
:class:`Matrix` keeps its columns as such dicts, so the chain groups of
bar-type complexes (which have very few nonzeros per column) stay cheap.
The public operations never expose the storage choice.

Echelon bases use the *last* nonzero coordinate of a vector as its pivot
and scale that entry to 1.  Elimination processes columns left to right,
so every basis and every report derived from one is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """The rationals (characteristic 0) or F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if isinstance(characteristic, bool) or not isinstance(characteristic, int):
            raise ValueError(f"characteristic must be an integer, got {characteristic!r}")
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __call__(self, x):
        """Coerce an int, Fraction or ``"p/q"`` string into the field."""
        p = self.characteristic
        if isinstance(x, bool):
            raise ValueError(f"not a field element: {x!r}")
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"not a rational number: {x!r}") from exc
        if isinstance(x, int):
            return x % p if p else x
        if isinstance(x, Fraction):
            if p == 0:
                return x.numerator if x.denominator == 1 else x
            if x.denominator % p == 0:
                raise ValueError(f"{x} has denominator divisible by {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        raise ValueError(f"not a field element: {x!r}")

    def inv(self, x):
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        return Fraction(1) / x

    def to_json(self, x):
        """Integers stay integers; proper fractions become ``"p/q"``."""
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return x


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------- vectors

def _axpy(v: dict, c, w: dict, p: int) -> None:
    """v += c*w in place."""
    if p:
        for k, x in w.items():
            y = (v.get(k, 0) + c * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            y = v.get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)


def _scale(v: dict, c, p: int) -> dict:
    if p:
        return {k: x * c % p for k, x in v.items()}
    return {k: x * c for k, x in v.items()}


def sparse(dense: Sequence, field: Field = QQ) -> dict:
    """Dense coordinate list -> sparse dict."""
    out = {}
    for i, x in enumerate(dense):
        y = field(x)
        if y:
            out[i] = y
    return out


def dense(vec: dict, n: int) -> list:
    out = [0] * n
    for k, x in vec.items():
        out[k] = x
    return out


def add_vectors(vectors: Iterable[tuple], p: int) -> dict:
    """Sum of ``(coefficient, vector)`` pairs."""
    out: dict = {}
    for c, v in vectors:
        if c:
            _axpy(out, c, v, p)
    return out


class _Echelon:
    """Incremental echelon basis keyed by pivot (last nonzero index).

    With ``track`` each stored vector carries the combination of inserted
    inputs that produced it.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.p = field.characteristic
        self.track = track
        self.rows: dict = {}
        self.combos: dict = {}

    def head_reduce(self, v: dict, combo: dict | None = None):
        rows, p = self.rows, self.p
        while v:
            k = max(v)
            row = rows.get(k)
            if row is None:
                break
            c = v[k]
            _axpy(v, -c, row, p)
            if combo is not None:
                _axpy(combo, -c, self.combos[k], p)
        return v, combo

    def full_reduce(self, v: dict, combo: dict | None = None):
        """Clear every pivot coordinate of v; returns the remainder."""
        rows, p = self.rows, self.p
        heap = [-k for k in v if k in rows]
        heapify(heap)
        while heap:
            k = -heappop(heap)
            c = v.get(k)
            if c is None:
                continue
            row = rows[k]
            _axpy(v, -c, row, p)
            if combo is not None:
                _axpy(combo, -c, self.combos[k], p)
            for j in row:
                if j < k and j in v and j in rows:
                    heappush(heap, -j)
        return v, combo

    def insert(self, v: dict, combo: dict | None = None):
        """Insert v; returns None if independent, else the dependency combo."""
        v = dict(v)
        if self.track and combo is not None:
            combo = dict(combo)
        v, combo = self.head_reduce(v, combo if self.track else None)
        if not v:
            return combo if self.track else {}
        k = max(v)
        inv = self.field.inv(v[k])
        self.rows[k] = _scale(v, inv, self.p)
        if self.track:
            self.combos[k] = _scale(combo, inv, self.p)
        return None


# ---------------------------------------------------------------- matrices

class Matrix:
    """An immutable exact matrix, stored as sparse columns."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field: Field, nrows: int, ncols: int, cols: Sequence[dict]):
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = tuple(cols)

    # constructors
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError(f"row {i} has length {len(row)}, expected {ncols}")
            for j, x in enumerate(row):
                y = field(x)
                if y:
                    cols[j][i] = y
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, cols: Sequence[dict]) -> "Matrix":
        return cls(field, nrows, len(cols), [dict(c) for c in cols])

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{j: 1} for j in range(n)])

    @classmethod
    def block(cls, field: Field, blocks: Sequence[Sequence["Matrix | None"]],
              row_dims: Sequence[int], col_dims: Sequence[int]) -> "Matrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        roff = [0]
        for d in row_dims:
            roff.append(roff[-1] + d)
        cols = []
        for bj, cd in enumerate(col_dims):
            for j in range(cd):
                col = {}
                for bi, rd in enumerate(row_dims):
                    blk = blocks[bi][bj]
                    if blk is None:
                        continue
                    if blk.nrows != rd or blk.ncols != cd:
                        raise ValueError(f"block ({bi},{bj}) has wrong shape")
                    for i, x in blk.cols[j].items():
                        col[roff[bi] + i] = x
                cols.append(col)
        return cls(field, roff[-1], len(cols), cols)

    # access
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, 0)

    def column(self, j: int) -> dict:
        return dict(self.cols[j])

    def to_rows(self) -> list:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def nonzeros(self) -> int:
        return sum(len(c) for c in self.cols)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, nnz={self.nonzeros()})"

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.field == other.field and self.cols == other.cols)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(c.items())) for c in self.cols)))

    def is_zero(self) -> bool:
        return not any(self.cols)

    # arithmetic
    def apply(self, v: dict) -> dict:
        p = self.field.characteristic
        out: dict = {}
        for j, c in v.items():
            _axpy(out, c, self.cols[j], p)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.field.characteristic
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, 1, b, p)
            cols.append(c)
        return Matrix(self.field, self.nrows, self.ncols, cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.characteristic
        if not c:
            return Matrix.zero(self.field, self.nrows, self.ncols)
        return Matrix(self.field, self.nrows, self.ncols, [_scale(col, c, p) for col in self.cols])

    @property
    def T(self) -> "Matrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return Matrix(self.field, self.ncols, self.nrows, cols)

    def submatrix(self, rows: Sequence[int] | None, cols: Sequence[int] | None) -> "Matrix":
        """Restrict to the given row and column indices, in the given order."""
        if cols is None:
            cols = range(self.ncols)
        if rows is None:
            return Matrix(self.field, self.nrows, len(cols), [dict(self.cols[j]) for j in cols])
        pos = {r: k for k, r in enumerate(rows)}
        out = []
        for j in cols:
            out.append({pos[i]: x for i, x in self.cols[j].items() if i in pos})
        return Matrix(self.field, len(rows), len(out), out)

    def rank(self) -> int:
        return rank(self)


# ---------------------------------------------------------------- subspaces

class Subspace:
    """A subspace of k^n held as an echelon basis keyed by pivot."""

    __slots__ = ("field", "ambient_dim", "_rows")

    def __init__(self, field: Field, ambient_dim: int, rows: dict):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows = rows

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[dict]) -> "Subspace":
        ech = _Echelon(field)
        for v in vectors:
            if v:
                ech.insert(v)
        return cls(field, ambient_dim, ech.rows)

    @classmethod
    def from_dense(cls, field: Field, vectors: Sequence[Sequence], ambient_dim: int | None = None) -> "Subspace":
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty spanning set")
            ambient_dim = len(vectors[0])
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            vecs.append(sparse(v, field))
        return cls.span(field, ambient_dim, vecs)

    @classmethod
    def coordinate(cls, field: Field, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        return cls(field, ambient_dim, {i: {i: 1} for i in indices})

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, {})

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls.coordinate(field, ambient_dim, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple:
        return tuple(sorted(self._rows))

    @property
    def basis(self) -> tuple:
        return tuple(dict(self._rows[k]) for k in sorted(self._rows))

    def dense_basis(self) -> list:
        return [dense(v, self.ambient_dim) for v in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.field)
        ech.rows = self._rows
        return ech

    def contains(self, v: dict) -> bool:
        rem, _ = self._echelon().head_reduce(dict(v))
        return not rem

    def __contains__(self, v) -> bool:
        if not isinstance(v, dict):
            v = sparse(v, self.field)
        return self.contains(v)

    def coordinates(self, v: dict) -> dict:
        """Coefficients of v against ``basis`` (v must lie in the span)."""
        p = self.field.characteristic
        pos = {k: i for i, k in enumerate(sorted(self._rows))}
        v = dict(v)
        out = {}
        while v:
            k = max(v)
            row = self._rows.get(k)
            if row is None:
                raise ValueError("vector is not in the subspace")
            c = v[k]
            out[pos[k]] = c
            _axpy(v, -c, row, p)
        return out

    def remainder(self, v: dict) -> dict:
        """Reduce v so that it vanishes on every pivot coordinate."""
        rem, _ = self._echelon().full_reduce(dict(v))
        return rem

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self._rows.values())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.dim == other.dim and self <= other)

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.dim > self.dim:
            self, other = other, self
        ech = _Echelon(self.field)
        ech.rows = dict(self._rows)
        for k in sorted(other._rows):
            ech.insert(other._rows[k])
        return Subspace(self.field, self.ambient_dim, ech.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        return preimage(None, other, within=self)

    __and__ = intersect

    def image(self, f: Matrix) -> "Subspace":
        return Subspace.span(self.field, f.nrows, (f.apply(self._rows[k]) for k in sorted(self._rows)))

    def is_coordinate(self) -> bool:
        return all(len(v) == 1 for v in self._rows.values())


def preimage(f: Matrix | None, target: Subspace, within: Subspace | None = None) -> Subspace:
    """{x in within : f(x) in target}; f = None means the identity."""
    field = target.field
    p = field.characteristic
    if within is None:
        n = f.ncols if f is not None else target.ambient_dim
        within = Subspace.full(field, n)
    tech = target._echelon()
    ech = _Echelon(field, track=True)
    keys = sorted(within._rows)
    found = []
    for idx, k in enumerate(keys):
        u = within._rows[k]
        y = f.apply(u) if f is not None else dict(u)
        r, _ = tech.full_reduce(y)
        dep = ech.insert(r, {idx: 1})
        if dep is not None:
            x: dict = {}
            for i, c in dep.items():
                _axpy(x, c, within._rows[keys[i]], p)
            found.append(x)
    return Subspace.span(field, within.ambient_dim, found)


class Subquotient:
    """U/V for subspaces V <= U, with a fixed coset basis."""

    def __init__(self, U: Subspace, V: Subspace, check: bool = True):
        if check and not V <= U:
            raise ValueError("denominator is not contained in numerator")
        self.U = U
        self.V = V
        vech = V._echelon()
        ech = _Echelon(U.field)
        for k in sorted(U._rows):
            r, _ = vech.full_reduce(dict(U._rows[k]))
            if r:
                ech.insert(r)
        self._ech = ech
        self._keys = sorted(ech.rows)
        self._pos = {k: i for i, k in enumerate(self._keys)}

    @property
    def dim(self) -> int:
        return len(self._keys)

    @property
    def representatives(self) -> tuple:
        return tuple(dict(self._ech.rows[k]) for k in self._keys)

    def coords(self, v: dict) -> dict:
        """Coordinates of the class of v (v must lie in U)."""
        p = self.U.field.characteristic
        r, _ = self.V._echelon().full_reduce(dict(v))
        out: dict = {}
        rows = self._ech.rows
        while r:
            k = max(r)
            row = rows.get(k)
            if row is None:
                raise ValueError("vector is not in the numerator subspace")
            c = r[k]
            out[self._pos[k]] = c
            _axpy(r, -c, row, p)
        return out


def coordinate_quotient(sub: Subspace):
    """Quotient of k^n by sub, using the non-pivot coordinates as basis.

    Returns (kept indices, projection matrix k^n -> k^n/sub).
    """
    n = sub.ambient_dim
    keep = [i for i in range(n) if i not in sub._rows]
    pos = {i: a for a, i in enumerate(keep)}
    cols = []
    for j in range(n):
        if j in pos:
            cols.append({pos[j]: 1})
        else:
            r = sub.remainder({j: 1})
            cols.append({pos[i]: x for i, x in r.items()})
    return keep, Matrix(sub.field, len(keep), n, cols)


def _as_subquotient(x) -> Subquotient:
    if isinstance(x, Subquotient):
        return x
    U, V = x
    return Subquotient(U, V)


def induced_map_on_subquotients(f: Matrix, src, dst) -> Matrix:
    """The map U1/V1 -> U2/V2 induced by f, in the chosen coset bases.

    ``src`` and ``dst`` are (U, V) pairs or :class:`Subquotient` objects.
    Raises ValueError if f(U1) is not inside U2 or f(V1) not inside V2.
    """
    s = _as_subquotient(src)
    t = _as_subquotient(dst)
    if f.ncols != s.U.ambient_dim or f.nrows != t.U.ambient_dim:
        raise ValueError("matrix shape does not match the subquotient ambients")
    for v in s.V._rows.values():
        if not t.V.contains(f.apply(v)):
            raise ValueError("f does not map the source denominator into the target denominator")
    for v in s.U._rows.values():
        if not t.U.contains(f.apply(v)):
            raise ValueError("f does not map the source numerator into the target numerator")
    cols = [t.coords(f.apply(w)) for w in s.representatives]
    return Matrix(f.field, t.dim, s.dim, cols)


# ---------------------------------------------------------------- operations

def rank(m: Matrix) -> int:
    ech = _Echelon(m.field)
    r = 0
    for col in m.cols:
        if col and ech.insert(col) is None:
            r += 1
    return r


def kernel_basis(m: Matrix) -> Subspace:
    """Null space; each basis vector has its pivot at a non-pivot column."""
    ech = _Echelon(m.field, track=True)
    rows = {}
    for j, col in enumerate(m.cols):
        dep = ech.insert(col, {j: 1})
        if dep is not None:
            rows[j] = dep
    return Subspace(m.field, m.ncols, rows)


def image_basis(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.cols)


class Solver:
    """Solve f(x) = y for a fixed matrix f, reusing one elimination."""

    def __init__(self, f: Matrix):
        self.f = f
        self._ech = _Echelon(f.field, track=True)
        for j, col in enumerate(f.cols):
            if col:
                self._ech.insert(col, {j: 1})

    def solve(self, y: dict):
        """A preimage of y, or None when y is not in the image."""
        p = self.f.field.characteristic
        rem, acc = self._ech.head_reduce(dict(y), {})
        if rem:
            return None
        return {k: (-c) % p if p else -c for k, c in acc.items()}


def solve(f: Matrix, y: dict):
    return Solver(f).solve(y)


def is_consistent(f: Matrix, y: dict) -> bool:
    return Solver(f).solve(y) is not None
