from hypothesis import given, strategies as st

import pytest

from hochjz.linalg import GF, QQ, Matrix, Subspace, image_basis, kernel_basis
from hochjz.complexes import (
    ChainComplex, ChainMap, FilteredComplex, check_exact_sequence, cone, dump_complex, homology,
    identity_map, load_complex, quotient_by_subspaces, quotient_complex, snake_les, spectral_pages,
    subcomplex, suspension, zero_map,
)
from tests.strategies import fields, matrices, small_ints
from tests.test_linalg import oracle_rank


def M(rows, f=QQ, ncols=None):
    return Matrix.from_rows(f, rows, ncols)


def interval(f=QQ):
    """k -> k identity in degrees 1 -> 0 (acyclic)."""
    return ChainComplex(f, {0: 1, 1: 1}, {1: M([[1]], f)}, certified_degree=1)


def point(f=QQ, n=0):
    return ChainComplex(f, {n: 1}, {}, certified_degree=n)


# ---- homology examples

def test_homology_examples():
    assert homology(interval()).dims == {0: 0, 1: 0}
    assert homology(point()).dims == {0: 1}
    c = ChainComplex(QQ, {0: 2, 1: 2, 2: 1}, {1: M([[1, 1], [0, 0]]), 2: M([[1], [-1]])})
    assert homology(c).dims == {0: 1, 1: 0, 2: 0}
    assert c.certified_degree == 1 and homology(c).table() == [1, 0]


def test_d_squared_rejected():
    with pytest.raises(ValueError):
        ChainComplex(QQ, {0: 1, 1: 1, 2: 1}, {1: M([[1]]), 2: M([[1]])})


def test_characteristic_matters():
    c2 = ChainComplex(GF(2), {0: 1, 1: 1}, {1: M([[2]], GF(2))}, certified_degree=1)
    c0 = ChainComplex(QQ, {0: 1, 1: 1}, {1: M([[2]])}, certified_degree=1)
    assert homology(c2).dims == {0: 1, 1: 1}
    assert homology(c0).dims == {0: 0, 1: 0}


def test_chain_map_check():
    c = interval()
    with pytest.raises(ValueError):
        ChainMap(c, c, {0: M([[1]]), 1: M([[0]])})


# ---- cones

def test_cone_of_identity_is_acyclic():
    c = ChainComplex(QQ, {0: 2, 1: 2, 2: 1}, {1: M([[1, 1], [0, 0]]), 2: M([[1], [-1]])}, certified_degree=2)
    k = cone(identity_map(c)).complex
    assert all(d == 0 for d in homology(k).table())


def test_cone_of_zero_is_sum_with_suspension():
    c = point()
    k = cone(zero_map(c, c)).complex
    h = homology(k)
    assert h.dims[0] == 1 and h.dims[1] == 1


def test_suspension_shifts():
    c = interval()
    s = suspension(c)
    assert s.lo == 1 and s.hi == 2 and s.d(2) == M([[-1]])
    assert s.certified_degree == c.certified_degree + 1


def test_cone_les_with_target_and_suspension():
    """A quasi-isomorphism has an acyclic cone."""
    s = ChainComplex(QQ, {0: 2, 1: 1}, {1: M([[1], [0]])}, certified_degree=1)
    t = point()
    f = ChainMap(s, t, {0: M([[0, 1]])})
    k = cone(f)
    h = homology(k.complex)
    # f_* on H_0: H_0(s) = k (second coord) maps isomorphically, so the cone is acyclic
    assert h.dims[0] == 0 and h.dims[1] == 0


# ---- quotients and subcomplexes

def test_quotient_by_everything_and_nothing():
    c = interval()
    q, _ = quotient_by_subspaces(c, {n: Subspace.full(QQ, c.dim(n)) for n in c.dims})
    assert q.dim_list() == [0, 0]
    q0, p0 = quotient_by_subspaces(c, {})
    assert q0.dim_list() == c.dim_list() and p0[1] == M([[1]])


def test_quotient_rejects_non_subcomplex():
    c = interval()
    with pytest.raises(ValueError):
        quotient_by_subspaces(c, {1: Subspace.full(QQ, 1)})


def test_subcomplex_examples():
    c = interval()
    k, inc = subcomplex(c, {0: Subspace.full(QQ, 1)})
    assert k.dim_list() == [1, 0] and homology(k).dims[0] == 1
    with pytest.raises(ValueError):
        subcomplex(c, {1: Subspace.full(QQ, 1)})


# ---- exact sequences

def test_check_exact_sequence_examples():
    assert check_exact_sequence([0, 1, 1, 0], [Matrix.zero(QQ, 1, 0), M([[1]]), Matrix.zero(QQ, 0, 1)])
    bad = check_exact_sequence([0, 1, 0], [Matrix.zero(QQ, 1, 0), Matrix.zero(QQ, 0, 1)])
    assert not bad and bad.failures[0][0] == 1
    nz = check_exact_sequence([1, 1, 1], [M([[1]]), M([[1]])])
    assert not nz and any("composite" in m for _, m in nz.failures)
    with pytest.raises(ValueError):
        check_exact_sequence([1, 2], [M([[1]])])


# ---- spectral sequences

def test_trivial_filtration_collapses_at_once():
    c = ChainComplex(QQ, {0: 2, 1: 2, 2: 1}, {1: M([[1, 1], [0, 0]]), 2: M([[1], [-1]])}, certified_degree=2)
    fc = FilteredComplex.from_degrees(c, {n: [0] * c.dim(n) for n in c.dims})
    ss = spectral_pages(fc)
    assert ss.table(1) == {(0, 0): 1}
    assert ss.collapse_page is not None and ss.convergence_mismatches() == []


def test_two_layer_filtration_has_a_d1():
    # C_1 = <a> in layer 1, C_0 = <b> in layer 0, d a = b
    c = interval()
    fc = FilteredComplex.from_degrees(c, {0: [0], 1: [1]})
    ss = spectral_pages(fc)
    assert ss.table(0) == {(0, 0): 1, (1, 0): 1}
    assert ss.rank_out(1, 1, 1) == 1 and ss.table(2) == {}
    assert ss.page_homology_mismatches(1) == []
    assert ss.collapse_page == 2


def test_filtration_must_be_subcomplexes():
    c = interval()
    with pytest.raises(ValueError):
        FilteredComplex.from_degrees(c, {0: [1], 1: [0]})


def test_dump_round_trip():
    c = ChainComplex(GF(3), {0: 2, 1: 1}, {1: M([[1], [2]], GF(3))}, certified_degree=1, name="x")
    c2 = load_complex(dump_complex(c))
    assert c2.dim_list() == c.dim_list() and c2.d(1) == c.d(1) and c2.field == c.field
    assert dump_complex(c2) == dump_complex(c)


# ---- random complexes

@st.composite
def complexes(draw, length=3):
    """C_length -> ... -> C_0 built so that d.d = 0: each d_{n+1} lands in ker d_n."""
    f = draw(fields)
    dims = [draw(st.integers(0, 4)) for _ in range(length + 1)]
    ent = small_ints if f.characteristic == 0 else st.integers(0, f.characteristic - 1)
    diffs = {}
    for n in range(1, length + 1):
        if n == 1:
            rows = [[draw(ent) for _ in range(dims[1])] for _ in range(dims[0])]
            diffs[1] = Matrix.from_rows(f, rows, dims[1])
            continue
        ker = kernel_basis(diffs[n - 1]).basis
        coeff = [[draw(ent) for _ in range(dims[n])] for _ in range(len(ker))]
        cols = []
        for j in range(dims[n]):
            v = {}
            for i, kv in enumerate(ker):
                c = f(coeff[i][j])
                for idx, x in kv.items():
                    v[idx] = f(v.get(idx, 0) + c * x)
            cols.append({i: x for i, x in v.items() if x})
        diffs[n] = Matrix(f, dims[n - 1], dims[n], cols)
    return ChainComplex(f, dict(enumerate(dims)), diffs, certified_degree=length)


@st.composite
def sub_complexes(draw, c):
    """Subcomplex generated by random vectors, built from the top degree down."""
    f = c.field
    ent = small_ints if f.characteristic == 0 else st.integers(0, f.characteristic - 1)
    subs = {}
    below = None
    for n in range(c.hi, c.lo - 1, -1):
        gens = [{j: f(draw(ent)) for j in range(c.dim(n))} for _ in range(draw(st.integers(0, 2)))]
        gens = [{j: x for j, x in g.items() if x} for g in gens]
        s = Subspace.span(f, c.dim(n), gens)
        if below is not None:
            s = s + below
        subs[n] = s
        below = s.image(c.d(n)) if n > c.lo else None
    return subs


@given(complexes())
def test_homology_against_rank_oracle(c):
    h = homology(c)
    for n in c.dims:
        r_in = oracle_rank(c.d(n + 1)) if n < c.hi else 0
        r_out = oracle_rank(c.d(n)) if n > c.lo else 0
        assert h.dims[n] == c.dim(n) - r_in - r_out


@given(complexes())
def test_euler_characteristic(c):
    h = homology(c)
    assert sum((-1) ** n * c.dim(n) for n in c.dims) == sum((-1) ** n * h.dims[n] for n in c.dims)


@given(complexes())
def test_cone_of_identity_acyclic_random(c):
    k = cone(identity_map(c)).complex
    assert all(d == 0 for n, d in homology(k).dims.items() if n <= k.certified_degree)


@given(st.data())
def test_snake_les_is_exact(data):
    c = data.draw(complexes())
    subs = data.draw(sub_complexes(c))
    k, inc = subcomplex(c, subs)
    les = snake_les(inc)
    assert les.report.ok, les.report.failures


@given(st.data())
def test_quotient_matches_cone_of_inclusion(data):
    """For an injective map the cone and the quotient have the same homology."""
    c = data.draw(complexes())
    subs = data.draw(sub_complexes(c))
    _, inc = subcomplex(c, subs)
    q = quotient_complex(inc).complex
    k = cone(inc).complex
    hq, hk = homology(q), homology(k)
    top = min(q.certified_degree, k.certified_degree)
    for n in range(c.lo, top + 1):
        assert hq.dims[n] == hk.dims[n]


@given(st.data())
def test_spectral_sequence_converges(data):
    c = data.draw(complexes())
    subs = data.draw(sub_complexes(c))
    # two-step filtration F_0 = subcomplex, F_1 = everything
    fc = FilteredComplex(c, {(0, n): subs[n] for n in c.dims}, 0, 1)
    ss = spectral_pages(fc)
    assert ss.collapse_page is not None
    assert ss.convergence_mismatches() == []
    for r in (0, 1):
        assert ss.page_homology_mismatches(r) == []


@given(matrices(max_rows=4, max_cols=4))
def test_image_and_kernel_as_complex(m):
    """A single map as a two-term complex: H_1 = ker, H_0 = coker."""
    c = ChainComplex(m.field, {0: m.nrows, 1: m.ncols}, {1: m}, certified_degree=1)
    h = homology(c)
    assert h.dims[1] == kernel_basis(m).dim
    assert h.dims[0] == m.nrows - image_basis(m).dim
