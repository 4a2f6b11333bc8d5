import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Rational
from sympy.polys.domains import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from hochjz.linalg import (
    GF, QQ, Field, Matrix, Subquotient, Subspace, coordinate_quotient, image_basis,
    induced_map_on_subquotients, kernel_basis, preimage, rank, solve, sparse,
)
from tests.strategies import matrices


def oracle_rank(m: Matrix) -> int:
    """Rank from sympy's domain matrices, an independent elimination."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    p = m.field.characteristic
    dom = SymGF(p) if p else SymQQ
    rows = m.to_rows()
    if p:
        data = [[dom(int(x)) for x in row] for row in rows]
    else:
        data = [[dom.from_sympy(Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else Rational(x))
                 for x in row] for row in rows]
    return DomainMatrix(data, (m.nrows, m.ncols), dom).rank()


def M(rows, f=QQ):
    return Matrix.from_rows(f, rows)


# ---- fields

def test_field_rejects_composite_and_negative():
    for bad in (1, 4, -3, 9):
        with pytest.raises(ValueError):
            Field(bad)
    assert Field(7).characteristic == 7


def test_field_coercion():
    assert QQ("3/6") == Fraction(1, 2)
    assert GF(5)("1/2") == 3
    assert GF(3)(-1) == 2
    with pytest.raises(ValueError):
        GF(3)("1/3")
    with pytest.raises(ValueError):
        QQ("x")


# ---- rank / kernel / image examples

def test_rank_examples():
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.identity(QQ, 4)) == 4
    assert rank(M([[1, 1], [1, 0]], GF(2))) == 2


def test_rank_depends_on_field():
    m = [[1, 1], [1, -1]]
    assert rank(M(m, QQ)) == 2
    assert rank(M(m, GF(2))) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.zero(QQ, 3, 3)).dim == 3
    assert kernel_basis(Matrix.identity(QQ, 3)).dim == 0
    k = kernel_basis(M([[1, 2], [2, 4]]))
    assert k == Subspace.span(QQ, 2, [{0: -2, 1: 1}])
    assert k.basis == ({0: -2, 1: 1},)


def test_image_examples():
    assert image_basis(Matrix.zero(QQ, 3, 2)).dim == 0
    assert image_basis(Matrix.identity(QQ, 3)) == Subspace.full(QQ, 3)
    assert image_basis(M([[1, 2], [2, 4]])) == Subspace.span(QQ, 2, [{0: 1, 1: 2}])


def test_pivot_is_last_nonzero_and_scaled():
    s = Subspace.span(QQ, 3, [{0: 2, 2: 4}])
    assert s.pivots == (2,)
    assert s.basis == ({0: Fraction(1, 2), 2: 1},)


def test_solve_and_preimage():
    f = M([[1, 0, 1], [0, 1, 1]])
    x = solve(f, {0: 2, 1: 3})
    assert f.apply(x) == {0: 2, 1: 3}
    g = M([[1, 2], [2, 4]])
    assert solve(g, {0: 1}) is None
    pre = preimage(g, Subspace.zero(QQ, 2))
    assert pre == kernel_basis(g)


def test_coordinate_quotient():
    sub = Subspace.span(QQ, 3, [{0: 1, 2: 1}])
    keep, proj = coordinate_quotient(sub)
    assert keep == [0, 1]
    assert proj.apply({0: 1, 2: 1}) == {}
    assert rank(proj) == 2


# ---- subquotients

def test_induced_identity_and_zero():
    U = Subspace.full(QQ, 3)
    V = Subspace.span(QQ, 3, [{0: 1}])
    ind = induced_map_on_subquotients(Matrix.identity(QQ, 3), (U, V), (U, V))
    assert ind == Matrix.identity(QQ, 2)
    z = induced_map_on_subquotients(Matrix.identity(QQ, 3), (V, V), (U, V))
    assert z.shape == (2, 0)


def test_induced_rejects_bad_map():
    U = Subspace.span(QQ, 2, [{0: 1}])
    f = M([[0, 0], [1, 0]])
    with pytest.raises(ValueError):
        induced_map_on_subquotients(f, (U, Subspace.zero(QQ, 2)), (U, Subspace.zero(QQ, 2)))


def test_subquotient_rejects_bad_pair():
    with pytest.raises(ValueError):
        Subquotient(Subspace.zero(QQ, 2), Subspace.full(QQ, 2))


# ---- properties

@given(matrices())
def test_rank_matches_oracle(m):
    assert rank(m) == oracle_rank(m)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.ncols
    assert image_basis(m).dim == rank(m)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m.T) == rank(m)


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutations(m, rnd):
    rows = m.to_rows()
    rnd.shuffle(rows)
    cols = list(range(m.ncols))
    rnd.shuffle(cols)
    permuted = Matrix.from_rows(m.field, [[r[c] for c in cols] for r in rows], m.ncols)
    assert rank(permuted) == rank(m)


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert m.apply(v) == {}


@given(matrices(max_rows=4, max_cols=4), st.data())
def test_induced_map_of_composite(f, data):
    """Induced map of g.f equals induced(g) . induced(f) on honest subquotients."""
    fld = f.field
    g = data.draw(matrices(field=fld, max_rows=4, max_cols=4).filter(lambda g: g.ncols == f.nrows))
    n0 = f.ncols
    # U1 = everything, V1 = ker f; then f(U1) = im f, f(V1) = 0
    U1, V1 = Subspace.full(fld, n0), kernel_basis(f)
    U2, V2 = image_basis(f), Subspace.zero(fld, f.nrows)
    U3, V3 = U2.image(g), Subspace.zero(fld, g.nrows)
    a = induced_map_on_subquotients(f, (U1, V1), (U2, V2))
    b = induced_map_on_subquotients(g, (U2, V2), (U3, V3))
    c = induced_map_on_subquotients(g @ f, (U1, V1), (U3, V3))
    assert b @ a == c


@given(matrices(), matrices())
def test_subspace_sum_and_intersection(a, b):
    if a.field != b.field or a.nrows != b.nrows:
        return
    A, B = image_basis(a), image_basis(b)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    assert A <= A + B and A.intersect(B) <= B


def test_sparse_helper():
    assert sparse([0, 2, 0], QQ) == {1: 2}
    assert sparse([3, 1], GF(3)) == {1: 1}


def test_deterministic_bases():
    rnd = random.Random(0)
    rows = [[rnd.randint(-2, 2) for _ in range(6)] for _ in range(5)]
    m1, m2 = M(rows), M(rows)
    assert kernel_basis(m1).basis == kernel_basis(m2).basis
    assert image_basis(m1).basis == image_basis(m2).basis
