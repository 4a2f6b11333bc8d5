import pytest
from hypothesis import given, strategies as st

from hochjz.algebra import (
    Algebra, AlgebraMorphism, Ideal, Module, RadicalUnavailable, check_rflat, character_module, dual_module,
    enveloping_algebra, identity_morphism, is_flat, is_projective, quotient_algebra, quotient_bimodule,
    radical, regular_module, restrict_module, subalgebra_inclusion, tensor_over, validate_algebra,
    validate_module, zero_ideal,
)
from hochjz.linalg import GF, QQ, Matrix, Subspace
from hochjz.presets import (
    build_preset, corpus, cyclic_group_table, dual_numbers, ground_field, monoid_algebra, product, scenario,
    truncated_polynomial, upper_triangular,
)
from tests.strategies import fields


def span(a, vecs):
    return Subspace.from_dense(a.field, vecs, a.dim)


# ---- validation

def test_validate_ground_field_and_t2():
    assert validate_algebra(ground_field())
    assert validate_algebra(upper_triangular(2).algebra)


def test_validate_reports_first_bad_triple():
    """Unit e0; e1 e2 = e3 and e3 e3 = e3, so (e1 e2) e3 = e3 but e1 (e2 e3) = 0."""
    d = 4
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        mult[0][i] = {i: 1}
        mult[i][0] = {i: 1}
    mult[1][2] = {3: 1}
    mult[3][3] = {3: 1}
    a = Algebra(QQ, mult, {0: 1}, ["e0", "e1", "e2", "e3"])
    rep = validate_algebra(a)
    assert not rep and rep.kind == "associativity"
    assert rep.triple == (1, 2, 3)
    assert "(e1*e2)*e3" in rep.message


def test_unit_violation():
    a = Algebra(QQ, [[{0: 1}, {}], [{}, {1: 1}]], {0: 1})
    rep = validate_algebra(a)
    assert not rep and rep.kind == "unit"


@given(fields, st.integers(1, 4))
def test_presets_validate(f, n):
    assert validate_algebra(truncated_polynomial(n, f))
    assert validate_algebra(product(n, f))
    assert validate_algebra(upper_triangular(min(n, 3), f).algebra)


def test_build_preset_examples():
    d = build_preset("truncated_polynomial", n=2)
    assert d.dim == 2 and d.mult[1][1] == {}
    t = build_preset("upper_triangular", n=2)
    assert t.algebra.dim == 3 and t.diagonal.source.dim == 2
    assert t.strict_upper.space == span(t.algebra, [[0, 1, 0]])
    g = build_preset("monoid_algebra", table=cyclic_group_table(2)).algebra
    assert g.dim == 2 and g.mult[1][1] == {0: 1}


def test_monoid_algebra_over_t2():
    m = monoid_algebra(cyclic_group_table(2), upper_triangular(2).algebra)
    assert m.algebra.dim == 6 and m.inclusion.is_injective


def test_monoid_table_rejected():
    with pytest.raises(ValueError):
        monoid_algebra([[0, 0], [1, 0]])


# ---- morphisms, ideals, quotients

def test_morphism_kinds():
    sc = scenario("kxk-proj-k")
    assert sc.morphism.kind == "epimorphism"
    assert scenario("t2-diag").morphism.kind == "inclusion"
    assert scenario("t2-proj-diag").morphism.kind == "general"
    k = ground_field()
    with pytest.raises(ValueError):
        AlgebraMorphism(k, product(2), Matrix(QQ, 2, 1, [{0: 1}]))   # unit not preserved


def test_quotient_algebra_examples():
    t = upper_triangular(2)
    q, proj = quotient_algebra(t.algebra, t.strict_upper)
    assert q.dim == 2 and validate_algebra(q)
    assert proj({1: 1}) == {}
    assert q.mult[0][1] == {} and q.mult[0][0] == {0: 1}      # k x k
    a = t.algebra
    q0, p0 = quotient_algebra(a, zero_ideal(a))
    assert q0.dim == a.dim and p0.matrix == Matrix.identity(QQ, a.dim)
    kk = product(2)
    q1, _ = quotient_algebra(kk, Ideal(kk, span(kk, [[1, 0]])))
    assert q1.dim == 1 and q1.mult[0][0] == {0: 1}


def test_ideal_check():
    t = upper_triangular(2).algebra
    with pytest.raises(ValueError):
        Ideal(t, span(t, [[1, 0, 0]]))


def test_subalgebra_inclusion_examples():
    t = upper_triangular(2).algebra
    d = subalgebra_inclusion(t, span(t, [[1, 0, 0], [0, 0, 1]]))
    assert d.source.dim == 2 and validate_algebra(d.source)
    k = subalgebra_inclusion(t, span(t, [[1, 0, 1]]))
    assert k.source.dim == 1
    n = subalgebra_inclusion(t, span(t, [[0, 1, 0], [1, 0, 1]]))
    assert n.source.dim == 2 and validate_algebra(n.source)
    with pytest.raises(ValueError):
        subalgebra_inclusion(t, span(t, [[0, 1, 0]]))


# ---- modules

def test_quotient_bimodule_examples():
    g = monoid_algebra(cyclic_group_table(2))
    assert quotient_bimodule(g.inclusion).dim == 1
    q = quotient_bimodule(scenario("t2-diag").morphism)
    assert q.dim == 1
    # D basis: e11, e22 ; class x of e12
    e11, e22 = 0, 1
    assert q.left[e11].to_rows() == [[1]] and q.left[e22].to_rows() == [[0]]
    assert q.right[e22].to_rows() == [[1]] and q.right[e11].to_rows() == [[0]]
    t = upper_triangular(2).algebra
    assert quotient_bimodule(identity_morphism(t)).dim == 0


def test_enveloping_algebra_dims():
    assert enveloping_algebra(ground_field()).dim == 1
    e = enveloping_algebra(dual_numbers())
    assert e.dim == 4 and validate_algebra(e)
    assert validate_algebra(enveloping_algebra(upper_triangular(2).algebra))


def test_dual_module_examples():
    t = upper_triangular(2).algebra
    reg = regular_module(t, "left")
    d = dual_module(reg)
    assert d.parity == "right" and d.dim == 3 and validate_module(d)
    s1 = character_module(t, [1, 0, 0], "right")
    ds = dual_module(s1)
    assert ds.parity == "left"
    assert ds.left[0].to_rows() == [[1]] and ds.left[2].to_rows() == [[0]]


def test_tensor_over_diagonal():
    sc = scenario("t2-diag")
    t = sc.algebra
    d = sc.morphism
    x = restrict_module(regular_module(t, "right"), d)
    y = restrict_module(regular_module(t, "left"), d)
    assert tensor_over(d.source, x, y).dim == 4


def test_radical_examples():
    assert radical(product(2)).dim == 0
    t = upper_triangular(2).algebra
    assert radical(t).space == span(t, [[0, 1, 0]])
    assert radical(dual_numbers()).space == span(dual_numbers(), [[0, 1]])
    with pytest.raises(RadicalUnavailable):
        radical(dual_numbers(GF(2)))
    assert radical(dual_numbers(GF(2)), [[0, 1]]).dim == 1
    with pytest.raises(ValueError):
        radical(dual_numbers(GF(2)), [[1, 0]])


def test_flatness_examples():
    kk = product(2)
    assert is_flat(kk, character_module(kk, [1, 0], "left")).flat
    q = quotient_bimodule(scenario("t2-diag").morphism)
    assert is_flat(q.algebra, q, "left").flat
    d = dual_numbers()
    rep = is_flat(d, character_module(d, [1, 0], "left"))
    assert not rep.flat and rep.witness["left"] == [1]


def test_flatness_with_supplied_family():
    d = dual_numbers(GF(3))
    fam = [character_module(d, [1, 0], "right")]
    rep = is_flat(d, regular_module(d, "left"), "left", test_family=fam)
    assert rep.flat and rep.basis == "supplied family"


def test_rflat_examples():
    assert check_rflat(scenario("k-kxk").morphism).rflat
    assert check_rflat(scenario("dual-numbers").morphism).rflat
    assert check_rflat(scenario("t2-in-t2z2").morphism).rflat
    assert check_rflat(scenario("t2-diag").morphism).rflat
    r = check_rflat(scenario("dual-in-t2").morphism)
    assert not r.rflat and r.left.witness["left"] == [1]
    g = check_rflat(scenario("t2-proj-diag").morphism)
    assert g.replaced_by_image and g.rflat


def test_rflat_augmented_shortcut():
    g = monoid_algebra(cyclic_group_table(2), upper_triangular(2).algebra)
    a, incl = g.algebra, g.inclusion
    # augmentation B[G] -> B, b*g |-> b
    aug = Matrix(QQ, 3, 6, [{k // 2: 1} for k in range(6)])
    r = check_rflat(incl, AlgebraMorphism(a, incl.source, aug))
    assert r.augmented == {"A_flat": True, "equivalent": True}


def _corpus_modules():
    out = []
    for a, rights, lefts in corpus():
        for m in list(rights.values()) + list(lefts.values()):
            out.append((a, m))
        out.append((a, regular_module(a, "left")))
    return out


@pytest.mark.parametrize("a,m", _corpus_modules(), ids=lambda x: getattr(x, "name", ""))
def test_flat_agrees_with_projective(a, m):
    side = "left" if m.left is not None else "right"
    assert is_flat(a, m, side).flat == is_projective(a, m, side)


@pytest.mark.parametrize("a,m", _corpus_modules(), ids=lambda x: getattr(x, "name", ""))
def test_tensor_with_regular_cancels(a, m):
    if m.right is not None:
        assert tensor_over(a, m, regular_module(a, "left")).dim == m.dim
    else:
        assert tensor_over(a, regular_module(a, "right"), m).dim == m.dim


@pytest.mark.parametrize("a,m", _corpus_modules(), ids=lambda x: getattr(x, "name", ""))
def test_double_dual(a, m):
    dd = dual_module(dual_module(m))
    assert dd.parity == m.parity and dd.dim == m.dim
    assert dd.left == m.left and dd.right == m.right


@pytest.mark.parametrize("name", ["k-kxk", "t2-diag", "dual-numbers", "t2-in-t2z2"])
def test_rflat_implies_flat(name):
    incl = scenario(name).morphism
    assert check_rflat(incl).rflat
    a_as_b = restrict_module(regular_module(incl.target, "left"), incl)
    assert is_flat(incl.source, a_as_b, "left").flat


def test_bad_module_rejected():
    t = upper_triangular(2).algebra
    m = Module(t, "left", 1, [Matrix.from_rows(QQ, [[1]])] * 3)
    assert not validate_module(m)
    with pytest.raises(ValueError):
        character_module(t, [1, 1, 1], "left")
