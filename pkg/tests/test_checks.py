import json

import pytest

from hochjz import verify as V
from hochjz.algebra import Ideal, identity_morphism, regular_module
from hochjz.linalg import QQ, Subspace
from hochjz.presets import corpus, scenario
from hochjz.report import CheckReport, exit_code


# ---- H-unitality and the extension proposition

def test_hunital_unital_ideal_passes():
    sc = scenario("kxk-ideal")
    assert V.check_hunital(sc.ideal, 5).verdict == "pass"


def test_hunital_whole_algebra_passes():
    a = scenario("t2-diag").algebra
    assert V.check_hunital(Ideal(a, Subspace.full(QQ, a.dim)), 4).verdict == "pass"


def test_hunital_square_zero_fails_in_degree_zero():
    rep = V.check_hunital(scenario("t2-sqzero").ideal, 4)
    assert rep.verdict == "fail"
    assert rep.failures[0].description == "H_0(CB'(I)) = 0"
    assert rep.tables["H(CB'(I))"][0] == 1


def test_prop_extension_semisimple_case():
    sc = scenario("kxk-ideal")
    for x, y in sc.tor_pairs():
        rep = V.check_prop_extension(sc.algebra, sc.ideal, x, y, 4)
        assert rep.verdict == "pass"
        assert rep.tables["Tor^B"] == rep.tables["Tor^{B/I}"] == [1, 0, 0, 0]


def test_prop_extension_zero_ideal_is_trivial():
    sc = scenario("kxk-ideal")
    zero = Ideal(sc.algebra, Subspace.zero(QQ, sc.algebra.dim))
    x, y = sc.tor_pairs()[0]
    rep = V.check_prop_extension(sc.algebra, zero, x, y, 4)
    assert rep.verdict == "pass" and rep.tables["Tor^B"] == rep.tables["Tor^{B/I}"]


def test_prop_extension_inapplicable_for_square_zero():
    sc = scenario("t2-sqzero")
    x, y = sc.tor_pairs()[0]
    rep = V.check_prop_extension(sc.algebra, sc.ideal, x, y, 4)
    assert rep.verdict == "inapplicable"
    assert rep.children[0].verdict == "fail"


def test_prop_extension_precondition():
    sc = scenario("kxk-ideal")
    a = sc.algebra
    reg_r, reg_l = regular_module(a, "right"), regular_module(a, "left")
    with pytest.raises(V.PreconditionError):
        V.check_prop_extension(a, sc.ideal, reg_r, reg_l, 3)


# ---- r-flatness

def test_rflat_verdicts():
    assert V.check_rflat(scenario("t2-diag").morphism).verdict == "pass"
    rep = V.check_rflat(scenario("dual-in-t2").morphism)
    assert rep.verdict == "fail"
    assert rep.tables["Tor_1 witness (left)"] == [1]


# ---- Jacobi-Zariski for Tor and Ext

@pytest.mark.parametrize("k", range(4))
def test_jz_tor_t2_diag(k):
    sc = scenario("t2-diag")
    x, y = sc.tor_pairs()[k]
    rep = V.check_jz_tor(sc.morphism, x, y, 5)
    assert rep.verdict == "pass", [i.description for i in rep.failures]
    assert rep.observations == []


def test_jz_tor_not_rflat_is_inapplicable():
    sc = scenario("dual-in-t2")
    rep = V.check_jz_tor(sc.morphism, *sc.tor_pairs()[0], 4)
    assert rep.verdict == "inapplicable"


def test_jz_tor_group_algebra_has_non_binding_observations():
    sc = scenario("t2-in-t2z2")
    rep = V.check_jz_tor(sc.morphism, sc.right_modules["1+"], sc.left_modules["2+"], 4)
    assert rep.verdict == "pass"
    seen = [i.description for i in rep.observations]
    assert seen == ["L: E1[1,1] off the axes vanishes (mechanism)", "L: E1[2,1] off the axes vanishes (mechanism)"]
    assert rep.tables["Tor^A|B"] == [0, 0, 0, 0]
    assert rep.tables["Tor^B"] == rep.tables["Tor^A"] == [0, 1, 0, 0]


def test_jz_tor_unit_inclusion_degenerates():
    sc = scenario("k-kxk")
    for x, y in sc.tor_pairs():
        rep = V.check_jz_tor(sc.morphism, x, y, 4)
        assert rep.verdict == "pass"
        assert rep.tables["Tor^A|B"] == rep.tables["Tor^A"]


def test_jz_tor_through_epimorphism_composite():
    sc = scenario("t2-proj-diag")
    x, y = sc.tor_pairs()[0]
    rep = V.check_jz_tor(sc.morphism, x, y, 4)
    assert rep.verdict == "pass"
    assert [c.check for c in rep.children] == ["check-rflat", "check-prop21"]


@pytest.mark.parametrize("k", range(4))
def test_jz_ext_t2_diag(k):
    sc = scenario("t2-diag")
    rights = list(sc.right_modules.values())
    x, z = rights[k // 2], rights[k % 2]
    rep = V.check_jz_ext(sc.morphism, x, z, 4)
    assert rep.verdict == "pass", [i.description for i in rep.failures]


# ---- Hochschild and cyclic

def test_jz_hh_t2_diag():
    sc = scenario("t2-diag")
    rep = V.check_jz_hh(sc.morphism, sc.bimodule, 5)
    assert rep.verdict == "pass"
    assert rep.tables["normalized relative chain dims"][2:] == [0, 0, 0]


def test_jz_hh_over_ground_field_is_absolute():
    sc = scenario("k-kxk")
    rep = V.check_jz_hh(sc.morphism, regular_module(sc.algebra, "bi"), 5)
    assert rep.verdict == "pass"
    assert rep.tables["HH(A|B,M)"] == rep.tables["HH(A,M)"]


def test_jz_hh_identity_degenerates():
    a = scenario("t2-diag").algebra
    rep = V.check_jz_hh(identity_morphism(a), regular_module(a, "bi"), 4)
    assert rep.verdict == "pass"
    assert rep.tables["HH(A|B,M)"][1:] == [0, 0, 0]


def test_jz_hc_unit_in_product():
    rep = V.check_jz_hc(scenario("k-kxk").morphism, 4)
    assert rep.verdict == "pass"
    assert rep.tables["HC(B)"] == [1, 0, 1] and rep.tables["HC(A)"] == [2, 0, 2]
    assert rep.tables["HC(A|B)"] == [1, 0, 1]


def test_jz_hc_diag_in_t2():
    rep = V.check_jz_hc(scenario("t2-diag").morphism, 4)
    assert rep.verdict == "pass"


# ---- mapping cone

def test_all_in_one_epimorphism():
    rep = V.check_all_in_one(scenario("kxk-proj-k").morphism, 5)
    assert rep.verdict == "pass"
    assert rep.tables["H(cone)"] == rep.tables["HH_{n-1}(I)"] == [0, 1, 0, 0, 0]


def test_all_in_one_monomorphism():
    rep = V.check_all_in_one(scenario("t2-diag").morphism, 5)
    assert rep.verdict == "pass"
    assert rep.tables["H(cone)"] == rep.tables["HH(A|B)"]


def test_all_in_one_general_morphism_is_ledger_consistent():
    rep = V.check_all_in_one(scenario("t2-proj-diag").morphism, 4)
    assert rep.verdict == "ledger-consistent"
    assert {"H(cone)", "HH_{n-1}(I)", "HH(A|B)"} <= set(rep.tables)


def test_all_in_one_identity():
    rep = V.check_all_in_one(identity_morphism(scenario("t2-diag").algebra), 4)
    assert rep.verdict == "pass"
    for name in ("H(cone)", "HH_{n-1}(I)", "HH(A|B)"):
        assert rep.tables[name] == [0, 0, 0, 0]


def test_all_in_one_not_rflat_is_inapplicable():
    rep = V.check_all_in_one(scenario("dual-in-t2").morphism, 4)
    assert rep.verdict == "inapplicable"


# ---- oracle reports

@pytest.mark.parametrize("idx", range(len(corpus())))
def test_oracles_on_corpus(idx):
    a, rights, _ = corpus()[idx]
    assert V.oracle_report(a, 4).verdict == "pass"
    for x in rights.values():
        for z in rights.values():
            assert V.ext_duality_report(a, x, z, 4).verdict == "pass"


# ---- report plumbing

def test_report_json_and_text():
    rep = V.check_hunital(scenario("t2-sqzero").ideal, 3)
    data = rep.to_json()
    assert set(data) >= {"check", "inputs", "field_char", "max_degree", "certified_degree", "tables",
                         "identities", "notes", "verdict", "seconds"}
    assert data["seconds"] is None
    json.dumps(data)
    text = rep.to_text()
    assert "verdict: fail" in text and "FAILED" in text


def test_timing_is_opt_in():
    rep = V.check_hunital(scenario("kxk-ideal").ideal, 3, timing=True)
    assert isinstance(rep.seconds, float)


def test_non_binding_identities_do_not_decide():
    rep = CheckReport("x")
    rep.identity("soft", 1, 0, binding=False)
    rep.identity("hard", 1, 1)
    assert rep.finish().verdict == "pass"
    assert len(rep.observations) == 1 and "non-binding" in rep.to_text()


def test_exit_code_mapping():
    def r(v):
        c = CheckReport("x")
        c.verdict = v
        return c
    assert exit_code([r("pass"), r("ledger-consistent")]) == 0
    assert exit_code([r("pass"), r("fail")]) == 1
    assert exit_code([r("inapplicable")]) == 2
