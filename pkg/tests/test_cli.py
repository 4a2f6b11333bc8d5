import json

import pytest

from hochjz.cli import main

T2 = {
    "basis": ["e11", "e12", "e22"],
    "unit": [1, 0, 1],
    "table": [
        [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 1, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    ],
}

# unit e0, e1 e2 = e3, e3 e3 = e3: (e1 e2) e3 != e1 (e2 e3)
BAD = {
    "basis": ["e0", "e1", "e2", "e3"],
    "unit": [1, 0, 0, 0],
    "table": [[[1 if k == j else 0 for k in range(4)] for j in range(4)]]
    + [[[1 if k == i else 0 for k in range(4)]] + [[0] * 4 for _ in range(3)] for i in range(1, 4)],
}
BAD["table"][1][2] = [0, 0, 0, 1]
BAD["table"][3][3] = [0, 0, 0, 1]


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_all_in_one_general_morphism(capsys):
    code, out, _ = run(capsys, "check-all-in-one", "--preset", "t2-proj-diag", "--max-degree", "4",
                       "--report", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "ledger-consistent"
    assert {"H(cone)", "HH_{n-1}(I)", "HH(A|B)"} <= set(rep["tables"])


def test_hh_dual_numbers_table(capsys):
    code, out, _ = run(capsys, "hh", "--preset", "dual-numbers", "--max-degree", "5", "--report", "json")
    assert code == 0
    assert json.loads(out)["tables"]["HH"] == [2, 1, 1, 1, 1]


def test_non_associative_table_is_input_error(capsys, tmp_path):
    code, _, err = run(capsys, "tor", "--algebra", write(tmp_path, "bad.json", BAD))
    assert code == 3
    assert "(1,2,3)" in err and "(e1*e2)*e3" in err


def test_spec_files_round_trip(capsys, tmp_path):
    alg = write(tmp_path, "t2.json", T2)
    sub = write(tmp_path, "diag.json", [[1, 0, 0], [0, 0, 1]])
    code, out, _ = run(capsys, "check-jz-hh", "--algebra", alg, "--subalgebra", sub, "--report", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_module_files(capsys, tmp_path):
    alg = write(tmp_path, "t2.json", T2)
    s1r = {"parity": "right", "dim": 1, "right_action": [[[1]], [[0]], [[0]]]}
    s1l = {"parity": "left", "dim": 1, "left_action": [[[1]], [[0]], [[0]]]}
    code, out, _ = run(capsys, "tor", "--algebra", alg, "--module", write(tmp_path, "x.json", s1r),
                       "--module", write(tmp_path, "y.json", s1l), "--report", "json")
    assert code == 0
    assert json.loads(out)["tables"]["Tor^A"] == [1, 0, 0, 0]


def test_morphism_file(capsys, tmp_path):
    alg = write(tmp_path, "t2.json", T2)
    kxk = {"unit": [1, 1], "table": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}
    mor = write(tmp_path, "m.json", {"source": kxk, "images": [[1, 0, 0], [0, 0, 1]]})
    code, out, _ = run(capsys, "check-all-in-one", "--algebra", alg, "--morphism", mor, "--report", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_bad_morphism_is_input_error(capsys, tmp_path):
    alg = write(tmp_path, "t2.json", T2)
    mor = write(tmp_path, "m.json", {"source": {"unit": [1], "table": [[[1]]]}, "images": [[1, 0, 0]]})
    code, _, err = run(capsys, "check-all-in-one", "--algebra", alg, "--morphism", mor)
    assert code == 3 and "morphism" in err


@pytest.mark.parametrize("argv,code", [
    (["check-hunital", "--preset", "kxk-ideal"], 0),
    (["check-hunital", "--preset", "t2-sqzero"], 1),
    (["check-jz-tor", "--preset", "dual-in-t2"], 2),
    (["check-prop21", "--preset", "t2-sqzero"], 2),
    (["check-rflat", "--preset", "t2-diag", "--field", "2"], 2),
    (["hh", "--preset", "nope"], 3),
    (["hh", "--algebra", "/nonexistent/a.json"], 3),
    (["check-jz-tor", "--preset", "dual-numbers", "--max-degree", "0"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_characteristic_p_with_supplied_radical(capsys, tmp_path):
    rad = write(tmp_path, "rad.json", [])
    code, out, _ = run(capsys, "check-jz-tor", "--preset", "t2-diag", "--field", "2", "--radical", rad,
                       "--report", "json")
    assert code == 0
    reps = json.loads(out)["reports"]
    assert all(r["field_char"] == 2 and r["verdict"] == "pass" for r in reps)


def test_out_file_and_text_report(capsys, tmp_path):
    path = tmp_path / "r.txt"
    code, out, _ = run(capsys, "hc", "--preset", "ground_field", "--out", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert "verdict: pass" in text and "HC (cyclic bicomplex)" in text


def test_json_is_stable(capsys):
    a = run(capsys, "check-jz-tor", "--preset", "t2-diag", "--report", "json")[1]
    b = run(capsys, "check-jz-tor", "--preset", "t2-diag", "--report", "json")[1]
    assert a == b
    for r in json.loads(a)["reports"]:
        assert r["seconds"] is None


def test_timing_flag(capsys):
    out = run(capsys, "hh", "--preset", "dual-numbers", "--timing", "--report", "json")[1]
    assert isinstance(json.loads(out)["seconds"], float)


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets", "--report", "json")
    data = json.loads(out)
    assert code == 0 and "t2-diag" in data["scenarios"] and "dual_numbers" in data["algebras"]


def test_budget_warning(capsys):
    code, _, err = run(capsys, "hh", "--preset", "dual-numbers", "--budget", "1")
    assert code == 0 and "warning" in err
