import json
from pathlib import Path

import pytest

from ratspace import QQ, analyze, IntSet, monomial_space, CHECKLIST
from ratspace.analysis import good_reduction
from ratspace.cli import main
from ratspace.generators import degree_family
from ratspace.report import report_dict

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table1_pipeline():
    r = analyze(monomial_space(IntSet([0, 1, 2, 4, 5])))
    assert r.gamma == 2 and r.divisor.to_str() == "5*inf" and r.dim_LD == 6
    assert r.conjecture == {"hypothesis": True, "bound": 7, "dim_LD": 6, "holds": True}
    assert [f.lemma for f in r.findings] == list(CHECKLIST)
    assert not r.failures()
    assert [(e.i, e.needed) for e in r.needed] == [(1, False), (2, False), (3, True), (4, True), (5, True)]


def test_reduction_to_generated_field(R):
    r = analyze([R("1"), R("x^2"), R("x^4"), R("x^6")])
    assert r.reduced and r.tower_indices[-1] == 2
    assert r.gamma == 0 and r.dim_LD == 4


def test_report_schema_types():
    d = report_dict(analyze(degree_family([0, 1, 2, 3, 4], [(5, QQ(2), 1)])))
    assert isinstance(d["dim"], int) and all(isinstance(g, int) for g in d["gamma_seq"])
    assert set(d["divisors"]) == {"inf", "2"}
    assert d["divisors"]["inf"] == [0, 1, 2, 3, 4]
    assert d["divisors"]["2"] == [0, 0, 0, 0, 1]
    json.dumps(d)


@pytest.mark.parametrize("name", ["table1", "gamma0", "gamma1a", "gamma1b"])
def test_golden_json(capsys, name):
    code, out, _ = run(capsys, "analyze", str(GOLDEN / f"{name}.txt"), "--json")
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_golden_values():
    t1 = json.loads((GOLDEN / "table1.json").read_text())
    assert t1["degree_table"][2][4] == 7 and t1["degree_table"][0][3] == 4
    assert t1["conjecture"]["dim_LD"] == 6
    g0 = json.loads((GOLDEN / "gamma0.json").read_text())
    assert g0["gamma"] == 0 and g0["conjecture"]["dim_LD"] == g0["conjecture"]["bound"] == 6


def test_exit_codes(capsys, tmp_path):
    f = tmp_path / "ns.txt"
    f.write_text("field: q\n1\n1/(x^2+1)\n")
    assert run(capsys, "analyze", str(f))[0] == 3
    f.write_text("field: q\n1\nx +\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "line 3" in err
    f.write_text("field: fp 4\n1\n")
    assert run(capsys, "analyze", str(f))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 2
    f.write_text("field: q\n" + "\n".join(f"x^{k}" for k in range(30)) + "\n")
    assert run(capsys, "analyze", str(f))[0] == 2
    assert run(capsys, "analyze", str(f), "--max-dim", "40")[0] == 0


def test_finding_exits_one_with_witness(capsys, tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("field: q\n1\nx\nx^2\nx^3 + 1/(x-1)\n")
    code, out, _ = run(capsys, "analyze", str(f), "--witness-dir", str(tmp_path / "wit"))
    assert code == 1 and "L2.8     fail" in out
    text = (tmp_path / "wit" / "witness-analyze-seed0.txt").read_text()
    assert "FAIL L2.8" in text and "x^3 + 1/(x-1)" in text


def test_field_flag_overrides_header(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("field: q\n1\n1/(x^2+1)\n")
    code, out, _ = run(capsys, "analyze", str(f), "--field", "fp:5", "--json")
    assert code in (0, 1) and json.loads(out)["field"] == "fp 5"


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "gamma1a", "n=5", "alpha=2")
    assert code == 0
    assert [l for l in out.splitlines() if not l.startswith("#")][1:] == \
        ["1", "x", "x^2", "x^3", "x^5 + 2*x^4"]
    a = run(capsys, "generate", "random-rr", "D=5*inf+1*0", "n=4", "seed=7")[1]
    b = run(capsys, "generate", "random-rr", "D=5*inf+1*0", "n=4", "seed=7")[1]
    assert a == b and "seed=7" in a
    assert run(capsys, "generate", "monomial", "set=0,1,2,4,5")[1] == (GOLDEN / "table1.txt").read_text()
    assert run(capsys, "generate", "degset", "set=0,2,1")[0] == 2
    assert run(capsys, "generate", "gamma0")[0] == 2


def test_freiman_verb(capsys):
    code, out, _ = run(capsys, "freiman", "0,1,2,4", "--json")
    d = json.loads(out)
    assert code == 0 and d["hull"]["length"] == 5 and d["bound"] == 5 and d["conclusion"]
    code, out, _ = run(capsys, "freiman", "0,1,3")
    assert code == 0 and "informational" in out
    assert json.loads(run(capsys, "freiman", "0,5,10", "--json")[1])["hull"]["length"] == 3
    assert run(capsys, "freiman", "7")[0] == 2
    assert run(capsys, "freiman", "a,b")[0] == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_fuzz_deterministic_and_empty(capsys, tmp_path):
    args = ["fuzz", "--count", "25", "--seed", "5", "--family", "mixed",
            "--witness-dir", str(tmp_path / "w")]
    c1, a, _ = run(capsys, *args)
    c2, b, _ = run(capsys, *args)
    assert a == b and c1 == c2
    code, out, _ = run(capsys, "fuzz", "--count", "0", "--json")
    d = json.loads(out)
    assert code == 0 and d["outcomes"] == {} and d["witnesses"] == []


def test_fuzz_cross_field(capsys, tmp_path):
    code, out, _ = run(capsys, "fuzz", "--count", "30", "--seed", "2", "--cross-field", "fp:101",
                       "--json", "--witness-dir", str(tmp_path))
    d = json.loads(out)
    assert d["outcomes"].get("cross-differ", 0) == 0
    assert d["findings"]["Conj1"]["fail"] == 0


def test_good_reduction(R):
    r = analyze([R("1"), R("x"), R("x^3/(x-41/202)")])
    assert not good_reduction(r, 101) and good_reduction(r, 103)
