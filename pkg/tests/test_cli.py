import json

import pytest

from linksym.cli import main
from linksym.qt_arith import rqat_from_json, rqat_to_json
from linksym.symfunc import SymFunc


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_fv_default_and_methods(capsys):
    code, out = run(capsys, "fv", "1")
    assert code == 0 and out.strip() == "1 + a"
    code, out = run(capsys, "fv", "0", "--method", "recurrence")
    assert out.strip() == "(1 + a)/(1 - q)"
    code, out = run(capsys, "fv", "0", "--method", "truncated_infinite", "--order", "1")
    assert out.strip() == "1 + q + a + q*a"


def test_fv_all_agree(capsys):
    code, out = run(capsys, "fv", "11", "--method", "all")
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1] == "AGREE"
    assert lines[0].startswith("recurrence: ")
    assert lines[0].split(": ")[1] == lines[1].split(": ")[1]


def test_fv_json_fixed_point(capsys):
    code, out = run(capsys, "fv", "010", "--format", "json")
    obj = json.loads(out)
    assert obj["v"] == "010" and obj["method"] == "barred_fubini"
    assert rqat_to_json(rqat_from_json(obj["value"])) == obj["value"]


def test_fv_all_json(capsys):
    code, out = run(capsys, "fv", "00", "--method", "all", "--format", "json")
    obj = json.loads(out)
    assert obj["verdict"] == "AGREE" and set(obj["routes"]) == {
        "recurrence", "barred_fubini", "inner_product"}


def test_linksym(capsys):
    code, out = run(capsys, "linksym", "11")
    assert out.strip() == "m[2] + (1 + t)*m[1,1]"
    code, out = run(capsys, "linksym", "0", "--normalized")
    assert out.strip() == "m[1]"
    code, out = run(capsys, "linksym", "11", "--format", "latex")
    assert out.strip() == r"m_{2} + \left(1 + t\right) m_{1,1}"


def test_linksym_json_round_trip(capsys):
    code, out = run(capsys, "linksym", "000", "--normalized", "--format", "json")
    obj = json.loads(out)
    assert obj["basis"] == "m" and obj["degree"] == 3
    assert SymFunc.from_json(obj).to_json() == obj


def test_fubini_tables(capsys):
    code, out = run(capsys, "fubini", "110")
    rows = out.strip().splitlines()
    assert [r.split()[0] for r in rows[1:-1]] == ["001", "001'"]
    code, out = run(capsys, "fubini", "000")
    assert out.strip().splitlines()[-1].startswith("7 barred Fubini words")
    code, out = run(capsys, "fubini", "1", "--format", "json")
    obj = json.loads(out)
    assert len(obj) == 1 and obj[0]["area"] == 0


def test_macdonald(capsys):
    code, out = run(capsys, "macdonald", "2,1")
    assert "B_mu = {1, q, t}" in out
    assert "T_mu = q*t" in out
    assert "Ht[2,1] = m[3] + (1 + q + t)*m[2,1]" in out
    code, out = run(capsys, "macdonald", "4,3,1")
    assert "B_mu = {1, q, q^2, q^3, t, q*t, q^2*t, t^2}" in out
    assert "skipped" in out


def test_macdonald_json(capsys):
    code, out = run(capsys, "macdonald", "1,1", "--format", "json")
    obj = json.loads(out)
    assert obj["partition"] == [1, 1] and obj["htilde"]["basis"] == "m"


def test_nabla_p1n(capsys):
    code, out = run(capsys, "nabla-p1n", "1")
    assert out.strip() == "m[1]"
    code, out = run(capsys, "nabla-p1n", "2", "--format", "json")
    obj = json.loads(out)
    assert obj["htilde"]["basis"] == "Htilde"


def test_verify_scopes(capsys):
    code, out = run(capsys, "verify", "conj43", "--max-n", "3")
    assert code == 0 and "failed 0" in out.splitlines()[-1]
    code, out = run(capsys, "verify", "epos", "--max-n", "3", "--order", "10")
    assert code == 0 and "failed 0" in out.splitlines()[-1]


def test_verify_strict_exit(capsys):
    # B5 as printed fails, which --strict turns into exit status 1
    code, out = run(capsys, "verify", "bergeron", "--max-n", "2")
    assert code == 0 and "FAIL" in out
    code, _ = run(capsys, "verify", "bergeron", "--max-n", "2", "--strict")
    assert code == 1
    code, _ = run(capsys, "verify", "routes", "--max-n", "2", "--strict")
    assert code == 0


def test_verify_json(capsys):
    code, out = run(capsys, "verify", "lemma23", "--max-n", "2", "--format", "json")
    obj = json.loads(out)
    assert [r["verdict"] for r in obj] == ["pass", "pass"]


def test_size_refusal(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fubini", "0000000"])
    assert exc.value.code == 2
    assert "--unsafe-max" in capsys.readouterr().err


def test_bad_word(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fv", "012"])
    assert exc.value.code == 2


def test_negative_order(capsys):
    with pytest.raises(SystemExit):
        main(["fv", "0", "--order", "-1"])
