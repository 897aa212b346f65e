import io
import json
from pathlib import Path

import pytest

from manintriples import cli

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def call(*argv, stdin=""):
    return cli.run(list(argv), stdin=io.StringIO(stdin))


def config(name):
    return str(CONFIGS / name)


def ok_json(*argv, stdin=""):
    code, out, err = call(*argv, stdin=stdin)
    assert code == 0, err
    return json.loads(out)


SL3_PAIR = {"simple_types": [["A", 2], ["A", 2]], "lambdas": ["1", "-1"]}


def test_algebra_sl2():
    doc = ok_json("algebra", "--spec", config("sl2.json"))
    assert doc["dim"] == 3 and len(doc["basis"]) == 3
    assert doc["killing_diagonal"] == ["8", "0", "0"]


def test_algebra_split_report():
    doc = ok_json("algebra", "--spec", config("sl2xsl2.json"))
    assert doc["split"]["plus_ideals"] == [1] and doc["split"]["minus_ideals"] == [0]
    assert doc["sigma_plus"] and doc["sigma_minus"]


def test_digest_is_stable():
    a = ok_json("algebra", "--spec", config("sl3.json"))
    b = ok_json("algebra", stdin=json.dumps({"simple_types": [["A", 2]], "lambdas": [1]}))
    assert a["structure_constants_digest"] == b["structure_constants_digest"]


@pytest.mark.parametrize("text", ["{not json", '{"simple_types": [["H", 3]]}',
                                  '{"simple_types": [["A", 1]], "lambdas": ["1", "2"]}',
                                  '{"simple_types": [["A", 1]], "lambdas": ["1.5"]}', ""])
def test_parse_errors(text):
    code, out, err = call("algebra", stdin=text)
    assert code == 2 and out == "" and "parse error" in err


def test_unknown_command():
    assert call("frobnicate")[0] == 2


def test_missing_spec_file():
    code, _, err = call("algebra", "--spec", "/nonexistent/spec.json")
    assert code == 2 and "cannot read" in err


def test_enumerate_counts():
    assert ok_json("enumerate", "--spec", config("sl2xsl2.json"))["count"] == 3
    assert ok_json("enumerate", "--spec", config("abelian.json"),
                   stdin="")["count"] == 1
    doc = ok_json("enumerate", "--diagonal", stdin=json.dumps(SL3_PAIR))
    assert doc["count"] == 3 and doc["diagonal"]


def test_enumerate_budget():
    code, _, err = call("enumerate", "--budget", "5", "--spec", config("sl3xsl3.json"))
    assert code == 3 and "budget" in err
    assert call("enumerate", "--budget", "0", "--spec", config("sl2xsl2.json"))[0] == 2


def test_construct_valid():
    doc = ok_json("construct", "--spec", config("sl2xsl2.json"),
                  "--bd", config("sl2xsl2_bd.json"))
    assert doc["manin_triple"] and doc["round_trip"] and doc["sign_preservation"]
    assert all(doc["checks"].values())


def test_construct_cycle_fails_exit_condition():
    code, _, err = call("construct", "--spec", config("sl2xsl2.json"),
                        "--bd", config("sl2xsl2_cycle_bd.json"))
    assert code == 4 and "exit condition" in err


def test_construct_twist_keeps_data():
    plain = ok_json("construct", "--spec", config("sl2xsl2.json"),
                    "--bd", config("sl2xsl2_bd.json"))
    twisted = ok_json("construct", "--spec", config("sl2xsl2.json"),
                      "--bd", config("sl2xsl2_bd.json"), "--twist", config("twist2.json"))
    assert twisted["extracted"] == plain["extracted"]
    assert twisted["twist"] == ["2", "2"]
    assert twisted["i"] != plain["i"]


def test_construct_from_stdin():
    doc = {"spec": json.load(open(config("sl2xsl2.json"))),
           "bd": json.load(open(config("sl2xsl2_bd.json")))}
    assert ok_json("construct", stdin=json.dumps(doc))["manin_triple"]


def test_invariant_breach_exit(monkeypatch):
    monkeypatch.setattr(cli, "extract_bd", lambda *a: None)
    code, _, err = call("construct", "--spec", config("sl2xsl2.json"),
                        "--bd", config("sl2xsl2_bd.json"))
    assert code == 5 and "invariant breach" in err


def test_verify_explicit_subspaces():
    spec = json.load(open(config("sl2xsl2.json")))
    diag = [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]]
    doc = ok_json("verify", stdin=json.dumps({"spec": spec, "bd": {"i": diag, "i_p": diag}}))
    assert not doc["manin_triple"] and "transversal" in doc["witnesses"]


@pytest.mark.parametrize("spec, bd, height", [
    ("sl2xsl2.json", {"A": [[[0, 1], [-1, 0]]], "A_p": []}, 1),
    ("sl3xsl3.json", {"A": [[[0, 0, 1, 0], [-1, 0, 0, 0]]],
                      "A_p": [[[0, 0, 1, 0], [0, -1, 0, 0]]]}, 2),
    ("sl3xsl3.json", {"A": [], "A_p": []}, 1),
])
def test_descend_heights(spec, bd, height):
    doc = ok_json("descend", "--spec", config(spec), stdin=json.dumps({"bd": bd}))
    assert doc["height"] == height and doc["f0_contained"]
    dims = [lvl["dim_g"] for lvl in doc["levels"]]
    assert dims == sorted(dims, reverse=True) and len(set(dims)) == len(dims)


@pytest.mark.parametrize("name, count", [("sl2.json", 1), ("sl3.json", 3), ("sl4.json", 9)])
def test_classify_diagonal(name, count):
    doc = ok_json("classify-diagonal", "--spec", config(name))
    assert doc["count"] == doc["oracle_count"] == count and doc["agree"]


def test_classify_diagonal_needs_simple():
    spec = {"simple_types": [["A", 2], ["A", 1]]}
    assert call("classify-diagonal", stdin=json.dumps(spec))[0] == 2


def test_realcheck_pass():
    doc = ok_json("realcheck", "--spec", config("sl2.json"), "--bd", config("sl2_real_bd.json"))
    assert doc["complexified_real_triple"] and doc["j_stable"] == {"i": True, "i_p": True}
    assert all(doc["real_triple"]["checks"].values())
    assert doc["normalization"]["u_star_squared_is_one"]


def test_realcheck_condition_four_is_a_verdict():
    doc = ok_json("realcheck", "--spec", config("sl2.json"),
                  "--bd", config("sl2_real_cond4_bd.json"))
    assert not doc["complexified_real_triple"]
    assert "real_triple" not in doc and not doc["j_stable"]["i"]


def test_realcheck_abelian():
    doc = ok_json("realcheck", "--spec", config("abelian1.json"),
                  "--bd", config("abelian_real_bd.json"))
    assert doc["complexified_real_triple"]
    assert doc["real_triple"]["dim_i"] == doc["real_triple"]["dim_i_p"] == 1


def test_realcheck_rejects_complex_lambda():
    spec = {"simple_types": [["A", 1]], "lambdas": ["i"]}
    code, _, _ = call("realcheck", stdin=json.dumps({"spec": spec,
                                                     "bd": {"A": [], "A_p": []}}))
    assert code == 2


def test_table_format():
    code, out, _ = call("enumerate", "--format", "table", "--spec", config("sl2xsl2.json"))
    assert code == 0 and "count: 3" in out.splitlines()
    assert not out.lstrip().startswith("{")


def test_main_writes_streams(capsys):
    assert cli.main(["algebra", "--spec", config("sl2.json")]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 3
