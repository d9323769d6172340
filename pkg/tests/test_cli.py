import io
import json

import jsonschema
import pytest

from heyting import schemas
from heyting.algebra import heyting_from_upsets
from heyting.catalog import named
from heyting.cli import run
from heyting.poset import Poset, isomorphic


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.json"
    path.write_text(json.dumps(named("P4").to_json()))
    return str(path)


@pytest.fixture
def p1_algebra(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(heyting_from_upsets(named("P1")).to_json()))
    return str(path)


def test_check_diamond_on_p4(p4_file):
    code, out, _ = call("check", "diamond", "--poset", p4_file)
    assert code == 1 and out.startswith("no") and "D4" in out
    code, out, _ = call("check", "diamond", "--poset", p4_file, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.REPORT)
    assert doc["answer"] == "no" and doc["witnesses"]["D4"][0] == 0


def test_decide_equations_godel_dummett():
    code, out, _ = call("decide", "equations", "--axioms", "(p->q)|(q->p)")
    assert code == 0 and out.strip() == "yes"
    code, out, _ = call("decide", "equations", "--axioms", "(p->q)|(q->p)", "--json")
    jsonschema.validate(json.loads(out), schemas.VERDICT)
    code, out, _ = call("decide", "equations")
    assert code == 1


def test_gen_d3_dot_is_p1():
    code, out, _ = call("gen", "named", "D3", "--dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 6
    code, out, _ = call("gen", "named", "D3")
    X = Poset.from_json(json.loads(out))
    assert isomorphic(X, named("P1")) is not None


def test_gen_poset_output_matches_schema():
    for argv in (("gen", "named", "P7"), ("gen", "diamond", "1", "2", "1"), ("gen", "random", "--n", "6", "--seed", "5")):
        code, out, _ = call(*argv)
        assert code == 0
        jsonschema.validate(json.loads(out), schemas.POSET)


def test_seed_reproducible():
    a = call("gen", "random", "--n", "7", "--seed", "11")[1]
    b = call("gen", "random", "--n", "7", "--seed", "11")[1]
    assert a == b


@pytest.mark.parametrize("kind,name,code", [
    ("cascade", "P3", 0), ("cascade", "P2", 1), ("root-system", "chain3", 0),
    ("three-point", "P2", 1), ("diamond-sequence", "D2", 0), ("diamond-algebra", "P4", 1),
    ("diamond-algebra", "D2", 0),
])
def test_check_kinds(kind, name, code):
    c, out, _ = call("check", kind, "--named", name, "--json")
    assert c == code
    jsonschema.validate(json.loads(out), schemas.REPORT)


def test_width_cascade():
    assert call("check", "width-cascade", "--named", "D3", "--n", "2")[0] == 1
    assert call("check", "width-cascade", "--named", "chain3", "--n", "1")[0] == 0
    code, _, err = call("check", "width-cascade", "--named", "P7", "--n", "2")
    assert code == 2 and "cascade" in err


def test_valid(p1_algebra):
    code, out, _ = call("valid", "--named", "P1", "--formula", "(p->q)|(q->p)", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.VALIDITY)
    assert code == 1 and doc["refutation"] == {"p": "{v1,1}", "q": "{v2,1}"}
    code, out, _ = call("valid", "--algebra", p1_algebra, "--formula", "p -> p", "--json")
    assert code == 0 and json.loads(out)["valid"]


def test_jankov():
    code, out, _ = call("jankov", "--named", "P5", "--target", "P3", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.JANKOV)
    assert code == 1 and doc["witness"]["upset"] == [0, 1, 2, 3]
    assert call("jankov", "--named", "chain6", "--target", "P3")[0] == 0


def test_decide_generated_kinds(p1_algebra):
    assert call("decide", "generated", "--named", "chain4")[0] == 0
    assert call("decide", "generated", "--algebra", p1_algebra)[0] == 1
    code, out, _ = call("decide", "representable", "--named", "chain4", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.VERDICT)
    assert code == 0 and doc["depth_bound"] == 4
    assert call("decide", "primitive", "--named", "P7")[0] == 1


def test_decompose_show_dual(p1_algebra):
    code, out, _ = call("decompose", "--named", "D2", "--json")
    jsonschema.validate(json.loads(out), schemas.DECOMPOSITION)
    assert code == 0
    code, out, _ = call("decompose", "--named", "P4", "--json")
    assert code == 1 and json.loads(out)["level"] == 2
    code, out, _ = call("show", "--named", "P7", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.SHOW)
    assert (doc["depth"], doc["width"]) == (3, 3)
    code, out, _ = call("dual", "--algebra", p1_algebra)
    assert isomorphic(Poset.from_json(json.loads(out)), named("P1")) is not None
    code, out, _ = call("dual", "--named", "P3")
    jsonschema.validate(json.loads(out), schemas.ALGEBRA)


def test_counterexample():
    code, out, _ = call("counterexample", "P3", "--n", "5", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.TRUNCATION)
    assert code == 0 and doc["refutes_own_jankov"] and doc["copies"] == 6
    assert call("counterexample", "P1", "--n", "3")[0] == 2


def test_input_errors(tmp_path):
    assert call("valid", "--named", "P1", "--formula", "(p ->")[0] == 2
    assert call("show", "--named", "nonsense")[0] == 2
    assert call("show", "--poset", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "cyc.json"
    bad.write_text(json.dumps({"n": 2, "covers": [[0, 1], [1, 0]], "labels": ["a", "b"]}))
    assert call("show", "--poset", str(bad))[0] == 2
    assert call("bogus")[0] == 2
    assert call("gen", "diamond", "1", "2", "2", "1")[0] == 2


def test_budget_exit_code():
    code, _, err = call("jankov", "--named", "P5", "--target", "P3", "--budget", "1")
    assert code == 3 and "budget" in err
