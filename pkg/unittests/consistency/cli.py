import json
import pathlib

import pytest

from src.main import run

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def data(name: str) -> str:
    return str(DATA / name)


def run_json(capsys, *argv: str):
    code = run(["--format", "json", *argv])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("operation,p,q,expected", [("homcount", "y^2+y", "y^3+1", "18"),
                                                   ("compose", "y^2", "y+1", "y^2 + 2y + 1"),
                                                   ("coclosure", "y^2", "y+1", "y^3"),
                                                   ("tensor", "y^2+1", "y+1", "y^2 + 3")])
def test_calc(capsys, operation: str, p: str, q: str, expected: str):
    assert run(["calc", operation, p, q]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_calc_json(capsys):
    code, out = run_json(capsys, "calc", "homcount", "y^2+y", "y^3+1")
    assert code == 0
    assert out == {"operation": "homcount", "result": 18}


def test_calc_parse_error(capsys):
    assert run(["calc", "compose", "y^", "y"]) == 2
    code, out = run_json(capsys, "calc", "compose", "y^", "y")
    assert code == 2
    assert out["error"]["code"] == "parse-error"


def test_aggregate(capsys):
    args = ["aggregate", "--schema", data("department_schema.json"), "--instance", data("department_instance.json")]
    code, out = run_json(capsys, *args, "--morphism", "works_in")
    assert code == 0
    assert out["values"] == {"d1": 30, "d2": 5, "d3": 0}
    code, out = run_json(capsys, *args, "--morphism", "works_at", "--via-classifier")
    assert out["values"] == {"c1": 35, "c2": 0}
    assert run(args + ["--morphism", "manages"]) == 2


def test_groupby(capsys):
    code, out = run_json(capsys, "groupby", "--schema", data("department_schema.json"), "--instance",
                         data("department_instance.json"), "--morphism", "works_in")
    assert code == 0
    assert out == {"d1": ["e1", "e2"], "d2": ["e3"], "d3": []}


def test_query(capsys):
    code, out = run_json(capsys, "query", "--schema", data("cities_schema.json"), "--instance",
                         data("cities_instance.json"), "--query", data("cities_query.json"))
    assert code == 0
    assert len(out["rows"]) == 11
    assert {"pattern": "state", "match": {"state.state": "vt"}} in out["rows"]
    assert run(["query", "--schema", data("cities_schema.json"), "--instance", data("cities_instance.json"),
                "--query", data("cities_query.json")]) == 0
    assert "same_state" in capsys.readouterr().out


def test_migrate(capsys):
    args = ["migrate", "--functor", data("states_functor.json")]
    code, out = run_json(capsys, *args, "--instance", data("cities_instance.json"), "--kind", "delta")
    assert code == 0
    assert out["tables"] == {"place": ["ma", "tx", "vt"]}


def test_dual_and_transpose(capsys):
    code, out = run_json(capsys, "dual", "--span", data("span.json"))
    assert code == 0
    assert out["rows"]["a1"] == {"b1": ["s1"], "b2": ["s2"]}
    code, out = run_json(capsys, "dual", "--conjunctive", data("conjunctive.json"))
    assert code == 0
    assert sorted(out["apex"]) == ["x1", "x2", "x3", "x4"]
    code, out = run_json(capsys, "transpose", "--span", data("span.json"))
    assert code == 0
    assert out["routes_agree"]
    assert out["span"]["left"] == ["b1", "b2"]


def test_finskeleton(capsys):
    code, out = run_json(capsys, "finskeleton", "--k", "2", "--morphisms")
    assert code == 0
    assert ["2", "2", 4] in out["homs"]
    assert ["1", "0", 0] in out["homs"]
    assert ["0", "2", []] in out["morphisms"]
    assert run(["finskeleton", "--k", "99"]) == 2


def test_validate(capsys, tmp_path):
    args = ["validate", "--schema", data("department_schema.json")]
    code, out = run_json(capsys, *args, "--instance", data("department_instance.json"))
    assert code == 0
    assert out["passed"]
    broken = json.loads((DATA / "department_instance.json").read_text())
    del broken["attributes"]["employee"]["e3"]
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(broken))
    code, out = run_json(capsys, *args, "--instance", str(path))
    assert code == 1
    assert out["checks"][-1]["check"] == "instance" and not out["checks"][-1]["passed"]
    assert out["checks"][-1]["error"]["code"] == "type-mismatch"


def test_validate_query(capsys, tmp_path):
    obj = json.loads((DATA / "cities_schema.json").read_text())
    obj["monoids"] = {a: "int-sum" for a in obj["objects"]}
    path = tmp_path / "schema.json"
    path.write_text(json.dumps(obj))
    code, out = run_json(capsys, "validate", "--schema", str(path), "--query", data("cities_query.json"))
    assert code == 0
    assert out["checks"][-1] == {"check": "query", "passed": True}


def test_broken_schema_is_a_law_failure(capsys, tmp_path):
    obj = json.loads((DATA / "cities_schema.json").read_text())
    obj["composition"] = obj["composition"][:-1]
    path = tmp_path / "schema.json"
    path.write_text(json.dumps(obj))
    code, out = run_json(capsys, "validate", "--schema", str(path))
    assert code == 1
    assert out["error"]["code"] == "law-violation"


def test_missing_file(capsys):
    assert run(["validate", "--schema", data("nothing_here.json")]) == 2
    assert "parse-error" in capsys.readouterr().err


def test_laws(capsys):
    code, out = run_json(capsys, "laws", "--suite", "duality", "--cases", "3", "--seed", "1")
    assert code == 0
    assert out["suites"][0]["suite"] == "duality" and out["suites"][0]["cases"] == 3
    code, out = run_json(capsys, "laws", "--suite", "duality", "--cases", "2", "--self-test")
    assert code == 1
    assert not out["passed"]
    assert run(["laws", "--suite", "nonsense"]) == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        run(["dual"])


def test_config_file(capsys, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("output:\n  format: json\n  indent: 2\n")
    assert run(["--config", str(path), "calc", "homcount", "y", "y"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == 1
