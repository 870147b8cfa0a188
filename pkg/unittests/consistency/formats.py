import json
import pathlib

import pytest

from src.bicomodule import apply
from src.copresheaf import Copresheaf
from src.context import Context
from src.errors import LawViolation, ParseError, TypeMismatch
from src.span import Span
from src.utils.formats import conjunctive_from_json, conjunctive_to_json, copresheaf_from_json, copresheaf_to_json, \
    instance_from_json, instance_to_json, load_bridge, load_category, load_conjunctive, load_copresheaf, \
    load_functor, load_instance, load_query, load_schema, load_span, read_json, schema_from_json, schema_to_json, \
    span_from_json, span_to_json, write_json
from src.utils.generate import department_instance, random_category, random_copresheaf
from unittests.backend import rng_fn, seeds, trials

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def write(path: pathlib.Path, obj) -> str:
    path.write_text(json.dumps(obj))
    return str(path)


def test_sample_files_load():
    schema = load_schema(str(DATA / "department_schema.json"))
    inst = load_instance(str(DATA / "department_instance.json"), schema)
    assert inst == department_instance()[1]
    c = load_category(str(DATA / "cities_schema.json"))
    x = load_copresheaf(str(DATA / "cities_instance.json"), c)
    query = load_query(str(DATA / "cities_query.json"), c)
    rows = apply(Context(), query, x).rows['*']
    assert [j for j, _ in rows].count('same_state') == 5
    assert len(rows) == 11
    assert load_span(str(DATA / "span.json")).apex == ('s1', 's2', 's3')
    assert load_conjunctive(str(DATA / "conjunctive.json")).pattern('a1', 'a1').size() == 3


def test_functor_with_relative_paths():
    functor = load_functor(str(DATA / "states_functor.json"))
    assert functor.on_objects == {'place': 'state'}
    assert functor.on_morphisms == {'id_place': 'id_state'}
    assert functor.is_etale()


def test_schema_and_instance_roundtrip():
    schema, inst = department_instance()
    assert schema_from_json(json.loads(json.dumps(schema_to_json(schema)))) == schema
    assert instance_from_json(json.loads(json.dumps(instance_to_json(inst))), schema) == inst


@pytest.mark.parametrize("seed", seeds)
def test_copresheaf_roundtrip(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        c = random_category(rng, 3)
        x = random_copresheaf(rng, c)
        assert copresheaf_from_json(json.loads(json.dumps(copresheaf_to_json(x))), c) == x


def test_span_and_conjunctive_roundtrip():
    span = Span(['a', ('b', 1)], ['s', 't'], ['c'], {'s': 'a', 't': ('b', 1)}, {'s': 'c', 't': 'c'})
    assert span_from_json(json.loads(json.dumps(span_to_json(span)))) == span
    conj = load_conjunctive(str(DATA / "conjunctive.json"))
    assert conjunctive_from_json(json.loads(json.dumps(conjunctive_to_json(conj)))) == conj


def test_multiset_attributes_roundtrip():
    c = load_category(str(DATA / "cities_schema.json"))
    obj = json.loads((DATA / "cities_schema.json").read_text())
    obj["monoids"] = {"city": {"kind": "multiset", "labels": ["u", "v"]}, "state": "int-sum", "county": "trivial"}
    schema = schema_from_json(obj)
    assert schema.category == c
    data = json.loads((DATA / "cities_instance.json").read_text())
    data["attributes"] = {"city": {"boston": ["u", "u"], "salem": [], "austin": ["v"]},
                          "state": {"ma": 1, "tx": 2, "vt": 3}, "county": {"suffolk": "*", "travis": "*"}}
    inst = instance_from_json(data, schema)
    assert inst.attributes['city']['boston'] == (('u', 2),)
    assert instance_from_json(json.loads(json.dumps(instance_to_json(inst))), schema) == inst


def test_missing_composition_entry(tmp_path):
    obj = json.loads((DATA / "cities_schema.json").read_text())
    obj["composition"] = [entry for entry in obj["composition"] if entry[:2] != ["id_city", "city_state"]]
    with pytest.raises(LawViolation) as info:
        load_category(write(tmp_path / "schema.json", obj))
    assert "id_city;city_state" in info.value.location


def test_attribute_outside_table_monoid():
    obj = json.loads((DATA / "department_schema.json").read_text())
    obj["monoids"]["college"] = {"table": {"elements": ["lo", "hi"], "unit": "lo",
                                           "op": [["lo", "lo", "lo"], ["lo", "hi", "hi"], ["hi", "lo", "hi"],
                                                  ["hi", "hi", "hi"]]}}
    schema = schema_from_json(obj)
    data = json.loads((DATA / "department_instance.json").read_text())
    data["attributes"]["college"] = {"c1": "hi", "c2": "mid"}
    with pytest.raises(TypeMismatch) as info:
        instance_from_json(data, schema)
    assert info.value.location == "attributes['college']['c2']"


def test_parse_errors_carry_locations(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "objects": ["a",\n}\n')
    with pytest.raises(ParseError) as info:
        read_json(str(path))
    assert info.value.location.startswith(str(path) + ":3:")
    with pytest.raises(ParseError, match="missing field 'morphisms'"):
        load_category(write(tmp_path / "objects.json", {"objects": ["a"]}))
    with pytest.raises(ParseError):
        read_json(str(tmp_path / "missing.json"))


def test_bad_tables_and_monoids():
    c = load_category(str(DATA / "cities_schema.json"))
    with pytest.raises(ParseError):
        copresheaf_from_json({"tables": {"town": ["x"]}}, c)
    with pytest.raises(LawViolation):
        copresheaf_from_json({"tables": {"city": ["x"], "state": []}}, c)
    obj = json.loads((DATA / "department_schema.json").read_text())
    obj["monoids"]["college"] = "average"
    with pytest.raises(ParseError) as info:
        schema_from_json(obj)
    assert info.value.location == "schema.monoids['college']"


def test_empty_instance_defaults():
    c = load_category(str(DATA / "cities_schema.json"))
    assert copresheaf_from_json({"tables": {}}, c) == Copresheaf.empty(c)


def test_bridge_file(tmp_path):
    path = str(tmp_path / "bridge.json")
    write_json(path, {"d": ["d1"], "e": ["e1", "e2"], "b": ["b1", "b2"], "c": ["c1"],
                      "f": {"e1": "d1", "e2": "d1"}, "g": {"e1": "b1", "e2": "b1"}, "h": {"b1": "c1", "b2": "c1"}})
    m = load_bridge(path).to_bicomodule()
    assert list(m.positions['c1']) == ['b1', 'b2']
    assert len(m.pattern('c1', 'b1').rows['d1']) == 2
    assert len(m.pattern('c1', 'b2').rows['d1']) == 0


def test_bridge_with_partial_map(tmp_path):
    path = str(tmp_path / "bridge.json")
    write_json(path, {"d": ["d1"], "e": ["e1"], "b": ["b1"], "c": ["c1"],
                      "f": {"e1": "d1"}, "g": {"e1": "b1"}, "h": {}})
    with pytest.raises(LawViolation):
        load_bridge(path)
