"""
JSON file formats. Files are read through smart_open so that local paths and remote URLs behave alike. Labels are
strings or nested lists, the latter becoming tuples in memory.
"""
import json
import os
from typing import Any, Dict, Optional

from smart_open import open as smart_open

from src.aggregate import Instance, Schema
from src.backend import Label
from src.bicomodule import Bicomodule, duc_query
from src.category import CatFunctor, FinCategory
from src.copresheaf import Copresheaf
from src.errors import ParseError
from src.monoid import CommMonoid, monoid_from_config
from src.span import BridgeDiagram, Span, conjunctive


def to_label(value: Any) -> Label:
    if isinstance(value, list):
        return tuple(to_label(item) for item in value)
    if isinstance(value, dict):
        raise ParseError("labels are strings, numbers or lists", None, value)
    return value


def from_label(label: Label) -> Any:
    if isinstance(label, tuple):
        return [from_label(item) for item in label]
    return label


def read_json(path: str) -> Any:
    try:
        with smart_open(path, 'r') as f:
            text = f.read()
    except (OSError, ValueError) as exc:
        raise ParseError(f"can't read file: {exc}", path, None)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}", text[max(exc.pos - 20, 0):exc.pos + 20])


def write_json(path: str, obj: Any, indent: int = 4):
    with smart_open(path, 'w') as f:
        f.write(json.dumps(obj, indent=indent))


def _field(obj: Dict, name: str, location: str, kind=None, default=None) -> Any:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", location, obj)
    if name not in obj:
        if default is not None:
            return default
        raise ParseError(f"missing field '{name}'", location, sorted(obj))
    value = obj[name]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field '{name}' has the wrong type, expected {kind.__name__}", f"{location}.{name}", value)
    return value


def _resolve(value: Any, base: Optional[str]) -> Any:
    """Nested documents may be given inline or as a path relative to the referring file."""
    if isinstance(value, str):
        path = value if base is None or os.path.isabs(value) or "://" in value else os.path.join(base, value)
        return read_json(path)
    return value


def category_from_json(obj: Dict, location: str = "category") -> FinCategory:
    objects = [to_label(a) for a in _field(obj, "objects", location, list)]
    morphisms = []
    for idx, item in enumerate(_field(obj, "morphisms", location, list)):
        where = f"{location}.morphisms[{idx}]"
        if isinstance(item, dict):
            morphisms.append((to_label(_field(item, "name", where)), to_label(_field(item, "dom", where)),
                              to_label(_field(item, "cod", where))))
        elif isinstance(item, list) and len(item) == 3:
            morphisms.append(tuple(to_label(x) for x in item))
        else:
            raise ParseError("morphisms are [name, dom, cod] or {name, dom, cod}", where, item)
    identities = _identities(obj, objects, location)
    composition = {}
    for idx, item in enumerate(_field(obj, "composition", location, list)):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError("composition entries are [f, g, f;g]", f"{location}.composition[{idx}]", item)
        f, g, h = (to_label(x) for x in item)
        composition[(f, g)] = h
    return FinCategory(objects, morphisms, identities, composition)


def _identities(obj: Dict, objects, location: str) -> Dict:
    raw = _field(obj, "identities", location)
    if isinstance(raw, dict):
        return {to_label(_row(a)): to_label(f) for a, f in raw.items()}
    if isinstance(raw, list) and len(raw) == len(objects):
        return {a: to_label(f) for a, f in zip(objects, raw)}
    raise ParseError("identities map objects to morphisms", f"{location}.identities", raw)


def category_to_json(c: FinCategory) -> Dict:
    return {"objects": [from_label(a) for a in c.objects],
            "morphisms": [[from_label(f), from_label(c.dom[f]), from_label(c.cod[f])] for f in c.morphisms],
            "identities": [from_label(c.identities[a]) for a in c.objects],
            "composition": [[from_label(f), from_label(g), from_label(c.composition[(f, g)])]
                            for f, g in c.composable_pairs()]}


def monoids_from_json(obj: Dict, c: FinCategory, location: str = "monoids") -> Dict[Label, CommMonoid]:
    if not isinstance(obj, dict):
        raise ParseError("monoids map objects to monoid kinds", location, obj)
    out = {}
    for key, entry in obj.items():
        a = to_label(_row(key))
        if a not in c.objects:
            raise ParseError("monoid for an unknown object", f"{location}['{key}']", key)
        out[a] = monoid_from_config(entry, f"{location}['{key}']")
    return out


def schema_from_json(obj: Dict, location: str = "schema") -> Schema:
    c = category_from_json(obj, location)
    return Schema(c, monoids_from_json(_field(obj, "monoids", location, dict), c, f"{location}.monoids"))


def schema_to_json(schema: Schema) -> Dict:
    out = category_to_json(schema.category)
    out["monoids"] = {_key(a): m.serialize() for a, m in schema.monoids.items()}
    return out


def _keyed(obj: Dict, location: str) -> Dict[Label, Any]:
    if not isinstance(obj, dict):
        raise ParseError("expected an object keyed by labels", location, obj)
    return {to_label(_row(key)): value for key, value in obj.items()}


def copresheaf_from_json(obj: Dict, c: FinCategory, location: str = "instance") -> Copresheaf:
    tables = _keyed(_field(obj, "tables", location, dict), f"{location}.tables")
    for a in tables:
        if a not in c.objects:
            raise ParseError("table for an unknown object", f"{location}.tables['{_key(a)}']", a)
    rows = {a: [to_label(r) for r in tables.get(a, [])] for a in c.objects}
    maps = _keyed(_field(obj, "maps", location, dict, default={}), f"{location}.maps")
    action = {}
    for f, table in maps.items():
        if not isinstance(table, dict):
            raise ParseError("maps send row labels to row labels", f"{location}.maps['{_key(f)}']", table)
        action[f] = {to_label(_row(x)): to_label(y) for x, y in table.items()}
    return Copresheaf(c, rows, action)


def _row(key: str) -> Any:
    """Object keys are strings; composite row labels are written as JSON lists inside the key."""
    if key.startswith('['):
        try:
            return json.loads(key)
        except json.JSONDecodeError:
            return key
    return key


def copresheaf_to_json(x: Copresheaf) -> Dict:
    c = x.base
    identities = set(c.identities.values())
    return {"tables": {_key(a): [from_label(r) for r in x.rows[a]] for a in c.objects},
            "maps": {_key(f): {_key(r): from_label(x.act(f, r)) for r in x.rows[c.dom[f]]}
                     for f in c.morphisms if f not in identities}}


def _key(label: Label) -> str:
    return json.dumps(from_label(label)) if isinstance(label, tuple) else str(label)


def instance_from_json(obj: Dict, schema: Schema, location: str = "instance") -> Instance:
    data = copresheaf_from_json(obj, schema.category, location)
    raw = _field(obj, "attributes", location, dict, default={})
    attributes = {a: {to_label(_row(r)): value for r, value in table.items()}
                  for a, table in _keyed(raw, f"{location}.attributes").items()}
    return Instance(schema, data, attributes)


def instance_to_json(inst: Instance) -> Dict:
    out = copresheaf_to_json(inst.data)
    out["attributes"] = {_key(a): {_key(r): value_to_json(v) for r, v in table.items()}
                         for a, table in inst.attributes.items()}
    return out


def value_to_json(value: Any) -> Any:
    if isinstance(value, tuple):
        return [from_label(label) for label, count in value for _ in range(count)]
    return value


def query_from_json(obj: Dict, right: FinCategory, location: str = "query") -> Bicomodule:
    patterns = _field(obj, "patterns", location, list)
    parsed = [copresheaf_from_json(p, right, f"{location}.patterns[{idx}]") for idx, p in enumerate(patterns)]
    labels = obj.get("labels")
    return duc_query(right, parsed, [to_label(x) for x in labels] if labels is not None else None)


def functor_from_json(obj: Dict, base: Optional[str] = None, location: str = "functor") -> CatFunctor:
    source = category_from_json(_resolve(_field(obj, "source", location), base), f"{location}.source")
    target = category_from_json(_resolve(_field(obj, "target", location), base), f"{location}.target")
    objects = {a: to_label(b) for a, b in _keyed(_field(obj, "objects", location, dict), location).items()}
    morphisms = _keyed(_field(obj, "morphisms", location, dict, default={}), location)
    on_morphisms = {source.identities[a]: target.identities[b] for a, b in objects.items() if a in source.objects}
    on_morphisms.update({f: to_label(g) for f, g in morphisms.items()})
    functor = CatFunctor(source, target, objects, on_morphisms)
    functor.check()
    return functor


def span_from_json(obj: Dict, location: str = "span") -> Span:
    fields = {name: _field(obj, name, location, list) for name in ("left", "apex", "right")}
    legs = {name: _field(obj, name, location, dict) for name in ("f", "g")}
    return Span(*(map(to_label, fields[name]) for name in ("left", "apex", "right")),
                *({to_label(_row(s)): to_label(x) for s, x in legs[name].items()} for name in ("f", "g")))


def span_to_json(span: Span) -> Dict:
    return {"left": [from_label(a) for a in span.left], "apex": [from_label(s) for s in span.apex],
            "right": [from_label(b) for b in span.right], "f": {_key(s): from_label(span.f[s]) for s in span.apex},
            "g": {_key(s): from_label(span.g[s]) for s in span.apex}}


def conjunctive_from_json(obj: Dict, location: str = "conjunctive") -> Bicomodule:
    left = [to_label(a) for a in _field(obj, "left", location, list)]
    right = [to_label(b) for b in _field(obj, "right", location, list)]
    rows = {a: {b: [to_label(x) for x in xs] for b, xs in _keyed(table, f"{location}.rows").items()}
            for a, table in _keyed(_field(obj, "rows", location, dict), location).items()}
    return conjunctive(left, right, rows)


def conjunctive_to_json(m: Bicomodule) -> Dict:
    rows = {}
    for a in m.left.objects:
        (j,) = m.positions[a].labels
        pattern = m.pattern(a, j)
        rows[_key(a)] = {_key(b): [from_label(x) for x in pattern.rows[b]] for b in m.right.objects}
    return {"left": [from_label(a) for a in m.left.objects], "right": [from_label(b) for b in m.right.objects],
            "rows": rows}


def bridge_from_json(obj: Dict, location: str = "bridge") -> BridgeDiagram:
    sets = {name: [to_label(x) for x in _field(obj, name, location, list)] for name in ("d", "e", "b", "c")}
    maps = {name: {to_label(_row(k)): to_label(v) for k, v in _field(obj, name, location, dict).items()}
            for name in ("f", "g", "h")}
    return BridgeDiagram(sets["d"], sets["e"], sets["b"], sets["c"], maps["f"], maps["g"], maps["h"])


def load_category(path: str) -> FinCategory:
    return category_from_json(read_json(path), path)


def load_schema(path: str) -> Schema:
    return schema_from_json(read_json(path), path)


def load_instance(path: str, schema: Schema) -> Instance:
    return instance_from_json(read_json(path), schema, path)


def load_copresheaf(path: str, c: FinCategory) -> Copresheaf:
    return copresheaf_from_json(read_json(path), c, path)


def load_query(path: str, right: FinCategory) -> Bicomodule:
    return query_from_json(read_json(path), right, path)


def load_functor(path: str) -> CatFunctor:
    return functor_from_json(read_json(path), os.path.dirname(path) or None, path)


def load_span(path: str) -> Span:
    return span_from_json(read_json(path), path)


def load_conjunctive(path: str) -> Bicomodule:
    return conjunctive_from_json(read_json(path), path)


def load_bridge(path: str) -> BridgeDiagram:
    return bridge_from_json(read_json(path), path)
