"""
Seeded generators of small random structures for the law suites and tests. Every generator takes a random.Random
so that a (seed, case) pair reproduces a case exactly.
"""
import itertools
import random
from typing import List, Tuple

from src.aggregate import Instance, Schema
from src.backend import Label
from src.bicomodule import Bicomodule, delta_bicomodule, local_tensor, pi_bicomodule, tensor_unit
from src.category import CatFunctor, FinCategory, product_direct
from src.copresheaf import Copresheaf, coproduct, elements_category, quotient
from src.monoid import CommMonoid, IntSum, MaxWithBottom, MultisetOver, TableMonoid
from src.poly import Poly
from src.span import Span, conjunctive

MAX_ROWS = 5


def random_poly(rng: random.Random, max_positions: int = 4, max_directions: int = 4) -> Poly:
    return Poly.from_sizes(rng.randint(0, max_directions) for _ in range(rng.randint(0, max_positions)))


def random_poset(rng: random.Random, size: int) -> FinCategory:
    elements = [f"p{idx}" for idx in range(size)]
    relations = [(a, b) for a, b in itertools.combinations(elements, 2) if rng.random() < 0.4]
    return FinCategory.poset(elements, relations)


def random_category(rng: random.Random, max_objects: int = 4) -> FinCategory:
    kind = rng.randrange(7)
    size = rng.randint(1, max_objects)
    if kind == 0:
        return FinCategory.discrete([f"o{idx}" for idx in range(size)])
    if kind == 1:
        return FinCategory.codiscrete([f"o{idx}" for idx in range(min(size, 3))])
    if kind == 2:
        return FinCategory.cyclic(rng.randint(1, 4))
    if kind == 3:
        return random_poset(rng, size)
    if kind == 4:
        return FinCategory.arrow()
    if kind == 5:
        return product_direct(FinCategory.arrow(), FinCategory.discrete(['x', 'y'][:rng.randint(1, 2)]))
    base = FinCategory.arrow() if rng.random() < 0.5 else FinCategory.cyclic(2)
    el, _ = elements_category(random_copresheaf(rng, base, 3))
    return el if el.objects.labels else FinCategory.terminal()


def random_copresheaf(rng: random.Random, c: FinCategory, max_rows: int = MAX_ROWS) -> Copresheaf:
    """A quotient of a coproduct of representables and terminals, retried until every table fits max_rows."""
    if not c.objects.labels:
        return Copresheaf.empty(c)
    for _ in range(8):
        parts = []
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.7:
                parts.append(Copresheaf.representable(c, rng.choice(c.objects.labels)))
            else:
                parts.append(Copresheaf.terminal(c))
        if not parts:
            return Copresheaf.empty(c)
        union = coproduct(parts)
        elements = union.elements()
        relations = []
        for _ in range(rng.randint(0, 2)):
            a, x = rng.choice(elements)
            same = [e for e in elements if e[0] == a]
            relations.append(((a, x), rng.choice(same)))
        out, _ = quotient(union, relations)
        if all(count <= max_rows for count in out.row_counts().values()):
            return out
    return Copresheaf.terminal(c)


def random_functor(rng: random.Random, c: FinCategory, d: FinCategory) -> CatFunctor:
    if c == d and rng.random() < 0.3:
        return CatFunctor.identity(c)
    if c.is_discrete():
        return CatFunctor.from_object_map(c, d, {a: rng.choice(d.objects.labels) for a in c.objects})
    return CatFunctor.constant(c, d, rng.choice(d.objects.labels))


def random_etale(rng: random.Random, d: FinCategory) -> CatFunctor:
    """The projection out of the category of elements of a random copresheaf."""
    _, projection = elements_category(random_copresheaf(rng, d, 3))
    return projection


def random_bicomodule(rng: random.Random, c: FinCategory, d: FinCategory, max_rows: int = 3) -> Bicomodule:
    kind = rng.randrange(5 if c.is_discrete() else 4)
    if kind == 0:
        return delta_bicomodule(random_functor(rng, c, d))
    if kind == 1:
        return pi_bicomodule(random_functor(rng, d, c))
    if kind == 2:
        return tensor_unit(c, d)
    if kind == 3:
        return local_tensor(random_bicomodule(rng, c, d, max_rows), tensor_unit(c, d))
    positions = {a: [f"j{idx}" for idx in range(rng.randint(0, 2))] for a in c.objects}
    patterns = {(a, j): random_copresheaf(rng, d, max_rows) for a in c.objects for j in positions[a]}
    return Bicomodule(c, d, positions, patterns, check=False)


def random_span(rng: random.Random, max_size: int = 3) -> Span:
    left = [f"a{idx}" for idx in range(rng.randint(1, max_size))]
    right = [f"b{idx}" for idx in range(rng.randint(1, max_size))]
    apex = [f"s{idx}" for idx in range(rng.randint(0, max_size + 1))]
    return Span(left, apex, right, {s: rng.choice(left) for s in apex}, {s: rng.choice(right) for s in apex})


def random_span_between(rng: random.Random, left: List[Label], right: List[Label], max_apex: int = 4) -> Span:
    apex = [f"s{idx}" for idx in range(rng.randint(0, max_apex))]
    return Span(left, apex, right, {s: rng.choice(left) for s in apex}, {s: rng.choice(right) for s in apex})


def random_conjunctive(rng: random.Random, max_size: int = 3) -> Bicomodule:
    left = [f"a{idx}" for idx in range(rng.randint(1, max_size))]
    right = [f"b{idx}" for idx in range(rng.randint(1, max_size))]
    shared = rng.random() < 0.5
    rows = {a: {b: [f"x{k}" if shared else f"x{a}{b}{k}" for k in range(rng.randint(0, 2))] for b in right}
            for a in left}
    return conjunctive(left, right, rows)


def random_table_monoid(rng: random.Random) -> TableMonoid:
    """A relabeled 4-element commutative monoid: Z/4, the max-chain, Klein four or capped addition."""
    size = 4
    kind = rng.randrange(4)
    ops = [lambda x, y: (x + y) % size, max, lambda x, y: x ^ y, lambda x, y: min(x + y, size - 1)]
    op = ops[kind]
    labels = [f"e{idx}" for idx in range(size)]
    rng.shuffle(labels)
    table = {(labels[x], labels[y]): labels[op(x, y)] for x in range(size) for y in range(size)}
    return TableMonoid(labels, table, labels[0])


def random_value(rng: random.Random, monoid: CommMonoid):
    if isinstance(monoid, IntSum):
        return rng.randint(-5, 20)
    if isinstance(monoid, MaxWithBottom):
        return None if rng.random() < 0.1 else rng.randint(0, 50)
    if isinstance(monoid, MultisetOver):
        labels = list(monoid.labels) if monoid.labels is not None else ['u', 'v', 'w']
        return MultisetOver.of(rng.choice(labels) for _ in range(rng.randint(0, 2)))
    return rng.choice(monoid.sample())


def random_monoid(rng: random.Random) -> CommMonoid:
    return rng.choice([IntSum(), MaxWithBottom(), MultisetOver(['u', 'v', 'w'])])


def random_instance(rng: random.Random, schema: Schema, max_rows: int = MAX_ROWS) -> Instance:
    data = random_copresheaf(rng, schema.category, max_rows)
    attributes = {a: {row: random_value(rng, schema.monoids[a]) for row in data.rows[a]}
                  for a in schema.category.objects}
    return Instance(schema, data, attributes)


def random_schema(rng: random.Random, max_objects: int = 4) -> Schema:
    c = random_category(rng, max_objects)
    return Schema(c, {a: random_monoid(rng) for a in c.objects})


def cities_category() -> FinCategory:
    """city -> state <- county"""
    return FinCategory.free_on_graph(['city', 'state', 'county'],
                                     [('city_state', 'city', 'state'), ('county_state', 'county', 'state')])


def cities_patterns(d: FinCategory) -> List[Copresheaf]:
    """(city ×_state city) + city + state"""
    pair = Copresheaf(d, {'city': ['city1', 'city2'], 'state': ['state']},
                      {'city_state': {'city1': 'state', 'city2': 'state'}, 'county_state': {}})
    single = Copresheaf(d, {'city': ['city'], 'state': ['state']}, {'city_state': {'city': 'state'},
                                                                     'county_state': {}})
    state = Copresheaf(d, {'state': ['state']}, {'city_state': {}, 'county_state': {}})
    return [pair, single, state]


def random_cities(rng: random.Random, d: FinCategory, max_rows: int = 6) -> Copresheaf:
    states = [f"st{idx}" for idx in range(rng.randint(1, max_rows))]
    cities = [f"ci{idx}" for idx in range(rng.randint(0, max_rows))]
    counties = [f"co{idx}" for idx in range(rng.randint(0, max_rows))]
    return Copresheaf(d, {'city': cities, 'state': states, 'county': counties},
                      {'city_state': {x: rng.choice(states) for x in cities},
                       'county_state': {x: rng.choice(states) for x in counties}})


def department_instance() -> Tuple[Schema, Instance]:
    """employee -works_in-> department -part_of-> college with integer salaries."""
    c = FinCategory(['employee', 'department', 'college'],
                    [('id_e', 'employee', 'employee'), ('id_d', 'department', 'department'),
                     ('id_c', 'college', 'college'), ('works_in', 'employee', 'department'),
                     ('part_of', 'department', 'college'), ('works_at', 'employee', 'college')],
                    {'employee': 'id_e', 'department': 'id_d', 'college': 'id_c'},
                    {('id_e', 'id_e'): 'id_e', ('id_d', 'id_d'): 'id_d', ('id_c', 'id_c'): 'id_c',
                     ('id_e', 'works_in'): 'works_in', ('works_in', 'id_d'): 'works_in',
                     ('id_d', 'part_of'): 'part_of', ('part_of', 'id_c'): 'part_of',
                     ('id_e', 'works_at'): 'works_at', ('works_at', 'id_c'): 'works_at',
                     ('works_in', 'part_of'): 'works_at'})
    schema = Schema(c, {'employee': IntSum(), 'department': IntSum(), 'college': IntSum()})
    data = Copresheaf(c, {'employee': ['e1', 'e2', 'e3'], 'department': ['d1', 'd2', 'd3'],
                          'college': ['c1', 'c2']},
                      {'works_in': {'e1': 'd1', 'e2': 'd1', 'e3': 'd2'},
                       'part_of': {'d1': 'c1', 'd2': 'c1', 'd3': 'c2'},
                       'works_at': {'e1': 'c1', 'e2': 'c1', 'e3': 'c1'}})
    attributes = {'employee': {'e1': 10, 'e2': 20, 'e3': 5}, 'department': {'d1': 1, 'd2': 1, 'd3': 1},
                  'college': {'c1': 0, 'c2': 0}}
    return schema, Instance(schema, data, attributes)

