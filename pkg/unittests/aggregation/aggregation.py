import pytest

from src.aggregate import Instance, PiComonadValue, Schema, TaggedSchema, aggregate_all, aggregate_along, \
    aggregate_generalized, aggregate_via_classifier, delta_witness, epsilon_witness, fin_module_action, group_by, \
    monoid_as_fin_module, pi_comonad_check
from src.category import FinCategory
from src.context import Context
from src.copresheaf import Copresheaf
from src.errors import LawViolation, RowTooLarge, TypeMismatch
from src.monoid import IntSum, MaxWithBottom, MultisetOver
from src.span import Span
from src.utils.generate import department_instance, random_instance, random_schema, random_table_monoid
from unittests.backend import rng_fn, seeds, small_context, trials


def test_department_salaries():
    _, inst = department_instance()
    assert aggregate_along(inst, 'works_in') == {'d1': 30, 'd2': 5, 'd3': 0}
    assert aggregate_along(inst, 'works_at') == {'c1': 35, 'c2': 0}
    assert aggregate_along(inst, 'id_e') == inst.attributes['employee']


def test_empty_fiber_gets_unit():
    schema, inst = department_instance()
    top = Schema(schema.category, {**schema.monoids, 'employee': MaxWithBottom()})
    inst = Instance(top, inst.data, inst.attributes)
    assert aggregate_along(inst, 'works_in') == {'d1': 20, 'd2': 5, 'd3': None}


def test_unknown_morphism():
    _, inst = department_instance()
    with pytest.raises(TypeMismatch):
        aggregate_along(inst, 'manages')


def test_instance_validation():
    schema, inst = department_instance()
    attributes = {**inst.attributes, 'employee': {'e1': 10, 'e2': 20}}
    with pytest.raises(TypeMismatch, match="row without"):
        Instance(schema, inst.data, attributes)
    attributes = {**inst.attributes, 'employee': {'e1': 10, 'e2': 'twenty', 'e3': 5}}
    with pytest.raises(TypeMismatch) as info:
        Instance(schema, inst.data, attributes)
    assert info.value.location == "attributes['employee']['e2']"
    with pytest.raises(LawViolation):
        Schema(schema.category, {'employee': IntSum()})


def test_group_by():
    _, inst = department_instance()
    groups = group_by(inst.data, 'works_in')
    assert groups['d1'] == MultisetOver.of(['e1', 'e2'])
    assert groups['d2'] == MultisetOver.singleton('e3')
    assert groups['d3'] == ()


@pytest.mark.parametrize("seed", seeds)
def test_counit_and_comultiplication(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        schema = random_schema(rng, 4)
        inst = random_instance(rng, schema)
        assert epsilon_witness(inst) is None
        c = schema.category
        for f, g in c.composable_pairs():
            assert delta_witness(inst, f, g) is None
        assert pi_comonad_check(schema, seed).passed


def test_department_comonad_values():
    schema, inst = department_instance()
    values = aggregate_all(inst)
    c1 = values[('college', 'c1')]
    assert c1.counit(schema.category) == 0
    assert c1.components['works_at'] == 35
    spread = c1.comultiply(schema.category)
    assert spread['part_of'] == PiComonadValue('department', {'id_d': 2, 'works_in': 35})


def test_broken_table_is_caught():
    _, inst = department_instance()
    inst.data.action['works_at']['e3'] = 'c2'
    assert delta_witness(inst, 'works_in', 'part_of') == 'c1'


def test_fin_module_action():
    assert fin_module_action(IntSum(), ('2', '1', ('1', '1')), (3, 4)) == (7,)
    assert fin_module_action(IntSum(), ('2', '3', ('3', '3')), (3, 4)) == (0, 0, 7)
    assert fin_module_action(IntSum(), ('0', '2', ()), ()) == (0, 0)


@pytest.mark.parametrize("seed", seeds)
def test_fin_modules_are_functorial(seed: int):
    ctx = small_context()
    monoid = IntSum() if seed == 0 else random_table_monoid(rng_fn(seed))
    module = monoid_as_fin_module(ctx, monoid, 2)
    module.check()
    with pytest.raises(RowTooLarge):
        monoid_as_fin_module(ctx, monoid, ctx.universe.truncation + 1)


@pytest.mark.parametrize("seed", seeds)
def test_via_classifier(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        schema = random_schema(rng, 3)
        inst = random_instance(rng, schema)
        for f in schema.category.morphisms:
            assert aggregate_via_classifier(ctx, inst, f) == aggregate_along(inst, f)


def test_generalized_aggregation():
    c = FinCategory.arrow()
    tags = Span(['a', 'b'], ['sales', 'peak', 'count'], ['sum', 'max'],
                {'sales': 'a', 'peak': 'a', 'count': 'b'}, {'sales': 'sum', 'peak': 'max', 'count': 'sum'})
    tagged = TaggedSchema(c, tags, {'sum': IntSum(), 'max': MaxWithBottom()})
    x = Copresheaf(c, {'a': ['x', 'y', 'z'], 'b': ['p', 'q']}, {'f': {'x': 'p', 'y': 'p', 'z': 'q'}})
    attributes = {'sales': {'x': 1, 'y': 2, 'z': 4}, 'peak': {'x': 7, 'y': 3, 'z': None}}
    out = aggregate_generalized(tagged, x, attributes, 'f')
    assert out == {'sales': {'p': 3, 'q': 4}, 'peak': {'p': 7, 'q': None}}
    with pytest.raises(TypeMismatch):
        aggregate_generalized(tagged, x, {**attributes, 'peak': {'x': 'high', 'y': 3, 'z': 1}}, 'f')
    with pytest.raises(LawViolation):
        TaggedSchema(c, tags, {'sum': IntSum()})
    with pytest.raises(TypeMismatch):
        TaggedSchema(FinCategory.terminal(), tags, {'sum': IntSum(), 'max': MaxWithBottom()})
