import pytest

from src.bicomodule import Bicomodule, apply, apply_morphism, bicomodule_coclosure, bicomodule_hom_count, \
    bicomodule_to_copresheaf, compose_bicomodules, copresheaf_to_bicomodule, delta_bicomodule, duc_query, extend, \
    from_poly, identity_bicomodule, is_isomorphic as bicomodules_isomorphic, local_hom_discrete, local_tensor, \
    pi_bicomodule, tensor_unit
from src.category import Cofunctor, FinCategory
from src.context import Context
from src.copresheaf import Copresheaf, Transformation, is_isomorphic
from src.errors import LawViolation
from src.poly import Poly, evaluate
from src.utils.generate import cities_category, cities_patterns, random_bicomodule, random_category, random_cities, \
    random_copresheaf, random_functor
from unittests.backend import rng_fn, seeds, trials


def cities() -> Copresheaf:
    return Copresheaf(cities_category(), {'city': ['boston', 'salem', 'austin'], 'state': ['ma', 'tx', 'vt'],
                                          'county': ['suffolk']},
                      {'city_state': {'boston': 'ma', 'salem': 'ma', 'austin': 'tx'},
                       'county_state': {'suffolk': 'ma'}})


@pytest.mark.parametrize("seed", seeds)
def test_generated_bicomodules_are_lawful(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        c, d = random_category(rng, 3), random_category(rng, 3)
        random_bicomodule(rng, c, d).check()


@pytest.mark.parametrize("seed", seeds)
def test_identity_is_unit(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c = random_category(rng, 3)
        x = random_copresheaf(rng, c)
        assert is_isomorphic(ctx, apply(ctx, identity_bicomodule(c), x), x)


def test_city_pairs():
    ctx = Context()
    x = cities()
    pair = cities_patterns(x.base)[0]
    result = apply(ctx, duc_query(x.base, [pair]), x)
    assert len(result.rows['*']) == 5
    assert ('1', ('boston', 'salem', 'ma')) in result.rows['*']
    assert ('1', ('austin', 'austin', 'tx')) in result.rows['*']


@pytest.mark.parametrize("seed", seeds)
def test_duc_query_against_nested_loops(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    d = cities_category()
    for _ in range(trials):
        x = random_cities(rng, d)
        rows = apply(ctx, duc_query(d, cities_patterns(d)), x).rows['*']
        state = {c: x.act('city_state', c) for c in x.rows['city']}
        pairs = sum(1 for c1 in x.rows['city'] for c2 in x.rows['city'] if state[c1] == state[c2])
        assert len(rows) == pairs + len(x.rows['city']) + len(x.rows['state'])


def test_empty_pattern_gives_one_row_per_position():
    ctx = Context()
    x = cities()
    query = duc_query(x.base, [Copresheaf.empty(x.base)] * 3, ['p', 'q', 'r'])
    assert [j for j, _ in apply(ctx, query, x).rows['*']] == ['p', 'q', 'r']


def test_copresheaves_are_bicomodules_into_zero():
    x = cities()
    m = copresheaf_to_bicomodule(x)
    m.check()
    assert bicomodule_to_copresheaf(m) == x
    terminal = copresheaf_to_bicomodule(Copresheaf.terminal(x.base))
    assert sum(len(terminal.positions[a]) for a in x.base.objects) == 3
    representable = copresheaf_to_bicomodule(Copresheaf.representable(x.base, 'city'))
    assert len(representable.positions['state']) == 1


def test_polynomials_are_bicomodules():
    ctx = Context()
    p = Poly.from_sizes([2, 1, 0])
    m = from_poly(p)
    labels = ['u', 'v']
    x = Copresheaf(FinCategory.terminal(), {'*': labels}, {})
    assert len(apply(ctx, m, x).rows['*']) == len(evaluate(p, labels))


@pytest.mark.parametrize("seed", seeds)
def test_delta_and_pi_bicomodules(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c, d = random_category(rng, 3), random_category(rng, 3)
        functor = random_functor(rng, c, d)
        functor.check()
        delta, pi = delta_bicomodule(functor), pi_bicomodule(functor)
        delta.check()
        pi.check()
        x = random_copresheaf(rng, d, 3)
        pulled = apply(ctx, delta, x)
        assert pulled.row_counts() == {a: len(x.rows[functor.on_objects[a]]) for a in c.objects}


@pytest.mark.parametrize("seed", seeds)
def test_garner(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials // 2):
        c, d, e = (random_category(rng, 3) for _ in range(3))
        m, n = random_bicomodule(rng, c, d), random_bicomodule(rng, d, e)
        composite = compose_bicomodules(ctx, m, n)
        composite.check()
        x = random_copresheaf(rng, e, 3)
        assert is_isomorphic(ctx, apply(ctx, composite, x), apply(ctx, m, apply(ctx, n, x)))


def test_compose_with_identity():
    ctx = Context()
    rng = rng_fn(5)
    c = FinCategory.discrete(['x', 'y'])
    d = FinCategory.arrow()
    m = random_bicomodule(rng, c, d)
    assert bicomodules_isomorphic(ctx, compose_bicomodules(ctx, m, identity_bicomodule(d)), m)


def test_extend_by_identities():
    rng = rng_fn(2)
    c, d = FinCategory.arrow(), FinCategory.cyclic(2)
    m = random_bicomodule(rng, c, d)
    assert extend(m, Cofunctor.identity(c), Cofunctor.identity(d)) == m


def test_extend_between_discrete():
    c, c_ = FinCategory.discrete(['x', 'y']), FinCategory.terminal()
    d = FinCategory.terminal()
    m = tensor_unit(c, d)
    out = extend(m, Cofunctor.between_discrete(c, c_, {'x': '*', 'y': '*'}), Cofunctor.identity(d))
    out.check()
    assert len(out.positions['*']) == 2


@pytest.mark.parametrize("seed", seeds)
def test_tensor_unit(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    c = FinCategory.discrete(['x', 'y'])
    for _ in range(trials):
        d = random_category(rng, 3)
        m = random_bicomodule(rng, c, d)
        assert bicomodules_isomorphic(ctx, local_tensor(m, tensor_unit(c, d)), m)


def test_local_hom_out_of_unit():
    ctx = Context()
    c, d = FinCategory.discrete(['x']), FinCategory.arrow()
    r = random_bicomodule(rng_fn(1), c, d)
    assert bicomodules_isomorphic(ctx, local_hom_discrete(ctx, tensor_unit(c, d), r), r)


def test_hom_count_adjunction():
    ctx = Context()
    rng = rng_fn(4)
    c = FinCategory.discrete(['x', 'y'])
    for _ in range(trials):
        d = random_category(rng, 2)
        p, q, r = (random_bicomodule(rng, c, d, 2) for _ in range(3))
        assert bicomodule_hom_count(ctx, local_tensor(p, q), r) == bicomodule_hom_count(
                ctx, p, local_hom_discrete(ctx, q, r))


def test_coclosure_positions():
    ctx = Context()
    rng = rng_fn(6)
    c, e = FinCategory.discrete(['x']), FinCategory.arrow()
    p = random_bicomodule(rng, c, e)
    q = identity_bicomodule(e)
    out = bicomodule_coclosure(ctx, p, q)
    assert out.positions == p.positions
    assert all(is_isomorphic(ctx, out.pattern('x', i), p.pattern('x', i)) for i in p.positions['x'])


def test_missing_pattern():
    c, d = FinCategory.discrete(['x']), FinCategory.terminal()
    with pytest.raises(LawViolation, match="pattern"):
        Bicomodule(c, d, {'x': ['j']}, {})


def test_identity_transformation_is_preserved():
    ctx = Context()
    rng = rng_fn(3)
    d = cities_category()
    x = random_cities(rng, d, 3)
    m = duc_query(d, cities_patterns(d))
    assert apply_morphism(ctx, m, Transformation.identity(x)) == Transformation.identity(apply(ctx, m, x))
