import pytest

from src.bicomodule import apply, delta_bicomodule, pi_bicomodule
from src.category import CatFunctor, FinCategory
from src.context import Context
from src.copresheaf import Copresheaf, copresheaf_homs, is_isomorphic
from src.errors import NotEtale
from src.migrate import migrate_delta, migrate_pi, migrate_sigma
from src.utils.generate import cities_category, random_category, random_copresheaf, random_etale, random_functor
from unittests.backend import rng_fn, seeds, trials


def split_sets() -> Copresheaf:
    return Copresheaf(FinCategory.discrete(['x', 'y']), {'x': ['a', 'b'], 'y': ['a', 'b', 'c']}, {})


def test_identity_functor():
    ctx = Context()
    x = random_copresheaf(rng_fn(0), FinCategory.arrow())
    identity = CatFunctor.identity(x.base)
    assert migrate_delta(identity, x) == x
    assert is_isomorphic(ctx, migrate_pi(ctx, identity, x), x)
    assert is_isomorphic(ctx, migrate_sigma(identity, x), x)


def test_collapse_two_objects():
    ctx = Context()
    y = split_sets()
    functor = CatFunctor.constant(y.base, FinCategory.terminal(), '*')
    assert migrate_pi(ctx, functor, y).row_counts() == {'*': 6}
    sigma = migrate_sigma(functor, y)
    assert sigma.row_counts() == {'*': 5}
    assert ('y', 'c') in sigma.rows['*']
    x = Copresheaf.terminal(FinCategory.terminal())
    assert migrate_delta(functor, x).row_counts() == {'x': 1, 'y': 1}


def test_pi_along_place_to_state():
    ctx = Context()
    d = cities_category()
    c = FinCategory.discrete(['place'])
    functor = CatFunctor.from_object_map(c, d, {'place': 'state'})
    y = Copresheaf(c, {'place': ['p1', 'p2']}, {})
    pi = migrate_pi(ctx, functor, y)
    pi.check()
    assert pi.row_counts() == {'city': 2, 'state': 2, 'county': 2}
    sigma = migrate_sigma(functor, y)
    assert sigma.row_counts() == {'city': 0, 'state': 2, 'county': 0}


def test_sigma_needs_etale():
    functor = CatFunctor.constant(FinCategory.arrow(), FinCategory.terminal(), '*')
    x = Copresheaf.terminal(FinCategory.arrow())
    with pytest.raises(NotEtale) as info:
        migrate_sigma(functor, x)
    assert info.value.location.startswith("objects[")


@pytest.mark.parametrize("seed", seeds)
def test_delta_pi_adjunction(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c, d = random_category(rng, 3), random_category(rng, 3)
        functor = random_functor(rng, c, d)
        x, y = random_copresheaf(rng, d, 3), random_copresheaf(rng, c, 3)
        pi = migrate_pi(ctx, functor, y)
        pi.check()
        assert len(copresheaf_homs(ctx, migrate_delta(functor, x), y)) == len(copresheaf_homs(ctx, x, pi))


@pytest.mark.parametrize("seed", seeds)
def test_sigma_delta_adjunction(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        d = random_category(rng, 3)
        functor = random_etale(rng, d)
        if not functor.source.objects.labels:
            continue
        x, y = random_copresheaf(rng, d, 3), random_copresheaf(rng, functor.source, 3)
        sigma = migrate_sigma(functor, y)
        sigma.check()
        assert len(copresheaf_homs(ctx, sigma, x)) == len(copresheaf_homs(ctx, y, migrate_delta(functor, x)))


@pytest.mark.parametrize("seed", seeds)
def test_migrations_agree_with_bicomodules(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c, d = random_category(rng, 3), random_category(rng, 3)
        functor = random_functor(rng, c, d)
        x, y = random_copresheaf(rng, d, 3), random_copresheaf(rng, c, 3)
        assert is_isomorphic(ctx, apply(ctx, delta_bicomodule(functor), x), migrate_delta(functor, x))
        assert is_isomorphic(ctx, apply(ctx, pi_bicomodule(functor), y), migrate_pi(ctx, functor, y))
