import pytest

from src.category import CatFunctor, Cofunctor, FinCategory, cofunctor_check, cofunctor_compose, is_etale, \
    opposite_direct, product_direct
from src.comonoid import product_category
from src.copresheaf import Copresheaf, elements_category
from src.errors import LawViolation, NotEtale
from src.utils.generate import random_category
from unittests.backend import composable_triples, rng_fn, seeds, trials


def z3() -> FinCategory:
    return FinCategory.cyclic(3)


@pytest.mark.parametrize("seed", seeds)
def test_generated_categories_are_lawful(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        c = random_category(rng, 5)
        c.check()
        for f, g, h in composable_triples(c):
            assert c.compose(c.compose(f, g), h) == c.compose(f, c.compose(g, h))


def test_missing_composition_entry():
    c = FinCategory.arrow()
    composition = dict(c.composition)
    del composition[('id_a', 'f')]
    with pytest.raises(LawViolation) as exc:
        FinCategory(c.objects, [(f, c.dom[f], c.cod[f]) for f in c.morphisms], c.identities, composition)
    assert "id_a;f" in exc.value.location


def test_non_associative_table():
    table = {(x, y): y if x == "e" else x for x in "eab" for y in "eab" if "e" in (x, y)}
    table.update({("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "a", ("b", "b"): "a"})
    with pytest.raises(LawViolation) as exc:
        FinCategory.monoid("eab", table, "e")
    assert "associativity" in exc.value.message


def test_constructors():
    assert len(FinCategory.discrete(['x', 'y']).morphisms) == 2
    assert len(FinCategory.codiscrete(['x', 'y', 'z']).morphisms) == 9
    assert len(FinCategory.chain(3).morphisms) == 6
    assert len(FinCategory.cospan().morphisms) == 5
    assert FinCategory.cospan().hom('b', 'c') == ('g',)
    assert len(FinCategory.poset(['p', 'q', 'r'], [('p', 'q'), ('q', 'r')]).hom('p', 'r')) == 1
    assert z3().compose('2', '2') == '1'
    with pytest.raises(LawViolation):
        FinCategory.poset(['p', 'q'], [('p', 'q'), ('q', 'p')])


@pytest.mark.parametrize("c", [FinCategory.discrete(['x', 'y']), FinCategory.terminal()])
def test_opposite_of_discrete(c: FinCategory):
    assert opposite_direct(c) == c


def test_opposite_of_arrow():
    op = opposite_direct(FinCategory.arrow())
    assert op.dom['f'] == 'b'
    assert op.cod['f'] == 'a'
    assert op.hom('b', 'a') == ('f',)


def test_opposite_monoid_transposes():
    table = {(x, y): y if x == 'e' else x for x in 'eab' for y in 'eab'}
    m = FinCategory.monoid('eab', table, 'e')
    op = opposite_direct(m)
    assert all(op.composition[(x, y)] == m.composition[(y, x)] for x in 'eab' for y in 'eab')


def test_opposite_is_involutive():
    rng = rng_fn(3)
    for _ in range(trials):
        c = random_category(rng)
        assert opposite_direct(opposite_direct(c)) == c


def test_product():
    assert product_category(FinCategory.discrete('ab'), FinCategory.discrete('xyz')).is_discrete()
    assert len(product_category(FinCategory.discrete('ab'), FinCategory.discrete('xyz')).objects) == 6
    c = FinCategory.arrow()
    assert product_category(c, FinCategory.terminal()) == product_direct(c, FinCategory.terminal())
    assert product_category(z3(), FinCategory.cyclic(2)) == product_direct(z3(), FinCategory.cyclic(2))


@pytest.mark.parametrize("seed", seeds)
def test_product_against_direct(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials // 2):
        c, d = random_category(rng, 3), random_category(rng, 3)
        assert product_category(c, d) == product_direct(c, d)


def test_identity_functor_is_etale():
    c = FinCategory.arrow()
    functor = CatFunctor.identity(c)
    functor.check()
    assert is_etale(functor)
    assert functor.to_cofunctor() == Cofunctor.identity(c)


def test_elements_projection_is_etale():
    c = FinCategory.arrow()
    x = Copresheaf(c, {'a': ['x1', 'x2'], 'b': ['y']}, {'f': {'x1': 'y', 'x2': 'y'}})
    el, projection = elements_category(x)
    el.check()
    projection.check()
    assert projection.is_etale()
    assert len(el.objects) == 3


def test_constant_into_monoid_is_not_etale():
    functor = CatFunctor.constant(FinCategory.discrete(['x', 'y']), z3(), '*')
    functor.check()
    assert not is_etale(functor)
    with pytest.raises(NotEtale):
        functor.to_cofunctor()


def test_functor_breaking_composition():
    c = FinCategory.cyclic(2)
    functor = CatFunctor(c, z3(), {'*': '*'}, {'0': '0', '1': '1'})
    with pytest.raises(LawViolation):
        functor.check()


def test_cofunctor_compose_and_check():
    c = FinCategory.arrow()
    ident = Cofunctor.identity(c)
    assert cofunctor_check(ident) == []
    assert ident.compose(ident) == ident
    broken = Cofunctor(c, c, {'a': 'a', 'b': 'b'}, {'a': {'id_a': 'f', 'f': 'f'}, 'b': {'id_b': 'id_b'}})
    assert cofunctor_check(broken)


def test_between_discrete():
    c, d = FinCategory.discrete('ab'), FinCategory.discrete('x')
    cofunctor = Cofunctor.between_discrete(c, d, {'a': 'x', 'b': 'x'})
    assert cofunctor_check(cofunctor) == []


def test_cofunctor_compose_between_discrete():
    c, d, e = FinCategory.discrete('ab'), FinCategory.discrete('xy'), FinCategory.discrete('z')
    first = Cofunctor.between_discrete(c, d, {'a': 'x', 'b': 'y'})
    second = Cofunctor.between_discrete(d, e, {'x': 'z', 'y': 'z'})
    composite = cofunctor_compose(first, second)
    assert cofunctor_check(composite) == []
    assert composite == Cofunctor.between_discrete(c, e, {'a': 'z', 'b': 'z'})
