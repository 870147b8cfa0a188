import pytest

from src.category import FinCategory
from src.context import Context
from src.copresheaf import Copresheaf, Transformation, coproduct, copresheaf_homs, elements_category, \
    find_isomorphism, is_isomorphic, product, quotient
from src.errors import LawViolation, SizeBlowup
from src.utils.generate import random_category, random_copresheaf
from src.utils.unionfind import UnionFind
from unittests.backend import brute_force_homs, rng_fn, seeds, trials


def arrow_instance() -> Copresheaf:
    return Copresheaf(FinCategory.arrow(), {'a': ['x1', 'x2', 'x3'], 'b': ['y1', 'y2']},
                      {'f': {'x1': 'y1', 'x2': 'y1', 'x3': 'y2'}})


@pytest.mark.parametrize("seed", seeds)
def test_yoneda(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c = random_category(rng, 3)
        x = random_copresheaf(rng, c)
        for a in c.objects:
            assert len(copresheaf_homs(ctx, Copresheaf.representable(c, a), x)) == len(x.rows[a])


@pytest.mark.parametrize("seed", seeds)
def test_against_brute_force(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c = random_category(rng, 3)
        pattern, data = random_copresheaf(rng, c, 2), random_copresheaf(rng, c, 3)
        homs = copresheaf_homs(ctx, pattern, data)
        assert len(homs) == brute_force_homs(pattern, data)
        for h in homs:
            h.check()


def test_empty_pattern():
    x = arrow_instance()
    assert len(copresheaf_homs(Context(), Copresheaf.empty(x.base), x)) == 1


def test_discrete_square():
    c = FinCategory.terminal()
    x = Copresheaf(c, {'*': ['p', 'q']}, {})
    assert len(copresheaf_homs(Context(), x, x)) == 4
    assert len(copresheaf_homs(Context(), x, x, injective=True)) == 2


def test_deterministic_order():
    x = arrow_instance()
    first = [h.key() for h in copresheaf_homs(Context(), x, x)]
    second = [h.key() for h in copresheaf_homs(Context(), x, x)]
    assert first == second


def test_cap():
    c = FinCategory.terminal()
    x = Copresheaf(c, {'*': [str(idx) for idx in range(4)]}, {})
    ctx = Context({"enumeration": {"cap": 10}})
    with pytest.raises(SizeBlowup):
        copresheaf_homs(ctx, x, x)


def test_different_bases():
    with pytest.raises(LawViolation):
        copresheaf_homs(Context(), Copresheaf.terminal(FinCategory.arrow()), Copresheaf.terminal(FinCategory.chain(3)))


def test_invalid_action():
    with pytest.raises(LawViolation):
        Copresheaf(FinCategory.arrow(), {'a': ['x'], 'b': ['y']}, {'f': {'x': 'z'}})
    with pytest.raises(LawViolation):
        Copresheaf(FinCategory.arrow(), {'a': ['x'], 'b': ['y']}, {})


def test_isomorphism():
    ctx = Context()
    x = arrow_instance()
    renamed = Copresheaf(x.base, {'a': ['u', 'v', 'w'], 'b': ['s', 't']}, {'f': {'u': 't', 'v': 's', 'w': 't'}})
    iso = find_isomorphism(ctx, x, renamed)
    assert iso is not None
    iso.check()
    other = Copresheaf(x.base, {'a': ['u', 'v', 'w'], 'b': ['s', 't']}, {'f': {'u': 't', 'v': 't', 'w': 't'}})
    assert not is_isomorphic(ctx, x, other)


def test_coproduct_and_product():
    ctx = Context()
    x = arrow_instance()
    total = coproduct([x, x])
    assert total.row_counts() == {'a': 6, 'b': 4}
    total.check()
    square = product(x, x)
    square.check()
    assert square.row_counts() == {'a': 9, 'b': 4}
    terminal = Copresheaf.terminal(x.base)
    assert is_isomorphic(ctx, product(x, terminal), x)


def test_quotient():
    x = arrow_instance()
    out, projection = quotient(x, [(('a', 'x1'), ('a', 'x3'))])
    out.check()
    assert out.row_counts() == {'a': 2, 'b': 1}
    assert projection[('b', 'y1')] == projection[('b', 'y2')]
    with pytest.raises(LawViolation):
        quotient(x, [(('a', 'x1'), ('b', 'y1'))])


def test_elements():
    el, projection = elements_category(arrow_instance())
    assert len(el.objects) == 5
    assert len(el.morphisms) == 5 + 3
    assert projection.is_etale()


def test_transformation_compose():
    x = arrow_instance()
    ident = Transformation.identity(x)
    assert ident.compose(ident) == ident


def test_union_find():
    classes = UnionFind('abcd')
    assert classes.union('a', 'c')
    assert not classes.union('c', 'a')
    assert classes.union('b', 'd')
    assert classes.classes() == [['a', 'c'], ['b', 'd']]
    assert len(classes) == 2
