import itertools

import pytest

from src.backend import ordinal
from src.category import FinCategory, opposite_direct
from src.comonoid import full_internal_subcategory
from src.context import Context
from src.copresheaf import Copresheaf, is_isomorphic
from src.errors import LawViolation, RowTooLarge
from src.span import FinSkeleton, classify_finitary, fin_compose, skeleton_fin, universe_polynomial
from src.utils.generate import random_category, random_copresheaf
from unittests.backend import rng_fn, seeds, small_context, trials


@pytest.fixture(scope="module")
def skeleton():
    return skeleton_fin(small_context(), 3)


def test_hom_sizes(skeleton):
    c = skeleton.category
    for m, n in itertools.product(range(4), repeat=2):
        assert len(c.hom(str(m), str(n))) == n ** m
    assert len(c.hom('2', '3')) == 9
    assert c.hom('0', '2') == (('0', '2', ()),)
    assert c.hom('2', '0') == ()


def test_composition_is_composition_of_functions(skeleton):
    c = skeleton.category
    for f, g in c.composable_pairs():
        assert c.compose(f, g) == fin_compose(f, g)
    assert fin_compose(('2', '3', ('3', '1')), ('3', '2', ('2', '2', '1'))) == ('2', '2', ('1', '2'))
    assert c.identities == {str(n): (str(n), str(n), ordinal(n)) for n in range(4)}
    c.check()
    skeleton.monad.check()


def test_internal_subcategory_is_opposite(skeleton):
    c = skeleton.category
    assert skeleton.internal == full_internal_subcategory(universe_polynomial(3))
    assert skeleton.internal == opposite_direct(c).relabel({f: (f[1], f[0], f[2]) for f in c.morphisms})


def test_cubic_law_checks_at_three():
    skeleton = skeleton_fin(small_context(), 3, check_laws=True)
    assert len(skeleton.category.hom('3', '3')) == 27


def test_skeleton_at_four():
    skeleton = skeleton_fin(Context(), 4)
    c = skeleton.category
    for m, n in itertools.product(range(5), repeat=2):
        assert len(c.hom(str(m), str(n))) == n ** m
    assert len(c.morphisms) == sum(n ** m for m, n in itertools.product(range(5), repeat=2))
    skeleton.check()


def rebuilt(c: FinCategory, identities, composition) -> FinCategory:
    return FinCategory(c.objects, [(f, c.dom[f], c.cod[f]) for f in c.morphisms], identities, composition,
                       check=False)


def test_corrupted_skeleton_is_caught(skeleton):
    c = skeleton.category
    f, g = ('1', '2', ('1',)), ('2', '2', ('2', '1'))
    assert c.compose(f, g) == ('1', '2', ('2',))
    composition = dict(c.composition)
    composition[(f, g)] = ('1', '2', ('1',))
    with pytest.raises(LawViolation) as info:
        FinSkeleton(3, rebuilt(c, c.identities, composition), skeleton.monad, skeleton.internal).check()
    assert info.value.location == "composition['(1,2,(1));(2,2,(2,1))']"
    identities = dict(c.identities)
    identities['2'] = ('2', '2', ('2', '1'))
    with pytest.raises(LawViolation) as info:
        FinSkeleton(3, rebuilt(c, identities, c.composition), skeleton.monad, skeleton.internal).check()
    assert info.value.location == "identities['2']"


def test_skeleton_bounds():
    ctx = small_context()
    with pytest.raises(ValueError):
        skeleton_fin(ctx, -1)
    with pytest.raises(RowTooLarge):
        skeleton_fin(ctx, ctx.universe.truncation + 1)
    empty = skeleton_fin(ctx, 0).category
    assert empty.objects.labels == ('0',)
    assert len(empty.morphisms) == 1


def test_classify_terminal_and_empty():
    ctx = Context()
    c = FinCategory.arrow()
    terminal = classify_finitary(ctx, Copresheaf.terminal(c))
    assert terminal.objects == {'a': '1', 'b': '1'}
    assert set(terminal.table.values()) == {('1', '1', ('1',))}
    empty = classify_finitary(ctx, Copresheaf.empty(c))
    assert empty.objects == {'a': '0', 'b': '0'}
    assert empty.table['f'] == ('0', '0', ())


def test_classify_arrow():
    ctx = Context()
    x = Copresheaf(FinCategory.arrow(), {'a': ['x', 'y', 'z'], 'b': ['p', 'q']},
                   {'f': {'x': 'q', 'y': 'p', 'z': 'q'}})
    classification = classify_finitary(ctx, x)
    assert classification.table['f'] == ('3', '2', ('2', '1', '2'))
    classification.check()
    assert is_isomorphic(ctx, classification.reconstruct(), x)
    skeleton = skeleton_fin(small_context(), 3)
    classification.functor(skeleton).check()


def test_classify_too_many_rows():
    ctx = small_context()
    x = Copresheaf(FinCategory.terminal(), {'*': [str(k) for k in range(5)]}, {})
    with pytest.raises(RowTooLarge):
        classify_finitary(ctx, x)
    assert classify_finitary(ctx, x, truncation=5).objects == {'*': '5'}


@pytest.mark.parametrize("seed", seeds)
def test_classification_recovers_copresheaf(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        c = random_category(rng, 3)
        x = random_copresheaf(rng, c, 4)
        classification = classify_finitary(ctx, x)
        classification.check()
        assert is_isomorphic(ctx, classification.reconstruct(), x)
