import pytest

from src.category import FinCategory
from src.comonoid import Comonoid, category_to_comonoid, check_comonoid_laws, comonoid_to_category, \
    full_internal_subcategory
from src.errors import LawViolation
from src.poly import UNIT, Composite, Poly, PolyMap
from src.utils.generate import random_category
from src.utils.laws import mutate_composition_entry
from unittests.backend import rng_fn, seeds, trials


@pytest.mark.parametrize("seed", seeds)
def test_roundtrip(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        c = random_category(rng, 6)
        comonoid = category_to_comonoid(c)
        assert check_comonoid_laws(comonoid).passed
        assert comonoid_to_category(comonoid) == c


def test_discrete_is_linear():
    comonoid = category_to_comonoid(FinCategory.discrete(['x', 'y', 'z']))
    assert comonoid.carrier.is_linear()
    assert comonoid.carrier.position_count() == 3


def test_monoid_is_representable():
    comonoid = category_to_comonoid(FinCategory.cyclic(4))
    assert comonoid.carrier.is_representable()
    assert comonoid.carrier.normal_form() == (4,)


def test_codiscrete_is_costate():
    comonoid = category_to_comonoid(FinCategory.codiscrete(['x', 'y', 'z']))
    assert comonoid.carrier.normal_form() == (3, 3, 3)
    assert check_comonoid_laws(comonoid).passed


def test_diagonal_on_linear():
    carrier = Poly.linear(['x', 'y'])
    counit = PolyMap(carrier, Poly.y(), lambda i: UNIT, lambda i, _: UNIT)
    comult = PolyMap(carrier, Composite(carrier, carrier), lambda i: (i, (i,)), lambda i, _: UNIT)
    assert check_comonoid_laws(Comonoid(carrier, counit, comult)).passed


def test_mutated_entry_breaks_coassociativity():
    c = FinCategory.codiscrete(['x', 'y'])
    composition = dict(c.composition)
    composition[(('x', 'y'), ('y', 'x'))] = ('x', 'y')
    mutated = FinCategory(c.objects, [(f, c.dom[f], c.cod[f]) for f in c.morphisms], c.identities, composition,
                          check=False)
    report = check_comonoid_laws(category_to_comonoid(mutated))
    assert not report.passed
    assert any(failure.diagram in ("coassociativity", "comultiplication typing") for failure in report.failures)
    with pytest.raises(LawViolation):
        comonoid_to_category(category_to_comonoid(mutated))


def test_mutated_identity_breaks_counitality():
    c = FinCategory.arrow()
    composition = dict(c.composition)
    composition[('id_a', 'id_a')] = 'f'
    mutated = FinCategory(c.objects, [(f, c.dom[f], c.cod[f]) for f in c.morphisms], c.identities, composition,
                          check=False)
    assert not check_comonoid_laws(category_to_comonoid(mutated)).passed


@pytest.mark.parametrize("identities", [True, False])
@pytest.mark.parametrize("seed", seeds)
def test_single_entry_mutations_are_caught(seed: int, identities: bool):
    rng = rng_fn(seed)
    for _ in range(trials):
        c = random_category(rng, 6)
        mutated = mutate_composition_entry(rng, c, identities)
        if mutated is None:
            continue
        changed = [pair for pair, h in c.composition.items() if mutated.composition[pair] != h]
        assert len(changed) == 1
        if identities:
            assert changed[0][0] == c.identities[c.dom[changed[0][1]]]
        assert not check_comonoid_laws(category_to_comonoid(mutated)).passed
        with pytest.raises(LawViolation):
            mutated.check()


def test_full_internal_subcategory_of_constant():
    c = full_internal_subcategory(Poly.constant(['p', 'q', 'r']))
    assert len(c.objects) == 3
    assert all(len(c.hom(a, b)) == 1 for a in c.objects for b in c.objects)


def test_full_internal_subcategory_of_lists():
    p = Poly.from_sizes([0, 1, 2])
    c = full_internal_subcategory(p)
    for i in p.positions:
        for j in p.positions:
            assert len(c.hom(i, j)) == len(p[i]) ** len(p[j])
