import itertools

import pytest
from hypothesis import given, strategies as st

from src.constants import MonoidKind
from src.errors import LawViolation, ParseError, TypeMismatch
from src.monoid import BUILTINS, IntProduct, IntSum, MaxWithBottom, MinWithTop, MultisetOver, TableMonoid, Trivial, \
    check_value, monoid_from_config
from src.utils.generate import random_table_monoid
from unittests.backend import rng_fn, seeds

ints = st.lists(st.integers(-50, 50), max_size=6)


@pytest.mark.parametrize("monoid", [IntSum(), IntProduct(), MaxWithBottom(), MinWithTop(), MultisetOver(), Trivial()])
def test_unit_and_associativity_on_samples(monoid):
    for x in monoid.sample():
        assert monoid.combine(monoid.unit(), x) == x
        assert monoid.fold([x]) == x
    for x, y, z in itertools.product(monoid.sample(), repeat=3):
        assert monoid.combine(monoid.combine(x, y), z) == monoid.combine(x, monoid.combine(y, z))
        assert monoid.combine(x, y) == monoid.combine(y, x)
    assert monoid.fold([]) == monoid.unit()


@given(ints, ints)
def test_int_sum_fold_splits(left, right):
    monoid = IntSum()
    assert monoid.fold(left + right) == monoid.combine(monoid.fold(left), monoid.fold(right))


@given(ints)
def test_max_with_bottom(values):
    monoid = MaxWithBottom()
    assert monoid.fold(values) == (max(values) if values else None)
    assert monoid.fold(values + [None]) == monoid.fold(values)


def test_multisets():
    monoid = MultisetOver(['u', 'v'])
    assert monoid.fold([MultisetOver.of(['v', 'u']), MultisetOver.singleton('u')]) == (('u', 2), ('v', 1))
    assert check_value(monoid, ['v', 'v'], "here") == (('v', 2),)
    with pytest.raises(TypeMismatch):
        check_value(monoid, ['w'], "here")
    assert MultisetOver().contains(MultisetOver.of(['w']))


@pytest.mark.parametrize("seed", seeds)
def test_random_table_monoids_are_lawful(seed: int):
    monoid = random_table_monoid(rng_fn(seed))
    monoid.check()
    assert monoid.fold(monoid.sample()) == monoid.fold(reversed(monoid.sample()))


def test_table_violations():
    elements = ['e', 'a']
    good = {('e', 'e'): 'e', ('e', 'a'): 'a', ('a', 'e'): 'a', ('a', 'a'): 'e'}
    TableMonoid(elements, good, 'e')
    with pytest.raises(LawViolation, match="unit"):
        TableMonoid(elements, good, 'x')
    with pytest.raises(LawViolation, match="total"):
        TableMonoid(elements, {**good, ('a', 'a'): 'z'}, 'e')
    with pytest.raises(LawViolation, match="unit law"):
        TableMonoid(elements, good, 'a')
    three = ['e', 'a', 'b']
    skewed = {(x, y): y if x == 'e' else x if y == 'e' else 'a' for x in three for y in three}
    skewed[('a', 'b')] = 'b'
    with pytest.raises(LawViolation, match="commutative"):
        TableMonoid(three, skewed, 'e')


def test_monoid_from_config():
    assert monoid_from_config("int-sum") == IntSum()
    assert monoid_from_config({"kind": "max-with-bottom"}) == MaxWithBottom()
    assert monoid_from_config({"kind": "multiset", "labels": ['u']}) == MultisetOver(['u'])
    table = monoid_from_config({"table": {"elements": ['e', 'a'], "unit": 'e',
                                          "op": [['e', 'e', 'e'], ['e', 'a', 'a'], ['a', 'e', 'a'], ['a', 'a', 'a']]}})
    assert table.kind == MonoidKind.table
    assert table.fold(['a', 'e']) == 'a'
    assert set(BUILTINS) == set(MonoidKind) - {MonoidKind.table}


@pytest.mark.parametrize("config", ["average", {"kind": "table"}, 3, {"table": {"elements": ['e']}}])
def test_monoid_from_config_errors(config):
    with pytest.raises(ParseError):
        monoid_from_config(config, "monoids['a']")


def test_check_value():
    assert check_value(IntSum(), 3, "x") == 3
    for monoid, value in ((IntSum(), True), (IntSum(), 1.5), (MaxWithBottom(), "1"), (Trivial(), 0)):
        with pytest.raises(TypeMismatch):
            check_value(monoid, value, "attributes['a']['r']")
