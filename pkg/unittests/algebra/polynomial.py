import collections

import pytest
from hypothesis import given, settings, strategies as st

from src.context import Context
from src.poly import (Composite, Poly, PolyMap, add, associator, associator_inverse, coclosure, derivative, dirichlet,
                      dirichlet_maps, dirichlet_transform, duoidal_map, enumerate_maps, evaluate, hom_count,
                      internal_hom, left_unitor, left_unitor_inverse, mul, right_unitor, right_unitor_inverse,
                      substitute, substitute_maps, triangle_identities)
from src.utils.generate import random_poly
from unittests.backend import rng_fn, seeds, trials

sizes = st.lists(st.integers(0, 2), max_size=3)
y = Poly.y()


def poly(*exponents: int) -> Poly:
    return Poly.from_sizes(exponents)


def test_add():
    out = add(poly(2), poly(1))
    assert out.position_count() == 2
    assert out.normal_form() == (2, 1)


def test_mul_square():
    assert mul(poly(1, 0), poly(1, 0)).normal_form() == (2, 1, 1, 0)


@pytest.mark.parametrize("seed", seeds)
def test_mul_unit(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        p = random_poly(rng)
        assert mul(p, Poly.one()).is_iso(p)
        assert mul(p, Poly.zero()).position_count() == 0


def test_substitute():
    assert substitute(poly(2), poly(1, 0)).normal_form() == (2, 1, 1, 0)


@pytest.mark.parametrize("seed", seeds)
def test_substitute_units(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        p = random_poly(rng)
        assert substitute(p, y).is_iso(p)
        assert substitute(y, p).is_iso(p)
        constant = Poly.constant(["a", "b"])
        assert substitute(constant, p).is_iso(constant)


@pytest.mark.parametrize("size", [0, 1, 2, 3])
def test_substitute_evaluates_as_composite(size: int):
    p, q = poly(2, 0), poly(1, 1, 0)
    labels = [str(idx) for idx in range(size)]
    assert len(evaluate(substitute(p, q), labels)) == len(evaluate(p, evaluate(q, labels)))


def test_dirichlet():
    assert dirichlet(poly(2, 1), poly(1, 0)).normal_form() == (2, 1, 0, 0)


@given(sizes)
@settings(max_examples=50, deadline=None)
def test_dirichlet_unit(exponents):
    p = poly(*exponents)
    assert dirichlet(p, y).is_iso(p)
    assert dirichlet(y, p).is_iso(p)


def test_coclosure():
    assert coclosure(poly(2), poly(1, 0)).normal_form() == (3,)


def test_hom_count():
    p, q = poly(2, 1), poly(3, 0)
    assert hom_count(p, q) == 18
    assert len(enumerate_maps(Context(), p, q)) == 18


@given(sizes)
@settings(max_examples=50, deadline=None)
def test_hom_count_terminal_initial(exponents):
    p = poly(*exponents)
    assert hom_count(p, Poly.one()) == 1
    assert hom_count(Poly.zero(), p) == 1


@given(sizes, sizes)
@settings(max_examples=50, deadline=None)
def test_enumeration_matches_count(left, right):
    p, q = poly(*left), poly(*right)
    maps = enumerate_maps(Context(), p, q)
    assert len(maps) == hom_count(p, q)
    assert len(set(maps)) == len(maps)
    for phi in maps:
        phi.validate()


def test_evaluate():
    assert len(evaluate(poly(2, 1), ["a", "b"])) == 6
    assert len(evaluate(poly(2, 0, 0, 1), [])) == 2
    assert len(evaluate(Poly.one(), ["a", "b", "c"])) == 1


@given(sizes, sizes, sizes)
@settings(max_examples=30, deadline=None)
def test_closure(p, q, r):
    p, q, r = poly(*p), poly(*q), poly(*r)
    assert hom_count(dirichlet(p, q), r) == hom_count(p, internal_hom(Context(), q, r))


@given(sizes, sizes, sizes)
@settings(max_examples=30, deadline=None)
def test_coclosure_adjunction(p, p_, q):
    p, p_, q = poly(*p), poly(*p_), poly(*q)
    assert hom_count(p, substitute(p_, q)) == hom_count(coclosure(p, q), p_)


def test_duoidal_unit():
    phi = duoidal_map(y, y, y, y)
    phi.validate()
    assert phi.source.position_count() == 1


def test_duoidal_bijective():
    p = poly(1, 0)
    phi = duoidal_map(p, p, p, p)
    phi.validate()
    for i in phi.source.positions:
        target = phi.target[phi.on_positions(i)]
        images = [phi.on_directions(i, e) for e in target]
        assert sorted(map(repr, images)) == sorted(map(repr, phi.source[i]))


def test_duoidal_naturality():
    p, q, p_hat = poly(1, 0), poly(2), poly(1)
    rho = PolyMap.from_tables(p_hat, p, {"1": "1"}, {"1": {"1": "1"}})
    whiskered = _materialized(substitute_maps(rho, PolyMap.identity(q)))
    left = dirichlet_maps(whiskered, whiskered).compose(duoidal_map(p, q, p, q))
    right = duoidal_map(p_hat, q, p_hat, q).compose(
            substitute_maps(dirichlet_maps(rho, rho), PolyMap.identity(dirichlet(q, q))))
    assert left.difference(right) is None


def _materialized(phi: PolyMap) -> PolyMap:
    return PolyMap(phi.source.materialize(), phi.target.materialize(), phi.on_positions, phi.on_directions)


@pytest.mark.parametrize("labels", [[], ["a"], ["a", "b", "c"]])
def test_triangle_identities(labels):
    assert triangle_identities(labels) == [None, None]


def test_shape_predicates():
    assert Poly.constant(["a", "b"]).is_constant()
    assert poly(0, 0).is_constant()
    assert not poly(1, 0).is_constant()
    assert poly(1, 1).is_linear()
    assert poly(2).is_representable()


def test_derivative():
    assert derivative(poly(3, 1)).normal_form() == (2, 2, 2, 0)
    assert derivative(Poly.constant(["a"])).position_count() == 0


def test_dirichlet_transform():
    p = poly(3, 1, 0)
    out = dirichlet_transform(p)
    assert out.is_linear()
    assert out.position_count() == 4


@pytest.mark.parametrize("seed", seeds)
def test_unitors_and_associator(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        p, q, r = (random_poly(rng, 2, 2) for _ in range(3))
        assert left_unitor_inverse(p).compose(left_unitor(p)) == PolyMap.identity(p)
        assert right_unitor_inverse(p).compose(right_unitor(p)) == PolyMap.identity(p)
        forward = associator(p, q, r)
        forward.validate()
        roundtrip = forward.compose(associator_inverse(p, q, r))
        assert roundtrip.difference(PolyMap.identity(Composite(Composite(p, q), r))) is None


def test_canonical():
    p = Poly({"b": ["x"], "a": ["u", "v"]})
    assert p.canonical() == poly(2, 1)
    assert p.is_iso(poly(1, 2))


def test_composites_evaluate_positions_once():
    p = poly(3, 2, 0)
    calls = collections.Counter()

    def _positions(i):
        calls[i] += 1
        return i

    phi = PolyMap(p, p, _positions, lambda i, d: d)
    chain = phi
    for _ in range(12):
        chain = chain.compose(phi)
    assert chain.difference(PolyMap.identity(p)) is None
    whiskered = _materialized(substitute_maps(chain, PolyMap.identity(y)))
    assert whiskered.difference(PolyMap.identity(whiskered.source)) is None
    assert calls == {i: 1 for i in p.iter_positions()}
