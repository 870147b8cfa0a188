import pytest

from src.bicomodule import Bicomodule, apply, compose_bicomodules, identity_bicomodule, is_isomorphic
from src.category import FinCategory, opposite_direct
from src.context import Context
from src.copresheaf import Copresheaf, copresheaf_homs, is_isomorphic as copresheaves_isomorphic
from src.errors import NotDualizable, WrongShape
from src.span import BridgeDiagram, DualizingObject, Span, category_as_span_monad, conjunctive, discrete_set, dual, \
    left_adjoint, opposite_via_dual, right_adjoint, span_as_instance, span_from_instance, span_left_closure, \
    span_schema, transpose
from src.utils.generate import random_category, random_conjunctive, random_span, random_span_between
from unittests.backend import rng_fn, seeds, trials


def three_apex_span() -> Span:
    return Span(['c1', 'c2'], ['m1', 'm2', 'm3'], ['d1', 'd2'], {'m1': 'c1', 'm2': 'c1', 'm3': 'c2'},
                {'m1': 'd1', 'm2': 'd2', 'm3': 'd2'})


def random_bridge(rng) -> BridgeDiagram:
    d, c = ['d0', 'd1'], ['c0', 'c1']
    b = [f"b{idx}" for idx in range(rng.randint(0, 3))]
    e = [f"e{idx}" for idx in range(rng.randint(0, 4) if b else 0)]
    return BridgeDiagram(d, e, b, c, {x: rng.choice(d) for x in e}, {x: rng.choice(b) for x in e},
                         {x: rng.choice(c) for x in b})


@pytest.mark.parametrize("seed", seeds)
def test_dual_is_involution(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        s = random_span(rng)
        m = s.to_bicomodule()
        assert dual(m).is_conjunctive()
        assert Span.from_bicomodule(dual(dual(m))) == s
        conj = random_conjunctive(rng)
        assert dual(conj).is_linear()
        assert dual(dual(conj)) == conj


def test_dual_keeps_row_labels_shared_across_objects():
    conj = conjunctive(['a'], ['b1', 'b2'], {'a': {'b1': ['r'], 'b2': ['r', 's']}})
    linear = dual(conj)
    assert linear.positions['a'].labels == (('b1', 'r'), ('b2', 'r'), ('b2', 's'))
    assert dual(linear) == conj
    assert dual(linear).pattern('a', 'a').rows['b1'].labels == ('r',)


def test_linear_positions_that_look_tagged():
    s = Span(['a'], [('b1', 'x'), ('b2', 'y')], ['b1', 'b2'], {('b1', 'x'): 'a', ('b2', 'y'): 'a'},
             {('b1', 'x'): 'b1', ('b2', 'y'): 'b2'})
    m = s.to_bicomodule()
    assert dual(dual(m)) == m


def test_identity_span_is_self_dual():
    m = Span.identity(['a', 'b', 'c']).to_bicomodule()
    assert dual(m) == m
    assert all(dual(m).pattern(a, a).size() == 1 for a in m.left.objects)


def test_dual_of_linear_swaps_coefficients():
    conj = dual(three_apex_span().to_bicomodule())
    assert conj.positions['c1'].labels == ('c1',)
    assert conj.pattern('c1', 'c1').row_counts() == {'d1': 1, 'd2': 1}
    assert conj.pattern('c2', 'c2').row_counts() == {'d1': 0, 'd2': 1}


def test_dual_rejects_mixed_shapes():
    c, d = FinCategory.discrete(['a']), FinCategory.discrete(['x', 'y'])
    patterns = {('a', 'j1'): discrete_set(d, {'x': ['r1', 'r2']}), ('a', 'j2'): discrete_set(d, {'y': ['r']})}
    mixed = Bicomodule(c, d, {'a': ['j1', 'j2']}, patterns)
    with pytest.raises(NotDualizable):
        dual(mixed)
    with pytest.raises(WrongShape):
        dual(identity_bicomodule(FinCategory.arrow()))


@pytest.mark.parametrize("seed", seeds)
def test_raw_dual_agrees_on_linear(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        s = random_span(rng)
        bottom = DualizingObject(s.left, s.right)
        assert is_isomorphic(ctx, bottom.raw_dual(ctx, s.to_bicomodule()), dual(s.to_bicomodule()))


@pytest.mark.parametrize("seed", seeds)
def test_adjoints(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        s = random_span(rng)
        m = s.to_bicomodule()
        conj = right_adjoint(m)
        assert conj.is_conjunctive()
        assert (conj.left.objects, conj.right.objects) == (m.right.objects, m.left.objects)
        assert Span.from_bicomodule(left_adjoint(conj)) == s


def test_representable_adjunction_on_a_point():
    s = Span(['*'], ['u', 'v', 'w'], ['*'], {x: '*' for x in 'uvw'}, {x: '*' for x in 'uvw'})
    conj = right_adjoint(s.to_bicomodule())
    assert conj.pattern('*', '*').rows['*'].labels == ('u', 'v', 'w')


def test_adjoint_shapes():
    with pytest.raises(WrongShape):
        right_adjoint(conjunctive(['a'], ['b'], {'a': {'b': ['x', 'y']}}))
    with pytest.raises(WrongShape):
        left_adjoint(three_apex_span().to_bicomodule())


def test_adjunction_counts():
    ctx = Context()
    s = three_apex_span()
    left, right = s.to_bicomodule(), right_adjoint(s.to_bicomodule())
    x = Copresheaf(right.right, {'c1': ['p', 'q'], 'c2': ['r']}, {})
    y = Copresheaf(left.right, {'d1': ['u'], 'd2': ['v', 'w']}, {})
    assert len(copresheaf_homs(ctx, apply(ctx, left, y), x)) == len(copresheaf_homs(ctx, y, apply(ctx, right, x)))


@pytest.mark.parametrize("seed", seeds)
def test_transpose_routes(seed: int):
    rng = rng_fn(seed)
    for _ in range(trials):
        s = random_span(rng)
        first, second = transpose(s)
        assert first == s.transpose_direct()
        assert second == s.transpose_direct()


def test_transpose_examples():
    s = three_apex_span()
    assert transpose(s) == (s.transpose_direct(), s.transpose_direct())
    identity = Span.identity(['a', 'b'])
    assert transpose(identity)[0] == identity
    symmetric = Span(['a', 'b'], ['s', 't'], ['a', 'b'], {'s': 'a', 't': 'b'}, {'s': 'a', 't': 'b'})
    assert transpose(symmetric)[1] == symmetric


@pytest.mark.parametrize("seed", seeds)
def test_dual_commutes_with_composition(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        s = random_span(rng)
        t = random_span_between(rng, list(s.right), ['c0', 'c1'])
        composite = dual(s.compose(t).to_bicomodule())
        assert is_isomorphic(ctx, composite, compose_bicomodules(ctx, dual(s.to_bicomodule()),
                                                                 dual(t.to_bicomodule())))


def test_bridge_special_cases():
    linear = BridgeDiagram(['d'], ['s1', 's2'], ['s1', 's2'], ['c'], {'s1': 'd', 's2': 'd'},
                           {'s1': 's1', 's2': 's2'}, {'s1': 'c', 's2': 'c'})
    assert linear.to_bicomodule().is_linear()
    conj = BridgeDiagram(['d'], ['e1', 'e2'], ['c1', 'c2'], ['c1', 'c2'], {'e1': 'd', 'e2': 'd'},
                         {'e1': 'c1', 'e2': 'c1'}, {'c1': 'c1', 'c2': 'c2'})
    m = conj.to_bicomodule()
    assert m.is_conjunctive()
    assert m.pattern('c1', 'c1').size() == 2


@pytest.mark.parametrize("seed", seeds)
def test_bridge_roundtrip_and_prafunctor(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        bridge = random_bridge(rng)
        back = BridgeDiagram.from_bicomodule(bridge.to_bicomodule())
        assert (set(back.b), set(back.e), back.f, back.g, back.h) == (set(bridge.b), set(bridge.e), bridge.f,
                                                                      bridge.g, bridge.h)
        x = Copresheaf(FinCategory.discrete(bridge.d), {'d0': ['u', 'v'][:rng.randint(0, 2)], 'd1': ['w']}, {})
        assert copresheaves_isomorphic(ctx, apply(ctx, bridge.to_bicomodule(), x), bridge.prafunctor(ctx, x))


def test_span_monads():
    discrete = category_as_span_monad(FinCategory.discrete(['a', 'b']))
    discrete.check()
    assert discrete.span == Span.identity(['a', 'b'])
    z3 = FinCategory.cyclic(3)
    monad = category_as_span_monad(z3)
    monad.check()
    assert monad.span.left == ('*',) and len(monad.span.apex) == 3
    assert monad.to_category() == z3


@pytest.mark.parametrize("seed", seeds)
def test_opposite_via_dual(seed: int):
    assert opposite_via_dual(FinCategory.arrow()) == opposite_direct(FinCategory.arrow())
    rng = rng_fn(seed)
    for _ in range(trials):
        c = random_category(rng, 3)
        assert opposite_via_dual(c) == opposite_direct(c)


def test_left_closure_of_identity():
    ctx = Context()
    rng = rng_fn(11)
    x = Span.identity(['c0', 'c1'])
    for _ in range(trials):
        y = random_span_between(rng, ['a0', 'a1'], ['c0', 'c1'])
        closure = span_left_closure(ctx, x, y)
        assert closure.span.is_isomorphic(y)
        cell = {(s, y.g[s]): s for s in y.apex}
        assert len(closure.factorizations(y, cell)) == 1


def test_left_closure_of_empty():
    ctx = Context()
    x = Span.identity(['c0', 'c1'])
    y = Span(['a0', 'a1'], [], ['c0', 'c1'], {}, {})
    assert span_left_closure(ctx, x, y).span.apex == ()


def test_left_closure_factors_competitors():
    ctx = Context()
    rng = rng_fn(13)
    for _ in range(trials):
        x = random_span_between(rng, ['b0', 'b1'], ['c0', 'c1'], 3)
        y = random_span_between(rng, ['a0', 'a1'], ['c0', 'c1'], 3)
        closure = span_left_closure(ctx, x, y)
        w = closure.span
        cell = {}
        for v in w.apex:
            for t in x.apex:
                if w.g[v] == x.f[t]:
                    cell[(v, t)] = closure.evaluation[(v, t)]
        assert len(closure.factorizations(w, cell)) == 1


def test_left_closure_shape_mismatch():
    with pytest.raises(WrongShape):
        span_left_closure(Context(), Span.identity(['c']), Span.identity(['d']))


@pytest.mark.parametrize("seed", seeds)
def test_spans_as_instances(seed: int):
    rng = rng_fn(seed)
    ctx = Context()
    for _ in range(trials):
        s = random_span(rng)
        x = span_as_instance(s)
        assert x.base == span_schema()
        assert span_from_instance(x) == s
        renamed = Span(s.left, [('r', v) for v in s.apex], s.right, {('r', v): s.f[v] for v in s.apex},
                       {('r', v): s.g[v] for v in s.apex})
        assert copresheaves_isomorphic(ctx, x, span_as_instance(renamed))
    with pytest.raises(WrongShape):
        span_from_instance(Copresheaf.terminal(FinCategory.arrow()))
