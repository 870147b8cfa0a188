"""
Finite polynomial functors in one variable. A polynomial p = sum_{i in p(1)} y^{p[i]} is stored as an ordered family
of position labels, each carrying a FinLabelSet of direction labels. Labels are hashables (strings for user data,
nested tuples for derived constructions) and are rendered with src.backend.render_label.

Morphisms are forward on positions and backward on directions. They are stored as callables so that maps into
composites such as c ◁ c never have to materialize the (exponentially large) composite.
Position maps are cached per map.
"""
import functools
import itertools
import math
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from src.backend import Label, check_cap, ordinal, unique_or_tagged
from src.context import Context
from src.errors import LawViolation

UNIT = '*'  # sole position and sole direction of y, sole position of 1


class FinLabelSet:
    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[Label] = ()):
        self.labels = tuple(labels)
        self._index = {label: idx for idx, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            duplicates = sorted({str(lbl) for lbl in self.labels if self.labels.count(lbl) > 1})
            raise ValueError(f"Labels have to be pairwise distinct. {duplicates=}")

    def __iter__(self) -> Iterator[Label]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: Label) -> bool:
        return label in self._index

    def index(self, label: Label) -> int:
        return self._index[label]

    def __eq__(self, other) -> bool:
        return isinstance(other, FinLabelSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"FinLabelSet({list(self.labels)})"


Summands = Union[Dict[Label, Iterable[Label]], Iterable[Tuple[Label, Iterable[Label]]]]


class Poly:
    def __init__(self, summands: Summands = ()):
        items = summands.items() if isinstance(summands, dict) else summands
        positions = []
        self._directions: Dict[Label, FinLabelSet] = {}
        for position, directions in items:
            if position in self._directions:
                raise ValueError(f"Position labels have to be distinct. {position=}")
            positions.append(position)
            self._directions[position] = directions if isinstance(directions, FinLabelSet) else FinLabelSet(
                    directions)
        self.positions = FinLabelSet(positions)

    @classmethod
    def zero(cls) -> 'Poly':
        return cls()

    @classmethod
    def one(cls) -> 'Poly':
        return cls.constant([UNIT])

    @classmethod
    def y(cls) -> 'Poly':
        return cls({UNIT: [UNIT]})

    @classmethod
    def constant(cls, labels: Iterable[Label]) -> 'Poly':
        return cls((i, ()) for i in labels)

    @classmethod
    def linear(cls, labels: Iterable[Label]) -> 'Poly':
        return cls((i, (UNIT,)) for i in labels)

    @classmethod
    def representable(cls, directions: Iterable[Label], position: Label = UNIT) -> 'Poly':
        return cls({position: directions})

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> 'Poly':
        return cls((str(idx), ordinal(size)) for idx, size in enumerate(sizes, 1))

    def __getitem__(self, position: Label) -> FinLabelSet:
        return self._directions[position]

    def has_position(self, position: Label) -> bool:
        return position in self._directions

    def iter_positions(self) -> Iterator[Label]:
        return iter(self.positions)

    def position_count(self) -> int:
        return len(self.positions)

    def summands(self) -> Iterator[Tuple[Label, FinLabelSet]]:
        return ((i, self._directions[i]) for i in self.positions)

    def sizes(self) -> List[int]:
        return [len(self[i]) for i in self.positions]

    def is_constant(self) -> bool:
        return all(size == 0 for size in self.sizes())

    def is_linear(self) -> bool:
        return all(size == 1 for size in self.sizes())

    def is_representable(self) -> bool:
        return self.position_count() == 1

    def normal_form(self) -> Tuple[int, ...]:
        """
        Multiset of direction cardinalities, sorted descending. Complete isomorphism invariant of finite
        polynomials.
        """
        return tuple(sorted(self.sizes(), reverse=True))

    def is_iso(self, other: 'Poly') -> bool:
        return self.normal_form() == other.normal_form()

    def canonical(self) -> 'Poly':
        order = sorted(range(self.position_count()), key=lambda idx: (-len(self[self.positions.labels[idx]]), idx))
        return Poly((str(new), ordinal(len(self[self.positions.labels[old]]))) for new, old in enumerate(order, 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.positions == other.positions and all(
                self[i] == other[i] for i in self.positions)

    def __hash__(self):
        return hash(tuple(self.summands()))

    def __repr__(self):
        return "Poly({" + ", ".join(f"{i!r}: {list(d)!r}" for i, d in self.summands()) + "})"


class Composite:
    """
    Lazy p ◁ q. Positions are (i, j) where j lists one q-position per direction of p[i], in the order of p[i].
    Directions at (i, j) are pairs (d, e) with e in q[j(d)].
    """

    def __init__(self, outer: 'AnyPoly', inner: 'AnyPoly'):
        self.outer = outer
        self.inner = inner
        self._cache: Dict[Label, FinLabelSet] = {}

    def has_position(self, position: Label) -> bool:
        if not isinstance(position, tuple) or len(position) != 2:
            return False
        i, j = position
        if not self.outer.has_position(i) or not isinstance(j, tuple) or len(j) != len(self.outer[i]):
            return False
        return all(self.inner.has_position(k) for k in j)

    def __getitem__(self, position: Label) -> FinLabelSet:
        if position not in self._cache:
            i, j = position
            self._cache[position] = FinLabelSet((d, e) for d, k in zip(self.outer[i], j) for e in self.inner[k])
        return self._cache[position]

    def position_count(self) -> int:
        inner = self.inner.position_count()
        return sum(inner ** len(self.outer[i]) for i in self.outer.iter_positions())

    def iter_positions(self) -> Iterator[Label]:
        inner = list(self.inner.iter_positions())
        for i in self.outer.iter_positions():
            for j in itertools.product(inner, repeat=len(self.outer[i])):
                yield i, j

    def materialize(self) -> Poly:
        return Poly((pos, self[pos]) for pos in self.iter_positions())


AnyPoly = Union[Poly, Composite]


class PolyMap:
    """
    phi: p -> q with on_positions(i) in q(1) and on_directions(i, e) in p[i] for every e in q[on_positions(i)].
    """

    def __init__(self, source: AnyPoly, target: AnyPoly, on_positions: Callable[[Label], Label],
                 on_directions: Callable[[Label, Label], Label]):
        self.source = source
        self.target = target
        self.on_positions = functools.lru_cache(maxsize=None)(on_positions)
        self.on_directions = on_directions

    @classmethod
    def from_tables(cls, source: AnyPoly, target: AnyPoly, positions: Dict[Label, Label],
                    directions: Dict[Label, Dict[Label, Label]]) -> 'PolyMap':
        return cls(source, target, positions.__getitem__, lambda i, e: directions[i][e])

    @classmethod
    def identity(cls, p: AnyPoly) -> 'PolyMap':
        return cls(p, p, lambda i: i, lambda i, d: d)

    def tables(self) -> Tuple[Dict[Label, Label], Dict[Label, Dict[Label, Label]]]:
        positions = {i: self.on_positions(i) for i in self.source.iter_positions()}
        directions = {i: {e: self.on_directions(i, e) for e in self.target[j]} for i, j in positions.items()}
        return positions, directions

    def label(self) -> Tuple[Tuple[Label, Tuple[Label, ...]], ...]:
        positions, directions = self.tables()
        return tuple((positions[i], tuple(directions[i].values())) for i in self.source.iter_positions())

    def validate(self):
        for i in self.source.iter_positions():
            j = self.on_positions(i)
            if not self.target.has_position(j):
                raise LawViolation("position map leaves the target", "on_positions", (i, j))
            for e in self.target[j]:
                d = self.on_directions(i, e)
                if d not in self.source[i]:
                    raise LawViolation("direction map leaves the source", "on_directions", (i, e, d))

    def compose(self, other: 'PolyMap') -> 'PolyMap':
        """
        Diagrammatic order: self, then other.
        """

        def _directions(i: Label, e: Label) -> Label:
            return self.on_directions(i, other.on_directions(self.on_positions(i), e))

        return PolyMap(self.source, other.target, lambda i: other.on_positions(self.on_positions(i)), _directions)

    def difference(self, other: 'PolyMap') -> Optional[Tuple[str, Label, Label, Label]]:
        """
        First disagreement as ("position", i, mine, theirs) or ("direction", (i, e), mine, theirs); None if equal.
        """
        for i in self.source.iter_positions():
            j, k = self.on_positions(i), other.on_positions(i)
            if j != k:
                return "position", i, j, k
            for e in self.target[j]:
                d, f = self.on_directions(i, e), other.on_directions(i, e)
                if d != f:
                    return "direction", (i, e), d, f
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMap) and self.difference(other) is None

    def __hash__(self):
        return hash(self.label())


def _disjoint(left: Iterable[Label], right: Iterable[Label]) -> List[Label]:
    pairs = [("1", x) for x in left] + [("2", x) for x in right]
    return unique_or_tagged(pairs)


def add(p: Poly, q: Poly) -> Poly:
    labels = _disjoint(p.positions, q.positions)
    summands = [p[i] for i in p.positions] + [q[j] for j in q.positions]
    return Poly(zip(labels, summands))


def mul(p: Poly, q: Poly) -> Poly:
    return Poly(((i, j), _disjoint(p[i], q[j])) for i in p.positions for j in q.positions)


def substitute(p: AnyPoly, q: AnyPoly) -> Poly:
    return Composite(p, q).materialize()


def dirichlet(p: Poly, q: Poly) -> Poly:
    return Poly(((i, j), itertools.product(p[i], q[j])) for i in p.positions for j in q.positions)


def hom_count(p: Poly, q: Poly) -> int:
    return math.prod(sum(len(p[i]) ** len(q[j]) for j in q.positions) for i in p.positions)


def enumerate_maps(ctx: Context, p: Poly, q: Poly) -> List[PolyMap]:
    check_cap(hom_count(p, q), ctx.enumeration.cap, "Poly(p, q)")
    choices = []
    for i in p.positions:
        choices.append([(j, values) for j in q.positions
                        for values in itertools.product(p[i].labels, repeat=len(q[j]))])
    out = []
    for choice in itertools.product(*choices):
        positions = {i: j for i, (j, _) in zip(p.positions, choice)}
        directions = {i: dict(zip(q[j], values)) for i, (j, values) in zip(p.positions, choice)}
        out.append(PolyMap.from_tables(p, q, positions, directions))
    return out


def internal_hom(ctx: Context, p: Poly, q: Poly) -> Poly:
    return Poly((phi.label(), [(i, e) for i in p.positions for e in q[phi.on_positions(i)]])
                for phi in enumerate_maps(ctx, p, q))


def coclosure(p: Poly, q: Poly) -> Poly:
    """
    [p/q]: positions p(1), directions at i the elements (j, f: q[j] -> p[i]) of q(p[i]).
    """
    return Poly((i, [(j, values) for j in q.positions for values in itertools.product(p[i].labels, repeat=len(q[j]))])
                for i in p.positions)


def evaluate(p: Poly, labels: Iterable[Label]) -> FinLabelSet:
    labels = tuple(labels)
    return FinLabelSet((i, values) for i in p.positions for values in itertools.product(labels, repeat=len(p[i])))


def dirichlet_transform(p: Poly) -> Poly:
    return Poly(((i, d), (d,)) for i in p.positions for d in p[i])


def derivative(p: Poly) -> Poly:
    """ṗ: one position (i, d) per direction, with the remaining directions of p[i]."""
    return Poly(((i, d), [e for e in p[i] if e != d]) for i in p.positions for d in p[i])


def substitute_maps(phi: PolyMap, psi: PolyMap) -> PolyMap:
    """
    phi ◁ psi : p ◁ q -> p' ◁ q', lazily.
    """
    source, target = Composite(phi.source, psi.source), Composite(phi.target, psi.target)

    @functools.lru_cache(maxsize=None)
    def _lookup(position: Label) -> Dict[Label, Label]:
        i, j = position
        return dict(zip(phi.source[i], j))

    def _positions(position: Label) -> Label:
        i, _ = position
        lookup = _lookup(position)
        return phi.on_positions(i), tuple(psi.on_positions(lookup[phi.on_directions(i, d)])
                                          for d in phi.target[phi.on_positions(i)])

    def _directions(position: Label, direction: Label) -> Label:
        d_out, e_out = direction
        d = phi.on_directions(position[0], d_out)
        return d, psi.on_directions(_lookup(position)[d], e_out)

    return PolyMap(source, target, _positions, _directions)


def dirichlet_maps(phi: PolyMap, psi: PolyMap) -> PolyMap:
    def _directions(position: Label, direction: Label) -> Label:
        return phi.on_directions(position[0], direction[0]), psi.on_directions(position[1], direction[1])

    return PolyMap(dirichlet(phi.source, psi.source), dirichlet(phi.target, psi.target),
                   lambda pos: (phi.on_positions(pos[0]), psi.on_positions(pos[1])), _directions)


def left_unitor(p: AnyPoly) -> PolyMap:
    return PolyMap(Composite(Poly.y(), p), p, lambda pos: pos[1][0], lambda pos, e: (UNIT, e))


def left_unitor_inverse(p: AnyPoly) -> PolyMap:
    return PolyMap(p, Composite(Poly.y(), p), lambda i: (UNIT, (i,)), lambda i, d: d[1])


def right_unitor(p: AnyPoly) -> PolyMap:
    return PolyMap(Composite(p, Poly.y()), p, lambda pos: pos[0], lambda pos, d: (d, UNIT))


def right_unitor_inverse(p: AnyPoly) -> PolyMap:
    return PolyMap(p, Composite(p, Poly.y()), lambda i: (i, (UNIT,) * len(p[i])), lambda i, d: d[0])


def associator(p: AnyPoly, q: AnyPoly, r: AnyPoly) -> PolyMap:
    """
    (p ◁ q) ◁ r -> p ◁ (q ◁ r)
    """
    pq, qr = Composite(p, q), Composite(q, r)

    def _positions(position: Label) -> Label:
        (i, j), k = position
        lookup = dict(zip(pq[(i, j)], k))
        return i, tuple((jd, tuple(lookup[(d, e)] for e in q[jd])) for d, jd in zip(p[i], j))

    return PolyMap(Composite(pq, r), Composite(p, qr), _positions,
                   lambda pos, dir_: ((dir_[0], dir_[1][0]), dir_[1][1]))


def associator_inverse(p: AnyPoly, q: AnyPoly, r: AnyPoly) -> PolyMap:
    pq, qr = Composite(p, q), Composite(q, r)

    def _positions(position: Label) -> Label:
        i, jk = position
        j = tuple(jd for jd, _ in jk)
        k = tuple(kd for _, kds in jk for kd in kds)
        return (i, j), k

    return PolyMap(Composite(p, qr), Composite(pq, r), _positions,
                   lambda pos, dir_: (dir_[0][0], (dir_[0][1], dir_[1])))


def duoidal_map(p: Poly, q: Poly, p_: Poly, q_: Poly) -> PolyMap:
    """
    (p ◁ q) ⊗ (p' ◁ q') -> (p ⊗ p') ◁ (q ⊗ q'), bijective on directions.
    """
    source = dirichlet(substitute(p, q), substitute(p_, q_))
    target = Composite(dirichlet(p, p_), dirichlet(q, q_))

    def _positions(position: Label) -> Label:
        (i, j), (i_, j_) = position
        return (i, i_), tuple((jd, jd_) for jd in j for jd_ in j_)

    def _directions(position: Label, direction: Label) -> Label:
        (d, d_), (e, e_) = direction
        return (d, e), (d_, e_)

    return PolyMap(source, target, _positions, _directions)


def linear_exponential_adjunction(labels: Iterable[Label]) -> Tuple[PolyMap, PolyMap]:
    """
    Unit y -> y^A ◁ Ay and counit Ay ◁ y^A -> y of the adjunction Ay ⊣ y^A.
    """
    labels = tuple(labels)
    linear, exponential = Poly.linear(labels), Poly.representable(labels)
    unit = PolyMap(Poly.y(), Composite(exponential, linear), lambda _: (UNIT, labels), lambda *_: UNIT)
    counit = PolyMap(Composite(linear, exponential), Poly.y(), lambda _: UNIT, lambda pos, _: (UNIT, pos[0]))
    return unit, counit


def triangle_identities(labels: Iterable[Label]) -> List[Optional[tuple]]:
    """
    Differences of both zig-zag composites from the identity; [None, None] when the adjunction holds.
    """
    labels = tuple(labels)
    linear, exponential, y = Poly.linear(labels), Poly.representable(labels), Poly.y()
    unit, counit = linear_exponential_adjunction(labels)
    left = right_unitor_inverse(linear).compose(substitute_maps(PolyMap.identity(linear), unit))
    left = left.compose(associator_inverse(linear, exponential, linear))
    left = left.compose(substitute_maps(counit, PolyMap.identity(linear))).compose(left_unitor(linear))
    right = left_unitor_inverse(exponential).compose(substitute_maps(unit, PolyMap.identity(exponential)))
    right = right.compose(associator(exponential, linear, exponential))
    right = right.compose(substitute_maps(PolyMap.identity(exponential), counit)).compose(right_unitor(exponential))
    return [left.difference(PolyMap.identity(linear)), right.difference(PolyMap.identity(exponential))]
