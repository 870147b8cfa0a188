"""
Finite categories stored with total composition tables, functors and cofunctors between them.
Composition is diagrammatic: composition[(f, g)] = f;g for f: a -> b, g: b -> c.
"""
import itertools
from typing import Dict, Iterable, List, Optional, Tuple

from src.backend import Label, render_label
from src.errors import LawViolation, NotEtale
from src.poly import FinLabelSet


def _pair(f: Label, g: Label) -> str:
    return f"composition['{render_label(f)};{render_label(g)}']"


class FinCategory:
    def __init__(self, objects: Iterable[Label], morphisms: Iterable[Tuple[Label, Label, Label]],
                 identities: Dict[Label, Label], composition: Dict[Tuple[Label, Label], Label], check: bool = True):
        self.objects = FinLabelSet(objects)
        morphisms = list(morphisms)
        self.morphisms = FinLabelSet(name for name, _, _ in morphisms)
        self.dom = {name: dom for name, dom, _ in morphisms}
        self.cod = {name: cod for name, _, cod in morphisms}
        self.identities = dict(identities)
        self.composition = dict(composition)
        self._outfacing = {a: [] for a in self.objects}
        for name, dom, _ in morphisms:
            if dom in self._outfacing:
                self._outfacing[dom].append(name)
        if check:
            self.check()

    def outfacing(self, a: Label) -> Tuple[Label, ...]:
        """C[a], the morphisms with domain a in stored order."""
        return tuple(self._outfacing[a])

    def hom(self, a: Label, b: Label) -> Tuple[Label, ...]:
        return tuple(f for f in self._outfacing[a] if self.cod[f] == b)

    def incoming(self, b: Label) -> Tuple[Label, ...]:
        return tuple(f for f in self.morphisms if self.cod[f] == b)

    def compose(self, f: Label, g: Label) -> Label:
        return self.composition[(f, g)]

    def composable_pairs(self) -> Iterable[Tuple[Label, Label]]:
        return ((f, g) for f in self.morphisms for g in self._outfacing[self.cod[f]])

    def is_discrete(self) -> bool:
        return len(self.morphisms) == len(self.objects)

    def check(self):
        for f in self.morphisms:
            if self.dom[f] not in self.objects or self.cod[f] not in self.objects:
                raise LawViolation("morphism endpoints have to be objects", f"morphisms['{render_label(f)}']",
                                   (f, self.dom[f], self.cod[f]))
        for a in self.objects:
            if a not in self.identities:
                raise LawViolation("object without identity", f"identities['{render_label(a)}']", a)
            ident = self.identities[a]
            if ident not in self.morphisms or self.dom[ident] != a or self.cod[ident] != a:
                raise LawViolation("identity has the wrong endpoints", f"identities['{render_label(a)}']", ident)
        for pair in self.composition:
            f, g = pair
            if f not in self.morphisms or g not in self.morphisms or self.cod[f] != self.dom[g]:
                raise LawViolation("composition entry for a non-composable pair", _pair(f, g), pair)
        for f, g in self.composable_pairs():
            if (f, g) not in self.composition:
                raise LawViolation("composition table is missing an entry", _pair(f, g), (f, g))
            h = self.composition[(f, g)]
            if h not in self.morphisms or self.dom[h] != self.dom[f] or self.cod[h] != self.cod[g]:
                raise LawViolation("composite has the wrong endpoints", _pair(f, g), (f, g, h))
        for f in self.morphisms:
            if self.composition[(self.identities[self.dom[f]], f)] != f:
                raise LawViolation("left unitality fails", _pair(self.identities[self.dom[f]], f), f)
            if self.composition[(f, self.identities[self.cod[f]])] != f:
                raise LawViolation("right unitality fails", _pair(f, self.identities[self.cod[f]]), f)
        for f, g in self.composable_pairs():
            fg = self.composition[(f, g)]
            for h in self._outfacing[self.cod[g]]:
                if self.composition[(fg, h)] != self.composition[(f, self.composition[(g, h)])]:
                    raise LawViolation("associativity fails", _pair(fg, h), (f, g, h))

    def relabel(self, morphism_names: Dict[Label, Label]) -> 'FinCategory':
        rename = morphism_names.__getitem__
        return FinCategory(self.objects, [(rename(f), self.dom[f], self.cod[f]) for f in self.morphisms],
                           {a: rename(f) for a, f in self.identities.items()},
                           {(rename(f), rename(g)): rename(h) for (f, g), h in self.composition.items()},
                           check=False)

    def __eq__(self, other) -> bool:
        """Equality of tables, insensitive to the stored order of morphisms."""
        if not isinstance(other, FinCategory) or self.objects != other.objects:
            return False
        return (set(self.morphisms) == set(other.morphisms) and self.dom == other.dom and self.cod == other.cod
                and self.identities == other.identities and self.composition == other.composition)

    def __hash__(self):
        return hash((self.objects, frozenset(self.morphisms)))

    def __repr__(self):
        return f"FinCategory(objects={len(self.objects)}, morphisms={len(self.morphisms)})"

    @classmethod
    def discrete(cls, labels: Iterable[Label]) -> 'FinCategory':
        labels = list(labels)
        return cls(labels, [(a, a, a) for a in labels], {a: a for a in labels}, {(a, a): a for a in labels})

    @classmethod
    def terminal(cls) -> 'FinCategory':
        return cls.discrete(['*'])

    @classmethod
    def codiscrete(cls, labels: Iterable[Label]) -> 'FinCategory':
        labels = list(labels)
        morphisms = [((a, b), a, b) for a in labels for b in labels]
        composition = {((a, b), (b, c)): (a, c) for a, b, c in itertools.product(labels, repeat=3)}
        return cls(labels, morphisms, {a: (a, a) for a in labels}, composition)

    @classmethod
    def monoid(cls, elements: Iterable[Label], table: Dict[Tuple[Label, Label], Label], unit: Label,
               obj: Label = '*') -> 'FinCategory':
        elements = list(elements)
        return cls([obj], [(m, obj, obj) for m in elements], {obj: unit}, table)

    @classmethod
    def cyclic(cls, order: int) -> 'FinCategory':
        elements = [str(k) for k in range(order)]
        table = {(str(x), str(y)): str((x + y) % order) for x in range(order) for y in range(order)}
        return cls.monoid(elements, table, '0')

    @classmethod
    def poset(cls, elements: Iterable[Label], leq: Iterable[Tuple[Label, Label]]) -> 'FinCategory':
        """
        The poset generated by the given relations; leq is closed reflexively and transitively.
        """
        elements = list(elements)
        below = {(a, a) for a in elements} | set(leq)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(below), repeat=2):
                if b == c and (a, d) not in below:
                    below.add((a, d))
                    changed = True
        for a, b in below:
            if a != b and (b, a) in below:
                raise LawViolation("relations contain a cycle", "leq", (a, b))
        morphisms = [((a, b), a, b) for a in elements for b in elements if (a, b) in below]
        composition = {((a, b), (b, c)): (a, c) for a, b in below for b_, c in below if b == b_}
        return cls(elements, morphisms, {a: (a, a) for a in elements}, composition)

    @classmethod
    def chain(cls, length: int) -> 'FinCategory':
        elements = [str(k) for k in range(length)]
        return cls.poset(elements, zip(elements, elements[1:]))

    @classmethod
    def arrow(cls) -> 'FinCategory':
        return cls(['a', 'b'], [('id_a', 'a', 'a'), ('id_b', 'b', 'b'), ('f', 'a', 'b')],
                   {'a': 'id_a', 'b': 'id_b'},
                   {('id_a', 'id_a'): 'id_a', ('id_b', 'id_b'): 'id_b', ('id_a', 'f'): 'f', ('f', 'id_b'): 'f'})

    @classmethod
    def cospan(cls) -> 'FinCategory':
        """a -f-> c <-g- b"""
        return cls.free_on_graph(['a', 'b', 'c'], [('f', 'a', 'c'), ('g', 'b', 'c')])

    @classmethod
    def free_on_graph(cls, objects: Iterable[Label], edges: Iterable[Tuple[Label, Label, Label]]) -> 'FinCategory':
        """
        Free category on a graph whose edges never compose (every edge target is a sink or every edge source is a
        source), such as a cospan or a span shape.
        """
        objects = list(objects)
        edges = list(edges)
        for name, _, cod in edges:
            if any(dom == cod for _, dom, _ in edges):
                raise LawViolation("edges compose, the free category would need paths", "edges", name)
        identities = {a: f"id_{a}" for a in objects}
        composition = {(identities[a], identities[a]): identities[a] for a in objects}
        for name, dom, cod in edges:
            composition[(identities[dom], name)] = name
            composition[(name, identities[cod])] = name
        return cls(objects, [(identities[a], a, a) for a in objects] + edges, identities, composition)


def opposite_direct(c: FinCategory) -> FinCategory:
    return FinCategory(c.objects, [(f, c.cod[f], c.dom[f]) for f in c.morphisms], c.identities,
                       {(g, f): h for (f, g), h in c.composition.items()}, check=False)


def product_direct(c: FinCategory, d: FinCategory) -> FinCategory:
    objects = [(a, b) for a in c.objects for b in d.objects]
    morphisms = [((f, g), (c.dom[f], d.dom[g]), (c.cod[f], d.cod[g])) for f in c.morphisms for g in d.morphisms]
    identities = {(a, b): (c.identities[a], d.identities[b]) for a, b in objects}
    composition = {((f, g), (f_, g_)): (c.composition[(f, f_)], d.composition[(g, g_)])
                   for f, f_ in c.composable_pairs() for g, g_ in d.composable_pairs()}
    return FinCategory(objects, morphisms, identities, composition, check=False)


class CatFunctor:
    def __init__(self, source: FinCategory, target: FinCategory, on_objects: Dict[Label, Label],
                 on_morphisms: Dict[Label, Label]):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)

    @classmethod
    def identity(cls, c: FinCategory) -> 'CatFunctor':
        return cls(c, c, {a: a for a in c.objects}, {f: f for f in c.morphisms})

    @classmethod
    def constant(cls, c: FinCategory, d: FinCategory, obj: Label) -> 'CatFunctor':
        return cls(c, d, {a: obj for a in c.objects}, {f: d.identities[obj] for f in c.morphisms})

    @classmethod
    def from_object_map(cls, c: FinCategory, d: FinCategory, on_objects: Dict[Label, Label]) -> 'CatFunctor':
        """Functor out of a discrete category."""
        return cls(c, d, on_objects, {c.identities[a]: d.identities[on_objects[a]] for a in c.objects})

    def check(self):
        s, t = self.source, self.target
        for a in s.objects:
            if self.on_objects.get(a) not in t.objects:
                raise LawViolation("object map is not total", f"objects['{render_label(a)}']", a)
            if self.on_morphisms.get(s.identities[a]) != t.identities[self.on_objects[a]]:
                raise LawViolation("identities are not preserved", f"morphisms['{render_label(a)}']", a)
        for f in s.morphisms:
            g = self.on_morphisms.get(f)
            if g not in t.morphisms or t.dom[g] != self.on_objects[s.dom[f]] or t.cod[g] != self.on_objects[s.cod[f]]:
                raise LawViolation("morphism map breaks domains or codomains", f"morphisms['{render_label(f)}']",
                                   (f, g))
        for (f, g), h in s.composition.items():
            if t.composition[(self.on_morphisms[f], self.on_morphisms[g])] != self.on_morphisms[h]:
                raise LawViolation("composition is not preserved", _pair(f, g), (f, g))

    def compose(self, other: 'CatFunctor') -> 'CatFunctor':
        return CatFunctor(self.source, other.target, {a: other.on_objects[b] for a, b in self.on_objects.items()},
                          {f: other.on_morphisms[g] for f, g in self.on_morphisms.items()})

    def outfacing_map(self, a: Label) -> Dict[Label, Label]:
        return {f: self.on_morphisms[f] for f in self.source.outfacing(a)}

    def is_etale(self) -> bool:
        return self.etale_witness() is None

    def etale_witness(self) -> Optional[Label]:
        """First object whose outfacing map C[a] -> D[Fa] is not a bijection."""
        for a in self.source.objects:
            image = list(self.outfacing_map(a).values())
            if len(set(image)) != len(image) or len(image) != len(self.target.outfacing(self.on_objects[a])):
                return a
        return None

    def to_cofunctor(self) -> 'Cofunctor':
        witness = self.etale_witness()
        if witness is not None:
            raise NotEtale("functor is not etale", f"objects['{render_label(witness)}']", witness)
        back = {a: {g: f for f, g in self.outfacing_map(a).items()} for a in self.source.objects}
        return Cofunctor(self.source, self.target, self.on_objects, back)


class Cofunctor:
    """
    Forward on objects, backward on outfacing morphisms: back[a][g] in C[a] for g in D[F a].
    """

    def __init__(self, source: FinCategory, target: FinCategory, on_objects: Dict[Label, Label],
                 back: Dict[Label, Dict[Label, Label]]):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.back = {a: dict(table) for a, table in back.items()}

    @classmethod
    def identity(cls, c: FinCategory) -> 'Cofunctor':
        return cls(c, c, {a: a for a in c.objects}, {a: {f: f for f in c.outfacing(a)} for a in c.objects})

    @classmethod
    def between_discrete(cls, c: FinCategory, d: FinCategory, on_objects: Dict[Label, Label]) -> 'Cofunctor':
        return cls(c, d, on_objects, {a: {d.identities[on_objects[a]]: c.identities[a]} for a in c.objects})

    def check(self):
        s, t = self.source, self.target
        for a in s.objects:
            b = self.on_objects.get(a)
            if b not in t.objects:
                raise LawViolation("object map is not total", f"objects['{render_label(a)}']", a)
            table = self.back.get(a, {})
            for g in t.outfacing(b):
                f = table.get(g)
                if f not in s.outfacing(a):
                    raise LawViolation("backward map is not total into C[a]", f"back['{render_label(a)}']", (a, g))
                if self.on_objects[s.cod[f]] != t.cod[g]:
                    raise LawViolation("codomains are not preserved", f"back['{render_label(a)}']", (a, g, f))
            if table.get(t.identities[b]) != s.identities[a]:
                raise LawViolation("identities are not preserved", f"back['{render_label(a)}']", a)
        for a in s.objects:
            for g in t.outfacing(self.on_objects[a]):
                f = self.back[a][g]
                for h in t.outfacing(t.cod[g]):
                    composite = s.composition[(f, self.back[s.cod[f]][h])]
                    if self.back[a][t.composition[(g, h)]] != composite:
                        raise LawViolation("compositions are not preserved", f"back['{render_label(a)}']", (a, g, h))

    def compose(self, other: 'Cofunctor') -> 'Cofunctor':
        back = {a: {h: self.back[a][other.back[self.on_objects[a]][h]]
                    for h in other.target.outfacing(other.on_objects[self.on_objects[a]])}
                for a in self.source.objects}
        return Cofunctor(self.source, other.target, {a: other.on_objects[b] for a, b in self.on_objects.items()},
                         back)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cofunctor) and self.on_objects == other.on_objects and self.back == other.back


def cofunctor_compose(first: Cofunctor, second: Cofunctor) -> Cofunctor:
    return first.compose(second)


def cofunctor_check(cofunctor: Cofunctor) -> List[str]:
    try:
        cofunctor.check()
    except LawViolation as exc:
        return [str(exc)]
    return []


def is_etale(functor: CatFunctor) -> bool:
    return functor.is_etale()
