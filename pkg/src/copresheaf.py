"""
Copresheaves X: c -> Set on finite categories (instances), natural transformations between them and the
homomorphism search that evaluates conjunctive patterns.
"""
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from src.backend import Label, render_label, unique_or_tagged
from src.category import CatFunctor, FinCategory
from src.context import Context
from src.errors import LawViolation, SizeBlowup
from src.poly import FinLabelSet
from src.utils.unionfind import UnionFind

Element = Tuple[Label, Label]


class Copresheaf:
    def __init__(self, base: FinCategory, rows: Dict[Label, Iterable[Label]], action: Dict[Label, Dict[Label, Label]],
                 check: bool = True):
        self.base = base
        for a in rows:
            if a not in base.objects:
                raise LawViolation("rows for an unknown object", f"tables['{render_label(a)}']", a)
        for f in action:
            if f not in base.morphisms:
                raise LawViolation("action of an unknown morphism", f"maps['{render_label(f)}']", f)
        self.rows = {a: _label_set(rows.get(a, ())) for a in base.objects}
        self.action: Dict[Label, Dict[Label, Label]] = {}
        identities = set(base.identities.values())
        for f in base.morphisms:
            if f in action:
                self.action[f] = dict(action[f])
            elif f in identities:
                self.action[f] = {x: x for x in self.rows[base.dom[f]]}
            elif not self.rows[base.dom[f]]:
                self.action[f] = {}
        if check:
            self.check()

    def check(self):
        c = self.base
        for f in c.morphisms:
            where = f"maps['{render_label(f)}']"
            if f not in self.action:
                raise LawViolation("missing action of a morphism", where, f)
            table = self.action[f]
            for x in self.rows[c.dom[f]]:
                if x not in table:
                    raise LawViolation("action is not total", where, (f, x))
                if table[x] not in self.rows[c.cod[f]]:
                    raise LawViolation("action leaves the codomain rows", where, (f, x, table[x]))
        for a in c.objects:
            ident = c.identities[a]
            for x in self.rows[a]:
                if self.action[ident][x] != x:
                    raise LawViolation("identity does not act trivially", f"maps['{render_label(ident)}']", x)
        for (f, g), h in c.composition.items():
            for x in self.rows[c.dom[f]]:
                if self.action[h][x] != self.action[g][self.action[f][x]]:
                    raise LawViolation("action does not respect composition", f"maps['{render_label(h)}']",
                                       (f, g, x))

    def act(self, f: Label, x: Label) -> Label:
        return self.action[f][x]

    def elements(self) -> List[Element]:
        return [(a, x) for a in self.base.objects for x in self.rows[a]]

    def size(self) -> int:
        return sum(len(rows) for rows in self.rows.values())

    def row_counts(self) -> Dict[Label, int]:
        return {a: len(self.rows[a]) for a in self.base.objects}

    def __eq__(self, other) -> bool:
        return (isinstance(other, Copresheaf) and self.base == other.base and self.rows == other.rows
                and self.action == other.action)

    def __hash__(self):
        return hash(tuple(self.rows.items()))

    def __repr__(self):
        return "Copresheaf(" + ", ".join(f"{render_label(a)}: {len(r)}" for a, r in self.rows.items()) + ")"

    @classmethod
    def representable(cls, c: FinCategory, a: Label) -> 'Copresheaf':
        rows = {b: c.hom(a, b) for b in c.objects}
        action = {g: {h: c.composition[(h, g)] for h in rows[c.dom[g]]} for g in c.morphisms}
        return cls(c, rows, action, check=False)

    @classmethod
    def terminal(cls, c: FinCategory) -> 'Copresheaf':
        return cls(c, {a: ['*'] for a in c.objects}, {f: {'*': '*'} for f in c.morphisms}, check=False)

    @classmethod
    def empty(cls, c: FinCategory) -> 'Copresheaf':
        return cls(c, {}, {f: {} for f in c.morphisms}, check=False)


def _label_set(labels: Iterable[Label]) -> FinLabelSet:
    return labels if isinstance(labels, FinLabelSet) else FinLabelSet(labels)


class Transformation:
    def __init__(self, source: Copresheaf, target: Copresheaf, components: Dict[Label, Dict[Label, Label]]):
        self.source = source
        self.target = target
        self.components = components

    @classmethod
    def identity(cls, x: Copresheaf) -> 'Transformation':
        return cls(x, x, {a: {r: r for r in rows} for a, rows in x.rows.items()})

    def __call__(self, a: Label, x: Label) -> Label:
        return self.components[a][x]

    def check(self):
        c = self.source.base
        for a in c.objects:
            for x in self.source.rows[a]:
                if self.components[a].get(x) not in self.target.rows[a]:
                    raise LawViolation("component is not a function into the target", f"components['{a}']", x)
        for f in c.morphisms:
            a, b = c.dom[f], c.cod[f]
            for x in self.source.rows[a]:
                if self.components[b][self.source.act(f, x)] != self.target.act(f, self.components[a][x]):
                    raise LawViolation("naturality fails", f"maps['{render_label(f)}']", (f, x))

    def compose(self, other: 'Transformation') -> 'Transformation':
        """self, then other."""
        return Transformation(self.source, other.target,
                              {a: {x: other.components[a][y] for x, y in comp.items()}
                               for a, comp in self.components.items()})

    def key(self) -> Tuple[Label, ...]:
        return tuple(self.components[a][x] for a, x in self.source.elements())

    def __eq__(self, other) -> bool:
        return isinstance(other, Transformation) and self.components == other.components

    def __hash__(self):
        return hash(self.key())


class _HomSearch:
    """
    Backtracking over the elements of P, always expanding the element with the fewest remaining candidates.
    Assigning an element forces its images along outgoing morphisms and filters the candidates of its preimages.
    """

    def __init__(self, pattern: Copresheaf, data: Copresheaf, injective: bool):
        self.pattern = pattern
        self.data = data
        self.injective = injective
        c = pattern.base
        self.elements = pattern.elements()
        self.order = {e: idx for idx, e in enumerate(self.elements)}
        self.by_object = {a: [(a, x) for x in pattern.rows[a]] for a in c.objects}
        self.out_edges = {e: [] for e in self.elements}
        self.in_edges = {e: [] for e in self.elements}
        identities = set(c.identities.values())
        for f in c.morphisms:
            if f in identities:
                continue
            for x in pattern.rows[c.dom[f]]:
                source, target = (c.dom[f], x), (c.cod[f], pattern.act(f, x))
                self.out_edges[source].append((f, target))
                self.in_edges[target].append((f, source))

    def _propagate(self, domains: Dict[Element, Tuple[Label, ...]], assigned: Dict[Element, Label],
                   queue: List[Tuple[Element, Label]]) -> bool:
        data = self.data
        while queue:
            elem, value = queue.pop()
            if elem in assigned:
                if assigned[elem] != value:
                    return False
                continue
            if value not in domains[elem]:
                return False
            assigned[elem] = value
            domains[elem] = (value,)
            if self.injective:
                for other in self.by_object[elem[0]]:
                    if other == elem:
                        continue
                    if other in assigned:
                        if assigned[other] == value:
                            return False
                        continue
                    candidates = tuple(z for z in domains[other] if z != value)
                    if not candidates:
                        return False
                    domains[other] = candidates
                    if len(candidates) == 1:
                        queue.append((other, candidates[0]))
            for f, target in self.out_edges[elem]:
                queue.append((target, data.act(f, value)))
            for f, source in self.in_edges[elem]:
                if source in assigned:
                    if data.act(f, assigned[source]) != value:
                        return False
                    continue
                candidates = tuple(z for z in domains[source] if data.act(f, z) == value)
                if not candidates:
                    return False
                domains[source] = candidates
                if len(candidates) == 1:
                    queue.append((source, candidates[0]))
        return True

    def _search(self, domains: Dict[Element, Tuple[Label, ...]], assigned: Dict[Element, Label]
                ) -> Iterator[Dict[Element, Label]]:
        if len(assigned) == len(self.elements):
            yield assigned
            return
        elem = min((e for e in self.elements if e not in assigned), key=lambda e: (len(domains[e]), self.order[e]))
        for value in domains[elem]:
            new_domains, new_assigned = dict(domains), dict(assigned)
            if self._propagate(new_domains, new_assigned, [(elem, value)]):
                yield from self._search(new_domains, new_assigned)

    def __iter__(self) -> Iterator[Dict[Element, Label]]:
        domains = {(a, x): self.data.rows[a].labels for a, x in self.elements}
        return self._search(domains, {})


def copresheaf_homs(ctx: Context, pattern: Copresheaf, data: Copresheaf, injective: bool = False,
                    limit: Optional[int] = None) -> List[Transformation]:
    if pattern.base is not data.base and pattern.base != data.base:
        raise LawViolation("pattern and data live over different categories", "base", None)
    cap = ctx.enumeration.cap
    found = []
    for assignment in _HomSearch(pattern, data, injective):
        found.append(assignment)
        if limit is not None and len(found) >= limit:
            break
        if len(found) > cap:
            raise SizeBlowup(f"more than {cap} homomorphisms", "copresheaf_homs", repr(pattern))
    index = {a: data.rows[a] for a in data.base.objects}
    found.sort(key=lambda asg: tuple(index[a].index(asg[(a, x)]) for a, x in pattern.elements()))
    out = []
    for assignment in found:
        components = {a: {} for a in pattern.base.objects}
        for (a, x), y in assignment.items():
            components[a][x] = y
        out.append(Transformation(pattern, data, {a: {x: components[a][x] for x in pattern.rows[a]}
                                                  for a in pattern.base.objects}))
    return out


def find_isomorphism(ctx: Context, left: Copresheaf, right: Copresheaf) -> Optional[Transformation]:
    if left.row_counts() != right.row_counts():
        return None
    found = copresheaf_homs(ctx, left, right, injective=True, limit=1)
    return found[0] if found else None


def is_isomorphic(ctx: Context, left: Copresheaf, right: Copresheaf) -> bool:
    return find_isomorphism(ctx, left, right) is not None


def _relabeled_union(parts: List[Tuple[Label, Copresheaf]], c: FinCategory) -> Copresheaf:
    rows, names = {}, {}
    for a in c.objects:
        pairs = [(owner, x) for owner, part in parts for x in part.rows[a]]
        labels = unique_or_tagged(pairs)
        rows[a] = labels
        names.update({(a, owner, x): label for (owner, x), label in zip(pairs, labels)})
    action = {f: {names[(c.dom[f], owner, x)]: names[(c.cod[f], owner, part.act(f, x))]
                  for owner, part in parts for x in part.rows[c.dom[f]]} for f in c.morphisms}
    return Copresheaf(c, rows, action, check=False)


def coproduct(parts: Iterable[Copresheaf], owners: Optional[Iterable[Label]] = None) -> Copresheaf:
    parts = list(parts)
    owners = list(owners) if owners is not None else [str(idx) for idx in range(1, len(parts) + 1)]
    if not parts:
        raise ValueError("coproduct needs at least one summand to know its base category")
    return _relabeled_union(list(zip(owners, parts)), parts[0].base)


def product(left: Copresheaf, right: Copresheaf) -> Copresheaf:
    c = left.base
    rows = {a: [(x, y) for x in left.rows[a] for y in right.rows[a]] for a in c.objects}
    action = {f: {(x, y): (left.act(f, x), right.act(f, y)) for x, y in rows[c.dom[f]]} for f in c.morphisms}
    return Copresheaf(c, rows, action, check=False)


def quotient(x: Copresheaf, relations: Iterable[Tuple[Element, Element]]) -> Tuple[Copresheaf, Dict[Element, Label]]:
    """
    Smallest congruence containing the relations. Each class is named by its first row; returns the quotient and
    the projection of elements onto class names.
    """
    c = x.base
    classes = UnionFind(x.elements())
    queue = list(relations)
    while queue:
        left, right = queue.pop()
        if left[0] != right[0]:
            raise LawViolation("relation identifies rows of different objects", "quotient", (left, right))
        if not classes.union(left, right):
            continue
        a = left[0]
        for f in c.outfacing(a):
            queue.append(((c.cod[f], x.act(f, left[1])), (c.cod[f], x.act(f, right[1]))))
    projection = {}
    rows = {a: [] for a in c.objects}
    for members in classes.classes():
        a, name = members[0]
        rows[a].append(name)
        projection.update({member: name for member in members})
    action = {f: {projection[(c.dom[f], r)]: projection[(c.cod[f], x.act(f, r))] for r in x.rows[c.dom[f]]}
              for f in c.morphisms}
    return Copresheaf(c, rows, action, check=False), projection


def elements_category(x: Copresheaf) -> Tuple[FinCategory, CatFunctor]:
    """el_c(X) with its projection to c, which is etale."""
    c = x.base
    objects = x.elements()
    morphisms = [((f, r), (c.dom[f], r), (c.cod[f], x.act(f, r))) for f in c.morphisms for r in x.rows[c.dom[f]]]
    identities = {(a, r): (c.identities[a], r) for a, r in objects}
    composition = {((f, r), (g, x.act(f, r))): (c.composition[(f, g)], r)
                   for f, g in c.composable_pairs() for r in x.rows[c.dom[f]]}
    el = FinCategory(objects, morphisms, identities, composition, check=False)
    projection = CatFunctor(el, c, {e: e[0] for e in objects}, {m[0]: m[0][0] for m in morphisms})
    return el, projection
