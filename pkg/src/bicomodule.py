"""
Bicomodules c ⊲- m -⊲ d stored as functors from c to duc-queries on d: every object a of c carries positions
m_a(1), every position j a pattern m[j] (a copresheaf on d), and every morphism f: a -> a' a position map
f_!: m_a(1) -> m_a'(1) together with pattern maps m[f_! j] -> m[j].
"""
import itertools
from typing import Dict, Iterable, List, Optional, Tuple

from src.backend import Label, check_cap, render_label, unique_or_tagged
from src.category import CatFunctor, Cofunctor, FinCategory
from src.context import Context
from src.copresheaf import Copresheaf, Transformation, copresheaf_homs, find_isomorphism, product, quotient
from src.errors import LawViolation, WrongShape
from src.poly import FinLabelSet, Poly

EMPTY_CATEGORY = FinCategory([], [], {}, {})


class Bicomodule:
    def __init__(self, left: FinCategory, right: FinCategory, positions: Dict[Label, Iterable[Label]],
                 patterns: Dict[Tuple[Label, Label], Copresheaf],
                 position_maps: Optional[Dict[Label, Dict[Label, Label]]] = None,
                 pattern_maps: Optional[Dict[Tuple[Label, Label], Transformation]] = None, check: bool = True):
        self.left = left
        self.right = right
        self.positions = {a: FinLabelSet(positions.get(a, ())) for a in left.objects}
        self.patterns = dict(patterns)
        self.position_maps = {f: dict(table) for f, table in (position_maps or {}).items()}
        self.pattern_maps = dict(pattern_maps or {})
        for a, ident in left.identities.items():
            self.position_maps.setdefault(ident, {j: j for j in self.positions[a]})
            for j in self.positions[a]:
                if (a, j) in self.patterns:
                    self.pattern_maps.setdefault((ident, j), Transformation.identity(self.patterns[(a, j)]))
        if check:
            self.check()

    def pattern(self, a: Label, j: Label) -> Copresheaf:
        return self.patterns[(a, j)]

    def push(self, f: Label, j: Label) -> Label:
        """f_! j"""
        return self.position_maps[f][j]

    def pattern_map(self, f: Label, j: Label) -> Transformation:
        """m[f_! j] -> m[j]"""
        return self.pattern_maps[(f, j)]

    def check(self):
        c = self.left
        for a in c.objects:
            for j in self.positions[a]:
                pattern = self.patterns.get((a, j))
                if pattern is None or pattern.base != self.right:
                    raise LawViolation("position needs a pattern over the right category",
                                       f"patterns['{render_label(a)}', '{render_label(j)}']", (a, j))
        for f in c.morphisms:
            a, b = c.dom[f], c.cod[f]
            where = f"position_maps['{render_label(f)}']"
            table = self.position_maps.get(f)
            if table is None:
                raise LawViolation("missing position map", where, f)
            for j in self.positions[a]:
                if table.get(j) not in self.positions[b]:
                    raise LawViolation("position map is not total", where, (f, j))
                transformation = self.pattern_maps.get((f, j))
                if transformation is None:
                    raise LawViolation("missing pattern map", where, (f, j))
                if transformation.source != self.patterns[(b, table[j])] or (
                        transformation.target != self.patterns[(a, j)]):
                    raise LawViolation("pattern map has the wrong endpoints", where, (f, j))
                transformation.check()
        for a in c.objects:
            ident = c.identities[a]
            for j in self.positions[a]:
                if self.push(ident, j) != j or self.pattern_map(ident, j) != Transformation.identity(
                        self.patterns[(a, j)]):
                    raise LawViolation("identity does not act trivially", f"position_maps['{render_label(ident)}']",
                                       (a, j))
        for (f, g), h in c.composition.items():
            for j in self.positions[c.dom[f]]:
                middle = self.push(f, j)
                if self.push(h, j) != self.push(g, middle):
                    raise LawViolation("position maps are not functorial", f"position_maps['{render_label(h)}']",
                                       (f, g, j))
                if self.pattern_map(h, j) != self.pattern_map(g, middle).compose(self.pattern_map(f, j)):
                    raise LawViolation("pattern maps are not functorial", f"pattern_maps['{render_label(h)}']",
                                       (f, g, j))

    def is_linear(self) -> bool:
        return all(pattern.size() == 1 for pattern in self.patterns.values())

    def is_conjunctive(self) -> bool:
        return all(len(positions) == 1 for positions in self.positions.values())

    def positions_copresheaf(self) -> Copresheaf:
        """m(1) as a copresheaf on c."""
        return Copresheaf(self.left, self.positions, self.position_maps, check=False)

    def carrier(self) -> Poly:
        return Poly(((a, j), self.patterns[(a, j)].elements()) for a in self.left.objects for j in self.positions[a])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bicomodule) or self.left != other.left or self.right != other.right:
            return False
        if self.positions != other.positions or self.position_maps != other.position_maps:
            return False
        keys = [(a, j) for a in self.left.objects for j in self.positions[a]]
        return all(self.patterns[k] == other.patterns[k] for k in keys) and all(
                self.pattern_maps[(f, j)] == other.pattern_maps[(f, j)]
                for f in self.left.morphisms for j in self.positions[self.left.dom[f]])

    def __repr__(self):
        return "Bicomodule(" + ", ".join(f"{render_label(a)}: {len(p)}" for a, p in self.positions.items()) + ")"


def _pattern_map(source: Copresheaf, target: Copresheaf, on_rows) -> Transformation:
    return Transformation(source, target, {b: {x: on_rows(b, x) for x in source.rows[b]} for b in source.base.objects})


def identity_bicomodule(c: FinCategory) -> Bicomodule:
    return delta_bicomodule(CatFunctor.identity(c))


def delta_bicomodule(functor: CatFunctor) -> Bicomodule:
    """
    c ⊲- d -⊲ ... for F: c -> d: one position per object a with pattern the representable at F a. Applying it
    precomposes with F.
    """
    c, d = functor.source, functor.target
    patterns = {(a, a): Copresheaf.representable(d, functor.on_objects[a]) for a in c.objects}
    position_maps = {f: {c.dom[f]: c.cod[f]} for f in c.morphisms}
    pattern_maps = {}
    for f in c.morphisms:
        a, b = c.dom[f], c.cod[f]
        image = functor.on_morphisms[f]
        pattern_maps[(f, a)] = _pattern_map(patterns[(b, b)], patterns[(a, a)],
                                            lambda _, h, image=image: d.composition[(image, h)])
    return Bicomodule(c, d, {a: [a] for a in c.objects}, patterns, position_maps, pattern_maps, check=False)


def pulled_representable(functor: CatFunctor, b: Label) -> Copresheaf:
    """Δ_F of the representable at b: rows at a are the morphisms b -> F a."""
    c, d = functor.source, functor.target
    rows = {a: d.hom(b, functor.on_objects[a]) for a in c.objects}
    action = {f: {g: d.composition[(g, functor.on_morphisms[f])] for g in rows[c.dom[f]]} for f in c.morphisms}
    return Copresheaf(c, rows, action, check=False)


def pi_bicomodule(functor: CatFunctor) -> Bicomodule:
    """d ⊲- ... -⊲ c whose application is the right Kan extension along F."""
    c, d = functor.source, functor.target
    patterns = {(b, b): pulled_representable(functor, b) for b in d.objects}
    position_maps = {h: {d.dom[h]: d.cod[h]} for h in d.morphisms}
    pattern_maps = {}
    for h in d.morphisms:
        b, b_ = d.dom[h], d.cod[h]
        pattern_maps[(h, b)] = _pattern_map(patterns[(b_, b_)], patterns[(b, b)],
                                            lambda _, g, h=h: d.composition[(h, g)])
    return Bicomodule(d, c, {b: [b] for b in d.objects}, patterns, position_maps, pattern_maps, check=False)


def duc_query(right: FinCategory, patterns: Iterable[Copresheaf], labels: Optional[Iterable[Label]] = None
              ) -> Bicomodule:
    patterns = list(patterns)
    labels = list(labels) if labels is not None else [str(idx) for idx in range(1, len(patterns) + 1)]
    terminal = FinCategory.terminal()
    return Bicomodule(terminal, right, {'*': labels}, {('*', j): p for j, p in zip(labels, patterns)})


def copresheaf_to_bicomodule(x: Copresheaf) -> Bicomodule:
    empty = Copresheaf.empty(EMPTY_CATEGORY)
    patterns = {(a, r): empty for a, r in x.elements()}
    pattern_maps = {(f, r): Transformation.identity(empty) for f in x.base.morphisms for r in x.rows[x.base.dom[f]]}
    return Bicomodule(x.base, EMPTY_CATEGORY, x.rows, patterns, x.action, pattern_maps, check=False)


def bicomodule_to_copresheaf(m: Bicomodule) -> Copresheaf:
    if m.right.objects.labels:
        raise WrongShape("only bicomodules into the empty category are copresheaves", "right", m.right)
    return m.positions_copresheaf()


def from_poly(p: Poly) -> Bicomodule:
    """y ⊲- p -⊲ y"""
    terminal = FinCategory.terminal()
    patterns = {('*', i): Copresheaf(terminal, {'*': p[i]}, {'*': {d: d for d in p[i]}}, check=False)
                for i in p.positions}
    return Bicomodule(terminal, terminal, {'*': p.positions}, patterns, check=False)


def _apply_with_homs(ctx: Context, m: Bicomodule, x: Copresheaf) -> Tuple[Copresheaf, Dict[Tuple, Transformation]]:
    c = m.left
    rows, homs = {}, {}
    for a in c.objects:
        rows[a] = []
        for j in m.positions[a]:
            for h in copresheaf_homs(ctx, m.pattern(a, j), x):
                label = (j, h.key())
                rows[a].append(label)
                homs[(a, label)] = h
        check_cap(len(rows[a]), ctx.enumeration.cap, f"apply rows at {render_label(a)}")
    action = {}
    for f in c.morphisms:
        a, b = c.dom[f], c.cod[f]
        action[f] = {}
        for label in rows[a]:
            j = label[0]
            composite = m.pattern_map(f, j).compose(homs[(a, label)])
            action[f][label] = (m.push(f, j), composite.key())
    return Copresheaf(c, rows, action, check=False), homs


def apply(ctx: Context, m: Bicomodule, x: Copresheaf) -> Copresheaf:
    """Rows at a are pairs (j, h) with h: m[j] -> X, labeled by (j, images of h in element order)."""
    return _apply_with_homs(ctx, m, x)[0]


def apply_morphism(ctx: Context, m: Bicomodule, transformation: Transformation) -> Transformation:
    source, homs = _apply_with_homs(ctx, m, transformation.source)
    target = apply(ctx, m, transformation.target)
    components = {a: {label: (label[0], homs[(a, label)].compose(transformation).key()) for label in source.rows[a]}
                  for a in m.left.objects}
    return Transformation(source, target, components)


def compose_bicomodules(ctx: Context, m: Bicomodule, n: Bicomodule) -> Bicomodule:
    """
    m ◁_d n. Positions over a are pairs (i, φ) with φ: m[i] -> n(1); the pattern is the colimit of the patterns
    n[φ(x)] over the elements x of m[i], computed as a disjoint union quotiented along every morphism of d.
    """
    c, d, e = m.left, m.right, n.right
    n_positions = n.positions_copresheaf()
    positions, patterns, colimits, phis = {}, {}, {}, {}
    for a in c.objects:
        positions[a] = []
        for i in m.positions[a]:
            pattern = m.pattern(a, i)
            for phi in copresheaf_homs(ctx, pattern, n_positions):
                label = (i, phi.key())
                positions[a].append(label)
                phis[(a, label)] = phi
                patterns[(a, label)], colimits[(a, label)] = _colimit(pattern, phi, n, d, e)
        check_cap(len(positions[a]), ctx.enumeration.cap, f"composite positions at {render_label(a)}")
    position_maps, pattern_maps = {}, {}
    for f in c.morphisms:
        a, b = c.dom[f], c.cod[f]
        position_maps[f] = {}
        for label in positions[a]:
            i = label[0]
            restriction = m.pattern_map(f, i)
            image = (m.push(f, i), restriction.compose(phis[(a, label)]).key())
            position_maps[f][label] = image
            projection = colimits[(a, label)]
            source_projection = colimits[(b, image)]
            source = patterns[(b, image)]
            members = {}
            for (obj, ((obj_d, row), z)), name in source_projection.items():
                members[(obj, name)] = projection[(obj, ((obj_d, restriction(obj_d, row)), z))]
            pattern_maps[(f, label)] = _pattern_map(source, patterns[(a, label)],
                                                    lambda obj, name, members=members: members[(obj, name)])
    return Bicomodule(c, e, positions, patterns, position_maps, pattern_maps, check=False)


def _colimit(pattern: Copresheaf, phi: Transformation, n: Bicomodule, d: FinCategory, e: FinCategory):
    union_rows = {obj: [] for obj in e.objects}
    for b, row in pattern.elements():
        summand = n.pattern(b, phi(b, row))
        for obj in e.objects:
            union_rows[obj].extend(((b, row), z) for z in summand.rows[obj])
    action = {}
    for g in e.morphisms:
        action[g] = {}
        for (b, row), z in union_rows[e.dom[g]]:
            action[g][((b, row), z)] = ((b, row), n.pattern(b, phi(b, row)).act(g, z))
    union = Copresheaf(e, union_rows, action, check=False)
    relations = []
    identities = set(d.identities.values())
    for g in d.morphisms:
        if g in identities:
            continue
        b = d.dom[g]
        for row in pattern.rows[b]:
            source_pos = phi(b, row)
            target = (d.cod[g], pattern.act(g, row))
            restriction = n.pattern_map(g, source_pos)
            for obj in e.objects:
                for z in restriction.source.rows[obj]:
                    relations.append(((obj, (target, z)), (obj, ((b, row), restriction(obj, z)))))
    return quotient(union, relations)


def _push_copresheaf(x: Copresheaf, beta: Cofunctor) -> Tuple[Copresheaf, Dict[Tuple[Label, Label], Label]]:
    d, d_ = beta.source, beta.target
    rows, names = {}, {}
    for b_ in d_.objects:
        pairs = [(b, r) for b in d.objects if beta.on_objects[b] == b_ for r in x.rows[b]]
        rows[b_] = unique_or_tagged(pairs)
        names.update(dict(zip(pairs, rows[b_])))
    action = {}
    for g in d_.morphisms:
        action[g] = {}
        for b in d.objects:
            if beta.on_objects[b] != d_.dom[g]:
                continue
            f = beta.back[b][g]
            for r in x.rows[b]:
                action[g][names[(b, r)]] = names[(d.cod[f], x.act(f, r))]
    return Copresheaf(d_, rows, action, check=False), names


def extend(m: Bicomodule, alpha: Cofunctor, beta: Cofunctor) -> Bicomodule:
    """Re-route m along cofunctors alpha: c ↛ c' and beta: d ↛ d'; the carrier stays the same."""
    c, c_ = alpha.source, alpha.target
    pushed = {key: _push_copresheaf(pattern, beta) for key, pattern in m.patterns.items()}
    positions, names = {}, {}
    for a_ in c_.objects:
        pairs = [(a, j) for a in c.objects if alpha.on_objects[a] == a_ for j in m.positions[a]]
        positions[a_] = unique_or_tagged(pairs)
        names.update(dict(zip(pairs, positions[a_])))
    patterns = {(alpha.on_objects[a], names[(a, j)]): pushed[(a, j)][0] for (a, j) in m.patterns}
    position_maps, pattern_maps = {}, {}
    for g in c_.morphisms:
        position_maps[g] = {}
        for a in c.objects:
            if alpha.on_objects[a] != c_.dom[g]:
                continue
            f = alpha.back[a][g]
            for j in m.positions[a]:
                target_pos = m.push(f, j)
                position_maps[g][names[(a, j)]] = names[(c.cod[f], target_pos)]
                source, source_names = pushed[(c.cod[f], target_pos)]
                target, target_names = pushed[(a, j)]
                inner = m.pattern_map(f, j)
                table = {(beta.on_objects[b], source_names[(b, r)]): target_names[(b, inner(b, r))]
                         for b, r in inner.source.elements()}
                pattern_maps[(g, names[(a, j)])] = _pattern_map(source, target,
                                                                lambda obj, r, table=table: table[(obj, r)])
    return Bicomodule(c_, beta.target, positions, patterns, position_maps, pattern_maps, check=False)


def tensor_unit(c: FinCategory, d: FinCategory) -> Bicomodule:
    """I_{c,d} = c(1) y^{d(1)}"""
    terminal = Copresheaf.terminal(d)
    return Bicomodule(c, d, {a: ['*'] for a in c.objects}, {(a, '*'): terminal for a in c.objects},
                      {f: {'*': '*'} for f in c.morphisms},
                      {(f, '*'): Transformation.identity(terminal) for f in c.morphisms}, check=False)


def local_tensor(p: Bicomodule, q: Bicomodule) -> Bicomodule:
    c, d = p.left, p.right
    positions = {a: [(i, j) for i in p.positions[a] for j in q.positions[a]] for a in c.objects}
    patterns = {(a, (i, j)): product(p.pattern(a, i), q.pattern(a, j)) for a in c.objects for i, j in positions[a]}
    position_maps, pattern_maps = {}, {}
    for f in c.morphisms:
        a, b = c.dom[f], c.cod[f]
        position_maps[f] = {(i, j): (p.push(f, i), q.push(f, j)) for i, j in positions[a]}
        for i, j in positions[a]:
            left, right = p.pattern_map(f, i), q.pattern_map(f, j)
            pattern_maps[(f, (i, j))] = _pattern_map(patterns[(b, position_maps[f][(i, j)])], patterns[(a, (i, j))],
                                                     lambda obj, row, left=left, right=right: (
                                                         left(obj, row[0]), right(obj, row[1])))
    return Bicomodule(c, d, positions, patterns, position_maps, pattern_maps, check=False)


def _require_discrete_left(m: Bicomodule, operation: str):
    if not m.left.is_discrete():
        raise NotImplementedError(f"{operation} needs an end over the elements of a non-discrete left category; "
                                  f"only discrete left categories are supported")


def _duc_morphisms(ctx: Context, q: Bicomodule, r: Bicomodule, a: Label) -> List[Tuple[Tuple, Dict]]:
    """Duc-query maps q_a -> r_a: a position k of r for every position j of q, and a pattern map r[k] -> q[j]."""
    choices = []
    for j in q.positions[a]:
        choices.append([(k, h) for k in r.positions[a] for h in copresheaf_homs(ctx, r.pattern(a, k), q.pattern(a, j))])
    check_cap(_product_len(choices), ctx.enumeration.cap, f"duc-query maps at {render_label(a)}")
    out = []
    for choice in itertools.product(*choices):
        label = tuple((k, h.key()) for k, h in choice)
        out.append((label, dict(zip(q.positions[a], choice))))
    return out


def _product_len(choices: List[list]) -> int:
    out = 1
    for choice in choices:
        out *= len(choice)
    return out


def local_hom_discrete(ctx: Context, q: Bicomodule, r: Bicomodule) -> Bicomodule:
    """[q, r] for a discrete left category: positions are maps q_a -> r_a, patterns the coproduct of r[φ j]."""
    _require_discrete_left(q, "local_hom_discrete")
    c, d = q.left, q.right
    positions, patterns = {}, {}
    for a in c.objects:
        positions[a] = []
        for label, choice in _duc_morphisms(ctx, q, r, a):
            positions[a].append(label)
            parts = [(j, r.pattern(a, choice[j][0])) for j in q.positions[a]]
            patterns[(a, label)] = _tagged_union(parts, d)
    return Bicomodule(c, d, positions, patterns, check=False)


def _tagged_union(parts: List[Tuple[Label, Copresheaf]], d: FinCategory) -> Copresheaf:
    rows = {b: [(j, x) for j, part in parts for x in part.rows[b]] for b in d.objects}
    action = {g: {(j, x): (j, part.act(g, x)) for j, part in parts for x in part.rows[d.dom[g]]} for g in d.morphisms}
    return Copresheaf(d, rows, action, check=False)


def bicomodule_hom_count(ctx: Context, p: Bicomodule, q: Bicomodule) -> int:
    """|c-Set[d](p, q)| for a discrete left category."""
    _require_discrete_left(p, "bicomodule_hom_count")
    out = 1
    for a in p.left.objects:
        for i in p.positions[a]:
            out *= sum(len(copresheaf_homs(ctx, q.pattern(a, k), p.pattern(a, i))) for k in q.positions[a])
    return out


def bicomodule_coclosure(ctx: Context, p: Bicomodule, q: Bicomodule) -> Bicomodule:
    """[p/q] for p: c -> e and q: d -> e; positions of p with patterns q ◁_e p[i]."""
    c = p.left
    patterns = {(a, i): apply(ctx, q, p.pattern(a, i)) for a in c.objects for i in p.positions[a]}
    pattern_maps = {(f, i): apply_morphism(ctx, q, p.pattern_map(f, i))
                    for f in c.morphisms for i in p.positions[c.dom[f]]}
    return Bicomodule(c, q.left, p.positions, patterns, p.position_maps, pattern_maps, check=False)


def is_isomorphic(ctx: Context, m: Bicomodule, n: Bicomodule) -> bool:
    """Isomorphism of bicomodules over a discrete left category: matching positions with isomorphic patterns."""
    _require_discrete_left(m, "is_isomorphic")
    if m.left != n.left or m.right != n.right:
        return False
    for a in m.left.objects:
        unused = list(n.positions[a])
        if len(unused) != len(m.positions[a]):
            return False
        for i in m.positions[a]:
            match = next((k for k in unused if find_isomorphism(ctx, m.pattern(a, i), n.pattern(a, k))), None)
            if match is None:
                return False
            unused.remove(match)
    return True
