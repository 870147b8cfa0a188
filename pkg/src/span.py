"""
Spans between finite sets as linear bicomodules over discrete categories, their duals (conjunctive bicomodules),
adjoints and transposes, bridge diagrams, the span monad of a category and the skeleton of finite sets.

Orientation: a bicomodule Cy ⊲- m -⊲ Dy maps D-sets to C-sets. A span C <-f- S -g-> D is the linear bicomodule
with positions f^{-1}(a) over a and a single pattern row s at g(s). A conjunctive bicomodule in canonical form has a
single position over a, labeled a.
"""
import collections
import dataclasses
import itertools
from typing import Dict, Iterable, List, Optional, Tuple

from src.backend import Label, fibers, ordinal, render_label, unique_or_tagged, untag
from src.bicomodule import Bicomodule, bicomodule_coclosure, local_hom_discrete
from src.category import CatFunctor, FinCategory
from src.comonoid import Comonoid, comonoid_to_category, full_internal_subcategory
from src.context import Context
from src.copresheaf import Copresheaf
from src.errors import LawViolation, NotDualizable, RowTooLarge, WrongShape
from src.migrate import migrate_delta, migrate_pi, migrate_sigma
from src.poly import UNIT, Composite, Poly, PolyMap


def discrete_set(d: FinCategory, rows: Dict[Label, Iterable[Label]]) -> Copresheaf:
    return Copresheaf(d, rows, {})


def _require_discrete(m: Bicomodule, operation: str):
    if not (m.left.is_discrete() and m.right.is_discrete()):
        raise WrongShape(f"{operation} needs discrete categories on both sides", operation, m)


class Span:
    def __init__(self, left: Iterable[Label], apex: Iterable[Label], right: Iterable[Label],
                 f: Dict[Label, Label], g: Dict[Label, Label]):
        self.left = tuple(left)
        self.apex = tuple(apex)
        self.right = tuple(right)
        self.f = dict(f)
        self.g = dict(g)
        self.check()

    def check(self):
        for s in self.apex:
            if self.f.get(s) not in self.left:
                raise LawViolation("left leg is not total", f"maps['f']['{render_label(s)}']", s)
            if self.g.get(s) not in self.right:
                raise LawViolation("right leg is not total", f"maps['g']['{render_label(s)}']", s)

    @classmethod
    def identity(cls, labels: Iterable[Label]) -> 'Span':
        labels = tuple(labels)
        return cls(labels, labels, labels, {x: x for x in labels}, {x: x for x in labels})

    def to_bicomodule(self) -> Bicomodule:
        c, d = FinCategory.discrete(self.left), FinCategory.discrete(self.right)
        positions = fibers(self.apex, self.f.__getitem__, self.left)
        patterns = {(self.f[s], s): discrete_set(d, {self.g[s]: [s]}) for s in self.apex}
        return Bicomodule(c, d, positions, patterns, check=False)

    @classmethod
    def from_bicomodule(cls, m: Bicomodule) -> 'Span':
        _require_discrete(m, "Span.from_bicomodule")
        if not m.is_linear():
            raise WrongShape("only linear bicomodules are spans", "Span.from_bicomodule", m)
        pairs = [(a, j) for a in m.left.objects for j in m.positions[a]]
        apex = unique_or_tagged(pairs)
        f = {s: a for s, (a, _) in zip(apex, pairs)}
        g = {s: m.pattern(a, j).elements()[0][0] for s, (a, j) in zip(apex, pairs)}
        return cls(m.left.objects, apex, m.right.objects, f, g)

    def transpose_direct(self) -> 'Span':
        return Span(self.right, self.apex, self.left, self.g, self.f)

    def compose(self, other: 'Span') -> 'Span':
        """Pullback over the shared middle set."""
        apex = [(s, t) for s in self.apex for t in other.apex if self.g[s] == other.f[t]]
        return Span(self.left, apex, other.right, {p: self.f[p[0]] for p in apex}, {p: other.g[p[1]] for p in apex})

    def leg_counts(self) -> collections.Counter:
        return collections.Counter((self.f[s], self.g[s]) for s in self.apex)

    def is_isomorphic(self, other: 'Span') -> bool:
        return (self.left, self.right) == (other.left, other.right) and self.leg_counts() == other.leg_counts()

    def __eq__(self, other) -> bool:
        """Equality of legs; the stored order of the apex is irrelevant."""
        return isinstance(other, Span) and (self.left, self.right, set(self.apex), self.f, self.g) == (
                other.left, other.right, set(other.apex), other.f, other.g)

    def __repr__(self):
        return f"Span({len(self.left)} <- {len(self.apex)} -> {len(self.right)})"


def span_schema() -> FinCategory:
    """left <-f- apex -g-> right"""
    return FinCategory.free_on_graph(['left', 'apex', 'right'], [('f', 'apex', 'left'), ('g', 'apex', 'right')])


def span_as_instance(span: Span) -> Copresheaf:
    return Copresheaf(span_schema(), {'left': span.left, 'apex': span.apex, 'right': span.right},
                      {'f': span.f, 'g': span.g})


def span_from_instance(x: Copresheaf) -> Span:
    if x.base != span_schema():
        raise WrongShape("spans are instances on left <- apex -> right", "span_from_instance", x.base)
    apex = x.rows['apex']
    return Span(x.rows['left'], apex, x.rows['right'], {s: x.act('f', s) for s in apex},
                {s: x.act('g', s) for s in apex})


def conjunctive(left: Iterable[Label], right: Iterable[Label], rows: Dict[Label, Dict[Label, Iterable[Label]]]
                ) -> Bicomodule:
    """Canonical conjunctive bicomodule: one position a over every a, pattern rows[a] (a D-set)."""
    c, d = FinCategory.discrete(left), FinCategory.discrete(right)
    patterns = {(a, a): discrete_set(d, rows.get(a, {})) for a in c.objects}
    return Bicomodule(c, d, {a: [a] for a in c.objects}, patterns, check=False)


def _is_canonical_conjunctive(m: Bicomodule) -> bool:
    return all(m.positions[a].labels == (a,) for a in m.left.objects)


def _linear_to_conjunctive(m: Bicomodule) -> Bicomodule:
    rows = {}
    for a in m.left.objects:
        owners = [(m.pattern(a, j).elements()[0][0], j) for j in m.positions[a]]
        rows[a] = collections.defaultdict(list)
        for (b, _), label in zip(owners, untag(owners)):
            rows[a][b].append(label)
    return conjunctive(m.left.objects, m.right.objects, rows)


def _conjunctive_to_linear(m: Bicomodule) -> Bicomodule:
    d = m.right
    positions, patterns = {}, {}
    for a in m.left.objects:
        (j,) = m.positions[a].labels
        elements = m.pattern(a, j).elements()
        positions[a] = unique_or_tagged(elements)
        for label, (b, _) in zip(positions[a], elements):
            patterns[(a, label)] = discrete_set(d, {b: [label]})
    return Bicomodule(m.left, d, positions, patterns, check=False)


def dual(m: Bicomodule) -> Bicomodule:
    """
    Swaps coefficients and exponents fiberwise: sum_a M_a y <-> sum_a y^{M_a}. A bicomodule that is both linear and
    conjunctive is read as conjunctive when it is in canonical form and as linear otherwise, so that dual is an
    involution on both shapes.
    """
    _require_discrete(m, "dual")
    if m.is_conjunctive() and _is_canonical_conjunctive(m):
        return _conjunctive_to_linear(m)
    if m.is_linear():
        return _linear_to_conjunctive(m)
    if m.is_conjunctive():
        return _conjunctive_to_linear(m)
    raise NotDualizable("only linear and conjunctive bicomodules have duals", "dual", m)


class DualizingObject:
    """⊥ = C×D·y, the terminal span."""

    def __init__(self, left: Iterable[Label], right: Iterable[Label]):
        self.left = tuple(left)
        self.right = tuple(right)

    def span(self) -> Span:
        apex = [(a, b) for a in self.left for b in self.right]
        return Span(self.left, apex, self.right, {p: p[0] for p in apex}, {p: p[1] for p in apex})

    def bicomodule(self) -> Bicomodule:
        return self.span().to_bicomodule()

    def raw_dual(self, ctx: Context, m: Bicomodule) -> Bicomodule:
        """The local hom [m, ⊥], for inspection; isomorphic to dual(m) on linear and conjunctive m."""
        return local_hom_discrete(ctx, m, self.bicomodule())


def right_adjoint(m: Bicomodule) -> Bicomodule:
    """Linear Cy -> Dy to conjunctive Dy -> Cy; the exponent over b is the fiber of the right leg."""
    _require_discrete(m, "right_adjoint")
    if not m.is_linear():
        raise WrongShape("right adjoints are only formed for linear bicomodules", "right_adjoint", m)
    span = Span.from_bicomodule(m)
    rows = {b: collections.defaultdict(list) for b in span.right}
    for s in span.apex:
        rows[span.g[s]][span.f[s]].append(s)
    return conjunctive(span.right, span.left, rows)


def left_adjoint(m: Bicomodule) -> Bicomodule:
    """Conjunctive Cy -> Dy to linear Dy -> Cy collecting the triples (b, a, x) with x in m[a] over b."""
    _require_discrete(m, "left_adjoint")
    if not m.is_conjunctive():
        raise WrongShape("left adjoints are only formed for conjunctive bicomodules", "left_adjoint", m)
    c, d = m.left, m.right
    triples = [(b, a, x) for a in c.objects for j in m.positions[a]
               for b, x in m.pattern(a, j).elements()]
    labels = unique_or_tagged([(a, x) for _, a, x in triples])
    positions = {b: [] for b in d.objects}
    patterns = {}
    for (b, a, _), label in zip(triples, labels):
        positions[b].append(label)
        patterns[(b, label)] = discrete_set(c, {a: [label]})
    return Bicomodule(d, c, positions, patterns, check=False)


def transpose(span: Span) -> Tuple[Span, Span]:
    """The transpose computed as dual(right_adjoint(s)) and as left_adjoint(dual(s))."""
    m = span.to_bicomodule()
    return Span.from_bicomodule(dual(right_adjoint(m))), Span.from_bicomodule(left_adjoint(dual(m)))


class BridgeDiagram:
    """D <-f- E -g-> B -h-> C"""

    def __init__(self, d: Iterable[Label], e: Iterable[Label], b: Iterable[Label], c: Iterable[Label],
                 f: Dict[Label, Label], g: Dict[Label, Label], h: Dict[Label, Label]):
        self.d, self.e, self.b, self.c = tuple(d), tuple(e), tuple(b), tuple(c)
        self.f, self.g, self.h = dict(f), dict(g), dict(h)
        for name, table, domain, codomain in (("f", self.f, self.e, self.d), ("g", self.g, self.e, self.b),
                                              ("h", self.h, self.b, self.c)):
            for x in domain:
                if table.get(x) not in codomain:
                    raise LawViolation("bridge map is not total", f"maps['{name}']['{render_label(x)}']", x)

    def to_bicomodule(self) -> Bicomodule:
        c, d = FinCategory.discrete(self.c), FinCategory.discrete(self.d)
        positions = fibers(self.b, self.h.__getitem__, self.c)
        exponents = fibers(self.e, self.g.__getitem__, self.b)
        patterns = {}
        for b in self.b:
            rows = collections.defaultdict(list)
            for e in exponents[b]:
                rows[self.f[e]].append(e)
            patterns[(self.h[b], b)] = discrete_set(d, rows)
        return Bicomodule(c, d, positions, patterns, check=False)

    @classmethod
    def from_bicomodule(cls, m: Bicomodule) -> 'BridgeDiagram':
        _require_discrete(m, "BridgeDiagram.from_bicomodule")
        pairs = [(a, j) for a in m.left.objects for j in m.positions[a]]
        b_labels = unique_or_tagged(pairs)
        e_pairs = [((a, j), x) for a, j in pairs for x in m.pattern(a, j).elements()]
        e_labels = unique_or_tagged([(owner, x[1]) for owner, x in e_pairs])
        b_of = dict(zip(pairs, b_labels))
        f = {label: x[0] for label, (_, x) in zip(e_labels, e_pairs)}
        g = {label: b_of[owner] for label, (owner, _) in zip(e_labels, e_pairs)}
        h = {label: a for label, (a, _) in zip(b_labels, pairs)}
        return cls(m.right.objects, e_labels, b_labels, m.left.objects, f, g, h)

    def prafunctor(self, ctx: Context, x: Copresheaf) -> Copresheaf:
        """Σ_h Π_g Δ_f X for a D-set X."""
        d, e, b, c = (FinCategory.discrete(labels) for labels in (self.d, self.e, self.b, self.c))
        along_f = CatFunctor.from_object_map(e, d, self.f)
        along_g = CatFunctor.from_object_map(e, b, self.g)
        along_h = CatFunctor.from_object_map(b, c, self.h)
        return migrate_sigma(along_h, migrate_pi(ctx, along_g, migrate_delta(along_f, x)))


class SpanMonad:
    """A span C <- M -> C with unit and multiplication; multiplication[(s, t)] is defined when g(s) = f(t)."""

    def __init__(self, span: Span, unit: Dict[Label, Label], multiplication: Dict[Tuple[Label, Label], Label]):
        self.span = span
        self.unit = dict(unit)
        self.multiplication = dict(multiplication)

    def pairs(self) -> Iterable[Tuple[Label, Label]]:
        s = self.span
        return ((x, y) for x in s.apex for y in s.apex if s.g[x] == s.f[y])

    def check(self):
        s, mult = self.span, self.multiplication
        for a, u in self.unit.items():
            if s.f[u] != a or s.g[u] != a:
                raise LawViolation("unit does not lie over the diagonal", f"unit['{render_label(a)}']", u)
        for x, y in self.pairs():
            z = mult.get((x, y))
            if z is None or s.f[z] != s.f[x] or s.g[z] != s.g[y]:
                raise LawViolation("multiplication is not a map of spans", "multiplication", (x, y))
        for x in s.apex:
            if mult[(self.unit[s.f[x]], x)] != x or mult[(x, self.unit[s.g[x]])] != x:
                raise LawViolation("unit law fails", "multiplication", x)
        for x, y in self.pairs():
            for z in s.apex:
                if s.g[y] == s.f[z] and mult[(mult[(x, y)], z)] != mult[(x, mult[(y, z)])]:
                    raise LawViolation("associativity fails", "multiplication", (x, y, z))

    def to_category(self) -> FinCategory:
        s = self.span
        return FinCategory(s.left, [(x, s.g[x], s.f[x]) for x in s.apex], self.unit,
                           {(y, x): z for (x, y), z in self.multiplication.items()}, check=False)


def category_as_span_monad(c: FinCategory) -> SpanMonad:
    """C <-cod- Mor -dom-> C; a morphism s is read as going from dom s to cod s."""
    span = Span(c.objects, c.morphisms, c.objects, c.cod, c.dom)
    multiplication = {(s, t): c.composition[(t, s)] for s in c.morphisms for t in c.morphisms if c.dom[s] == c.cod[t]}
    return SpanMonad(span, c.identities, multiplication)


def opposite_via_dual(c: FinCategory, check_laws: bool = True) -> FinCategory:
    """The comonoid carried by dual(c†) is the opposite category."""
    monad = category_as_span_monad(c)
    if check_laws:
        monad.check()
    dm = dual(monad.span.to_bicomodule())
    directions = {a: dm.pattern(a, a).elements() for a in c.objects}
    carrier = Poly((a, [x for _, x in directions[a]]) for a in c.objects)
    comult = PolyMap(carrier, Composite(carrier, carrier), lambda a: (a, tuple(b for b, _ in directions[a])),
                     lambda a, pair: monad.multiplication[pair])
    counit = PolyMap(carrier, Poly.y(), lambda a: UNIT, lambda a, _: monad.unit[a])
    return comonoid_to_category(Comonoid(carrier, counit, comult), check_laws=check_laws)


def universe_polynomial(truncation: int) -> Poly:
    """u_K = sum_{N <= K} y^{ord N}"""
    return Poly((str(size), ordinal(size)) for size in range(truncation + 1))


def fin_compose(first: Label, second: Label) -> Label:
    """(M, N, v) ; (N, P, w) for functions given as value tuples on ord M and ord N."""
    m, _, values = first
    _, p, other = second
    return m, p, tuple(other[int(x) - 1] for x in values)


@dataclasses.dataclass
class FinSkeleton:
    truncation: int
    category: FinCategory
    monad: SpanMonad
    internal: FinCategory  # full internal subcategory on u_K, the opposite of category

    def check(self):
        """
        Every hom(M, N) holds the N^M functions ord M -> ord N, identities are identity functions and every composable
        pair composes to the composite function, so the category laws hold exactly.
        """
        c = self.category
        for m in c.objects:
            if c.identities[m] != (m, m, ordinal(int(m))):
                raise LawViolation("identity is not the identity function", f"identities['{m}']", c.identities[m])
            for n in c.objects:
                hom = c.hom(m, n)
                if len(hom) != int(n) ** int(m):
                    raise LawViolation("hom-set is not the set of functions", f"hom['{m}']['{n}']", len(hom))
                for f in hom:
                    if f[:2] != (m, n) or len(f[2]) != int(m) or not set(f[2]) <= set(ordinal(int(n))):
                        raise LawViolation("morphism is not a function between ordinals", f"hom['{m}']['{n}']", f)
        for f, g in c.composable_pairs():
            h = c.composition.get((f, g))
            if h != fin_compose(f, g):
                raise LawViolation("composition is not composition of functions",
                                   f"composition['{render_label(f)};{render_label(g)}']",
                                   (f, g, h))


def skeleton_fin(ctx: Context, truncation: int, check_laws: bool = False) -> FinSkeleton:
    """
    Objects '0'..'K', morphisms M -> N named (M, N, values) for the function ord M -> ord N sending 'k' to
    values[k-1]. Built as the opposite of the full internal subcategory on u_K, read through the dual of its span.
    The result is always checked against composition of functions. check_laws also runs the comonoid law check
    on [u_K/u_K] and the span monad laws, which is cubic in the number of morphisms.
    """
    if truncation < 0:
        raise ValueError(f"Truncation can't be negative. {truncation=}")
    if truncation > ctx.universe.truncation:
        raise RowTooLarge(f"truncation {truncation} exceeds the configured universe", "universe.truncation",
                          truncation)
    internal = full_internal_subcategory(universe_polynomial(truncation), check_laws=check_laws)
    skeleton = opposite_via_dual(internal, check_laws=check_laws)
    names = {f: (f[1], f[0], f[2]) for f in skeleton.morphisms}
    category = skeleton.relabel(names)
    result = FinSkeleton(truncation, category, category_as_span_monad(category), internal)
    result.check()
    return result


@dataclasses.dataclass
class Classification:
    """⌜X⌝: object sizes and, for every morphism, the function between ordinals conjugated from X_f."""
    data: Copresheaf
    objects: Dict[Label, str]
    table: Dict[Label, Tuple[str, str, Tuple[str, ...]]]

    def check(self):
        c = self.data.base
        for a in c.objects:
            name = self.table[c.identities[a]]
            if name[2] != ordinal(int(self.objects[a])):
                raise LawViolation("identity is not sent to an identity", f"table['{render_label(a)}']", name)
        for (f, g), h in c.composition.items():
            if fin_compose(self.table[f], self.table[g]) != self.table[h]:
                raise LawViolation("classifying table is not functorial", f"table['{render_label(h)}']", (f, g))

    def reconstruct(self) -> Copresheaf:
        """Pullback of the generic family: rows ord ⌜X⌝(a), actions the tabulated functions."""
        c = self.data.base
        rows = {a: ordinal(int(size)) for a, size in self.objects.items()}
        action = {f: dict(zip(rows[c.dom[f]], values)) for f, (_, _, values) in self.table.items()}
        return Copresheaf(c, rows, action, check=False)

    def functor(self, skeleton: FinSkeleton) -> CatFunctor:
        return CatFunctor(self.data.base, skeleton.category, self.objects, self.table)


def classify_finitary(ctx: Context, x: Copresheaf, truncation: Optional[int] = None) -> Classification:
    truncation = ctx.universe.truncation if truncation is None else truncation
    c = x.base
    for a in c.objects:
        if len(x.rows[a]) > truncation:
            raise RowTooLarge(f"{len(x.rows[a])} rows exceed the truncation {truncation}",
                              f"tables['{render_label(a)}']", a)
    objects = {a: str(len(x.rows[a])) for a in c.objects}
    table = {}
    for f in c.morphisms:
        source, target = x.rows[c.dom[f]], x.rows[c.cod[f]]
        values = tuple(str(target.index(x.act(f, r)) + 1) for r in source)
        table[f] = (objects[c.dom[f]], objects[c.cod[f]], values)
    return Classification(x, objects, table)


@dataclasses.dataclass
class LeftClosure:
    span: Span
    evaluation: Dict[Tuple[Label, Label], Label]  # (w, x) in W ×_B X -> Y

    def factorizations(self, competitor: Span, cell: Dict[Tuple[Label, Label], Label]) -> List[Dict]:
        """All maps of spans u: competitor -> closure with evaluation ∘ (u ◁ X) = cell."""
        w = self.span
        choices = [[v for v in w.apex if (w.f[v], w.g[v]) == (competitor.f[s], competitor.g[s])]
                   for s in competitor.apex]
        out = []
        for choice in itertools.product(*choices):
            u = dict(zip(competitor.apex, choice))
            if all(self.evaluation[(u[s], t)] == y for (s, t), y in cell.items()):
                out.append(u)
        return out


def span_left_closure(ctx: Context, x: Span, y: Span) -> LeftClosure:
    """
    For X: B -> C and Y: A -> C the terminal W: A -> B with a 2-cell W ◁_B X => Y, computed as
    dual([dual Y / dual X]).
    """
    if x.right != y.right:
        raise WrongShape("both spans need the same right set", "span_left_closure", (x.right, y.right))
    dx, dy = dual(x.to_bicomodule()), dual(y.to_bicomodule())
    coclosure = bicomodule_coclosure(ctx, dy, dx)
    span = Span.from_bicomodule(dual(coclosure))
    rows = [row for a in coclosure.left.objects for row in coclosure.pattern(a, a).elements()]
    evaluation = {}
    for w, (b, (_, key)) in zip(span.apex, rows):
        values = dict(zip(dx.pattern(b, b).elements(), key))
        for t in x.apex:
            if x.f[t] == b:
                evaluation[(w, t)] = values[(x.g[t], t)]
    return LeftClosure(span, evaluation)
