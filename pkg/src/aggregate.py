"""
Aggregation over database instances whose attributes take values in commutative monoids.

For a morphism f: a -> a' every row d of X_{a'} receives the fold of the attribute values over its fiber
X_f^{-1}(d). These folds cohere with identities and composition (the Π_C M comonad laws). They are not natural in
the instance: a map of instances that merges rows changes fibers, so no map of aggregates is offered for it.
"""
import dataclasses
import itertools
import random
from typing import Any, Dict, Iterable, List, Optional, Tuple

from src.backend import Label, render_label
from src.category import FinCategory
from src.context import Context
from src.copresheaf import Copresheaf
from src.errors import LawViolation, RowTooLarge, TypeMismatch
from src.monoid import CommMonoid, Multiset, MultisetOver, check_value
from src.span import FinSkeleton, Span, classify_finitary, fin_compose, skeleton_fin


class Schema:
    def __init__(self, category: FinCategory, monoids: Dict[Label, CommMonoid]):
        self.category = category
        self.monoids = dict(monoids)
        for a in category.objects:
            if a not in self.monoids:
                raise LawViolation("object without a monoid", f"monoids['{render_label(a)}']", a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Schema) and self.category == other.category and self.monoids == other.monoids


class Instance:
    def __init__(self, schema: Schema, data: Copresheaf, attributes: Dict[Label, Dict[Label, Any]]):
        if data.base != schema.category:
            raise TypeMismatch("instance lives over a different category", "tables", None)
        self.schema = schema
        self.data = data
        self.attributes = {}
        for a in schema.category.objects:
            values = attributes.get(a, {})
            monoid = schema.monoids[a]
            self.attributes[a] = {}
            for row in data.rows[a]:
                location = f"attributes['{render_label(a)}']['{render_label(row)}']"
                if row not in values:
                    raise TypeMismatch("row without an attribute value", location, row)
                self.attributes[a][row] = check_value(monoid, values[row], location)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Instance) and self.schema == other.schema and self.data == other.data
                and self.attributes == other.attributes)


def _fiber_fold(x: Copresheaf, f: Label, monoid: CommMonoid, values: Dict[Label, Any]) -> Dict[Label, Any]:
    c = x.base
    fibers = {d: [] for d in x.rows[c.cod[f]]}
    for e in x.rows[c.dom[f]]:
        fibers[x.act(f, e)].append(values[e])
    return {d: monoid.fold(fiber) for d, fiber in fibers.items()}


def aggregate_along(inst: Instance, f: Label) -> Dict[Label, Any]:
    """(⊛α)_f: X_{a'} -> M_a"""
    c = inst.schema.category
    if f not in c.morphisms:
        raise TypeMismatch("not a morphism of the schema", f"morphism '{render_label(f)}'", f)
    a = c.dom[f]
    return _fiber_fold(inst.data, f, inst.schema.monoids[a], inst.attributes[a])


@dataclasses.dataclass
class PiComonadValue:
    """An element of (Π_C M)_j: one M_i value for every morphism f: i -> j, identity included."""
    obj: Label
    components: Dict[Label, Any]

    def counit(self, c: FinCategory) -> Any:
        return self.components[c.identities[self.obj]]

    def comultiply(self, c: FinCategory) -> Dict[Label, 'PiComonadValue']:
        """δ: for g: k -> j the family f ↦ v(f;g) over f: i -> k."""
        return {g: PiComonadValue(c.dom[g], {f: self.components[c.composition[(f, g)]] for f in c.incoming(c.dom[g])})
                for g in c.incoming(self.obj)}


def aggregate_all(inst: Instance) -> Dict[Tuple[Label, Label], PiComonadValue]:
    c = inst.schema.category
    along = {f: aggregate_along(inst, f) for f in c.morphisms}
    return {(j, x): PiComonadValue(j, {f: along[f][x] for f in c.incoming(j)}) for j, x in inst.data.elements()}


def group_by(x: Copresheaf, f: Label) -> Dict[Label, Multiset]:
    """aggregate_along with the free commutative monoid and singleton attributes."""
    c = x.base
    schema = Schema(c, {a: MultisetOver(x.rows[a]) for a in c.objects})
    attributes = {a: {row: MultisetOver.singleton(row) for row in x.rows[a]} for a in c.objects}
    return aggregate_along(Instance(schema, x, attributes), f)


def epsilon_witness(inst: Instance) -> Optional[Tuple[Label, Label]]:
    """(⊛α) ; ε = α. Returns the first (object, row) where it fails."""
    c = inst.schema.category
    for a in c.objects:
        along = aggregate_along(inst, c.identities[a])
        for row, value in inst.attributes[a].items():
            if along[row] != value:
                return a, row
    return None


def delta_witness(inst: Instance, f: Label, g: Label) -> Optional[Label]:
    """(⊛α)_{f;g}(d) = ⊛{(⊛α)_f(e) : X_g(e) = d}. Returns the first row d where it fails."""
    c = inst.schema.category
    monoid = inst.schema.monoids[c.dom[f]]
    expected = _fiber_fold(inst.data, g, monoid, aggregate_along(inst, f))
    actual = aggregate_along(inst, c.composition[(f, g)])
    for d, value in expected.items():
        if actual[d] != value:
            return d
    return None


@dataclasses.dataclass
class ComonadReport:
    failures: List[Tuple[str, Label]]

    @property
    def passed(self) -> bool:
        return not self.failures


def pi_comonad_check(schema: Schema, seed: int = 0, samples: int = 3) -> ComonadReport:
    """Counitality and coassociativity of (ε, δ) on Π_C M, pointwise on random families of sample values."""
    c = schema.category
    rng = random.Random(seed)
    failures = []
    for j in c.objects:
        for _ in range(samples):
            value = PiComonadValue(j, {f: rng.choice(schema.monoids[c.dom[f]].sample()) for f in c.incoming(j)})
            spread = value.comultiply(c)
            if spread[c.identities[j]] != value:
                failures.append(("ε after δ at the identity", j))
            if any(spread[g].counit(c) != value.components[g] for g in spread):
                failures.append(("Π ε after δ", j))
            for h, inner in spread.items():
                twice = inner.comultiply(c)
                for g, family in twice.items():
                    direct = spread[c.composition[(g, h)]]
                    if family != direct:
                        failures.append(("coassociativity", (j, g, h)))
    return ComonadReport(failures)


def fin_module_action(monoid: CommMonoid, morphism: Tuple[str, str, Tuple[str, ...]], values: Tuple) -> Tuple:
    """M^I -> M^J for (I, J, f): component n is the fold over the fiber f^{-1}(n)."""
    _, target, images = morphism
    fibers = {str(n): [] for n in range(1, int(target) + 1)}
    for image, value in zip(images, values):
        fibers[image].append(value)
    return tuple(monoid.fold(fiber) for fiber in fibers.values())


@dataclasses.dataclass
class FinModule:
    monoid: CommMonoid
    skeleton: FinSkeleton

    def act(self, morphism: Tuple[str, str, Tuple[str, ...]], values: Tuple) -> Tuple:
        return fin_module_action(self.monoid, morphism, values)

    def tuples(self, size: str) -> Iterable[Tuple]:
        return itertools.product(self.monoid.sample(), repeat=int(size))

    def check(self):
        """Identities act trivially and composites act as the composite of actions, over all sample tuples."""
        category = self.skeleton.category
        for n in category.objects:
            for values in self.tuples(n):
                if self.act(category.identities[n], values) != values:
                    raise LawViolation("identity does not act trivially", f"module['{n}']", values)
        for f, g in category.composable_pairs():
            h = category.composition[(f, g)]
            if h != fin_compose(f, g):
                raise LawViolation("skeleton composition is not function composition", "skeleton", (f, g))
            for values in self.tuples(f[0]):
                if self.act(g, self.act(f, values)) != self.act(h, values):
                    raise LawViolation("action is not functorial", f"module['{render_label(h)}']", (f, g, values))


def monoid_as_fin_module(ctx: Context, monoid: CommMonoid, truncation: int) -> FinModule:
    if truncation > ctx.universe.truncation:
        raise RowTooLarge(f"truncation {truncation} exceeds the configured universe", "universe.truncation",
                          truncation)
    return FinModule(monoid, skeleton_fin(ctx, truncation))


class TaggedSchema:
    """A category with a span c(1) <- P -> T of monoid tags: every p over a carries the monoid of its tag."""

    def __init__(self, category: FinCategory, tags: Span, monoids: Dict[Label, CommMonoid]):
        if tags.left != tuple(category.objects):
            raise TypeMismatch("tag span has to start at the objects of the category", "tags", tags.left)
        for t in tags.right:
            if t not in monoids:
                raise LawViolation("tag without a monoid", f"monoids['{render_label(t)}']", t)
        self.category = category
        self.tags = tags
        self.monoids = dict(monoids)

    def tags_at(self, a: Label) -> List[Label]:
        return [p for p in self.tags.apex if self.tags.f[p] == a]

    def monoid(self, p: Label) -> CommMonoid:
        return self.monoids[self.tags.g[p]]


def aggregate_generalized(tagged: TaggedSchema, x: Copresheaf, attributes: Dict[Label, Dict[Label, Any]],
                          f: Label) -> Dict[Label, Dict[Label, Any]]:
    """One fiberwise fold per tag occurrence p over the domain of f."""
    c = tagged.category
    out = {}
    for p in tagged.tags_at(c.dom[f]):
        monoid = tagged.monoid(p)
        where = f"attributes['{render_label(p)}']"
        values = {row: check_value(monoid, attributes[p][row], f"{where}['{render_label(row)}']")
                  for row in x.rows[c.dom[f]]}
        out[p] = _fiber_fold(x, f, monoid, values)
    return out


def aggregate_via_classifier(ctx: Context, inst: Instance, f: Label) -> Dict[Label, Any]:
    """aggregate_along routed through ⌜X⌝ and the Fin-module of the domain's monoid."""
    c = inst.schema.category
    a, b = c.dom[f], c.cod[f]
    classification = classify_finitary(ctx, inst.data)
    values = tuple(inst.attributes[a][row] for row in inst.data.rows[a])
    folded = fin_module_action(inst.schema.monoids[a], classification.table[f], values)
    return dict(zip(inst.data.rows[b], folded))
