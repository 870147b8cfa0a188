"""
Comonoids (c, ε, δ) in (Poly, y, ◁) and their correspondence with finite categories.
"""
import dataclasses
from typing import Callable, Dict, List, Optional, Tuple

from src.backend import Label, unique_or_tagged
from src.category import FinCategory
from src.errors import LawViolation
from src.poly import (UNIT, Composite, Poly, PolyMap, associator, coclosure, dirichlet, left_unitor, right_unitor,
                      substitute_maps)


@dataclasses.dataclass
class LawFailure:
    diagram: str
    witness: tuple


@dataclasses.dataclass
class LawReport:
    failures: List[LawFailure]

    @property
    def passed(self) -> bool:
        return not self.failures

    def first(self) -> Optional[LawFailure]:
        return self.failures[0] if self.failures else None


class Comonoid:
    def __init__(self, carrier: Poly, counit: PolyMap, comult: PolyMap):
        self.carrier = carrier
        self.counit = counit
        self.comult = comult


def category_to_comonoid(c: FinCategory) -> Comonoid:
    carrier = Poly((a, c.outfacing(a)) for a in c.objects)
    counit = PolyMap(carrier, Poly.y(), lambda a: UNIT, lambda a, _: c.identities[a])
    comult = PolyMap(carrier, Composite(carrier, carrier), lambda a: (a, tuple(c.cod[f] for f in c.outfacing(a))),
                     lambda a, direction: c.composition[direction])
    return Comonoid(carrier, counit, comult)


def check_comonoid_laws(comonoid: Comonoid) -> LawReport:
    c, eps, delta = comonoid.carrier, comonoid.counit, comonoid.comult
    ident = PolyMap.identity(c)
    failures = []
    for name, fn in (("counit typing", eps.validate), ("comultiplication typing", delta.validate)):
        try:
            fn()
        except LawViolation as exc:
            failures.append(LawFailure(name, (exc.location, exc.witness)))
    if failures:
        return LawReport(failures)
    diagrams = (("left counitality", delta.compose(substitute_maps(eps, ident)).compose(left_unitor(c)), ident),
                ("right counitality", delta.compose(substitute_maps(ident, eps)).compose(right_unitor(c)), ident),
                ("coassociativity", delta.compose(substitute_maps(delta, ident)).compose(associator(c, c, c)),
                 delta.compose(substitute_maps(ident, delta))))
    for name, left, right in diagrams:
        try:
            witness = left.difference(right)
        except (KeyError, IndexError, ValueError) as exc:
            witness = ("ill-typed", repr(exc))
        if witness is not None:
            failures.append(LawFailure(name, witness))
    return LawReport(failures)


def comonoid_to_category(comonoid: Comonoid, name: Optional[Callable[[Label, Label], Label]] = None,
                         check_laws: bool = True) -> FinCategory:
    if check_laws:
        report = check_comonoid_laws(comonoid)
        if not report.passed:
            failure = report.first()
            raise LawViolation(f"{failure.diagram} fails", failure.diagram, failure.witness)
    c = comonoid.carrier
    pairs = [(a, d) for a in c.positions for d in c[a]]
    labels = [name(a, d) for a, d in pairs] if name is not None else unique_or_tagged(pairs)
    names: Dict[Tuple[Label, Label], Label] = dict(zip(pairs, labels))
    morphisms, composition = [], {}
    for a in c.positions:
        _, codomains = comonoid.comult.on_positions(a)
        for d, cod in zip(c[a], codomains):
            morphisms.append((names[(a, d)], a, cod))
            for e in c[cod]:
                composition[(names[(a, d)], names[(cod, e)])] = names[(a, comonoid.comult.on_directions(a, (d, e)))]
    identities = {a: names[(a, comonoid.counit.on_directions(a, UNIT))] for a in c.positions}
    return FinCategory(c.positions, morphisms, identities, composition, check=check_laws)


def full_internal_subcategory(p: Poly, check_laws: bool = True) -> FinCategory:
    """
    Objects p(1), morphisms i -> j the functions p[j] -> p[i], read off the comonoid on [p/p]. A morphism is named
    (i, j, values) where values lists the image of each element of p[j] in order.
    """
    carrier = coclosure(p, p)

    def _compose(i: Label, direction: Tuple[Label, Label]) -> Label:
        (j, first), (k, second) = direction
        lookup = dict(zip(p[j], first))
        return k, tuple(lookup[x] for x in second)

    counit = PolyMap(carrier, Poly.y(), lambda i: UNIT, lambda i, _: (i, p[i].labels))
    comult = PolyMap(carrier, Composite(carrier, carrier), lambda i: (i, tuple(j for j, _ in carrier[i])), _compose)
    return comonoid_to_category(Comonoid(carrier, counit, comult), lambda i, d: (i,) + d, check_laws)


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """c × d on the Dirichlet product of the carriers."""
    carrier = dirichlet(category_to_comonoid(c).carrier, category_to_comonoid(d).carrier)

    def _positions(position: Tuple[Label, Label]) -> Label:
        return position, tuple((c.cod[f], d.cod[g]) for f, g in carrier[position])

    def _compose(position: Tuple[Label, Label], direction) -> Label:
        (f, g), (f_, g_) = direction
        return c.composition[(f, f_)], d.composition[(g, g_)]

    counit = PolyMap(carrier, Poly.y(), lambda pos: UNIT, lambda pos, _: (c.identities[pos[0]], d.identities[pos[1]]))
    comult = PolyMap(carrier, Composite(carrier, carrier), _positions, _compose)
    return comonoid_to_category(Comonoid(carrier, counit, comult))
