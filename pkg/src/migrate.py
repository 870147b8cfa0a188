"""
Data migration along a functor F: c -> d. Δ_F precomposes, Π_F is its right adjoint and Σ_F its left adjoint,
the latter only along etale F where it is a fiberwise coproduct.
"""
from src.backend import render_label, unique_or_tagged
from src.bicomodule import pulled_representable
from src.category import CatFunctor
from src.context import Context
from src.copresheaf import Copresheaf, Transformation, copresheaf_homs
from src.errors import NotEtale


def migrate_delta(functor: CatFunctor, x: Copresheaf) -> Copresheaf:
    c = functor.source
    rows = {a: x.rows[functor.on_objects[a]] for a in c.objects}
    action = {f: x.action[functor.on_morphisms[f]] for f in c.morphisms}
    return Copresheaf(c, rows, action, check=False)


def migrate_pi(ctx: Context, functor: CatFunctor, y: Copresheaf) -> Copresheaf:
    """
    (Π_F Y)(b) = c-Set(Δ_F d(b, -), Y): a row is a family of Y-rows indexed by the morphisms b -> F a, compatible
    with every morphism of c. Rows are labeled by their values in element order.
    """
    c, d = functor.source, functor.target
    kernels = {b: pulled_representable(functor, b) for b in d.objects}
    sections = {b: copresheaf_homs(ctx, kernels[b], y) for b in d.objects}
    rows = {b: [s.key() for s in sections[b]] for b in d.objects}
    action = {}
    for h in d.morphisms:
        b, b_ = d.dom[h], d.cod[h]
        restriction = Transformation(kernels[b_], kernels[b],
                                     {a: {g: d.composition[(h, g)] for g in kernels[b_].rows[a]} for a in c.objects})
        action[h] = {s.key(): restriction.compose(s).key() for s in sections[b]}
    return Copresheaf(d, rows, action, check=False)


def migrate_sigma(functor: CatFunctor, y: Copresheaf) -> Copresheaf:
    """Σ_F along etale F: rows at b are the rows of Y over the fiber of b; g lifts uniquely to C[a]."""
    witness = functor.etale_witness()
    if witness is not None:
        raise NotEtale("Σ is only computed along etale functors", f"objects['{render_label(witness)}']", witness)
    cofunctor = functor.to_cofunctor()
    c, d = functor.source, functor.target
    rows, names = {}, {}
    for b in d.objects:
        pairs = [(a, r) for a in c.objects if functor.on_objects[a] == b for r in y.rows[a]]
        rows[b] = unique_or_tagged(pairs)
        names.update(dict(zip(pairs, rows[b])))
    action = {}
    for g in d.morphisms:
        action[g] = {}
        for a in c.objects:
            if functor.on_objects[a] != d.dom[g]:
                continue
            f = cofunctor.back[a][g]
            for r in y.rows[a]:
                action[g][names[(a, r)]] = names[(c.cod[f], y.act(f, r))]
    return Copresheaf(d, rows, action, check=False)
