"""
Seeded law suites. A case draws its structures from random.Random(f"{seed}-{index}"), so the pair (seed, index)
stored with every failure reproduces it. In self-test mode every expected value is perturbed before comparison,
which has to make every suite fail.
"""
import dataclasses
import itertools
import random
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from src.aggregate import aggregate_all, delta_witness, epsilon_witness, monoid_as_fin_module
from src.backend import ordinal
from src.bicomodule import apply, compose_bicomodules, duc_query, is_isomorphic as bicomodules_isomorphic
from src.category import FinCategory, opposite_direct
from src.comonoid import LawFailure, category_to_comonoid, check_comonoid_laws, comonoid_to_category
from src.context import Context
from src.copresheaf import copresheaf_homs, is_isomorphic
from src.errors import LawViolation, SizeBlowup, UnknownSuite
from src.migrate import migrate_delta, migrate_pi, migrate_sigma
from src.monoid import IntSum
from src.poly import (Poly, coclosure, dirichlet, enumerate_maps, evaluate, hom_count, internal_hom, mul,
                      substitute, triangle_identities)
from src.span import Span, classify_finitary, dual, skeleton_fin, transpose
from src.utils.generate import (cities_category, cities_patterns, random_bicomodule, random_category, random_cities,
                                random_conjunctive, random_copresheaf, random_etale, random_functor, random_instance,
                                random_poly, random_schema, random_span, random_span_between, random_table_monoid)
from src.utils.log import SuiteLog

BRUTE_FORCE_LIMIT = 5000


class Case:
    def __init__(self, ctx: Context, seed: int, index: int, self_test: bool):
        self.ctx = ctx
        self.seed = seed
        self.index = index
        self.self_test = self_test
        self.rng = random.Random(f"{seed}-{index}")
        self.failures: List[LawFailure] = []

    def expect(self, name: str, expected: Any, actual: Any):
        if self.self_test:
            expected = _mutate(expected)
        if expected != actual:
            self.failures.append(LawFailure(name, (self.seed, self.index, repr(expected)[:200], repr(actual)[:200])))


def _mutate(value: Any) -> Any:
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    return "mutated", value


@dataclasses.dataclass
class LawSuiteReport:
    name: str
    seed: int
    cases: int
    skipped: int
    failures: List[LawFailure]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def serialize(self) -> Dict[str, Any]:
        return {"suite": self.name, "seed": self.seed, "cases": self.cases, "skipped": self.skipped,
                "elapsed": round(self.elapsed, 3), "passed": self.passed,
                "failures": [{"diagram": f.diagram, "witness": list(f.witness)} for f in self.failures]}


def _evaluation_size(p: Poly, size: int) -> int:
    return sum(size ** len(p[i]) for i in p.positions)


def poly_monoidal(case: Case):
    p, q = random_poly(case.rng), random_poly(case.rng)
    count = hom_count(p, q)
    if count <= BRUTE_FORCE_LIMIT:
        case.expect("hom_count against enumeration", count, len(enumerate_maps(case.ctx, p, q)))
    composite = substitute(p, q)
    for size in range(4):
        if _evaluation_size(composite, size) <= BRUTE_FORCE_LIMIT:
            labels = ordinal(size)
            case.expect(f"|(p◁q)(X)| = |p(q(X))| at |X|={size}", len(evaluate(composite, labels)),
                        len(evaluate(p, evaluate(q, labels))))
    y = Poly.y()
    case.expect("× is commutative", mul(p, q).normal_form(), mul(q, p).normal_form())
    case.expect("⊗ is commutative", dirichlet(p, q).normal_form(), dirichlet(q, p).normal_form())
    case.expect("y is a unit for ◁", p.normal_form(), substitute(p, y).normal_form())
    case.expect("y is a unit for ⊗", p.normal_form(), dirichlet(y, p).normal_form())


def poly_adjunction(case: Case):
    p, q, r, p_ = (random_poly(case.rng, 3, 2) for _ in range(4))
    case.expect("closure", hom_count(dirichlet(p, q), r), hom_count(p, internal_hom(case.ctx, q, r)))
    case.expect("coclosure", hom_count(p, substitute(p_, q)), hom_count(coclosure(p, q), p_))
    labels = [f"x{idx}" for idx in range(case.rng.randint(0, 3))]
    case.expect("Ay ⊣ y^A triangle identities", [None, None], triangle_identities(labels))


MUTATION_ATTEMPTS = 5


def mutate_composition_entry(rng: random.Random, c: FinCategory, identities: bool = False
                             ) -> Optional[FinCategory]:
    """
    c with one composition entry (f, g) replaced by another morphism out of dom f, kept only when the result is no
    longer a category. With identities the entry is always (id, f).
    """
    pairs = [(c.identities[c.dom[f]], f) for f in c.morphisms] if identities else list(c.composable_pairs())
    for _ in range(MUTATION_ATTEMPTS):
        f, g = rng.choice(pairs)
        others = [h for h in c.outfacing(c.dom[f]) if h != c.composition[(f, g)]]
        if not others:
            continue
        composition = dict(c.composition)
        composition[(f, g)] = rng.choice(others)
        mutated = FinCategory(c.objects, [(h, c.dom[h], c.cod[h]) for h in c.morphisms], c.identities, composition,
                              check=False)
        try:
            mutated.check()
        except LawViolation:
            return mutated
    return None


def comonoid_roundtrip(case: Case):
    c = random_category(case.rng, 6)
    case.expect("category -> comonoid -> category", c, comonoid_to_category(category_to_comonoid(c)))
    for identities in (True, False):
        mutated = mutate_composition_entry(case.rng, c, identities)
        if mutated is not None:
            case.expect("mutated composition table is caught", False,
                        check_comonoid_laws(category_to_comonoid(mutated)).passed)


def garner(case: Case):
    c, d, e = (random_category(case.rng, 3) for _ in range(3))
    m, n = random_bicomodule(case.rng, c, d), random_bicomodule(case.rng, d, e)
    x = random_copresheaf(case.rng, e, 4)
    ctx = case.ctx
    composite = apply(ctx, compose_bicomodules(ctx, m, n), x)
    iterated = apply(ctx, m, apply(ctx, n, x))
    case.expect("apply(m ◁ n, X) ≅ apply(m, apply(n, X))", True, is_isomorphic(ctx, composite, iterated))


def query_oracle(case: Case):
    d = cities_category()
    x = random_cities(case.rng, d)
    rows = apply(case.ctx, duc_query(d, cities_patterns(d)), x).rows['*']
    state = {c: x.act('city_state', c) for c in x.rows['city']}
    expected = [('1', (c1, c2, state[c1])) for c1 in x.rows['city'] for c2 in x.rows['city'] if state[c1] == state[c2]]
    expected += [('2', (c, state[c])) for c in x.rows['city']]
    expected += [('3', (s,)) for s in x.rows['state']]
    case.expect("backtracking = nested loops", set(expected), set(rows))


def migration(case: Case):
    ctx, rng = case.ctx, case.rng
    c, d = random_category(rng, 3), random_category(rng, 3)
    functor = random_functor(rng, c, d)
    x, y = random_copresheaf(rng, d, 3), random_copresheaf(rng, c, 3)
    case.expect("Δ ⊣ Π", len(copresheaf_homs(ctx, migrate_delta(functor, x), y)),
                len(copresheaf_homs(ctx, x, migrate_pi(ctx, functor, y))))
    etale = random_etale(rng, d)
    z = random_copresheaf(rng, etale.source, 3)
    case.expect("Σ ⊣ Δ", len(copresheaf_homs(ctx, migrate_sigma(etale, z), x)),
                len(copresheaf_homs(ctx, z, migrate_delta(etale, x))))


def duality(case: Case):
    ctx, rng = case.ctx, case.rng
    s = random_span(rng)
    m = s.to_bicomodule()
    case.expect("dual ∘ dual on spans", s, Span.from_bicomodule(dual(dual(m))))
    k = random_conjunctive(rng)
    case.expect("dual ∘ dual on conjunctives", k, dual(dual(k)))
    swapped = s.transpose_direct()
    first, second = transpose(s)
    case.expect("transpose via right adjoint", swapped, first)
    case.expect("transpose via left adjoint", swapped, second)
    t = random_span_between(rng, list(s.right), ['c0', 'c1'])
    composite = dual(s.compose(t).to_bicomodule())
    case.expect("dual(s ; t) ≅ dual(s) ◁ dual(t)", True,
                bicomodules_isomorphic(ctx, composite, compose_bicomodules(ctx, dual(m), dual(t.to_bicomodule()))))


def fin_skeleton(case: Case):
    ctx = case.ctx
    truncation = min(4, ctx.universe.truncation)
    try:
        fin = skeleton_fin(ctx, truncation)
    except LawViolation as exc:
        case.expect("skeleton of Fin", None, exc.location)
        return
    skeleton = fin.category
    for m, n in itertools.product(range(truncation + 1), repeat=2):
        case.expect(f"|hom({m},{n})|", n ** m, len(skeleton.hom(str(m), str(n))))
    flipped = opposite_direct(skeleton).relabel({f: (f[1], f[0], f[2]) for f in skeleton.morphisms})
    case.expect("opposite of the full internal subcategory on u", fin.internal, flipped)


def finitary(case: Case):
    ctx = case.ctx
    c = random_category(case.rng, 4)
    x = random_copresheaf(case.rng, c, 5)
    classification = classify_finitary(ctx, x)
    try:
        classification.check()
        witness = None
    except LawViolation as exc:
        witness = exc.location
    case.expect("classifying table is functorial", None, witness)
    case.expect("pullback of the generic family recovers X", True,
                is_isomorphic(ctx, classification.reconstruct(), x))


def aggregation_coherence(case: Case):
    schema = random_schema(case.rng, 4)
    inst = random_instance(case.rng, schema)
    c = schema.category
    case.expect("ε law", None, epsilon_witness(inst))
    f, g = case.rng.choice(list(c.composable_pairs()))
    case.expect(f"δ law along {f};{g}", None, delta_witness(inst, f, g))
    values = aggregate_all(inst)
    case.expect("aggregate_all at identities", True,
                all(value.counit(c) == inst.attributes[j][x] for (j, x), value in values.items()))


def fin_module(case: Case):
    monoid = IntSum() if case.index == 0 else random_table_monoid(case.rng)
    module = monoid_as_fin_module(case.ctx, monoid, min(3, case.ctx.universe.truncation))
    try:
        module.check()
        witness = None
    except LawViolation as exc:
        witness = exc.location
    case.expect(f"{monoid.kind.value} module is functorial", None, witness)


SUITES: Dict[str, Tuple[Callable[[Case], None], int]] = {
    "poly-monoidal": (poly_monoidal, 500),
    "poly-adjunction": (poly_adjunction, 200),
    "comonoid-roundtrip": (comonoid_roundtrip, 100),
    "garner": (garner, 50),
    "query-oracle": (query_oracle, 20),
    "migration": (migration, 100),
    "duality": (duality, 200),
    "fin-skeleton": (fin_skeleton, 1),
    "finitary": (finitary, 100),
    "aggregation-coherence": (aggregation_coherence, 200),
    "fin-module": (fin_module, 2),
}
SUITE_ALIASES = {"aggregation": "aggregation-coherence", "adjunction": "poly-adjunction",
                 "comonoid": "comonoid-roundtrip"}


def suite_names(name: str) -> List[str]:
    if name == "all":
        return list(SUITES)
    name = SUITE_ALIASES.get(name, name)
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite, choose from {', '.join(SUITES)} or all", "suite", name)
    return [name]


def run_suite(ctx: Context, name: str, seed: Optional[int] = None, cases: Optional[int] = None,
              self_test: Optional[bool] = None, suite_log: Optional[SuiteLog] = None) -> LawSuiteReport:
    (name,) = suite_names(name)
    fn, default_cases = SUITES[name]
    seed = ctx.suite.seed if seed is None else seed
    cases = (default_cases if ctx.suite.cases is None else ctx.suite.cases) if cases is None else cases
    self_test = ctx.suite.self_test if self_test is None else self_test
    start_time = time.time()
    failures, skipped = [], 0
    for index in tqdm(range(cases), desc=name, disable=not ctx.log.verbose):
        case = Case(ctx, seed, index, self_test)
        try:
            fn(case)
        except SizeBlowup:
            skipped += 1
            continue
        failures.extend(case.failures)
    report = LawSuiteReport(name, seed, cases, skipped, failures, time.time() - start_time)
    if suite_log is not None:
        suite_log(name, cases, len(failures), report.elapsed)
    return report


def run_suites(ctx: Context, name: str, **kwargs) -> List[LawSuiteReport]:
    return [run_suite(ctx, suite, **kwargs) for suite in suite_names(name)]
