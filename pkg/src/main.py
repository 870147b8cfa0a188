import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import yaml
from smart_open import open as smart_open

from src.aggregate import aggregate_along, aggregate_via_classifier, delta_witness, epsilon_witness, group_by
from src.backend import render_label
from src.bicomodule import Bicomodule, apply
from src.category import FinCategory
from src.comonoid import category_to_comonoid, check_comonoid_laws
from src.constants import ExitCode, Migration, OutputFormat
from src.context import Context
from src.copresheaf import Copresheaf
from src.errors import LawViolation, PolyaggError
from src.migrate import migrate_delta, migrate_pi, migrate_sigma
from src.parser import format_poly, parse_poly
from src.poly import coclosure, dirichlet, hom_count, substitute
from src.span import Span, dual, skeleton_fin, transpose
from src.utils.formats import (conjunctive_to_json, copresheaf_to_json, load_category, load_conjunctive,
                               load_copresheaf, load_functor, load_instance, load_query, load_schema, load_span,
                               span_to_json, value_to_json)
from src.utils.laws import SUITES, run_suites
from src.utils.log import SuiteLog, log, timeit

Result = Tuple[Any, List[List[str]], int]  # json payload, table rows, exit code


def _table(rows: List[List[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(row[idx]) for row in rows if idx < len(row)) for idx in range(max(map(len, rows)))]
    return "\n".join("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows)


def _copresheaf_rows(x: Copresheaf) -> List[List[str]]:
    rows = []
    for a in x.base.objects:
        rows.append([f"{render_label(a)} ({len(x.rows[a])})"])
        for r in x.rows[a]:
            rows.append(["", render_label(r)] + [f"{render_label(f)}={render_label(x.act(f, r))}"
                                                 for f in x.base.outfacing(a) if f != x.base.identities[a]])
    return rows


def _check(name: str, fn: Callable[[], Optional[Any]]) -> Dict[str, Any]:
    try:
        witness = fn()
    except PolyaggError as exc:
        return {"check": name, "passed": False, "error": exc.serialize()}
    if witness is not None:
        return {"check": name, "passed": False, "error": {"witness": repr(witness)}}
    return {"check": name, "passed": True}


def cmd_validate(ctx: Context, args: argparse.Namespace) -> Result:
    schema = load_schema(args.schema)
    c = schema.category
    checks = [{"check": "schema", "passed": True},
              _check("comonoid laws", lambda: check_comonoid_laws(category_to_comonoid(c)).first())]
    if args.instance:
        inst = None
        try:
            inst = load_instance(args.instance, schema)
            checks.append({"check": "instance", "passed": True})
        except PolyaggError as exc:
            checks.append({"check": "instance", "passed": False, "error": exc.serialize()})
        if inst is not None:
            checks.append(_check("aggregation counit", lambda: epsilon_witness(inst)))
            for f, g in c.composable_pairs():
                checks.append(_check(f"aggregation along {render_label(f)};{render_label(g)}",
                                     lambda f=f, g=g: delta_witness(inst, f, g)))
    if args.query:
        checks.append(_check("query", lambda: load_query(args.query, c).check()))
    passed = all(check["passed"] for check in checks)
    rows = [[check["check"], "ok" if check["passed"] else "FAILED",
             "" if check["passed"] else json.dumps(check["error"])] for check in checks]
    code = ExitCode.ok if passed else ExitCode.law_failure
    return {"passed": passed, "checks": checks}, rows, code.value


def cmd_query(ctx: Context, args: argparse.Namespace) -> Result:
    c = load_category(args.schema)
    x = load_copresheaf(args.instance, c)
    query = load_query(args.query, c)
    result = timeit("Evaluating query", apply, ctx, query, x, verbose=ctx.log.verbose)
    out, rows = [], []
    for j, values in result.rows['*']:
        elements = query.pattern('*', j).elements()
        match = {f"{render_label(a)}.{render_label(r)}": value for (a, r), value in zip(elements, values)}
        out.append({"pattern": j, "match": match})
        rows.append([render_label(j)] + [f"{key}={render_label(value)}" for key, value in match.items()])
    return {"rows": out}, rows, ExitCode.ok.value


def cmd_migrate(ctx: Context, args: argparse.Namespace) -> Result:
    functor = load_functor(args.functor)
    kind = Migration(args.kind)
    if kind == Migration.delta:
        out = migrate_delta(functor, load_copresheaf(args.instance, functor.target))
    elif kind == Migration.pi:
        out = migrate_pi(ctx, functor, load_copresheaf(args.instance, functor.source))
    else:
        out = migrate_sigma(functor, load_copresheaf(args.instance, functor.source))
    return copresheaf_to_json(out), _copresheaf_rows(out), ExitCode.ok.value


def cmd_aggregate(ctx: Context, args: argparse.Namespace) -> Result:
    schema = load_schema(args.schema)
    inst = load_instance(args.instance, schema)
    f = _morphism(schema.category, args.morphism)
    values = aggregate_via_classifier(ctx, inst, f) if args.via_classifier else aggregate_along(inst, f)
    payload = {"morphism": f, "values": {render_label(d): value_to_json(v) for d, v in values.items()}}
    return payload, [[render_label(d), json.dumps(value_to_json(v))] for d, v in values.items()], ExitCode.ok.value


def cmd_groupby(ctx: Context, args: argparse.Namespace) -> Result:
    c = load_category(args.schema)
    x = load_copresheaf(args.instance, c)
    groups = group_by(x, _morphism(c, args.morphism))
    payload = {render_label(d): value_to_json(group) for d, group in groups.items()}
    rows = [[render_label(d), " ".join(render_label(label) for label, count in group for _ in range(count))]
            for d, group in groups.items()]
    return payload, rows, ExitCode.ok.value


def _morphism(c: FinCategory, name: str) -> Any:
    """Morphism names on the command line are strings or JSON lists."""
    if name in c.morphisms:
        return name
    try:
        parsed = json.loads(name)
    except json.JSONDecodeError:
        return name
    return tuple(parsed) if isinstance(parsed, list) else parsed


def _span_rows(span: Span) -> List[List[str]]:
    return [[render_label(span.f[s]), "<-", render_label(s), "->", render_label(span.g[s])] for s in span.apex]


def _conjunctive_rows(m: Bicomodule) -> List[List[str]]:
    return [[render_label(a), render_label(b), " ".join(render_label(x) for x in m.pattern(a, a).rows[b])]
            for a in m.left.objects for b in m.right.objects]


def cmd_dual(ctx: Context, args: argparse.Namespace) -> Result:
    if args.span:
        out = dual(load_span(args.span).to_bicomodule())
        return conjunctive_to_json(out), _conjunctive_rows(out), ExitCode.ok.value
    span = Span.from_bicomodule(dual(load_conjunctive(args.conjunctive)))
    return span_to_json(span), _span_rows(span), ExitCode.ok.value


def cmd_transpose(ctx: Context, args: argparse.Namespace) -> Result:
    span = load_span(args.span)
    swapped = span.transpose_direct()
    routes = transpose(span)
    agree = all(route == swapped for route in routes)
    payload = {"span": span_to_json(swapped), "routes_agree": agree}
    return payload, _span_rows(swapped), (ExitCode.ok if agree else ExitCode.law_failure).value


def cmd_finskeleton(ctx: Context, args: argparse.Namespace) -> Result:
    skeleton = timeit("Building Fin skeleton", skeleton_fin, ctx, args.k, verbose=ctx.log.verbose)
    c = skeleton.category
    homs = [[m, n, len(c.hom(m, n))] for m in c.objects for n in c.objects]
    payload = {"truncation": args.k, "objects": list(c.objects), "homs": homs}
    rows = [[f"{m} -> {n}", str(count)] for m, n, count in homs]
    if args.morphisms:
        payload["morphisms"] = [[m, n, list(values)] for m, n, values in c.morphisms]
        rows += [[f"{m} -> {n}", "(" + " ".join(values) + ")"] for m, n, values in c.morphisms]
    return payload, rows, ExitCode.ok.value


CALCULATIONS = {"compose": substitute, "tensor": dirichlet, "coclosure": coclosure, "homcount": hom_count}


def cmd_calc(ctx: Context, args: argparse.Namespace) -> Result:
    p, q = parse_poly(args.p), parse_poly(args.q)
    out = CALCULATIONS[args.operation](p, q)
    text = str(out) if isinstance(out, int) else format_poly(out)
    return {"operation": args.operation, "result": out if isinstance(out, int) else text}, [[text]], ExitCode.ok.value


def cmd_laws(ctx: Context, args: argparse.Namespace) -> Result:
    suite_log = SuiteLog.from_context(ctx)
    reports = run_suites(ctx, args.suite, seed=args.seed, cases=args.cases, self_test=args.self_test or None,
                         suite_log=suite_log)
    suite_log.finish()
    rows = []
    for report in reports:
        rows.append([report.name, "pass" if report.passed else "FAIL", f"{report.cases} cases",
                     f"{report.skipped} skipped", f"{len(report.failures)} failures", f"{report.elapsed:.2f}s"])
        rows += [["", failure.diagram, json.dumps(failure.witness)] for failure in report.failures[:5]]
    passed = all(report.passed for report in reports)
    payload = {"passed": passed, "suites": [report.serialize() for report in reports]}
    return payload, rows, (ExitCode.ok if passed else ExitCode.law_failure).value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyagg", description="Polynomial functors, queries and aggregation")
    parser.add_argument("--config", type=str, help="Path to a config.yaml overriding the defaults")
    parser.add_argument("--format", type=str, choices=[f.value for f in OutputFormat], help="Output format")
    parser.add_argument("--verbose", action="store_true", help="Print progress and timings")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Load files and report every law check")
    validate.add_argument("--schema", type=str, required=True)
    validate.add_argument("--instance", type=str)
    validate.add_argument("--query", type=str)
    validate.set_defaults(fn=cmd_validate)

    query = commands.add_parser("query", help="Evaluate a duc-query on an instance")
    query.add_argument("--schema", type=str, required=True)
    query.add_argument("--instance", type=str, required=True)
    query.add_argument("--query", type=str, required=True)
    query.set_defaults(fn=cmd_query)

    migrate = commands.add_parser("migrate", help="Migrate an instance along a functor")
    migrate.add_argument("--functor", type=str, required=True)
    migrate.add_argument("--instance", type=str, required=True)
    migrate.add_argument("--kind", type=str, default=Migration.delta.value, choices=[m.value for m in Migration])
    migrate.set_defaults(fn=cmd_migrate)

    for name, fn, text in (("aggregate", cmd_aggregate, "Fold attributes along a morphism"),
                           ("groupby", cmd_groupby, "Collect rows into the fibers of a morphism")):
        sub = commands.add_parser(name, help=text)
        sub.add_argument("--schema", type=str, required=True)
        sub.add_argument("--instance", type=str, required=True)
        sub.add_argument("--morphism", type=str, required=True)
        if name == "aggregate":
            sub.add_argument("--via-classifier", action="store_true",
                             help="Route the fold through the classifying functor into Fin")
        sub.set_defaults(fn=fn)

    dual_parser = commands.add_parser("dual", help="Dual of a span or of a conjunctive bicomodule")
    group = dual_parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--span", type=str)
    group.add_argument("--conjunctive", type=str)
    dual_parser.set_defaults(fn=cmd_dual)

    transpose_parser = commands.add_parser("transpose", help="Transpose a span through its adjoints")
    transpose_parser.add_argument("--span", type=str, required=True)
    transpose_parser.set_defaults(fn=cmd_transpose)

    finskeleton = commands.add_parser("finskeleton", help="Skeleton of Fin up to a truncation")
    finskeleton.add_argument("--k", type=int, default=4)
    finskeleton.add_argument("--morphisms", action="store_true", help="List every morphism")
    finskeleton.set_defaults(fn=cmd_finskeleton)

    calc = commands.add_parser("calc", help="Polynomial calculator")
    calc.add_argument("operation", type=str, choices=sorted(CALCULATIONS))
    calc.add_argument("p", type=str)
    calc.add_argument("q", type=str)
    calc.set_defaults(fn=cmd_calc)

    laws = commands.add_parser("laws", help="Run seeded law suites")
    laws.add_argument("--suite", type=str, default="all", help=f"One of {', '.join(SUITES)} or all")
    laws.add_argument("--seed", type=int)
    laws.add_argument("--cases", type=int)
    laws.add_argument("--self-test", action="store_true", help="Perturb every oracle; all suites have to fail")
    laws.set_defaults(fn=cmd_laws)
    return parser


def make_context(args: argparse.Namespace) -> Context:
    config = None
    if args.config:
        with smart_open(args.config, "r") as f:
            config = yaml.safe_load(f.read())
    ctx = Context(config)
    if args.format:
        ctx.output.format = args.format
    if args.verbose:
        ctx.log.verbose = True
    return ctx


def emit(ctx: Context, payload: Any, rows: List[List[str]]):
    if OutputFormat(ctx.output.format) == OutputFormat.json:
        print(json.dumps(payload, indent=ctx.output.indent))
    else:
        print(_table(rows))


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    json_errors = args.format == OutputFormat.json.value
    try:
        ctx = make_context(args)
        json_errors = OutputFormat(ctx.output.format) == OutputFormat.json
        log(f"polyagg {args.command}", ctx.log.verbose)
        payload, rows, code = args.fn(ctx, args)
    except PolyaggError as exc:
        if json_errors:
            print(json.dumps({"error": exc.serialize()}))
        else:
            print(exc, file=sys.stderr)
        return (ExitCode.law_failure if isinstance(exc, LawViolation) else ExitCode.usage).value
    except ValueError as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return ExitCode.usage.value
    emit(ctx, payload, rows)
    return code


def main():
    sys.exit(run())
