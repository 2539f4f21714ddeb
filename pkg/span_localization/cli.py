import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from span_localization.bicat import adjunction_check, beck_chevalley_check, cartesian_squares
from span_localization.catalog import FIXTURES, resolve_input
from span_localization.config import Limits
from span_localization.document import CategoryDocument, digest
from span_localization.exceptions import BudgetExceeded, DocumentError, IllDefinedComposition
from span_localization.fincat import validate_category
from span_localization.horn import HORN_KINDS
from span_localization.localization import (HoCategory, compare_localizations, ho_via_spans, localized_representable,
                                            oracle_localize, w_locality_report)
from span_localization.plot import DiagramPlot, DiagramPlotDef, category_to_dot, diagrams_to_dot, plot_category
from span_localization.relcat import RelativeCategory, two_out_of_three_closure, validate_hypercovers
from span_localization.report import EXIT_BUDGET, EXIT_INVALID, Report
from span_localization.span import (SpanLevel, build_H, build_span_level, is_cocartesian_fibration, level_sizes,
                                    segal_check)
from span_localization.sset import SetFunctor, SSetMap, grothendieck, horn_lift_check, nerve, summary, w_local_check
from span_localization.types import ValidationReport

logger = logging.getLogger(__name__)

PLOT_LIMIT = 6


class InvalidInput(ValueError):
    pass


def _violations(report: ValidationReport) -> list[dict[str, object]]:
    return [{"clause": v.clause.value, "witness": list(v.witness), "message": v.message} for v in report]


def _require_valid(relative: RelativeCategory) -> None:
    report = validate_hypercovers(relative)
    if not report.is_valid:
        first = report.violations[0]
        raise InvalidInput(f"Input is not a valid relative category: {first.message}")


def cmd_validate(doc: CategoryDocument, timing: bool = False) -> Report:
    """
    Runs both validators; the 2-out-of-3 closure of W is listed in the summary.
    """
    report = Report("validate", digest(doc), timing={} if timing else None)
    relative = doc.relative()
    with report.timed("validate"):
        category_report = validate_category(relative.base)
        report.add("category", category_report.is_valid, _violations(category_report))
        hypercover_report = validate_hypercovers(relative)
        report.add("hypercovers", hypercover_report.is_valid, _violations(hypercover_report))
    report.summary = {
        "objects": len(relative.base.objects),
        "morphisms": len(relative.base.non_identities()),
        "hypercovers": len(doc.hypercovers),
    }
    if hypercover_report.is_valid:
        closure = two_out_of_three_closure(relative)
        report.summary["two_out_of_three_additions"] = [m.name for m in relative.base.morphisms
                                                        if m.name in closure - relative.hypercovers]
    return report


def cmd_span(doc: CategoryDocument, n: int, budget: int, timing: bool = False) -> tuple[Report, list[SpanLevel]]:
    """
    Builds the span levels 0..n, runs the Segal check for every level 1..n and the cocartesian lift check
    of H(c) for every object c.
    :raises BudgetExceeded: if a level outgrows the budget.
    """
    report = Report("span", digest(doc), timing={} if timing else None)
    relative = doc.relative()
    _require_valid(relative)
    levels = []
    for k in range(n + 1):
        with report.timed(f"level {k}"):
            levels.append(build_span_level(relative, k, budget))
    for k in range(1, n + 1):
        with report.timed(f"segal {k}"):
            report.add(f"segal n={k}", segal_check(relative, k, budget))
    for c in relative.base.objects:
        report.add(f"cocartesian H({c})", is_cocartesian_fibration(build_H(relative, c)))
    report.summary = {"levels": [{"n": k, "objects": o, "arrows": a} for k, o, a in level_sizes(levels)]}
    return report, levels


def cmd_localize(doc: CategoryDocument, max_word_len: int, max_iter: int,
                 timing: bool = False) -> tuple[Report, HoCategory | None]:
    """
    Span localization against the zigzag oracle, then W-locality of the mapping categories.
    """
    report = Report("localize", digest(doc), timing={} if timing else None)
    relative = doc.relative()
    _require_valid(relative)
    ho = None
    with report.timed("spans"):
        try:
            ho = ho_via_spans(relative)
            report.add("span composition", True)
        except IllDefinedComposition as e:
            report.add("span composition", False, e.witness)
    with report.timed("oracle"):
        oracle = oracle_localize(relative, max_word_len, max_iter)
    if not oracle:
        report.add_inconclusive("oracle agreement", {"reason": oracle.reason, "source": oracle.source,
                                                     "detail": oracle.detail})
    elif ho is not None:
        report.add("oracle agreement", compare_localizations(ho, oracle))
    with report.timed("w-locality"):
        report.add("w-locality", w_locality_report(relative))
    if ho is not None:
        report.summary = {"hom": ho.table(), "unit": dict(ho.unit)}
    return report, ho


def cmd_bicat(doc: CategoryDocument, timing: bool = False) -> Report:
    """
    Adjunction triangles for every hypercover and Beck-Chevalley for every canonical cartesian square.
    """
    report = Report("bicat", digest(doc), timing={} if timing else None)
    relative = doc.relative()
    _require_valid(relative)
    with report.timed("adjunctions"):
        for w in relative.ordered_hypercovers():
            report.add(f"adjunction {w}", adjunction_check(relative, w))
    squares = cartesian_squares(relative)
    with report.timed("beck-chevalley"):
        for square in squares:
            report.add(f"beck-chevalley {square.bottom} along {square.right}", beck_chevalley_check(relative, square))
    report.summary = {"hypercovers": len(relative.ordered_hypercovers()), "squares": len(squares)}
    return report


def cmd_sset(doc: CategoryDocument, dim: int, kind: str, timing: bool = False) -> Report:
    """
    Nerve to the point under the chosen horn kind, left fibration check of the Grothendieck construction of
    every representable, W-locality of the Grothendieck construction of every hom_Ho(c, -), and
    pi_0 / pi_1 summaries of the nerve.
    """
    report = Report("sset", digest(doc), timing={} if timing else None)
    relative = doc.relative()
    _require_valid(relative)
    category = relative.base
    with report.timed("nerve"):
        X = nerve(category, dim)
        problems = X.violations()
        report.add("simplicial identities", not problems, problems[:1])
    with report.timed("horns"):
        report.add(f"{kind} horns", horn_lift_check(SSetMap.to_terminal(X), kind, dim))
        for c in category.objects:
            p = grothendieck(category, SetFunctor.representable(category, c), dim)
            report.add(f"left fibration hom({c},-)", horn_lift_check(p, "left", dim))
    with report.timed("w-locality"):
        try:
            ho = ho_via_spans(relative)
        except IllDefinedComposition as e:
            report.add("w-locality", False, e.witness)
        else:
            for c in category.objects:
                p = grothendieck(category, localized_representable(relative, ho, c), dim)
                report.add(f"w-locality hom_Ho({c},-)", w_local_check(p, relative, dim))
    with report.timed("summary"):
        report.summary = summary(X)
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True,
                        help=f"Path to a category document or a bundled fixture ({', '.join(FIXTURES)}).")
    common.add_argument("--budget", type=int, default=None, help="Search nodes allowed to one enumeration.")
    common.add_argument("--json", default=None, help="Write the JSON report to this path.")
    common.add_argument("--emit-dot", default=None, help="Write a DOT rendering to this path.")
    common.add_argument("--plot", default=None, help="Save a matplotlib rendering to this path.")
    common.add_argument("--timing", action="store_true", help="Record wall-clock timings in the report.")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level to stderr.")

    parser = argparse.ArgumentParser(prog="span-localization",
                                     description="Localization of finite categories at hypercovers by spans.")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", parents=[common], help="Check category and hypercover axioms.")
    span = commands.add_parser("span", parents=[common], help="Build span levels and run the Segal check.")
    span.add_argument("--level", type=int, default=None, help="Highest span level n.")
    localize = commands.add_parser("localize", parents=[common], help="Compare span and zigzag localizations.")
    localize.add_argument("--max-word-len", type=int, default=None, help="Longest oracle representative.")
    localize.add_argument("--max-iter", type=int, default=None, help="Oracle row definitions per object.")
    commands.add_parser("bicat", parents=[common], help="Check adjunctions and Beck-Chevalley squares.")
    sset = commands.add_parser("sset", parents=[common], help="Check horn filling of nerves.")
    sset.add_argument("--dim", type=int, default=None, help="Dimension bound D.")
    sset.add_argument("--kind", choices=list(HORN_KINDS), default="inner", help="Horn kind for the nerve.")
    return parser


def _render(args: argparse.Namespace, relative: RelativeCategory, levels: list[SpanLevel]) -> None:
    if args.emit_dot is not None:
        if levels:
            top = levels[-1]
            text = diagrams_to_dot(((name, top.diagram(name)) for name in top.category.objects),
                                   top.category.name)
        else:
            text = category_to_dot(relative)
        Path(args.emit_dot).write_text(text, encoding="utf-8")
    if args.plot is not None:
        if levels and levels[-1].diagrams:
            top = levels[-1]
            plot = DiagramPlot()
            for name in top.category.objects[:PLOT_LIMIT]:
                plot.add_to_plotlist(DiagramPlotDef(top.diagram(name), name, "black"))
            plot.plot(args.plot)
        else:
            plot_category(relative, args.plot)


def run(args: argparse.Namespace) -> int:
    limits = Limits.from_args(args)
    doc, bundled = resolve_input(args.input)
    levels: list[SpanLevel] = []
    match args.command:
        case "validate":
            report = cmd_validate(doc, args.timing)
        case "span":
            report, levels = cmd_span(doc, limits.level, limits.budget, args.timing)
        case "localize":
            if not bundled and (args.max_word_len is None or args.max_iter is None):
                raise InvalidInput("Oracle runs on a file need explicit --max-word-len and --max-iter.")
            report, _ = cmd_localize(doc, limits.max_word_len, limits.max_iter, args.timing)
        case "bicat":
            report = cmd_bicat(doc, args.timing)
        case "sset":
            report = cmd_sset(doc, limits.dim, args.kind, args.timing)
        case _:
            raise InvalidInput(f"Unknown command {args.command}.")
    _render(args, doc.relative(), levels)
    if args.json is not None:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    for check in report.checks:
        print(f"{check.status.value:<12} {check.name}")
    print(f"{report.status.value}: {args.command} {args.input}")
    return report.exit_code()


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except BudgetExceeded as e:
        print(f"span-localization: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DocumentError, InvalidInput, TypeError, ValueError) as e:
        print(f"span-localization: error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
