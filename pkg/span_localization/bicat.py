import logging
from dataclasses import dataclass

from span_localization.exceptions import MissingPullback, NotCartesian
from span_localization.fincat import FinCategory, PullbackCone, is_pullback, mediating, pullback
from span_localization.relcat import RelativeCategory
from span_localization.span import Span2Cell, compose_spans, identity_span
from span_localization.types import CheckResult, CommutingSquare, Mor, Span

logger = logging.getLogger(__name__)


def _cone(category: FinCategory, f: Mor, g: Mor) -> PullbackCone:
    cone = pullback(category, f, g)
    if cone is None:
        raise MissingPullback(f, g)
    return cone


def _apex(category: FinCategory, span: Span) -> str:
    return category.dom(span.left)


def _unique(category: FinCategory, cone: PullbackCone, apex: str, p: Mor, q: Mor) -> Mor:
    found = mediating(category, cone, apex, p, q)
    if len(found) != 1:
        raise ValueError(f"Expected a unique mediating map into {cone.apex}, found {len(found)}.")
    return found[0]


def is_two_cell(relative: RelativeCategory, cell: Span2Cell) -> bool:
    """
    The apex map commutes with both legs.
    """
    category = relative.base
    return (category.dom(cell.apex), category.cod(cell.apex)) == (
        _apex(category, cell.source), _apex(category, cell.target)) and (
        category.compose(cell.target.left, cell.apex) == cell.source.left
        and category.compose(cell.target.right, cell.apex) == cell.source.right)


def identity_cell(relative: RelativeCategory, span: Span) -> Span2Cell:
    return Span2Cell(span, span, relative.base.identity(_apex(relative.base, span)))


def vertical(relative: RelativeCategory, after: Span2Cell, then: Span2Cell) -> Span2Cell:
    """
    :return: after·then.
    """
    if then.target != after.source:
        raise ValueError(f"2-cells {after} and {then} are not composable.")
    return Span2Cell(then.source, after.target, relative.base.compose(after.apex, then.apex))


def invert(relative: RelativeCategory, cell: Span2Cell) -> Span2Cell:
    inverse = relative.base.inverse(cell.apex)
    if inverse is None:
        raise ValueError(f"2-cell {cell} is not invertible.")
    return Span2Cell(cell.target, cell.source, inverse)


def whisker_left(relative: RelativeCategory, span: Span, cell: Span2Cell) -> Span2Cell:
    """
    span ◁ cell: span∘S => span∘S' for cell: S => S'.
    """
    category = relative.base
    source = compose_spans(relative, cell.source, span)
    target = compose_spans(relative, cell.target, span)
    inner = _cone(category, cell.source.right, span.left)
    outer = _cone(category, cell.target.right, span.left)
    apex = _unique(category, outer, inner.apex, category.compose(cell.apex, inner.leg1), inner.leg2)
    return Span2Cell(source, target, apex)


def whisker_right(relative: RelativeCategory, cell: Span2Cell, span: Span) -> Span2Cell:
    """
    cell ▷ span: T∘span => T'∘span for cell: T => T'.
    """
    category = relative.base
    source = compose_spans(relative, span, cell.source)
    target = compose_spans(relative, span, cell.target)
    inner = _cone(category, span.right, cell.source.left)
    outer = _cone(category, span.right, cell.target.left)
    apex = _unique(category, outer, inner.apex, inner.leg1, category.compose(cell.apex, inner.leg2))
    return Span2Cell(source, target, apex)


def associator(relative: RelativeCategory, first: Span, second: Span, third: Span) -> Span2Cell:
    """
    (third∘second)∘first => third∘(second∘first), the mediating map between the two iterated pullbacks.
    """
    category = relative.base
    later = compose_spans(relative, second, third)
    earlier = compose_spans(relative, first, second)
    source = compose_spans(relative, first, later)
    target = compose_spans(relative, earlier, third)
    q = _cone(category, second.right, third.left)
    x = _cone(category, first.right, later.left)
    p = _cone(category, first.right, second.left)
    y = _cone(category, earlier.right, third.left)
    into_p = _unique(category, p, x.apex, x.leg1, category.compose(q.leg1, x.leg2))
    apex = _unique(category, y, x.apex, into_p, category.compose(q.leg2, x.leg2))
    return Span2Cell(source, target, apex)


def left_unitor(relative: RelativeCategory, span: Span) -> Span2Cell:
    """
    id∘span => span.
    """
    category = relative.base
    end = category.cod(span.right)
    cone = _cone(category, span.right, category.identity(end))
    return Span2Cell(compose_spans(relative, span, identity_span(category, end)), span, cone.leg1)


def right_unitor(relative: RelativeCategory, span: Span) -> Span2Cell:
    """
    span∘id => span.
    """
    category = relative.base
    start = category.cod(span.left)
    cone = _cone(category, category.identity(start), span.left)
    return Span2Cell(compose_spans(relative, identity_span(category, start), span), span, cone.leg2)


@dataclass(frozen=True)
class AdjunctionDatum:
    """
    Adjunction L -| R in spans for a hypercover f: d -> c.
    :param left: L = (id_d, f) from d to c.
    :param right: R = (f, id_d) from c to d.
    :param unit: id_d => R∘L, the diagonal into d x_c d.
    :param counit: L∘R = (f, f) => id_c, given by f.
    """
    hypercover: Mor
    left: Span
    right: Span
    unit: Span2Cell
    counit: Span2Cell


def adjunction_datum(relative: RelativeCategory, f: Mor) -> AdjunctionDatum:
    category = relative.base
    if not relative.is_hypercover(f):
        raise ValueError(f"{f} is not a hypercover.")
    d, c = category.dom(f), category.cod(f)
    left = Span(category.identity(d), f)
    right = Span(f, category.identity(d))
    kernel = _cone(category, f, f)
    diagonal = _unique(category, kernel, d, category.identity(d), category.identity(d))
    unit = Span2Cell(identity_span(category, d), compose_spans(relative, left, right), diagonal)
    counit = Span2Cell(compose_spans(relative, right, left), identity_span(category, c), f)
    return AdjunctionDatum(f, left, right, unit, counit)


def adjunction_check(relative: RelativeCategory, f: Mor) -> CheckResult:
    """
    Both triangle composites, transported along associators and unitors, are identity 2-cells.
    :return: CheckResult, witness ("triangle", k, apex map) for the first failing triangle k.
    """
    datum = adjunction_datum(relative, f)
    L, R = datum.left, datum.right
    for cell in (datum.unit, datum.counit):
        if not is_two_cell(relative, cell):
            return CheckResult(False, ("cell", cell))
    steps = [invert(relative, right_unitor(relative, L)),
             whisker_left(relative, L, datum.unit),
             invert(relative, associator(relative, L, R, L)),
             whisker_right(relative, datum.counit, L),
             left_unitor(relative, L)]
    steps_r = [invert(relative, left_unitor(relative, R)),
               whisker_right(relative, datum.unit, R),
               associator(relative, R, L, R),
               whisker_left(relative, R, datum.counit),
               right_unitor(relative, R)]
    for k, chain in enumerate((steps, steps_r), start=1):
        total = chain[0]
        for cell in chain[1:]:
            total = vertical(relative, cell, total)
        if total != identity_cell(relative, total.source):
            logger.info("triangle %d fails for %s", k, f)
            return CheckResult(False, ("triangle", k, total.apex))
    return CheckResult(True)


def is_cartesian_square(relative: RelativeCategory, square: CommutingSquare) -> bool:
    category = relative.base
    return is_pullback(category, PullbackCone(category.dom(square.top), square.top, square.left,
                                              (square.right, square.bottom)))


def beck_chevalley_check(relative: RelativeCategory, square: CommutingSquare, force: bool = False) -> CheckResult:
    """
    Square d' -top-> c', d' -left-> d, c' -right-> c, d -bottom-> c with bottom and top hypercovers.
    The comparison 2-cell (top, left) => (x1, x2) into the canonical pullback x of (right, bottom) is
    tested for invertibility.
    :param force: run on a square that is not a pullback instead of raising NotCartesian.
    :return: CheckResult, witness the comparison map.
    """
    category = relative.base
    if category.compose(square.right, square.top) != category.compose(square.bottom, square.left):
        raise ValueError(f"Square {tuple(square)} does not commute.")
    for w in (square.top, square.bottom):
        if not relative.is_hypercover(w):
            raise ValueError(f"{w} is not a hypercover.")
    if not force and not is_cartesian_square(relative, square):
        raise NotCartesian(square)
    cone = _cone(category, square.right, square.bottom)
    comparison = _unique(category, cone, category.dom(square.top), square.top, square.left)
    return CheckResult(category.is_iso(comparison), comparison)


def cartesian_squares(relative: RelativeCategory) -> list[CommutingSquare]:
    """
    Canonical pullback squares of every hypercover along every morphism into its codomain.
    """
    category = relative.base
    squares = []
    for f in relative.ordered_hypercovers():
        for g in category.incoming(category.cod(f)):
            cone = _cone(category, g, f)
            squares.append(CommutingSquare(cone.leg1, cone.leg2, g, f))
    return squares
