import logging
from collections.abc import Iterable
from typing import Any, Self

from span_localization.fincat import FinCategory, pullback, validate_category
from span_localization.types import Clause, Mor, ValidationReport

logger = logging.getLogger(__name__)


class RelativeCategory:
    """
    Finite category with a distinguished class W of hypercovers. Identities always belong to W.
    :param base: underlying FinCategory.
    :param hypercovers: names of the morphisms in W.
    """

    def __init__(self, base: FinCategory, hypercovers: Iterable[Mor] = ()):
        self._base = base
        given = tuple(hypercovers)
        self._unknown = tuple(w for w in given if not base.has_morphism(w))
        self._hypercovers = (frozenset(w for w in given if base.has_morphism(w))
                             | {base.identity(o) for o in base.objects})

    def __repr__(self) -> str:
        return f"RelativeCategory({self._base}, |W| = {len(self._hypercovers)})"

    def __str__(self) -> str:
        return self.__repr__()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RelativeCategory):
            return False
        return self._base == other.base and self._hypercovers == other.hypercovers

    def __hash__(self) -> int:
        return hash((self._base, self._hypercovers))

    @property
    def base(self) -> FinCategory:
        """
        :return: underlying category.
        """
        return self._base

    @property
    def hypercovers(self) -> frozenset[Mor]:
        """
        :return: the class W, identities included.
        """
        return self._hypercovers

    @property
    def unknown_hypercovers(self) -> tuple[Mor, ...]:
        """
        :return: names given as hypercovers that are not morphisms of the base.
        """
        return self._unknown

    def is_hypercover(self, name: Mor) -> bool:
        return name in self._hypercovers

    def ordered_hypercovers(self) -> list[Mor]:
        """
        :return: W in morphism order.
        """
        return [m.name for m in self._base.morphisms if m.name in self._hypercovers]

    def with_hypercovers(self, names: Iterable[Mor]) -> Self:
        return type(self)(self._base, names)

    @classmethod
    def isomorphisms_only(cls, base: FinCategory) -> Self:
        return cls(base, base.isomorphisms())


def validate_hypercovers(relative: RelativeCategory) -> ValidationReport:
    """
    Exhaustive scan of the hypercover axioms. Category axioms are checked first; a base that is not a
    category is reported on its own.
    :param relative: RelativeCategory to check.
    :return: ValidationReport naming every missing iso, non-closed composite, cospan without pullback
    and pulled-back projection outside W.
    """
    report = validate_category(relative.base)
    if not report.is_valid:
        return report
    for w in relative.unknown_hypercovers:
        report.add(Clause.UNKNOWN_MORPHISM, (w,), f"Hypercover {w} is not a morphism.")
    base = relative.base
    for m in base.morphisms:
        if base.is_iso(m.name) and not relative.is_hypercover(m.name):
            report.add(Clause.MISSING_ISO, (m.name,), f"Isomorphism {m.name} is not a hypercover.")
    ordered = relative.ordered_hypercovers()
    for w1 in ordered:
        for w2 in base.outgoing(base.cod(w1)):
            if relative.is_hypercover(w2):
                composite = base.compose(w2, w1)
                if not relative.is_hypercover(composite):
                    report.add(Clause.NOT_CLOSED, (w2, w1, composite),
                               f"Composite {w2}∘{w1} = {composite} is not a hypercover.")
    for w in ordered:
        for f in base.incoming(base.cod(w)):
            cone = pullback(base, w, f)
            if cone is None:
                report.add(Clause.MISSING_PULLBACK, (w, f), f"Cospan ({w}, {f}) has no pullback.")
            elif not relative.is_hypercover(cone.leg2):
                report.add(Clause.UNSTABLE_PROJECTION, (w, f, cone.leg2),
                           f"Pullback of {w} along {f} has projection {cone.leg2} outside W.")
    logger.debug("validated %s: %d violations", relative, len(report))
    return report


def two_out_of_three_closure(relative: RelativeCategory) -> frozenset[Mor]:
    """
    Smallest superset of W with the 2-out-of-3 property, by fixed-point iteration over composable pairs.
    """
    base = relative.base
    closed = set(relative.hypercovers)
    changed = True
    while changed:
        changed = False
        for g, f in base.composable_pairs():
            trio = (f, g, base.compose(g, f))
            if sum(m in closed for m in trio) == 2:
                closed.update(trio)
                changed = True
    return frozenset(closed)
