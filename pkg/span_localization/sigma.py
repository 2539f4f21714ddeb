import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cache
from typing import Literal, NamedTuple, Self

from span_localization.exceptions import MissingPullback, NonMonotone
from span_localization.fincat import (FinCategory, FinFunctor, PullbackCone, is_pullback, mediating, pullback,
                                      pullback_cones)
from span_localization.relcat import RelativeCategory
from span_localization.types import DiagramConditions, Element, MonotoneMap, Mor, Obj, Span

logger = logging.getLogger(__name__)

FillOrder = Literal["diagonal", "column"]


def element_label(e: Element) -> str:
    return f"({e[0]},{e[1]})"


class SigmaPoset:
    """
    Poset of pairs (i, j), 0 <= i <= j <= n, with (i, j) <= (i', j') iff i <= i' and j >= j'.
    Marked edges (i, j) -> (i, j') carry the hypercover leg of a span diagram.
    :param n: level.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"Level must be non-negative, not {n}")
        self._n = n
        self._elements: tuple[Element, ...] = tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))
        self._index = {e: k for k, e in enumerate(self._elements)}
        self._edges: tuple[Element, ...] = tuple(e for e in self._elements if e[0] < e[1])
        self._edge_index = {e: k for k, e in enumerate(self._edges)}

    def __repr__(self) -> str:
        return f"SigmaPoset({self._n})"

    @property
    def n(self) -> int:
        return self._n

    @property
    def elements(self) -> tuple[Element, ...]:
        """
        :return: elements in lexicographic order.
        """
        return self._elements

    @property
    def off_diagonal(self) -> tuple[Element, ...]:
        """
        :return: elements (i, j) with i < j; each is the source of one vertical and one horizontal generator.
        """
        return self._edges

    def index(self, e: Element) -> int:
        return self._index[e]

    def edge_index(self, e: Element) -> int:
        return self._edge_index[e]

    @staticmethod
    def leq(a: Element, b: Element) -> bool:
        return a[0] <= b[0] and a[1] >= b[1]

    @staticmethod
    def is_marked(a: Element, b: Element) -> bool:
        return a[0] == b[0] and a[1] >= b[1]

    def relations(self) -> list[tuple[Element, Element]]:
        return [(a, b) for a in self._elements for b in self._elements if self.leq(a, b)]

    def marked_edges(self) -> list[tuple[Element, Element]]:
        return [(a, b) for a, b in self.relations() if a != b and self.is_marked(a, b)]

    def squares(self) -> list[tuple[int, int, int, int]]:
        """
        :return: quadruples (i, i', j', j) with i < i' <= j' < j.
        """
        n = self._n
        return [(i, i2, j2, j)
                for i in range(n + 1) for i2 in range(i + 1, n + 1)
                for j2 in range(i2, n + 1) for j in range(j2 + 1, n + 1)]

    def inner_squares(self) -> list[tuple[int, int, int, int]]:
        return [(i, i2, j2, j) for i, i2, j2, j in self.squares() if i2 == i + 1 and j2 == j - 1]

    def edge_name(self, a: Element, b: Element) -> Mor:
        category = self.as_category()
        if a == b:
            return category.identity(element_label(a))
        return f"{element_label(a)}<{element_label(b)}"

    def as_category(self) -> FinCategory:
        if not hasattr(self, "_category"):
            self._category = FinCategory.from_poset(self._elements, self.leq, element_label, f"Sigma_{self._n}")
        return self._category


@cache
def build_sigma(n: int) -> SigmaPoset:
    """
    :param n: level, n >= 0.
    :return: shared SigmaPoset of level n.
    """
    return SigmaPoset(n)


def lambda_subposet(n: int) -> list[Element]:
    """
    :return: elements (i, j) of Sigma_n with j - i <= 1; there are 2n + 1 of them.
    """
    return [e for e in build_sigma(n).elements if e[1] - e[0] <= 1]


def monotone(values: Sequence[int], target: int) -> MonotoneMap:
    """
    Validated monotone map [len(values) - 1] -> [target].
    """
    values = tuple(values)
    if not values:
        raise NonMonotone("Monotone map needs at least one value.")
    if any(v < 0 or v > target for v in values):
        raise NonMonotone(f"Values {values} leave [0, {target}].")
    if any(a > b for a, b in zip(values[:-1], values[1:])):
        raise NonMonotone(f"Values {values} are not monotone.")
    return MonotoneMap(values, target)


def face(n: int, k: int) -> MonotoneMap:
    """
    Coface d^k: [n-1] -> [n] skipping k.
    """
    if not 0 <= k <= n or n < 1:
        raise ValueError(f"Face d^{k} is not defined into [{n}].")
    return MonotoneMap(tuple(v for v in range(n + 1) if v != k), n)


def degeneracy(n: int, k: int) -> MonotoneMap:
    """
    Codegeneracy s^k: [n+1] -> [n] hitting k twice.
    """
    if not 0 <= k <= n:
        raise ValueError(f"Degeneracy s^{k} is not defined onto [{n}].")
    return MonotoneMap(tuple(v if v <= k else v - 1 for v in range(n + 2)), n)


def identity_map(n: int) -> MonotoneMap:
    return MonotoneMap(tuple(range(n + 1)), n)


def compose_monotone(after: MonotoneMap, then: MonotoneMap) -> MonotoneMap:
    """
    :return: after∘then.
    """
    if len(after.values) != then.target + 1:
        raise ValueError(f"Monotone maps {after} and {then} are not composable.")
    return MonotoneMap(tuple(after.values[v] for v in then.values), after.target)


def sigma_points(alpha: MonotoneMap) -> dict[Element, Element]:
    """
    :return: (i, j) -> (alpha(i), alpha(j)) on Sigma_m.
    """
    alpha = monotone(alpha.values, alpha.target)
    m = len(alpha.values) - 1
    return {e: (alpha.values[e[0]], alpha.values[e[1]]) for e in build_sigma(m).elements}


def sigma_map(alpha: MonotoneMap) -> FinFunctor:
    """
    Poset map Sigma_m -> Sigma_n induced by alpha: [m] -> [n].
    :return: FinFunctor between the Sigma categories.
    """
    points = sigma_points(alpha)
    m = len(alpha.values) - 1
    return FinFunctor.from_object_map(build_sigma(m).as_category(),
                                      build_sigma(alpha.target).as_category(),
                                      {element_label(a): element_label(b) for a, b in points.items()})


class LambdaData(NamedTuple):
    """
    Relative functor on the Lambda_n skeleton: a chain of n spans.
    :param vertices: objects F(i, i).
    :param spans: span k joins vertices k and k + 1.
    """
    vertices: tuple[Obj, ...]
    spans: tuple[Span, ...]


@dataclass(frozen=True)
class SpanDiagram:
    """
    Functor Sigma_n -> C stored by objects and generating edges, both indexed in Sigma order.
    verticals[(i, j)] is the image of the marked edge (i, j) -> (i, j - 1),
    horizontals[(i, j)] the image of (i, j) -> (i + 1, j), for i < j.
    Relative and cartesian conditions are reported by violations().
    """
    n: int
    objects: tuple[Obj, ...]
    verticals: tuple[Mor, ...]
    horizontals: tuple[Mor, ...]
    category: FinCategory = field(compare=False, hash=False, repr=False)

    @property
    def sigma(self) -> SigmaPoset:
        return build_sigma(self.n)

    def obj(self, e: Element) -> Obj:
        return self.objects[self.sigma.index(e)]

    def vertical(self, e: Element) -> Mor:
        return self.verticals[self.sigma.edge_index(e)]

    def horizontal(self, e: Element) -> Mor:
        return self.horizontals[self.sigma.edge_index(e)]

    def arrow(self, a: Element, b: Element) -> Mor:
        """
        Image of a <= b: horizontals from (a_i, a_j) to (b_i, a_j), then verticals down to b.
        """
        if not SigmaPoset.leq(a, b):
            raise ValueError(f"{a} is not below {b} in Sigma_{self.n}.")
        path = [self.horizontal((x, a[1])) for x in range(a[0], b[0])]
        path += [self.vertical((b[0], y)) for y in range(a[1], b[1], -1)]
        return self.category.compose_path(path, self.obj(a))

    def left_leg(self, e: Element) -> Mor:
        return self.arrow(e, (e[0], e[0]))

    def right_leg(self, e: Element) -> Mor:
        return self.arrow(e, (e[1], e[1]))

    def vertices(self) -> tuple[Obj, ...]:
        return tuple(self.obj((i, i)) for i in range(self.n + 1))

    def span(self, k: int) -> Span:
        """
        :return: the span on the edge (k - 1, k).
        """
        e = (k - 1, k)
        return Span(self.vertical(e), self.horizontal(e))

    def lambda_data(self) -> LambdaData:
        return LambdaData(self.vertices(), tuple(self.span(k) for k in range(1, self.n + 1)))

    def square_cone(self, square: tuple[int, int, int, int]) -> PullbackCone:
        """
        Cone F(i,j) over the cospan F(i,j') -> F(i',j') <- F(i',j).
        """
        i, i2, j2, j = square
        return PullbackCone(self.obj((i, j)),
                            self.arrow((i, j), (i, j2)),
                            self.arrow((i, j), (i2, j)),
                            (self.arrow((i, j2), (i2, j2)), self.arrow((i2, j), (i2, j2))))

    def functor_violations(self) -> list[str]:
        c = self.category
        problems = []
        for e in self.sigma.off_diagonal:
            i, j = e
            v, h = c.morphism(self.vertical(e)), c.morphism(self.horizontal(e))
            if (v.dom, v.cod) != (self.obj(e), self.obj((i, j - 1))):
                problems.append(f"vertical edge at {e} is mistyped")
            if (h.dom, h.cod) != (self.obj(e), self.obj((i + 1, j))):
                problems.append(f"horizontal edge at {e} is mistyped")
        if problems:
            return problems
        for i, _, _, j in self.sigma.inner_squares():
            across = c.compose(self.vertical((i + 1, j)), self.horizontal((i, j)))
            down = c.compose(self.horizontal((i, j - 1)), self.vertical((i, j)))
            if across != down:
                problems.append(f"square at {(i, j)} does not commute")
        return problems

    def violations(self, relative: RelativeCategory) -> list[str]:
        """
        :return: failed functor, relative and cartesian conditions as messages.
        """
        problems = self.functor_violations()
        if problems:
            return problems
        for e in self.sigma.off_diagonal:
            if not relative.is_hypercover(self.vertical(e)):
                problems.append(f"marked edge at {e} is not a hypercover")
        for square in self.sigma.squares():
            if not is_pullback(self.category, self.square_cone(square)):
                problems.append(f"square {square} is not cartesian")
        return problems

    def precompose(self, alpha: MonotoneMap) -> "SpanDiagram":
        """
        :return: F∘Sigma(alpha), a diagram of level len(alpha.values) - 1.
        """
        if alpha.target != self.n:
            raise ValueError(f"Map into [{alpha.target}] cannot act on level {self.n}.")
        points = sigma_points(alpha)
        sigma = build_sigma(len(alpha.values) - 1)
        return SpanDiagram(sigma.n,
                           tuple(self.obj(points[e]) for e in sigma.elements),
                           tuple(self.arrow(points[e], points[(e[0], e[1] - 1)]) for e in sigma.off_diagonal),
                           tuple(self.arrow(points[e], points[(e[0] + 1, e[1])]) for e in sigma.off_diagonal),
                           self.category)

    def as_functor(self) -> FinFunctor:
        sigma = self.sigma
        return FinFunctor(sigma.as_category(), self.category,
                          {element_label(e): self.obj(e) for e in sigma.elements},
                          {sigma.edge_name(a, b): self.arrow(a, b) for a, b in sigma.relations()})

    @classmethod
    def from_functor(cls, functor: FinFunctor, n: int) -> Self:
        sigma = build_sigma(n)
        return cls(n,
                   tuple(functor.obj(element_label(e)) for e in sigma.elements),
                   tuple(functor.mor(sigma.edge_name(e, (e[0], e[1] - 1))) for e in sigma.off_diagonal),
                   tuple(functor.mor(sigma.edge_name(e, (e[0] + 1, e[1]))) for e in sigma.off_diagonal),
                   functor.target)

    @classmethod
    def constant(cls, category: FinCategory, obj: Obj) -> Self:
        return cls(0, (obj,), (), (), category)


def _fill_positions(n: int, order: FillOrder) -> list[Element]:
    if order == "diagonal":
        return [(i, i + w) for w in range(2, n + 1) for i in range(n + 1 - w)]
    if order == "column":
        return [(i, j) for j in range(2, n + 1) for i in range(j - 2, -1, -1)]
    raise ValueError(f"Unknown fill order {order}")


def _check_lambda(category: FinCategory, partial: LambdaData) -> None:
    if len(partial.vertices) != len(partial.spans) + 1:
        raise ValueError("Lambda data needs one more vertex than spans.")
    for k, (left, right) in enumerate(partial.spans):
        if (category.dom(left) != category.dom(right)
                or category.cod(left) != partial.vertices[k]
                or category.cod(right) != partial.vertices[k + 1]):
            raise ValueError(f"Span {k} does not join vertices {k} and {k + 1}.")


def _extend(category: FinCategory, partial: LambdaData, order: FillOrder) -> SpanDiagram:
    n = len(partial.spans)
    sigma = build_sigma(n)
    objects: dict[Element, Obj] = {(i, i): v for i, v in enumerate(partial.vertices)}
    vertical: dict[Element, Mor] = {}
    horizontal: dict[Element, Mor] = {}
    for i, (left, right) in enumerate(partial.spans):
        objects[(i, i + 1)] = category.dom(left)
        vertical[(i, i + 1)] = left
        horizontal[(i, i + 1)] = right
    for i, j in _fill_positions(n, order):
        f, g = horizontal[(i, j - 1)], vertical[(i + 1, j)]
        cone = pullback(category, f, g)
        if cone is None:
            raise MissingPullback(f, g)
        objects[(i, j)] = cone.apex
        vertical[(i, j)] = cone.leg1
        horizontal[(i, j)] = cone.leg2
    return SpanDiagram(n,
                       tuple(objects[e] for e in sigma.elements),
                       tuple(vertical[e] for e in sigma.off_diagonal),
                       tuple(horizontal[e] for e in sigma.off_diagonal),
                       category)


def right_kan_extend(relative: RelativeCategory,
                     partial: LambdaData,
                     order: FillOrder = "diagonal",
                     strict: bool = True) -> SpanDiagram | None:
    """
    Extension of a relative functor on Lambda_n to Sigma_n by iterated canonical pullbacks
    F(i,j) = F(i,j-1) x_{F(i+1,j-1)} F(i+1,j), filled by increasing width ("diagonal") or column by column.
    :param strict: raise MissingPullback when a pullback is missing, otherwise return None.
    """
    category = relative.base
    _check_lambda(category, partial)
    for left, _ in partial.spans:
        if not relative.is_hypercover(left):
            raise ValueError(f"Left leg {left} is not a hypercover; the partial diagram is not relative.")
    try:
        return _extend(category, partial, order)
    except MissingPullback:
        if strict:
            raise
        return None


def all_right_kan_extensions(relative: RelativeCategory, partial: LambdaData) -> list[SpanDiagram]:
    """
    Every cartesian filling of the Lambda data, one per choice of universal cone at each position.
    """
    category = relative.base
    _check_lambda(category, partial)
    n = len(partial.spans)
    sigma = build_sigma(n)
    positions = _fill_positions(n, "diagonal")
    objects: dict[Element, Obj] = {(i, i): v for i, v in enumerate(partial.vertices)}
    vertical: dict[Element, Mor] = {}
    horizontal: dict[Element, Mor] = {}
    for i, (left, right) in enumerate(partial.spans):
        objects[(i, i + 1)], vertical[(i, i + 1)], horizontal[(i, i + 1)] = category.dom(left), left, right
    found: list[SpanDiagram] = []

    def fill(k: int) -> None:
        if k == len(positions):
            found.append(SpanDiagram(n,
                                     tuple(objects[e] for e in sigma.elements),
                                     tuple(vertical[e] for e in sigma.off_diagonal),
                                     tuple(horizontal[e] for e in sigma.off_diagonal),
                                     category))
            return
        i, j = positions[k]
        for cone in pullback_cones(category, horizontal[(i, j - 1)], vertical[(i + 1, j)]):
            objects[(i, j)], vertical[(i, j)], horizontal[(i, j)] = cone.apex, cone.leg1, cone.leg2
            fill(k + 1)

    fill(0)
    return found


def extend_comparison(source: SpanDiagram, target: SpanDiagram,
                      components: dict[Element, Mor]) -> dict[Element, Mor] | None:
    """
    Extends components given on Lambda_n to all of Sigma_n by mediating maps into the cartesian squares
    of the target, widest positions last.
    :param components: maps source(e) -> target(e) for e in Lambda_n.
    :return: components on every element, or None when some mediating map is missing or not unique.
    """
    category = target.category
    comparison = dict(components)
    for i, j in _fill_positions(target.n, "diagonal"):
        cone = PullbackCone(target.obj((i, j)),
                            target.vertical((i, j)),
                            target.horizontal((i, j)),
                            (target.horizontal((i, j - 1)), target.vertical((i + 1, j))))
        p = category.compose(comparison[(i, j - 1)], source.vertical((i, j)))
        q = category.compose(comparison[(i + 1, j)], source.horizontal((i, j)))
        found = mediating(category, cone, source.obj((i, j)), p, q)
        if len(found) != 1:
            return None
        comparison[(i, j)] = found[0]
    return comparison


def _matches_kan_extension(diagram: SpanDiagram) -> bool:
    category = diagram.category
    try:
        canonical = _extend(category, diagram.lambda_data(), "diagonal")
    except MissingPullback:
        return False
    identities = {e: category.identity(diagram.obj(e)) for e in lambda_subposet(diagram.n)}
    comparison = extend_comparison(diagram, canonical, identities)
    return comparison is not None and all(category.is_iso(m) for m in comparison.values())


def check_diagram_conditions(relative: RelativeCategory, diagram: SpanDiagram | FinFunctor,
                             n: int | None = None) -> DiagramConditions:
    """
    Evaluates independently whether all squares are cartesian, whether the inner squares
    (i' = i + 1, j' = j - 1) are cartesian, and whether the diagram agrees up to mediating isomorphisms
    with the canonical Kan extension of its Lambda_n restriction.
    :param diagram: SpanDiagram, or a functor out of Sigma_n together with n.
    """
    if isinstance(diagram, FinFunctor):
        if n is None:
            raise ValueError("Level n is required for a functor input.")
        diagram = SpanDiagram.from_functor(diagram, n)
    if diagram.category is not relative.base and diagram.category != relative.base:
        raise ValueError("Diagram lives in another category.")
    category = diagram.category
    sigma = diagram.sigma
    return DiagramConditions(
        all(is_pullback(category, diagram.square_cone(s)) for s in sigma.squares()),
        all(is_pullback(category, diagram.square_cone(s)) for s in sigma.inner_squares()),
        _matches_kan_extension(diagram))


def relative_lambda_data(relative: RelativeCategory, n: int,
                         keep: Callable[[Span], bool] | None = None) -> Iterator[LambdaData]:
    """
    All relative functors on Lambda_n, as chains of n spans with hypercover left legs.
    :param keep: optional filter on the spans allowed in a chain.
    """
    category = relative.base
    spans_from: dict[Obj, list[Span]] = {o: [] for o in category.objects}
    for left in relative.ordered_hypercovers():
        for right in category.outgoing(category.dom(left)):
            if keep is None or keep(Span(left, right)):
                spans_from[category.cod(left)].append(Span(left, right))

    def chains(vertices: list[Obj], spans: list[Span]) -> Iterator[LambdaData]:
        if len(spans) == n:
            yield LambdaData(tuple(vertices), tuple(spans))
            return
        for s in spans_from[vertices[-1]]:
            yield from chains(vertices + [category.cod(s.right)], spans + [s])

    for start in category.objects:
        yield from chains([start], [])
