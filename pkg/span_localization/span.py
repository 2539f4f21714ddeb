import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from span_localization.exceptions import BudgetExceeded, MissingPullback
from span_localization.fincat import (FinCategory, FinFunctor, NatTransformation, check_equivalence,
                                      enumerate_functors, identity_name, pullback)
from span_localization.relcat import RelativeCategory
from span_localization.sigma import (LambdaData, SpanDiagram, build_sigma, extend_comparison, relative_lambda_data,
                                     right_kan_extend)
from span_localization.types import CheckResult, Element, MonotoneMap, Mor, Obj, Span

logger = logging.getLogger(__name__)

Span1Cell = Span


class Span2Cell(NamedTuple):
    """
    Arrow between parallel spans: an apex map commuting with both legs.
    """
    source: Span
    target: Span
    apex: Mor


def span_name(span: Span) -> Obj:
    return f"<{span.left},{span.right}>"


class _Ticker:
    def __init__(self, budget: int, what: str, estimate: Callable[[], int] | None = None):
        self.budget = budget
        self.what = what
        self.estimate = estimate
        self.count = 0

    def __call__(self, amount: int = 1) -> None:
        self.count += amount
        if self.count > self.budget:
            raise BudgetExceeded(self.count, self.budget, self.what,
                                 self.estimate() if self.estimate is not None else None)


def compose_spans(relative: RelativeCategory, first: Span, second: Span) -> Span:
    """
    Composite of c <= e -> d with d <= e' -> d' through the canonical pullback of e -> d <- e'.
    :param first: span applied first.
    :param second: span applied second.
    :return: span c <= e x_d e' -> d'.
    """
    category = relative.base
    cone = pullback(category, first.right, second.left)
    if cone is None:
        raise MissingPullback(first.right, second.left)
    return Span(category.compose(first.left, cone.leg1), category.compose(second.right, cone.leg2))


def identity_span(category: FinCategory, obj: Obj) -> Span:
    return Span(category.identity(obj), category.identity(obj))


def span_isomorphism(category: FinCategory, s: Span, t: Span) -> Mor | None:
    """
    :return: an isomorphism apex(s) -> apex(t) commuting with both legs, or None.
    """
    for m in category.hom(category.dom(s.left), category.dom(t.left)):
        if (category.is_iso(m) and category.compose(t.left, m) == s.left
                and category.compose(t.right, m) == s.right):
            return m
    return None


def reduce_span(category: FinCategory, span: Span) -> tuple[Span, Mor]:
    """
    Representative of the class of spans isomorphic to span by an apex isomorphism.
    A class holding a span with identity left leg is represented by it, any other class by its
    lexicographically minimal (left index, right index) member.
    :return: representative and the apex isomorphism from its apex to the apex of span.
    """
    def compute() -> tuple[Span, Mor]:
        left, right = span
        inverse = category.inverse(left)
        if inverse is not None:
            return Span(category.identity(category.cod(left)), category.compose(right, inverse)), inverse
        apex = category.dom(left)
        best: tuple[tuple[int, int], Span, Mor] | None = None
        for x in category.objects:
            for phi in category.hom(x, apex):
                if not category.is_iso(phi):
                    continue
                candidate = Span(category.compose(left, phi), category.compose(right, phi))
                key = (category.morphism_index(candidate.left), category.morphism_index(candidate.right))
                if best is None or key < best[0]:
                    best = (key, candidate, phi)
        assert best is not None
        return best[1], best[2]

    return category.memo(("reduced", span), compute)


def is_reduced(category: FinCategory, span: Span) -> bool:
    return reduce_span(category, span)[0] == span


def _iso_class(category: FinCategory, obj: Obj) -> Obj:
    return category.memo(("iso-class", obj),
                         lambda: next(o for o in category.objects if category.isomorphic(o, obj)))


@dataclass(frozen=True)
class _Arrow:
    source: Obj
    target: Obj
    components: tuple[Mor, ...]


class SpanLevel:
    """
    Category of level-n span diagrams. Objects are named s0, s1, ... in enumeration order and arrows
    t0, t1, ...; an arrow is a natural transformation whose components at every (i, i) are isomorphisms.
    Components are stored in Sigma_n element order.
    """

    def __init__(self, relative: RelativeCategory, n: int, diagrams: Sequence[SpanDiagram],
                 arrows: Sequence[tuple[Obj, Obj, tuple[Mor, ...]]], reduced: bool = False):
        self._relative = relative
        self._n = n
        self._reduced = reduced
        self._diagrams = tuple(diagrams)
        self._names = tuple(f"s{k}" for k in range(len(self._diagrams)))
        self._by_diagram = {d: name for d, name in zip(self._diagrams, self._names)}
        self._by_name = dict(zip(self._names, self._diagrams))
        base = relative.base
        self._arrows: dict[Mor, _Arrow] = {}
        self._by_key: dict[tuple[Obj, Obj, tuple[Mor, ...]], Mor] = {}
        for name, diagram in zip(self._names, self._diagrams):
            identity = _Arrow(name, name, tuple(base.identity(o) for o in diagram.objects))
            self._arrows[f"id_{name}"] = identity
            self._by_key[(name, name, identity.components)] = f"id_{name}"
        morphisms = []
        for k, (source, target, components) in enumerate(arrows):
            name = f"t{k}"
            self._arrows[name] = _Arrow(source, target, components)
            self._by_key[(source, target, components)] = name
            morphisms.append((name, source, target))
        self._category = FinCategory(self._names, morphisms, composer=self._compose,
                                     name=f"Span_{n}({base.name})" if base.name else f"Span_{n}")

    def __repr__(self) -> str:
        return f"SpanLevel(n={self._n}, {len(self._diagrams)} objects, {len(self._arrows)} arrows)"

    def _compose(self, after: Mor, then: Mor) -> Mor | None:
        a, b = self._arrows[after], self._arrows[then]
        base = self._relative.base
        components = tuple(base.compose(x, y) for x, y in zip(a.components, b.components))
        return self._by_key.get((b.source, a.target, components))

    @property
    def n(self) -> int:
        return self._n

    @property
    def relative(self) -> RelativeCategory:
        return self._relative

    @property
    def reduced(self) -> bool:
        return self._reduced

    @property
    def category(self) -> FinCategory:
        """
        :return: the level as a FinCategory.
        """
        return self._category

    @property
    def diagrams(self) -> tuple[SpanDiagram, ...]:
        return self._diagrams

    def diagram(self, name: Obj) -> SpanDiagram:
        return self._by_name[name]

    def object_name(self, diagram: SpanDiagram) -> Obj:
        try:
            return self._by_diagram[diagram]
        except KeyError:
            raise ValueError(f"Diagram {diagram} is not an object of {self}.") from None

    def has_diagram(self, diagram: SpanDiagram) -> bool:
        return diagram in self._by_diagram

    def components(self, arrow: Mor) -> tuple[Mor, ...]:
        return self._arrows[arrow].components

    def component(self, arrow: Mor, e: Element) -> Mor:
        return self._arrows[arrow].components[build_sigma(self._n).index(e)]

    def arrow_name(self, source: Obj, target: Obj, components: Sequence[Mor]) -> Mor:
        try:
            return self._by_key[(source, target, tuple(components))]
        except KeyError:
            raise ValueError(f"No arrow {source} -> {target} with components {tuple(components)}.") from None

    def transformation(self, arrow: Mor) -> NatTransformation:
        """
        :return: the arrow as a natural transformation of functors Sigma_n -> C.
        """
        a = self._arrows[arrow]
        sigma = build_sigma(self._n)
        return NatTransformation(self.diagram(a.source).as_functor(),
                                 self.diagram(a.target).as_functor(),
                                 {f"({i},{j})": m for (i, j), m in zip(sigma.elements, a.components)})

    def violations(self) -> list[str]:
        """
        :return: objects failing the span-diagram conditions and arrows failing naturality or
        the isomorphism condition at (i, i).
        """
        base = self._relative.base
        problems = [f"{name}: {p}" for name, d in zip(self._names, self._diagrams)
                    for p in d.violations(self._relative)]
        sigma = build_sigma(self._n)
        for name, a in self._arrows.items():
            if not self.transformation(name).is_valid:
                problems.append(f"{name} is not natural")
            for i in range(self._n + 1):
                if not base.is_iso(a.components[sigma.index((i, i))]):
                    problems.append(f"{name} is not invertible at ({i},{i})")
        return problems


def _lambda_arrows(category: FinCategory, source: SpanDiagram, target: SpanDiagram,
                   tick: Callable[[], None]) -> Iterator[dict[Element, Mor]]:
    n = source.n
    vertex_choices = []
    for i in range(n + 1):
        isos = [m for m in category.hom(source.obj((i, i)), target.obj((i, i))) if category.is_iso(m)]
        if not isos:
            return
        vertex_choices.append(isos)
    chosen: dict[Element, Mor] = {}

    def fill_span(k: int) -> Iterator[dict[Element, Mor]]:
        if k > n:
            yield dict(chosen)
            return
        e = (k - 1, k)
        left_s, right_s = source.span(k)
        left_t, right_t = target.span(k)
        p = category.compose(chosen[(k - 1, k - 1)], left_s)
        q = category.compose(chosen[(k, k)], right_s)
        for m in category.hom(source.obj(e), target.obj(e)):
            tick()
            if category.compose(left_t, m) == p and category.compose(right_t, m) == q:
                chosen[e] = m
                yield from fill_span(k + 1)
        chosen.pop(e, None)

    def fill_vertex(i: int) -> Iterator[dict[Element, Mor]]:
        if i > n:
            yield from fill_span(1)
            return
        for m in vertex_choices[i]:
            tick()
            chosen[(i, i)] = m
            yield from fill_vertex(i + 1)
        chosen.pop((i, i), None)

    yield from fill_vertex(0)


def _level_space(relative: RelativeCategory, n: int) -> int:
    """
    Lambda_n data bounded by the widest fan of spans out of one object, plus one comparison search per
    pair of data, each over at most the largest hom-set per element of Sigma_n.
    """
    category = relative.base
    fans = [len(spans_from(relative, c)) for c in category.objects]
    data = len(category.objects) * max(fans, default=0) ** n
    widest = max((len(category.hom(a, b)) for a in category.objects for b in category.objects), default=0)
    return data + data * data * widest ** len(build_sigma(n).elements)


def build_span_level(relative: RelativeCategory, n: int, budget: int, reduced: bool = False) -> SpanLevel:
    """
    Enumerates relative functors on Lambda_n, extends each by canonical pullbacks, drops strict
    duplicates and collects every transformation with invertible (i, i) components.
    :param budget: maximal number of enumeration steps.
    :param reduced: keep only diagrams whose spans are reduced representatives. The reduced level is a
    full subcategory meeting every isomorphism class, so it is equivalent to the whole level.
    :return: SpanLevel of level n.
    """
    if n < 0:
        raise ValueError(f"Level must be non-negative, not {n}")
    category = relative.base
    tick = _Ticker(budget, f"span level {n}", lambda: _level_space(relative, n))
    sigma = build_sigma(n)
    keep = (lambda s: is_reduced(category, s)) if reduced else None
    extended: dict[SpanDiagram, None] = {}
    for data in relative_lambda_data(relative, n, keep):
        tick()
        diagram = right_kan_extend(relative, data)
        assert diagram is not None
        extended.setdefault(diagram)
    diagrams = list(extended)
    names = {d: f"s{k}" for k, d in enumerate(diagrams)}

    groups: dict[tuple[Obj, ...], list[SpanDiagram]] = {}
    for d in diagrams:
        groups.setdefault(tuple(_iso_class(category, v) for v in d.vertices()), []).append(d)
    arrows: list[tuple[Obj, Obj, tuple[Mor, ...]]] = []
    for source in diagrams:
        for target in groups[tuple(_iso_class(category, v) for v in source.vertices())]:
            for partial in _lambda_arrows(category, source, target, tick):
                full = extend_comparison(source, target, partial)
                if full is None:
                    continue
                components = tuple(full[e] for e in sigma.elements)
                if source == target and all(category.is_identity(m) for m in components):
                    continue
                arrows.append((names[source], names[target], components))
    logger.debug("span level %d of %s%s: %d objects, %d arrows, %d steps",
                 n, category, " (reduced)" if reduced else "", len(diagrams), len(arrows), tick.count)
    return SpanLevel(relative, n, diagrams, arrows, reduced)


def _normalize(level: SpanLevel, diagram: SpanDiagram) -> tuple[Obj, dict[Element, Mor]]:
    """
    Object of the level isomorphic to a cartesian relative diagram, with the comparison isomorphism.
    """
    category = level.relative.base
    reduced = []
    components: dict[Element, Mor] = {(i, i): category.identity(diagram.obj((i, i))) for i in range(diagram.n + 1)}
    for k in range(1, diagram.n + 1):
        representative, phi = reduce_span(category, diagram.span(k))
        reduced.append(representative)
        inverse = category.inverse(phi)
        assert inverse is not None
        components[(k - 1, k)] = inverse
    canonical = right_kan_extend(level.relative, LambdaData(diagram.vertices(), tuple(reduced)))
    assert canonical is not None
    comparison = extend_comparison(diagram, canonical, components)
    if comparison is None:
        raise ValueError(f"Diagram {diagram} is not cartesian.")
    return level.object_name(canonical), comparison


def simplicial_action(alpha: MonotoneMap, source: SpanLevel, target: SpanLevel) -> FinFunctor:
    """
    Functor Span_n -> Span_m induced by alpha: [m] -> [n], restriction along Sigma(alpha) followed by
    the comparison isomorphism onto the chosen object.
    """
    if alpha.target != source.n or len(alpha.values) - 1 != target.n:
        raise ValueError(f"Map {alpha} does not run from [{target.n}] to [{source.n}].")
    category = source.relative.base
    points = [(e, (alpha.values[e[0]], alpha.values[e[1]])) for e in build_sigma(target.n).elements]
    object_map: dict[Obj, Obj] = {}
    comparisons: dict[Obj, dict[Element, Mor]] = {}
    for name in source.category.objects:
        object_map[name], comparisons[name] = _normalize(target, source.diagram(name).precompose(alpha))
    morphism_map: dict[Mor, Mor] = {}
    for m in source.category.morphisms:
        theta_s, theta_t = comparisons[m.dom], comparisons[m.cod]
        components = []
        for e, image in points:
            back = category.inverse(theta_s[e])
            assert back is not None
            components.append(category.compose_path([back, source.component(m.name, image), theta_t[e]]))
        morphism_map[m.name] = target.arrow_name(object_map[m.dom], object_map[m.cod], components)
    return FinFunctor(source.category, target.category, object_map, morphism_map)


class _FiberProduct:
    """
    Strict iterated fiber product Span_1 x_{Span_0} ... x_{Span_0} Span_1 of n factors.
    """

    def __init__(self, level: SpanLevel, n: int, tick: Callable[[], None]):
        self._level = level
        cat = level.category
        start: dict[Obj, list[Obj]] = {}
        for o in cat.objects:
            start.setdefault(level.diagram(o).obj((0, 0)), []).append(o)
        tuples: list[tuple[Obj, ...]] = []

        def chains(current: list[Obj]) -> None:
            if len(current) == n:
                tuples.append(tuple(current))
                return
            for o in start.get(level.diagram(current[-1]).obj((1, 1)), []):
                tick()
                chains(current + [o])

        for o in cat.objects:
            chains([o])
        self.objects = tuples
        self.names = {t: f"p{k}" for k, t in enumerate(tuples)}
        self._arrows: dict[Mor, tuple[Mor, ...]] = {}
        self._by_key: dict[tuple[Mor, ...], Mor] = {}
        morphisms = []
        for t in tuples:
            self._by_key[tuple(cat.identity(o) for o in t)] = f"id_{self.names[t]}"
        for t in tuples:
            for arrows in self._arrow_tuples(t, tick):
                if all(cat.is_identity(a) for a in arrows):
                    continue
                name = f"q{len(morphisms)}"
                target = tuple(cat.cod(a) for a in arrows)
                self._arrows[name] = arrows
                self._by_key[arrows] = name
                morphisms.append((name, self.names[t], self.names[target]))
        for t in tuples:
            self._arrows[f"id_{self.names[t]}"] = tuple(cat.identity(o) for o in t)
        self.category = FinCategory([self.names[t] for t in tuples], morphisms, composer=self._compose,
                                    name=f"Span_1^{n}")

    def _arrow_tuples(self, objects: tuple[Obj, ...], tick: Callable[[], None]) -> Iterator[tuple[Mor, ...]]:
        level = self._level
        cat = level.category

        def extend(current: list[Mor]) -> Iterator[tuple[Mor, ...]]:
            k = len(current)
            if k == len(objects):
                yield tuple(current)
                return
            for a in cat.outgoing(objects[k]):
                tick()
                if k and level.component(current[-1], (1, 1)) != level.component(a, (0, 0)):
                    continue
                yield from extend(current + [a])

        yield from extend([])

    def _compose(self, after: Mor, then: Mor) -> Mor | None:
        cat = self._level.category
        composite = tuple(cat.compose(a, b) for a, b in zip(self._arrows[after], self._arrows[then]))
        return self._by_key.get(composite)

    def arrow(self, arrows: tuple[Mor, ...]) -> Mor:
        return self._by_key[arrows]


def segal_check(relative: RelativeCategory, n: int, budget: int, reduced: bool = True) -> CheckResult:
    """
    Equivalence test for the Segal functor Span_n -> Span_1 x_{Span_0} ... x_{Span_0} Span_1,
    restriction along the n edges (k - 1, k) of [n].
    :param reduced: run on the reduced levels. False runs on the whole levels.
    :return: CheckResult of check_equivalence, witness in terms of level and fiber product names.
    """
    if n < 1:
        raise ValueError(f"Segal check needs n >= 1, not {n}")
    level_1 = build_span_level(relative, 1, budget, reduced)
    objects, arrows = len(level_1.category.objects), len(level_1.category.morphisms)
    tick = _Ticker(budget, "Segal fiber product", lambda: objects ** n + objects * arrows ** n)
    level_n = level_1 if n == 1 else build_span_level(relative, n, budget, reduced)
    edges = [simplicial_action(MonotoneMap((k - 1, k), n), level_n, level_1) for k in range(1, n + 1)]
    product = _FiberProduct(level_1, n, tick)
    object_map = {o: product.names[tuple(e.obj(o) for e in edges)] for o in level_n.category.objects}
    morphism_map = {m.name: product.arrow(tuple(e.mor(m.name) for e in edges)) for m in level_n.category.morphisms}
    result = check_equivalence(FinFunctor(level_n.category, product.category, object_map, morphism_map))
    logger.info("Segal check n=%d on %s: %s", n, relative.base, result.ok)
    return result


def chain_vertices(category: FinCategory, chain: Sequence[Mor], start: Obj | None = None) -> tuple[Obj, ...]:
    if not chain:
        if start is None:
            raise ValueError("Empty chain needs a start object.")
        return (start,)
    for f, g in zip(chain[:-1], chain[1:]):
        if category.cod(f) != category.dom(g):
            raise ValueError(f"Chain is not composable at {f}, {g}.")
    return tuple([category.dom(chain[0])] + [category.cod(f) for f in chain])


def restrict_chain(category: FinCategory, chain: Sequence[Mor], alpha: MonotoneMap,
                   start: Obj | None = None) -> tuple[tuple[Mor, ...], Obj]:
    """
    alpha^*(chain) for alpha: [m] -> [n]: the chain c_alpha(0) -> ... -> c_alpha(m) of composites.
    :return: restricted chain and its first object.
    """
    vertices = chain_vertices(category, chain, start)
    if alpha.target != len(vertices) - 1:
        raise ValueError(f"Map {alpha} does not land in [{len(vertices) - 1}].")
    values = alpha.values
    restricted = tuple(category.compose_path(list(chain[values[k - 1]:values[k]]), vertices[values[k - 1]])
                       for k in range(1, len(values)))
    return restricted, vertices[values[0]]


def nerve_unit(relative: RelativeCategory, chain: Sequence[Mor], start: Obj | None = None) -> SpanDiagram:
    """
    Degenerate diagram of a chain c_0 -> ... -> c_n: F(i, j) = c_i, identity marked edges and the chain
    composites as horizontal edges.
    """
    category = relative.base
    vertices = chain_vertices(category, chain, start)
    n = len(vertices) - 1
    sigma = build_sigma(n)
    return SpanDiagram(n,
                       tuple(vertices[i] for i, _ in sigma.elements),
                       tuple(category.identity(vertices[i]) for i, _ in sigma.off_diagonal),
                       tuple(chain[i] for i, _ in sigma.off_diagonal),
                       category)


def unit_equivalence_check(relative: RelativeCategory, n: int, budget: int) -> CheckResult:
    """
    For W the isomorphisms: the functor from the groupoid of chains [n] -> C and natural isomorphisms
    to Span_n, sending a chain to its degenerate diagram, is an equivalence.
    """
    category = relative.base
    if relative.hypercovers != frozenset(category.isomorphisms()):
        raise ValueError("Unit comparison needs W to be the isomorphisms.")
    level = build_span_level(relative, n, budget)
    chains: list[tuple[tuple[Mor, ...], Obj]] = []
    for functor in enumerate_functors(FinCategory.walking_arrow(n), category, budget):
        chains.append((tuple(functor.mor(f"{k - 1}<{k}") for k in range(1, n + 1)), functor.obj("0")))
    names = [f"c{k}" for k in range(len(chains))]
    morphisms: list[tuple[Mor, Obj, Obj]] = []
    vertices = [chain_vertices(category, c, s) for c, s in chains]
    arrows: dict[Mor, tuple[int, int, tuple[Mor, ...]]] = {}
    by_key: dict[tuple[int, int, tuple[Mor, ...]], Mor] = {}
    for a, (chain_a, _) in enumerate(chains):
        for b, (chain_b, _) in enumerate(chains):
            choices: list[list[Mor]] = [[m for m in category.hom(x, y) if category.is_iso(m)]
                                        for x, y in zip(vertices[a], vertices[b])]

            def extend(current: list[Mor]) -> Iterator[tuple[Mor, ...]]:
                k = len(current)
                if k == n + 1:
                    yield tuple(current)
                    return
                for u in choices[k]:
                    if k and category.compose(u, chain_a[k - 1]) != category.compose(chain_b[k - 1], current[-1]):
                        continue
                    yield from extend(current + [u])

            for components in extend([]):
                key = (a, b, components)
                if a == b and all(category.is_identity(u) for u in components):
                    by_key[key] = f"id_{names[a]}"
                    arrows[f"id_{names[a]}"] = key
                    continue
                name = f"u{len(morphisms)}"
                morphisms.append((name, names[a], names[b]))
                arrows[name] = key
                by_key[key] = name

    def compose(after: Mor, then: Mor) -> Mor | None:
        a1, b1, u1 = arrows[after]
        a0, b0, u0 = arrows[then]
        return by_key.get((a0, b1, tuple(category.compose(x, y) for x, y in zip(u1, u0))))

    groupoid = FinCategory(names, morphisms, composer=compose, name=f"Chains_{n}")
    sigma = build_sigma(n)
    object_map = {names[k]: level.object_name(nerve_unit(relative, c, s)) for k, (c, s) in enumerate(chains)}
    morphism_map = {}
    for name, (a, b, components) in arrows.items():
        morphism_map[name] = level.arrow_name(object_map[names[a]], object_map[names[b]],
                                              [components[i] for i, _ in sigma.elements])
    return check_equivalence(FinFunctor(groupoid, level.category, object_map, morphism_map))


def spans_from(relative: RelativeCategory, c: Obj, d: Obj | None = None) -> list[Span]:
    """
    :return: spans c <= e -> d (any d when omitted) in hypercover order, then right leg order.
    """
    category = relative.base
    return [Span(left, right)
            for left in relative.ordered_hypercovers() if category.cod(left) == c
            for right in category.outgoing(category.dom(left))
            if d is None or category.cod(right) == d]


def _span_category(category: FinCategory, spans: Sequence[Span],
                   arrows: Sequence[tuple[Mor, Span, Span, Mor]], name: str) -> FinCategory:
    """
    Category on named spans; arrows are (name, source, target, key) with composite keys given by the
    apex composite.
    """
    objects = [span_name(s) for s in spans]
    table: dict[Mor, tuple[Span, Span, Mor]] = {}
    by_key: dict[tuple[Obj, Obj, Mor], Mor] = {}
    morphisms = []
    for arrow, source, target, key in arrows:
        table[arrow] = (source, target, key)
        by_key[(span_name(source), span_name(target), key)] = arrow
        if source != target or not category.is_identity(key):
            morphisms.append((arrow, span_name(source), span_name(target)))

    def compose(after: Mor, then: Mor) -> Mor | None:
        s0, _, k0 = table[then]
        _, t1, k1 = table[after]
        return by_key.get((span_name(s0), span_name(t1), category.compose(k1, k0)))

    return FinCategory(objects, morphisms, composer=compose, name=name)


def _mapping_arrows(category: FinCategory, spans: Sequence[Span]) -> list[tuple[Mor, Span, Span, Mor]]:
    arrows = []
    for s in spans:
        for t in spans:
            for m in category.hom(category.dom(s.left), category.dom(t.left)):
                if category.compose(t.left, m) == s.left and category.compose(t.right, m) == s.right:
                    if s == t and category.is_identity(m):
                        name = identity_name(span_name(s))
                    else:
                        name = f"{m}@{span_name(s)}->{span_name(t)}"
                    arrows.append((name, s, t, m))
    return arrows


def mapping_category(relative: RelativeCategory, c: Obj, d: Obj, normalized: bool = True) -> FinCategory:
    """
    Category Span^W(c, d) of spans c <= e -> d with arrows apex maps commuting with both legs.
    :param normalized: when False, arrows may also act by automorphisms of c and d; an arrow is then
    a triple (u_c, m, u_d) with l'∘m = u_c∘l and r'∘m = u_d∘r.
    """
    category = relative.base
    spans = spans_from(relative, c, d)
    label = f"Span({c},{d})"
    if normalized:
        return _span_category(category, spans, _mapping_arrows(category, spans), label)
    automorphisms_c = [u for u in category.hom(c, c) if category.is_iso(u)]
    automorphisms_d = [u for u in category.hom(d, d) if category.is_iso(u)]
    arrows: dict[Mor, tuple[Span, Span, tuple[Mor, Mor, Mor]]] = {}
    morphisms: list[tuple[Mor, Obj, Obj]] = []
    by_key: dict[tuple[Obj, Obj, tuple[Mor, Mor, Mor]], Mor] = {}
    for s in spans:
        for t in spans:
            for m in category.hom(category.dom(s.left), category.dom(t.left)):
                for u in automorphisms_c:
                    for v in automorphisms_d:
                        if (category.compose(t.left, m) != category.compose(u, s.left)
                                or category.compose(t.right, m) != category.compose(v, s.right)):
                            continue
                        key = (u, m, v)
                        if s == t and all(category.is_identity(x) for x in key):
                            name = identity_name(span_name(s))
                        else:
                            name = f"{u},{m},{v}@{span_name(s)}->{span_name(t)}"
                            morphisms.append((name, span_name(s), span_name(t)))
                        arrows[name] = (s, t, key)
                        by_key[(span_name(s), span_name(t), key)] = name

    def compose(after: Mor, then: Mor) -> Mor | None:
        s0, _, (u0, m0, v0) = arrows[then]
        _, t1, (u1, m1, v1) = arrows[after]
        key = (category.compose(u1, u0), category.compose(m1, m0), category.compose(v1, v0))
        return by_key.get((span_name(s0), span_name(t1), key))

    return FinCategory([span_name(s) for s in spans], morphisms, composer=compose, name=f"{label}^aut")


class HCategory:
    """
    Category H(c) of spans c <= e -> d over all endpoints d. An arrow is a pair (m, h) of an apex map
    m: e -> e' over c and an endpoint map h: d -> d' with r'∘m = h∘r. The projection sends a span
    to its endpoint.
    """

    def __init__(self, relative: RelativeCategory, c: Obj):
        self._relative = relative
        self._c = c
        category = relative.base
        self._spans = {span_name(s): s for s in spans_from(relative, c)}
        self._arrows: dict[Mor, tuple[Obj, Obj, Mor, Mor]] = {}
        self._by_key: dict[tuple[Obj, Obj, Mor, Mor], Mor] = {}
        morphisms: list[tuple[Mor, Obj, Obj]] = []
        for x, s in self._spans.items():
            for y, t in self._spans.items():
                for m in category.hom(category.dom(s.left), category.dom(t.left)):
                    if category.compose(t.left, m) != s.left:
                        continue
                    for h in category.hom(category.cod(s.right), category.cod(t.right)):
                        if category.compose(t.right, m) != category.compose(h, s.right):
                            continue
                        if x == y and category.is_identity(m) and category.is_identity(h):
                            name = identity_name(x)
                        else:
                            name = f"{m}|{h}@{x}->{y}"
                            morphisms.append((name, x, y))
                        self._arrows[name] = (x, y, m, h)
                        self._by_key[(x, y, m, h)] = name

        def compose(after: Mor, then: Mor) -> Mor | None:
            x, _, m0, h0 = self._arrows[then]
            _, z, m1, h1 = self._arrows[after]
            return self._by_key.get((x, z, category.compose(m1, m0), category.compose(h1, h0)))

        self._category = FinCategory(list(self._spans), morphisms, composer=compose, name=f"H({c})")
        self._projection = FinFunctor(self._category, category,
                                      {x: category.cod(s.right) for x, s in self._spans.items()},
                                      {name: h for name, (_, _, _, h) in self._arrows.items()})

    def __repr__(self) -> str:
        return f"HCategory({self._c}, {len(self._spans)} spans)"

    @property
    def relative(self) -> RelativeCategory:
        return self._relative

    @property
    def base_object(self) -> Obj:
        return self._c

    @property
    def category(self) -> FinCategory:
        return self._category

    @property
    def projection(self) -> FinFunctor:
        return self._projection

    def span(self, x: Obj) -> Span:
        return self._spans[x]

    def object_name(self, span: Span) -> Obj:
        name = span_name(span)
        if name not in self._spans:
            raise ValueError(f"Span {span} is not an object of {self}.")
        return name

    def parts(self, arrow: Mor) -> tuple[Mor, Mor]:
        """
        :return: (apex map, endpoint map) of an arrow.
        """
        _, _, m, h = self._arrows[arrow]
        return m, h

    def arrow_name(self, x: Obj, y: Obj, m: Mor, h: Mor) -> Mor:
        try:
            return self._by_key[(x, y, m, h)]
        except KeyError:
            raise ValueError(f"No arrow ({m}, {h}) from {x} to {y} in {self}.") from None

    def fiber(self, d: Obj) -> FinCategory:
        """
        Subcategory over d: spans ending at d and arrows with identity endpoint map.
        """
        category = self._relative.base
        spans = [s for s in self._spans.values() if category.cod(s.right) == d]
        arrows = []
        for x, y, m, h in self._arrows.values():
            if h == category.identity(d) and category.cod(self._spans[x].right) == d:
                label = identity_name(x) if x == y and category.is_identity(m) else f"{m}@{x}->{y}"
                arrows.append((label, self._spans[x], self._spans[y], m))
        return _span_category(category, spans, arrows, f"Span({self._c},{d})")


def build_H(relative: RelativeCategory, c: Obj) -> HCategory:
    return HCategory(relative, c)


def cocartesian_lift(H: HCategory, x: Obj, h: Mor) -> Mor:
    """
    Lift (id, h): x -> (l, h∘r) of h: d -> d' out of the span x = (l, r).
    """
    category = H.relative.base
    left, right = H.span(x)
    if category.dom(h) != category.cod(right):
        raise ValueError(f"{h} does not start at the endpoint of {x}.")
    y = H.object_name(Span(left, category.compose(h, right)))
    return H.arrow_name(x, y, category.identity(category.dom(left)), h)


def cartesian_lift(H: HCategory, x: Obj, w: Mor) -> Mor:
    """
    Lift of a hypercover w: d' -> d into the span x = (l, r): the arrow (p1, w) out of the span
    (l∘p1, p2) built on the canonical pullback of r along w.
    """
    relative = H.relative
    category = relative.base
    if not relative.is_hypercover(w):
        raise ValueError(f"{w} is not a hypercover.")
    left, right = H.span(x)
    cone = pullback(category, right, w)
    if cone is None:
        raise MissingPullback(right, w)
    source = H.object_name(Span(category.compose(left, cone.leg1), cone.leg2))
    return H.arrow_name(source, x, cone.leg1, w)


def is_cocartesian(H: HCategory, arrow: Mor) -> bool:
    """
    Every u: x -> z with pi(u) = g∘h factors uniquely as v∘arrow with pi(v) = g.
    """
    cat, base, pi = H.category, H.relative.base, H.projection
    x, y = cat.dom(arrow), cat.cod(arrow)
    h = pi.mor(arrow)
    for u in cat.outgoing(x):
        z = cat.cod(u)
        for g in base.hom(base.cod(h), pi.obj(z)):
            if base.compose(g, h) != pi.mor(u):
                continue
            factors = [v for v in cat.hom(y, z) if pi.mor(v) == g and cat.compose(v, arrow) == u]
            if len(factors) != 1:
                return False
    return True


def is_cartesian(H: HCategory, arrow: Mor) -> bool:
    """
    Every u: z -> x with pi(u) = w∘g factors uniquely as arrow∘v with pi(v) = g.
    """
    cat, base, pi = H.category, H.relative.base, H.projection
    y, x = cat.dom(arrow), cat.cod(arrow)
    w = pi.mor(arrow)
    for u in cat.incoming(x):
        z = cat.dom(u)
        for g in base.hom(pi.obj(z), base.dom(w)):
            if base.compose(w, g) != pi.mor(u):
                continue
            factors = [v for v in cat.hom(z, y) if pi.mor(v) == g and cat.compose(arrow, v) == u]
            if len(factors) != 1:
                return False
    return True


def is_cocartesian_fibration(H: HCategory) -> CheckResult:
    """
    :return: CheckResult, witness (span, morphism) without a cocartesian lift.
    """
    base = H.relative.base
    for x in H.category.objects:
        for h in base.outgoing(H.projection.obj(x)):
            if not is_cocartesian(H, cocartesian_lift(H, x, h)):
                return CheckResult(False, (x, h))
    return CheckResult(True)


def level_sizes(levels: Sequence[SpanLevel]) -> list[tuple[int, int, int]]:
    """
    :return: (level, objects, arrows) per level, identities excluded from the arrow count.
    """
    return [(level.n, len(level.category.objects), len(level.category.non_identities())) for level in levels]
