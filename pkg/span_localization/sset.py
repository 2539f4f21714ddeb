import logging
import random
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import prod
from typing import Any, Self

import networkx as nx
from sympy import Matrix

from span_localization.exceptions import BudgetExceeded, DimensionBoundTooLow
from span_localization.fincat import FinCategory, FinFunctor
from span_localization.horn import HornKind, horn_kind
from span_localization.relcat import RelativeCategory
from span_localization.types import CheckResult, LiftingProblem, Mor, Obj, Simplex

logger = logging.getLogger(__name__)


class TruncatedSimplicialSet:
    """
    Simplicial set stored up to dimension dim: simplices per dimension with tabulated faces d_0..d_k
    and degeneracies s_0..s_k (the latter below the top dimension).
    :param dim: dimension bound D.
    :param simplices: ordered k-simplices for k = 0..D.
    :param face: (k, i, x) -> d_i x for a k-simplex x.
    :param degeneracy: (k, i, x) -> s_i x for a k-simplex x.
    """

    def __init__(self,
                 dim: int,
                 simplices: Sequence[Sequence[Simplex]],
                 face: Callable[[int, int, Simplex], Simplex],
                 degeneracy: Callable[[int, int, Simplex], Simplex],
                 name: str = ""):
        if dim < 0:
            raise ValueError(f"Dimension bound must be non-negative, not {dim}")
        if len(simplices) != dim + 1:
            raise ValueError(f"Expected simplices for dimensions 0..{dim}, got {len(simplices)} levels.")
        self._dim = dim
        self._name = name
        self._simplices = tuple(tuple(level) for level in simplices)
        self._index = tuple({x: k for k, x in enumerate(level)} for level in self._simplices)
        self._faces: tuple[dict[Simplex, tuple[Simplex, ...]], ...] = tuple(
            {x: tuple(face(k, i, x) for i in range(k + 1)) for x in self._simplices[k]} if k else {}
            for k in range(dim + 1))
        self._degeneracies: tuple[dict[Simplex, tuple[Simplex, ...]], ...] = tuple(
            {x: tuple(degeneracy(k, i, x) for i in range(k + 1)) for x in self._simplices[k]} if k < dim else {}
            for k in range(dim + 1))
        self._degenerate = tuple(
            frozenset(y for x in self._simplices[k - 1] for y in self._degeneracies[k - 1][x]) if k else frozenset()
            for k in range(dim + 1))

    def __repr__(self) -> str:
        label = f"{self._name}: " if self._name else ""
        return f"TruncatedSimplicialSet({label}D={self._dim}, sizes {[len(s) for s in self._simplices]})"

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def name(self) -> str:
        return self._name

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        return self._simplices[k]

    def index(self, k: int, x: Simplex) -> int:
        return self._index[k][x]

    def contains(self, k: int, x: Simplex) -> bool:
        return x in self._index[k]

    def face(self, k: int, i: int, x: Simplex) -> Simplex:
        return self._faces[k][x][i]

    def faces(self, k: int, x: Simplex) -> tuple[Simplex, ...]:
        return self._faces[k][x]

    def degeneracy(self, k: int, i: int, x: Simplex) -> Simplex:
        return self._degeneracies[k][x][i]

    def is_degenerate(self, k: int, x: Simplex) -> bool:
        return x in self._degenerate[k]

    def nondegenerate(self, k: int) -> list[Simplex]:
        return [x for x in self._simplices[k] if x not in self._degenerate[k]]

    def vertices(self, k: int, x: Simplex) -> tuple[Simplex, ...]:
        """
        :return: the k + 1 vertices of x in order.
        """
        result = []
        for j in range(k + 1):
            y, level = x, k
            for _ in range(k - j):
                y = self.face(level, level, y)
                level -= 1
            for _ in range(j):
                y = self.face(level, 0, y)
                level -= 1
            result.append(y)
        return tuple(result)

    def degenerate_on(self, v: Simplex, k: int) -> Simplex:
        """
        :return: the totally degenerate k-simplex s_0...s_0 v.
        """
        x = v
        for level in range(k):
            x = self.degeneracy(level, 0, x)
        return x

    def violations(self) -> list[str]:
        """
        :return: every failed closure condition or simplicial identity, as messages.
        """
        problems = []
        for k in range(1, self._dim + 1):
            for x in self._simplices[k]:
                for y in self._faces[k][x]:
                    if y not in self._index[k - 1]:
                        problems.append(f"face of {x} is not a stored simplex")
        for k in range(self._dim):
            for x in self._simplices[k]:
                for y in self._degeneracies[k][x]:
                    if y not in self._index[k + 1]:
                        problems.append(f"degeneracy of {x} is not a stored simplex")
        if problems:
            return problems
        for k in range(2, self._dim + 1):
            for x in self._simplices[k]:
                for j in range(k + 1):
                    for i in range(j):
                        if self.face(k - 1, i, self.face(k, j, x)) != self.face(k - 1, j - 1, self.face(k, i, x)):
                            problems.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on {x}")
        for k in range(self._dim):
            for x in self._simplices[k]:
                for j in range(k + 1):
                    s = self.degeneracy(k, j, x)
                    for i in range(k + 2):
                        left = self.face(k + 1, i, s)
                        if i < j:
                            right = self.degeneracy(k - 1, j - 1, self.face(k, i, x))
                        elif i in (j, j + 1):
                            right = x
                        else:
                            right = self.degeneracy(k - 1, j, self.face(k, i - 1, x))
                        if left != right:
                            problems.append(f"d_{i} s_{j} fails on {x}")
                    if k + 1 < self._dim:
                        for i in range(j + 1):
                            if (self.degeneracy(k + 1, i, s)
                                    != self.degeneracy(k + 1, j + 1, self.degeneracy(k, i, x))):
                                problems.append(f"s_{i} s_{j} != s_{j + 1} s_{i} on {x}")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def restrict(self, keep: Callable[[int, Simplex], bool], name: str = "") -> "TruncatedSimplicialSet":
        """
        Simplicial subset of the simplices selected by keep; keep must be closed under faces and degeneracies.
        """
        return TruncatedSimplicialSet(self._dim,
                                      [[x for x in self._simplices[k] if keep(k, x)] for k in range(self._dim + 1)],
                                      self.face, self.degeneracy, name)


class Nerve(TruncatedSimplicialSet):
    """
    Nerve of a finite category: k-simplices are chains of k composable morphisms in order of application,
    0-simplices are 1-tuples of objects.
    """

    def __init__(self, category: FinCategory, dim: int):
        self._category = category
        simplices: list[list[Simplex]] = [[(o,) for o in category.objects]]
        if dim >= 1:
            simplices.append([(m.name,) for m in category.morphisms])
        for _ in range(2, dim + 1):
            simplices.append([chain + (g,) for chain in simplices[-1]
                              for g in category.outgoing(category.cod(chain[-1]))])
        super().__init__(dim, simplices, self._face, self._degeneracy, f"N({category.name})")

    @property
    def category(self) -> FinCategory:
        return self._category

    def _face(self, k: int, i: int, x: Simplex) -> Simplex:
        c = self._category
        if k == 1:
            return (c.cod(x[0]),) if i == 0 else (c.dom(x[0]),)
        if i == 0:
            return x[1:]
        if i == k:
            return x[:-1]
        return x[:i - 1] + (c.compose(x[i], x[i - 1]),) + x[i + 1:]

    def _degeneracy(self, k: int, i: int, x: Simplex) -> Simplex:
        c = self._category
        if k == 0:
            return (c.identity(x[0]),)
        vertex = c.dom(x[0]) if i == 0 else c.cod(x[i - 1])
        return x[:i] + (c.identity(vertex),) + x[i:]


def nerve(category: FinCategory, dim: int) -> Nerve:
    return Nerve(category, dim)


def _simplex_faces(k: int, i: int, x: Simplex) -> Simplex:
    return x[:i] + x[i + 1:]


def _simplex_degeneracies(k: int, i: int, x: Simplex) -> Simplex:
    return x[:i + 1] + x[i:]


def _standard_subset(n: int, dim: int, keep: Callable[[Simplex], bool], name: str) -> TruncatedSimplicialSet:
    simplices = [[x for x in combinations_with_replacement(range(n + 1), k + 1) if keep(x)] for k in range(dim + 1)]
    return TruncatedSimplicialSet(dim, simplices, _simplex_faces, _simplex_degeneracies, name)


def standard_simplex(n: int, dim: int) -> TruncatedSimplicialSet:
    """
    Delta[n] up to dimension dim; simplices are monotone vertex tuples.
    """
    return _standard_subset(n, dim, lambda x: True, f"Delta[{n}]")


def boundary(n: int, dim: int) -> TruncatedSimplicialSet:
    return _standard_subset(n, dim, lambda x: len(set(x)) < n + 1, f"dDelta[{n}]")


def horn(n: int, i: int, dim: int) -> TruncatedSimplicialSet:
    """
    Lambda^i[n]: simplices missing some vertex other than i.
    """
    if not 0 <= i <= n:
        raise ValueError(f"Horn index {i} is outside [0, {n}].")
    return _standard_subset(n, dim, lambda x: len(set(x) | {i}) < n + 1, f"Lambda^{i}[{n}]")


def terminal_sset(dim: int) -> TruncatedSimplicialSet:
    return standard_simplex(0, dim)


def disjoint_union(*parts: TruncatedSimplicialSet) -> TruncatedSimplicialSet:
    """
    Coproduct; simplices are tagged (part index, simplex).
    """
    if not parts:
        raise ValueError("Disjoint union needs at least one part.")
    dim = min(p.dim for p in parts)
    return TruncatedSimplicialSet(
        dim,
        [[(t, x) for t, p in enumerate(parts) for x in p.simplices(k)] for k in range(dim + 1)],
        lambda k, i, x: (x[0], parts[x[0]].face(k, i, x[1])),
        lambda k, i, x: (x[0], parts[x[0]].degeneracy(k, i, x[1])),
        " + ".join(p.name for p in parts))


class SSetMap:
    """
    Map of truncated simplicial sets given dimensionwise.
    :param source: X.
    :param target: Y.
    :param mapping: (k, x) -> image of the k-simplex x.
    """

    def __init__(self, source: TruncatedSimplicialSet, target: TruncatedSimplicialSet,
                 mapping: Callable[[int, Simplex], Simplex]):
        if source.dim > target.dim:
            raise ValueError("Target is truncated below the source dimension.")
        self._source = source
        self._target = target
        self._images = tuple({x: mapping(k, x) for x in source.simplices(k)} for k in range(source.dim + 1))

    def __repr__(self) -> str:
        return f"SSetMap({self._source} -> {self._target})"

    @property
    def source(self) -> TruncatedSimplicialSet:
        return self._source

    @property
    def target(self) -> TruncatedSimplicialSet:
        return self._target

    @property
    def dim(self) -> int:
        return self._source.dim

    def __call__(self, k: int, x: Simplex) -> Simplex:
        return self._images[k][x]

    def preimages(self, k: int) -> dict[Simplex, list[Simplex]]:
        """
        :return: target k-simplex -> source k-simplices over it, in source order.
        """
        over: dict[Simplex, list[Simplex]] = {}
        for x in self._source.simplices(k):
            over.setdefault(self._images[k][x], []).append(x)
        return over

    def violations(self) -> list[str]:
        X, Y = self._source, self._target
        problems = []
        for k in range(X.dim + 1):
            for x in X.simplices(k):
                if not Y.contains(k, self(k, x)):
                    problems.append(f"image of {x} is not a simplex of the target")
        if problems:
            return problems
        for k in range(1, X.dim + 1):
            for x in X.simplices(k):
                for i in range(k + 1):
                    if self(k - 1, X.face(k, i, x)) != Y.face(k, i, self(k, x)):
                        problems.append(f"map does not commute with d_{i} on {x}")
        for k in range(X.dim):
            for x in X.simplices(k):
                for i in range(k + 1):
                    if self(k + 1, X.degeneracy(k, i, x)) != Y.degeneracy(k, i, self(k, x)):
                        problems.append(f"map does not commute with s_{i} on {x}")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    @classmethod
    def identity(cls, X: TruncatedSimplicialSet) -> Self:
        return cls(X, X, lambda k, x: x)

    @classmethod
    def to_terminal(cls, X: TruncatedSimplicialSet) -> Self:
        return cls(X, terminal_sset(X.dim), lambda k, x: (0,) * (k + 1))


def nerve_map(functor: FinFunctor, dim: int) -> SSetMap:
    """
    N(F): N(source) -> N(target).
    """
    def image(k: int, x: Simplex) -> Simplex:
        if k == 0:
            return (functor.obj(x[0]),)
        return tuple(functor.mor(f) for f in x)

    return SSetMap(nerve(functor.source, dim), nerve(functor.target, dim), image)


class SetFunctor:
    """
    Functor from a finite category to finite sets. Identities act trivially unless given.
    :param category: source category.
    :param sets: object -> ordered elements.
    :param maps: morphism -> element assignment.
    """

    def __init__(self, category: FinCategory, sets: Mapping[Obj, Sequence[str]],
                 maps: Mapping[Mor, Mapping[str, str]]):
        self._category = category
        self._sets = {o: tuple(sets[o]) for o in category.objects}
        self._maps = {m: dict(f) for m, f in maps.items()}
        for o in category.objects:
            self._maps.setdefault(category.identity(o), {x: x for x in self._sets[o]})

    def __repr__(self) -> str:
        sizes = {o: len(s) for o, s in self._sets.items()}
        return f"SetFunctor({sizes})"

    @property
    def category(self) -> FinCategory:
        return self._category

    def elements(self, obj: Obj) -> tuple[str, ...]:
        return self._sets[obj]

    def apply(self, f: Mor, x: str) -> str:
        return self._maps[f][x]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self._sets[o]) for o in self._category.objects)

    def violations(self) -> list[str]:
        c = self._category
        problems = []
        for m in c.morphisms:
            f = self._maps.get(m.name)
            if f is None or set(f) != set(self._sets[m.dom]) or not set(f.values()) <= set(self._sets[m.cod]):
                problems.append(f"{m.name} is not a function {m.dom} -> {m.cod}")
        if problems:
            return problems
        for g, f in c.composable_pairs():
            h = c.compose(g, f)
            for x in self._sets[c.dom(f)]:
                if self.apply(g, self.apply(f, x)) != self.apply(h, x):
                    problems.append(f"composite {g}∘{f} is not preserved at {x}")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    @classmethod
    def constant(cls, category: FinCategory, elements: Sequence[str]) -> Self:
        return cls(category, {o: elements for o in category.objects},
                   {m.name: {x: x for x in elements} for m in category.morphisms})

    @classmethod
    def representable(cls, category: FinCategory, obj: Obj) -> Self:
        """
        hom(obj, -), acting by post-composition.
        """
        return cls(category, {o: category.hom(obj, o) for o in category.objects},
                   {m.name: {u: category.compose(m.name, u) for u in category.hom(obj, m.dom)}
                    for m in category.morphisms})

    @classmethod
    def random(cls, category: FinCategory, rng: random.Random, max_size: int = 2, attempts: int = 20,
               budget: int = 10_000, min_size: int = 1) -> Self:
        """
        Random functor by backtracking over random functions, with set sizes drawn from
        [min_size, max_size] per attempt.
        Falls back to the constant one-point functor when no attempt succeeds.
        """
        if not 0 <= min_size <= max_size:
            raise ValueError(f"Set sizes need 0 <= min_size <= max_size, not {min_size}, {max_size}")
        arrows = category.non_identities()
        position = {m.name: k for k, m in enumerate(arrows)}
        checks: list[list[tuple[Mor, Mor, Mor]]] = [[] for _ in arrows]
        for g, f in category.composable_pairs():
            if category.is_identity(g) or category.is_identity(f):
                continue
            h = category.compose(g, f)
            checks[max(position[g], position[f], position.get(h, -1))].append((g, f, h))
        for _ in range(attempts):
            sizes = {o: rng.randint(min_size, max_size) for o in category.objects}
            changed = True
            while changed:
                changed = False
                for m in arrows:
                    if sizes[m.dom] and not sizes[m.cod]:
                        sizes[m.cod] = 1
                        changed = True
            sets = {o: [f"{o}{k}" for k in range(sizes[o])] for o in category.objects}
            maps: dict[Mor, dict[str, str]] = {}
            explored = 0

            def image(f: Mor, x: str) -> str:
                return x if category.is_identity(f) else maps[f][x]

            def assign(k: int) -> bool:
                nonlocal explored
                if k == len(arrows):
                    return True
                m = arrows[k]
                functions = list(product(sets[m.cod], repeat=len(sets[m.dom])))
                rng.shuffle(functions)
                for values in functions:
                    explored += 1
                    if explored > budget:
                        raise BudgetExceeded(explored, budget, "random set functor",
                                             prod(len(sets[a.cod]) ** len(sets[a.dom]) for a in arrows))
                    maps[m.name] = dict(zip(sets[m.dom], values))
                    if (all(image(g, image(f, x)) == image(h, x)
                            for g, f, h in checks[k] for x in sets[category.dom(f)])
                            and assign(k + 1)):
                        return True
                maps.pop(m.name, None)
                return False

            try:
                if assign(0):
                    return cls(category, sets, maps)
            except BudgetExceeded:
                continue
        logger.debug("no random functor on %s after %d attempts", category, attempts)
        return cls.constant(category, ["*"])


def elements_category(functor: SetFunctor) -> tuple[FinCategory, FinFunctor]:
    """
    Category of elements: objects "c:x", morphisms "f:x" from (dom f, x) to (cod f, F(f)(x)).
    :return: the category and its projection to the base.
    """
    c = functor.category
    objects = [f"{o}:{x}" for o in c.objects for x in functor.elements(o)]
    morphisms = [(f"{m.name}:{x}", f"{m.dom}:{x}", f"{m.cod}:{functor.apply(m.name, x)}")
                 for m in c.non_identities() for x in functor.elements(m.dom)]
    composition = {}
    for g, f in c.composable_pairs():
        if c.is_identity(g) or c.is_identity(f):
            continue
        h = c.compose(g, f)
        for x in functor.elements(c.dom(f)):
            composite = f"id_{c.dom(f)}:{x}" if c.is_identity(h) else f"{h}:{x}"
            composition[(f"{g}:{functor.apply(f, x)}", f"{f}:{x}")] = composite
    elements = FinCategory(objects, morphisms, composition, name=f"El({c.name})")
    projection = FinFunctor(elements, c,
                            {f"{o}:{x}": o for o in c.objects for x in functor.elements(o)},
                            {f"{m.name}:{x}": m.name for m in c.non_identities() for x in functor.elements(m.dom)})
    return elements, projection


def grothendieck(category: FinCategory, functor: SetFunctor, dim: int) -> SSetMap:
    """
    Nerve of the category of elements over the nerve of the base; a left fibration.
    """
    if functor.category is not category and functor.category != category:
        raise ValueError("Set functor is defined on another category.")
    _, projection = elements_category(functor)
    return nerve_map(projection, dim)


def _check_dim(p: SSetMap, dim: int) -> None:
    if dim < 2:
        raise DimensionBoundTooLow(f"Horn checks need dimension bound >= 2, not {dim}.")
    if dim > p.dim:
        raise ValueError(f"Map is truncated at {p.dim}, below {dim}.")


def unsolvable_horns(p: SSetMap, kind: str | type[HornKind], dim: int) -> Iterator[LiftingProblem]:
    """
    Lifting problems (Lambda^i[n] -> X, Delta[n] -> Y) of the given kind, n <= dim, without a solution,
    in order of (n, i, base simplex, faces).
    """
    _check_dim(p, dim)
    kind_class = horn_kind(kind) if isinstance(kind, str) else kind
    X, Y = p.source, p.target
    for n in range(1, dim + 1):
        over = p.preimages(n - 1)
        for i in kind_class(n)():
            others = [j for j in range(n + 1) if j != i]
            solved = {(p(n, x), tuple(X.face(n, j, x) for j in others)) for x in X.simplices(n)}
            for b in Y.simplices(n):
                needed = [Y.face(n, j, b) for j in others]
                chosen: list[Simplex] = []

                def families(position: int) -> Iterator[tuple[Simplex, ...]]:
                    if position == len(others):
                        yield tuple(chosen)
                        return
                    j = others[position]
                    for y in over.get(needed[position], ()):
                        if all(X.face(n - 1, a, y) == X.face(n - 1, j - 1, chosen[q])
                               for q, a in enumerate(others[:position])):
                            chosen.append(y)
                            yield from families(position + 1)
                            chosen.pop()

                for faces in families(0):
                    if (b, faces) not in solved:
                        yield LiftingProblem(n, i, faces, b)


def horn_lift_check(p: SSetMap, kind: str | type[HornKind], dim: int) -> CheckResult:
    """
    :return: CheckResult, witness the minimal unsolvable LiftingProblem.
    """
    witness = next(unsolvable_horns(p, kind, dim), None)
    logger.info("horn check %s on %s: %s", kind, p, witness is None)
    return CheckResult(witness is None, witness)


def base_change(p: SSetMap, q: SSetMap) -> SSetMap:
    """
    Fiber product X x_B Y of p: X -> B and q: Y -> B with its projection to Y; simplices are pairs.
    """
    if p.target is not q.target:
        raise ValueError("Maps must share their target.")
    dim = min(p.dim, q.dim)
    X, Y = p.source, q.source
    simplices = []
    for k in range(dim + 1):
        over = p.preimages(k)
        simplices.append([(x, y) for y in Y.simplices(k) for x in over.get(q(k, y), ())])
    pullback = TruncatedSimplicialSet(dim, simplices,
                                      lambda k, i, s: (X.face(k, i, s[0]), Y.face(k, i, s[1])),
                                      lambda k, i, s: (X.degeneracy(k, i, s[0]), Y.degeneracy(k, i, s[1])),
                                      f"{X.name} x {Y.name}")
    return SSetMap(pullback, Y, lambda k, s: s[1])


def fiber(p: SSetMap, vertex: Simplex) -> TruncatedSimplicialSet:
    """
    Simplices of the source over the totally degenerate simplices on vertex.
    """
    Y = p.target
    return p.source.restrict(lambda k, x: p(k, x) == Y.degenerate_on(vertex, k), f"fiber over {vertex}")


def edge_map(base: Nerve, w: Mor, dim: int) -> SSetMap:
    """
    Delta[1] -> N(C) classifying the morphism w.
    """
    c = base.category
    ends = (c.dom(w), c.cod(w))

    def image(k: int, x: Simplex) -> Simplex:
        if k == 0:
            return (ends[x[0]],)
        return tuple(c.identity(ends[a]) if a == b else w for a, b in zip(x[:-1], x[1:]))

    return SSetMap(standard_simplex(1, dim), base, image)


def pi0(X: TruncatedSimplicialSet) -> list[list[Simplex]]:
    """
    Connected components of the vertices under 1-simplices, each in vertex order, ordered by first vertex.
    """
    graph = nx.Graph()
    graph.add_nodes_from(X.simplices(0))
    if X.dim >= 1:
        graph.add_edges_from((X.face(1, 1, e), X.face(1, 0, e)) for e in X.simplices(1))
    components = [sorted(c, key=lambda v: X.index(0, v)) for c in nx.connected_components(graph)]
    return sorted(components, key=lambda c: X.index(0, c[0]))


def _component_map(X: TruncatedSimplicialSet) -> dict[Simplex, int]:
    return {v: k for k, c in enumerate(pi0(X)) for v in c}


def w_local_check(p: SSetMap, relative: RelativeCategory, dim: int) -> CheckResult:
    """
    For every w in W: the base change of p along w: Delta[1] -> N(C) passes the Kan check, and transport
    along lifts of w is a bijection on components of the fibers.
    :return: CheckResult, witness ("kan", w, problem) or ("transport", w, component sizes).
    """
    base = p.target
    if not isinstance(base, Nerve) or base.category != relative.base:
        raise ValueError("Map must land in the nerve of the base category.")
    category = relative.base
    for w in relative.ordered_hypercovers():
        restricted = base_change(p, edge_map(base, w, dim))
        kan = horn_lift_check(restricted, "kan", dim)
        if not kan:
            return CheckResult(False, ("kan", w, kan.witness))
        source = _component_map(fiber(p, (category.dom(w),)))
        target = _component_map(fiber(p, (category.cod(w),)))
        transport: dict[int, set[int]] = {k: set() for k in set(source.values())}
        for e in p.preimages(1).get((w,), ()):
            transport[source[p.source.face(1, 1, e)]].add(target[p.source.face(1, 0, e)])
        images = [next(iter(t)) for t in transport.values() if len(t) == 1]
        if (len(images) != len(transport) or len(set(images)) != len(images)
                or len(images) != len(set(target.values()))):
            return CheckResult(False, ("transport", w, (len(set(source.values())), len(set(target.values())))))
    return CheckResult(True)


@dataclass(frozen=True)
class GroupoidPresentation:
    """
    Presentation of pi_1 of the 2-skeleton at a basepoint.
    :param generators: nondegenerate edges outside the spanning forest.
    :param relations: one word per nondegenerate 2-simplex, letters (generator, +1 or -1).
    """
    basepoint: Simplex
    component: tuple[Simplex, ...]
    generators: tuple[Simplex, ...]
    relations: tuple[tuple[tuple[Simplex, int], ...], ...]

    def violations(self) -> list[str]:
        known = set(self.generators)
        return [f"relation {r} uses an unknown generator" for r in self.relations
                if any(g not in known for g, _ in r)]

    def relation_matrix(self) -> Matrix:
        position = {g: k for k, g in enumerate(self.generators)}
        rows = []
        for relation in self.relations:
            row = [0] * len(self.generators)
            for g, sign in relation:
                row[position[g]] += sign
            rows.append(row)
        return Matrix(rows)

    def abelian_rank(self) -> int:
        """
        :return: free rank of the abelianization.
        """
        if not self.relations or not self.generators:
            return len(self.generators)
        return len(self.generators) - self.relation_matrix().rank()


def pi1_presentation(X: TruncatedSimplicialSet, basepoint: Simplex) -> GroupoidPresentation:
    if X.dim < 2:
        raise DimensionBoundTooLow(f"Fundamental group needs dimension bound >= 2, not {X.dim}.")
    component = next(c for c in pi0(X) if basepoint in c)
    inside = set(component)
    edges = [e for e in X.nondegenerate(1) if X.face(1, 1, e) in inside]
    graph = nx.MultiGraph()
    graph.add_nodes_from(component)
    for e in edges:
        graph.add_edge(X.face(1, 1, e), X.face(1, 0, e), key=e)
    tree = {key for _, _, key in nx.minimum_spanning_edges(graph, algorithm="kruskal", keys=True, data=False)}
    generators = tuple(e for e in edges if e not in tree)
    known = set(generators)
    relations = []
    for sigma in X.nondegenerate(2):
        if X.vertices(2, sigma)[0] not in inside:
            continue
        word = [(X.face(2, 2, sigma), 1), (X.face(2, 0, sigma), 1), (X.face(2, 1, sigma), -1)]
        relations.append(tuple((e, sign) for e, sign in word if e in known))
    return GroupoidPresentation(basepoint, tuple(component), generators, tuple(relations))


def summary(X: TruncatedSimplicialSet) -> dict[str, Any]:
    """
    :return: simplex counts, nondegenerate counts, component count and pi_1 ranks per component.
    """
    components = pi0(X)
    result: dict[str, Any] = {
        "simplices": [len(X.simplices(k)) for k in range(X.dim + 1)],
        "nondegenerate": [len(X.nondegenerate(k)) for k in range(X.dim + 1)],
        "components": len(components),
    }
    if X.dim >= 2:
        result["pi1_ranks"] = [pi1_presentation(X, c[0]).abelian_rank() for c in components]
    return result
