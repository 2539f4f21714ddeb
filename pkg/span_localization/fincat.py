import logging
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Any, Self

from span_localization.exceptions import BudgetExceeded, CospanMismatch
from span_localization.types import CheckResult, Clause, Mor, Morphism, Obj, ValidationReport

logger = logging.getLogger(__name__)

IDENTITY_PREFIX = "id_"


def identity_name(obj: Obj) -> Mor:
    return f"{IDENTITY_PREFIX}{obj}"


class FinCategory:
    """
    Finite category given by ordered objects, ordered morphisms and a composition table.
    Identities are generated with reserved names id_<object> and come first in the morphism order.
    Composites involving an identity follow the identity laws unless the table sets them.
    :param objects: ordered object identifiers.
    :param morphisms: ordered (name, dom, cod) triples, identities excluded.
    :param composition: mapping (after, then) -> composite, i.e. after∘then.
    :param composer: optional function computing non-identity composites not found in the table.
    :param name: display name.
    """

    def __init__(self,
                 objects: Iterable[Obj],
                 morphisms: Iterable[tuple[Mor, Obj, Obj]] = (),
                 composition: Mapping[tuple[Mor, Mor], Mor] | None = None,
                 composer: Callable[[Mor, Mor], Mor | None] | None = None,
                 name: str = ""):
        self._name = name
        self._objects: tuple[Obj, ...] = tuple(objects)
        given = [Morphism(*m) for m in morphisms]
        self._morphisms: tuple[Morphism, ...] = tuple(
            [Morphism(identity_name(o), o, o) for o in self._objects] + given)
        self._table: dict[tuple[Mor, Mor], Mor] = dict(composition) if composition is not None else {}
        self._composer = composer
        self._structure = ValidationReport()
        self._memo: dict[Hashable, Any] = {}
        self._check()
        self._index_structure()

    def __repr__(self) -> str:
        label = f"{self._name}: " if self._name else ""
        return f"FinCategory({label}{len(self._objects)} objects, {len(self._morphisms)} morphisms)"

    def __str__(self) -> str:
        return self.__repr__()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FinCategory):
            return False
        if self is other:
            return True
        return (self.objects == other.objects
                and self.morphisms == other.morphisms
                and self.composition_table() == other.composition_table())

    def __hash__(self) -> int:
        return hash((self._objects, self._morphisms))

    def _check(self) -> None:
        seen_objects: set[Obj] = set()
        for o in self._objects:
            if o in seen_objects:
                self._structure.add(Clause.DUPLICATE_NAME, (o,), f"Object {o} is listed twice.")
            seen_objects.add(o)
        seen_morphisms: set[Mor] = set()
        for m in self._morphisms:
            if m.name in seen_morphisms:
                self._structure.add(Clause.DUPLICATE_NAME, (m.name,), f"Morphism {m.name} is listed twice.")
            seen_morphisms.add(m.name)
            for end in (m.dom, m.cod):
                if end not in seen_objects:
                    self._structure.add(Clause.UNKNOWN_OBJECT, (m.name, end),
                                        f"Morphism {m.name} refers to unknown object {end}.")

    def _index_structure(self) -> None:
        self._by_name: dict[Mor, Morphism] = {}
        for m in self._morphisms:
            self._by_name.setdefault(m.name, m)
        self._object_index = {o: k for k, o in reversed(list(enumerate(self._objects)))}
        self._morphism_index = {m.name: k for k, m in reversed(list(enumerate(self._morphisms)))}
        self._identity_of = {o: identity_name(o) for o in self._objects}
        self._identities = frozenset(self._identity_of.values())
        hom: dict[tuple[Obj, Obj], list[Mor]] = {}
        out: dict[Obj, list[Mor]] = {o: [] for o in self._objects}
        into: dict[Obj, list[Mor]] = {o: [] for o in self._objects}
        for name, m in self._by_name.items():
            hom.setdefault((m.dom, m.cod), []).append(name)
            out.setdefault(m.dom, []).append(name)
            into.setdefault(m.cod, []).append(name)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in into.items()}

    @property
    def name(self) -> str:
        """
        :return: display name of the category.
        """
        return self._name

    @property
    def objects(self) -> tuple[Obj, ...]:
        """
        :return: ordered objects.
        """
        return self._objects

    @property
    def morphisms(self) -> tuple[Morphism, ...]:
        """
        :return: ordered morphisms, identities first.
        """
        return self._morphisms

    @property
    def table(self) -> dict[tuple[Mor, Mor], Mor]:
        """
        :return: explicitly given composition entries.
        """
        return dict(self._table)

    @property
    def structure_report(self) -> ValidationReport:
        """
        :return: naming and typing problems found at construction.
        """
        return self._structure

    def memo(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        Per-category cache for derived data. Categories are immutable, so cached values stay valid.
        """
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def morphism(self, name: Mor) -> Morphism:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"Unknown morphism {name} in {self}.") from None

    def has_morphism(self, name: Mor) -> bool:
        return name in self._by_name

    def has_object(self, obj: Obj) -> bool:
        return obj in self._object_index

    def dom(self, name: Mor) -> Obj:
        return self.morphism(name).dom

    def cod(self, name: Mor) -> Obj:
        return self.morphism(name).cod

    def object_index(self, obj: Obj) -> int:
        return self._object_index[obj]

    def morphism_index(self, name: Mor) -> int:
        return self._morphism_index[name]

    def identity(self, obj: Obj) -> Mor:
        try:
            return self._identity_of[obj]
        except KeyError:
            raise ValueError(f"Unknown object {obj} in {self}.") from None

    def is_identity(self, name: Mor) -> bool:
        return name in self._identities

    def hom(self, a: Obj, b: Obj) -> tuple[Mor, ...]:
        """
        :return: morphisms a -> b in morphism order.
        """
        return self._hom.get((a, b), ())

    def outgoing(self, a: Obj) -> tuple[Mor, ...]:
        return self._out.get(a, ())

    def incoming(self, b: Obj) -> tuple[Mor, ...]:
        return self._in.get(b, ())

    def non_identities(self) -> list[Morphism]:
        return [m for m in self._morphisms if m.name not in self._identities]

    def lookup(self, after: Mor, then: Mor) -> Mor | None:
        """
        Composite after∘then, or None when the table leaves it undefined.
        """
        key = (after, then)
        if key in self._table:
            return self._table[key]
        if after in self._identities:
            return then
        if then in self._identities:
            return after
        if self._composer is not None:
            return self._composer(after, then)
        return None

    def compose(self, after: Mor, then: Mor) -> Mor:
        """
        :param after: morphism applied second.
        :param then: morphism applied first.
        :return: after∘then.
        """
        if self._by_name[then].cod != self._by_name[after].dom:
            raise ValueError(f"Morphisms {after} and {then} are not composable.")
        composite = self.lookup(after, then)
        if composite is None:
            raise ValueError(f"Composite {after}∘{then} is not defined.")
        return composite

    def compose_path(self, path: Sequence[Mor], start: Obj | None = None) -> Mor:
        """
        Composite of a path given in order of application. Empty path needs a start object.
        """
        if not path:
            if start is None:
                raise ValueError("Empty path needs a start object.")
            return self.identity(start)
        result = path[0]
        for m in path[1:]:
            result = self.compose(m, result)
        return result

    def composable_pairs(self) -> Iterator[tuple[Mor, Mor]]:
        """
        :return: pairs (after, then) with cod(then) = dom(after), in morphism order of then.
        """
        for f in self._morphisms:
            for g in self.outgoing(f.cod):
                yield g, f.name

    def composition_table(self) -> dict[tuple[Mor, Mor], Mor | None]:
        return {(g, f): self.lookup(g, f) for g, f in self.composable_pairs()}

    def is_iso(self, name: Mor) -> bool:
        return self.inverse(name) is not None

    def inverse(self, name: Mor) -> Mor | None:
        def compute() -> Mor | None:
            m = self.morphism(name)
            for g in self.hom(m.cod, m.dom):
                if self.lookup(g, name) == self.identity(m.dom) and self.lookup(name, g) == self.identity(m.cod):
                    return g
            return None
        return self.memo(("inverse", name), compute)

    def isomorphisms(self) -> list[Mor]:
        return [m.name for m in self._morphisms if self.is_iso(m.name)]

    def isomorphic(self, a: Obj, b: Obj) -> bool:
        return any(self.is_iso(m) for m in self.hom(a, b))

    def opposite(self) -> "FinCategory":
        """
        :return: opposite category; morphism and identity names are kept.
        """
        composer = None
        if self._composer is not None:
            base_composer = self._composer
            composer = lambda g, f: base_composer(f, g)
        return FinCategory(self._objects,
                           [(m.name, m.cod, m.dom) for m in self.non_identities()],
                           {(f, g): h for (g, f), h in self._table.items()},
                           composer,
                           f"{self._name}^op" if self._name else "")

    @classmethod
    def from_poset(cls,
                   elements: Sequence[Any],
                   leq: Callable[[Any, Any], bool],
                   label: Callable[[Any], str] = str,
                   name: str = "") -> Self:
        """
        Thin category of a finite poset. Morphism a -> b is named "<a><<b>".
        :param elements: ordered poset elements.
        :param leq: partial order.
        :param label: object naming function.
        """
        objects = [label(e) for e in elements]
        arrow = {}
        morphisms = []
        for a in elements:
            for b in elements:
                if a != b and leq(a, b):
                    arrow[(label(a), label(b))] = f"{label(a)}<{label(b)}"
                    morphisms.append((arrow[(label(a), label(b))], label(a), label(b)))
        composition = {}
        for (a, b), f in arrow.items():
            for (b2, c), g in arrow.items():
                if b2 == b:
                    composition[(g, f)] = arrow[(a, c)]
        return cls(objects, morphisms, composition, name=name)

    @classmethod
    def terminal(cls) -> Self:
        return cls(["*"], name="terminal")

    @classmethod
    def walking_arrow(cls, n: int = 1) -> Self:
        """
        :return: the ordinal [n] as a category with objects "0".."n".
        """
        return cls.from_poset(list(range(n + 1)), lambda a, b: a <= b, name=f"[{n}]")


class FinFunctor:
    """
    Functor between finite categories. Identity images are filled in when omitted.
    :param source: source category.
    :param target: target category.
    :param object_map: object assignment.
    :param morphism_map: morphism assignment.
    """

    def __init__(self,
                 source: FinCategory,
                 target: FinCategory,
                 object_map: Mapping[Obj, Obj],
                 morphism_map: Mapping[Mor, Mor]):
        self._source = source
        self._target = target
        self._object_map = dict(object_map)
        self._morphism_map = dict(morphism_map)
        for o in source.objects:
            if o in self._object_map:
                self._morphism_map.setdefault(source.identity(o), target.identity(self._object_map[o]))

    def __repr__(self) -> str:
        return f"FinFunctor({self._source} -> {self._target})"

    def __str__(self) -> str:
        return self.__repr__()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FinFunctor):
            return False
        return (self._object_map == other.object_map
                and self._morphism_map == other.morphism_map
                and (self._source is other.source or self._source == other.source)
                and (self._target is other.target or self._target == other.target))

    def __hash__(self) -> int:
        return hash((tuple(sorted(self._object_map.items())), tuple(sorted(self._morphism_map.items()))))

    @property
    def source(self) -> FinCategory:
        """
        :return: source category.
        """
        return self._source

    @property
    def target(self) -> FinCategory:
        """
        :return: target category.
        """
        return self._target

    @property
    def object_map(self) -> dict[Obj, Obj]:
        return dict(self._object_map)

    @property
    def morphism_map(self) -> dict[Mor, Mor]:
        return dict(self._morphism_map)

    def obj(self, a: Obj) -> Obj:
        return self._object_map[a]

    def mor(self, f: Mor) -> Mor:
        return self._morphism_map[f]

    def violations(self) -> list[str]:
        """
        :return: every failed functor axiom as a message, empty if the assignment is a functor.
        """
        problems = []
        for o in self._source.objects:
            if o not in self._object_map:
                problems.append(f"object {o} has no image")
        if problems:
            return problems
        for m in self._source.morphisms:
            image = self._morphism_map.get(m.name)
            if image is None or not self._target.has_morphism(image):
                problems.append(f"morphism {m.name} has no valid image")
                continue
            t = self._target.morphism(image)
            if (t.dom, t.cod) != (self._object_map[m.dom], self._object_map[m.cod]):
                problems.append(f"{m.name} is sent to {image} with wrong endpoints")
        if problems:
            return problems
        for o in self._source.objects:
            if self._morphism_map[self._source.identity(o)] != self._target.identity(self._object_map[o]):
                problems.append(f"identity of {o} is not preserved")
        for g, f in self._source.composable_pairs():
            h = self._source.lookup(g, f)
            if h is None:
                continue
            if self._target.lookup(self._morphism_map[g], self._morphism_map[f]) != self._morphism_map[h]:
                problems.append(f"composite {g}∘{f} is not preserved")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def compose(self, first: "FinFunctor") -> "FinFunctor":
        """
        :param first: functor applied before this one.
        :return: self∘first.
        """
        return FinFunctor(first.source, self._target,
                          {a: self._object_map[b] for a, b in first.object_map.items()},
                          {f: self._morphism_map[g] for f, g in first.morphism_map.items()})

    def opposite(self) -> "FinFunctor":
        return FinFunctor(self._source.opposite(), self._target.opposite(), self._object_map, self._morphism_map)

    @classmethod
    def identity(cls, category: FinCategory) -> Self:
        return cls(category, category,
                   {o: o for o in category.objects},
                   {m.name: m.name for m in category.morphisms})

    @classmethod
    def from_object_map(cls, source: FinCategory, target: FinCategory, object_map: Mapping[Obj, Obj]) -> Self:
        """
        Functor into a thin category, determined by its object assignment.
        """
        morphism_map = {}
        for m in source.morphisms:
            candidates = target.hom(object_map[m.dom], object_map[m.cod])
            if len(candidates) != 1:
                raise ValueError(f"Morphism {m.name} has {len(candidates)} candidate images; target must be thin "
                                 f"and the object map monotone.")
            morphism_map[m.name] = candidates[0]
        return cls(source, target, object_map, morphism_map)


class NatTransformation:
    """
    Natural transformation between parallel functors.
    :param source: functor F.
    :param target: functor G.
    :param components: object a -> morphism F(a) -> G(a).
    """

    def __init__(self, source: FinFunctor, target: FinFunctor, components: Mapping[Obj, Mor]):
        self._source = source
        self._target = target
        self._components = dict(components)

    def __repr__(self) -> str:
        return f"NatTransformation({self._components})"

    @property
    def source(self) -> FinFunctor:
        return self._source

    @property
    def target(self) -> FinFunctor:
        return self._target

    @property
    def components(self) -> dict[Obj, Mor]:
        return dict(self._components)

    def violations(self) -> list[str]:
        category = self._source.target
        problems = []
        for a in self._source.source.objects:
            eta = self._components.get(a)
            if eta is None or (category.dom(eta), category.cod(eta)) != (self._source.obj(a), self._target.obj(a)):
                problems.append(f"component at {a} is missing or mistyped")
        if problems:
            return problems
        for m in self._source.source.morphisms:
            left = category.lookup(self._target.mor(m.name), self._components[m.dom])
            right = category.lookup(self._components[m.cod], self._source.mor(m.name))
            if left != right:
                problems.append(f"naturality fails at {m.name}")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class PullbackCone:
    """
    Cone apex -leg1-> dom f, apex -leg2-> dom g over the cospan (f, g).
    """
    apex: Obj
    leg1: Mor
    leg2: Mor
    over: tuple[Mor, Mor]


def validate_category(category: FinCategory) -> ValidationReport:
    """
    Exhaustive scan of the category axioms.
    :param category: FinCategory to check.
    :return: ValidationReport with a witness for every violated axiom.
    """
    report = ValidationReport()
    report.extend(category.structure_report)
    if not report.is_valid:
        return report
    for (g, f), h in category.table.items():
        if not (category.has_morphism(g) and category.has_morphism(f) and category.has_morphism(h)):
            report.add(Clause.UNKNOWN_MORPHISM, (g, f, h), f"Composition entry {g}∘{f} = {h} names an unknown morphism.")
            continue
        if category.cod(f) != category.dom(g):
            report.add(Clause.SPURIOUS_COMPOSITE, (g, f, h), f"{g}∘{f} is defined but {f} and {g} are not composable.")
        elif (category.dom(h), category.cod(h)) != (category.dom(f), category.cod(g)):
            report.add(Clause.ILL_TYPED_COMPOSITE, (g, f, h), f"{g}∘{f} = {h} has wrong endpoints.")
    for g, f in category.composable_pairs():
        if category.lookup(g, f) is None:
            report.add(Clause.MISSING_COMPOSITE, (g, f), f"{g}∘{f} is not defined.")
    for m in category.morphisms:
        if (category.lookup(category.identity(m.cod), m.name) != m.name
                or category.lookup(m.name, category.identity(m.dom)) != m.name):
            report.add(Clause.IDENTITY_LAW, (m.name,), f"Identity law fails for {m.name}.")
    for g, f in category.composable_pairs():
        gf = category.lookup(g, f)
        for h in category.outgoing(category.cod(g)):
            hg = category.lookup(h, g)
            if gf is None or hg is None or not category.has_morphism(gf) or not category.has_morphism(hg):
                continue
            if category.lookup(h, gf) != category.lookup(hg, f):
                report.add(Clause.ASSOCIATIVITY, (h, g, f), f"({h}∘{g})∘{f} differs from {h}∘({g}∘{f}).")
    return report


def _cones(category: FinCategory, f: Mor, g: Mor) -> Iterator[PullbackCone]:
    dom_f, dom_g = category.dom(f), category.dom(g)
    for apex in category.objects:
        for p in category.hom(apex, dom_f):
            fp = category.compose(f, p)
            for q in category.hom(apex, dom_g):
                if fp == category.compose(g, q):
                    yield PullbackCone(apex, p, q, (f, g))


def mediating(category: FinCategory, cone: PullbackCone, apex: Obj, p: Mor, q: Mor) -> list[Mor]:
    """
    :return: every m: apex -> cone.apex with leg1∘m = p and leg2∘m = q.
    """
    return [m for m in category.hom(apex, cone.apex)
            if category.compose(cone.leg1, m) == p and category.compose(cone.leg2, m) == q]


def is_pullback(category: FinCategory, cone: PullbackCone) -> bool:
    """
    Universality by exhaustive search: every cone over the same cospan factors uniquely.
    """
    f, g = cone.over
    if category.compose(f, cone.leg1) != category.compose(g, cone.leg2):
        return False

    def compute() -> bool:
        return all(len(mediating(category, cone, t.apex, t.leg1, t.leg2)) == 1 for t in _cones(category, f, g))

    return category.memo(("universal", cone), compute)


def _check_cospan(category: FinCategory, f: Mor, g: Mor) -> None:
    if category.cod(f) != category.cod(g):
        raise CospanMismatch(f, g, category.cod(f), category.cod(g))


def pullback_cones(category: FinCategory, f: Mor, g: Mor) -> list[PullbackCone]:
    """
    :return: all universal cones over (f, g) in lexicographic (apex, leg1, leg2) order.
    """
    _check_cospan(category, f, g)
    return category.memo(("pullbacks", f, g),
                         lambda: [c for c in _cones(category, f, g) if is_pullback(category, c)])


def pullback(category: FinCategory, f: Mor, g: Mor) -> PullbackCone | None:
    """
    Canonical pullback of the cospan (f, g).
    A cospan with an identity leg gets the identity square; otherwise the universal cone with
    lexicographically minimal (apex index, leg1 index, leg2 index) is chosen.
    :return: PullbackCone or None when no universal cone exists.
    """
    _check_cospan(category, f, g)

    def compute() -> PullbackCone | None:
        if category.is_identity(g):
            return PullbackCone(category.dom(f), category.identity(category.dom(f)), f, (f, g))
        if category.is_identity(f):
            return PullbackCone(category.dom(g), g, category.identity(category.dom(g)), (f, g))
        for cone in _cones(category, f, g):
            if is_pullback(category, cone):
                return cone
        return None

    return category.memo(("pullback", f, g), compute)


def _functor_space(source: FinCategory, target: FinCategory) -> int:
    """
    Object assignments times the largest hom-set to the power of the non-identity arrows.
    """
    widest = max((len(target.hom(a, b)) for a in target.objects for b in target.objects), default=0)
    return len(target.objects) ** len(source.objects) * widest ** len(source.non_identities())


def enumerate_functors(source: FinCategory, target: FinCategory, budget: int) -> list[FinFunctor]:
    """
    Backtracking enumeration of all functors source -> target.
    Objects are assigned first, pruning assignments with an empty hom-set under some morphism;
    morphisms are assigned next, checking each composite as soon as its factors are fixed.
    :param budget: maximal number of search nodes.
    :return: complete, duplicate-free list of functors.
    """
    objects = source.objects
    position = {o: k for k, o in enumerate(objects)}
    arrows = source.non_identities()
    object_constraints: list[list[Morphism]] = [[] for _ in objects]
    for m in arrows:
        object_constraints[max(position[m.dom], position[m.cod])].append(m)
    arrow_position = {m.name: k for k, m in enumerate(arrows)}
    composite_checks: list[list[tuple[Mor, Mor, Mor]]] = [[] for _ in arrows]
    for g, f in source.composable_pairs():
        if source.is_identity(g) or source.is_identity(f):
            continue
        h = source.compose(g, f)
        last = max(arrow_position[g], arrow_position[f], arrow_position.get(h, -1))
        composite_checks[last].append((g, f, h))

    explored = 0
    found: list[FinFunctor] = []
    object_map: dict[Obj, Obj] = {}
    morphism_map: dict[Mor, Mor] = {}

    def tick() -> None:
        nonlocal explored
        explored += 1
        if explored > budget:
            raise BudgetExceeded(explored, budget, "functor enumeration", _functor_space(source, target))

    def image(name: Mor) -> Mor:
        if source.is_identity(name):
            return target.identity(object_map[source.dom(name)])
        return morphism_map[name]

    def assign_morphism(k: int) -> None:
        if k == len(arrows):
            found.append(FinFunctor(source, target, object_map, morphism_map))
            return
        m = arrows[k]
        for candidate in target.hom(object_map[m.dom], object_map[m.cod]):
            tick()
            morphism_map[m.name] = candidate
            if all(target.compose(image(g), image(f)) == image(h) for g, f, h in composite_checks[k]):
                assign_morphism(k + 1)
        morphism_map.pop(m.name, None)

    def assign_object(k: int) -> None:
        if k == len(objects):
            assign_morphism(0)
            return
        for candidate in target.objects:
            tick()
            object_map[objects[k]] = candidate
            if all(target.hom(object_map[m.dom], object_map[m.cod]) for m in object_constraints[k]):
                assign_object(k + 1)
        object_map.pop(objects[k], None)

    assign_object(0)
    logger.debug("enumerated %d functors %s -> %s in %d steps", len(found), source, target, explored)
    return found


def check_equivalence(functor: FinFunctor) -> CheckResult:
    """
    Equivalence test: fully faithful and essentially surjective.
    :return: CheckResult with witness ("hom", a, b, |hom(a,b)|, |hom(Fa,Fb)|) or ("missing", object).
    """
    source, target = functor.source, functor.target
    preimages: dict[Obj, list[Obj]] = {}
    for a in source.objects:
        preimages.setdefault(functor.obj(a), []).append(a)
    pairs = {(m.dom, m.cod) for m in source.morphisms}
    for t in target.morphisms:
        for a in preimages.get(t.dom, ()):
            for b in preimages.get(t.cod, ()):
                pairs.add((a, b))
    for a, b in sorted(pairs, key=lambda p: (source.object_index(p[0]), source.object_index(p[1]))):
        arrows = source.hom(a, b)
        images = [functor.mor(m) for m in arrows]
        expected = target.hom(functor.obj(a), functor.obj(b))
        if len(set(images)) != len(images) or set(images) != set(expected):
            return CheckResult(False, ("hom", a, b, len(arrows), len(expected)))
    image_objects = set(preimages)
    for y in target.objects:
        if y not in image_objects and not any(target.isomorphic(y, x) for x in image_objects):
            return CheckResult(False, ("missing", y))
    return CheckResult(True)
