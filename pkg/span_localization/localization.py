import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple, Self

from span_localization.exceptions import IllDefinedComposition
from span_localization.fincat import FinCategory, FinFunctor, validate_category
from span_localization.relcat import RelativeCategory
from span_localization.span import compose_spans, mapping_category, span_name, spans_from
from span_localization.sset import SetFunctor, nerve, pi0
from span_localization.types import CheckResult, Mor, Obj, Span, ZigzagLetter

logger = logging.getLogger(__name__)


class ZigzagWord(NamedTuple):
    """
    Word of morphisms and formal inverses of hypercovers, letters in order of application.
    Rendered in composition order, e.g. r∘l^-1; the empty word at c renders as id_c.
    """
    source: Obj
    target: Obj
    letters: tuple[ZigzagLetter, ...]

    def __str__(self) -> str:
        if not self.letters:
            return f"id_{self.source}"
        return "∘".join(f"{x.symbol}^-1" if x.inverted else x.symbol for x in reversed(self.letters))

    def __len__(self) -> int:
        return len(self.letters)


def word_key(category: FinCategory, word: ZigzagWord) -> tuple[int, tuple[tuple[int, bool], ...]]:
    """
    Shortlex key: length first, then letters by (morphism index, inverted).
    """
    return len(word.letters), tuple((category.morphism_index(x.symbol), x.inverted) for x in word.letters)


def span_word(category: FinCategory, span: Span) -> ZigzagWord:
    """
    r∘l^-1 for the span (l, r), identity letters dropped.
    """
    letters = []
    if not category.is_identity(span.left):
        letters.append(ZigzagLetter(span.left, True))
    if not category.is_identity(span.right):
        letters.append(ZigzagLetter(span.right, False))
    return ZigzagWord(category.cod(span.left), category.cod(span.right), tuple(letters))


def evaluate_word(category: FinCategory, word: ZigzagWord) -> Mor | None:
    """
    :return: the composite of the word in category, None when an inverted letter is not invertible there.
    """
    result = category.identity(word.source)
    for letter in word.letters:
        m = category.inverse(letter.symbol) if letter.inverted else letter.symbol
        if m is None:
            return None
        result = category.compose(m, result)
    return result


@dataclass(frozen=True)
class HoCategory:
    """
    Homotopy category of a localization: hom-sets of labelled classes with a composition table.
    Labels are the rendered shortlex representatives, so identity classes are labelled id_<object>.
    :param unit: morphism of the base -> label of its class.
    :param representatives: label -> representative word.
    """
    objects: tuple[Obj, ...]
    homs: dict[tuple[Obj, Obj], tuple[str, ...]]
    composition: dict[tuple[str, str], str]
    identities: dict[Obj, str]
    unit: dict[Mor, str]
    representatives: dict[str, ZigzagWord] = field(default_factory=dict)

    def hom(self, c: Obj, d: Obj) -> tuple[str, ...]:
        return self.homs.get((c, d), ())

    def compose(self, after: str, then: str) -> str:
        try:
            return self.composition[(after, then)]
        except KeyError:
            raise ValueError(f"Classes {after} and {then} are not composable.") from None

    def endpoints(self, label: str) -> tuple[Obj, Obj]:
        word = self.representatives[label]
        return word.source, word.target

    def inverse(self, label: str) -> str | None:
        c, d = self.endpoints(label)
        for g in self.hom(d, c):
            if self.compose(g, label) == self.identities[c] and self.compose(label, g) == self.identities[d]:
                return g
        return None

    def evaluate(self, word: ZigzagWord) -> str | None:
        """
        :return: the class of a zigzag word, None when an inverted letter has no inverse here.
        """
        result = self.identities[word.source]
        for letter in word.letters:
            m: str | None = self.unit[letter.symbol]
            if letter.inverted:
                m = self.inverse(self.unit[letter.symbol])
            if m is None:
                return None
            result = self.compose(m, result)
        return result

    def as_category(self) -> FinCategory:
        morphisms = [(label, c, d) for (c, d), labels in self.homs.items() for label in labels
                     if label != self.identities[c]]
        return FinCategory(self.objects, morphisms, self.composition, name="Ho")

    def localization_functor(self, category: FinCategory) -> FinFunctor:
        """
        :return: the canonical functor from the base category.
        """
        return FinFunctor(category, self.as_category(), {o: o for o in self.objects}, self.unit)

    def violations(self, category: FinCategory | None = None) -> list[str]:
        problems = [v.message for v in validate_category(self.as_category())]
        if category is not None and not problems:
            problems.extend(self.localization_functor(category).violations())
        return problems

    def table(self) -> dict[str, list[str]]:
        """
        :return: "c->d" -> class labels, for reports.
        """
        return {f"{c}->{d}": list(self.hom(c, d)) for c in self.objects for d in self.objects}

    @classmethod
    def from_category(cls, category: FinCategory) -> Self:
        """
        The category itself, every morphism its own class.
        """
        representatives = {}
        for m in category.morphisms:
            letters = () if category.is_identity(m.name) else (ZigzagLetter(m.name, False),)
            representatives[m.name] = ZigzagWord(m.dom, m.cod, letters)
        return cls(category.objects,
                   {(c, d): category.hom(c, d) for c in category.objects for d in category.objects},
                   {(g, f): category.compose(g, f) for g, f in category.composable_pairs()},
                   {o: category.identity(o) for o in category.objects},
                   {m.name: m.name for m in category.morphisms},
                   representatives)


def span_classes(relative: RelativeCategory, c: Obj, d: Obj) -> list[list[Span]]:
    """
    :return: spans c <= e -> d grouped by connected component of Span^W(c, d), in component order.
    """
    spans = {span_name(s): s for s in spans_from(relative, c, d)}
    components = pi0(nerve(mapping_category(relative, c, d), 1))
    return [[spans[v[0]] for v in component] for component in components]


def ho_via_spans(relative: RelativeCategory) -> HoCategory:
    """
    hom(c, d) is the set of components of Span^W(c, d); composites are computed on every pair of
    representatives and must agree.
    :return: HoCategory labelled by shortlex-minimal span words.
    """
    category = relative.base
    homs: dict[tuple[Obj, Obj], tuple[str, ...]] = {}
    class_of: dict[Span, str] = {}
    members: dict[str, list[Span]] = {}
    representatives: dict[str, ZigzagWord] = {}
    for c in category.objects:
        for d in category.objects:
            labels = []
            for component in span_classes(relative, c, d):
                word = min((span_word(category, s) for s in component), key=lambda w: word_key(category, w))
                label = str(word)
                labels.append(label)
                representatives[label] = word
                members[label] = component
                for s in component:
                    class_of[s] = label
            homs[(c, d)] = tuple(sorted(labels, key=lambda x: word_key(category, representatives[x])))
    composition: dict[tuple[str, str], str] = {}
    for (c, d), first in homs.items():
        for e in category.objects:
            for then in first:
                for after in homs[(d, e)]:
                    results = {class_of[compose_spans(relative, s, t)] for s in members[then] for t in members[after]}
                    if len(results) != 1:
                        raise IllDefinedComposition(then, after,
                                                    f"Composite of {after} and {then} meets classes {sorted(results)}.")
                    composition[(after, then)] = results.pop()
    identities = {o: class_of[Span(category.identity(o), category.identity(o))] for o in category.objects}
    unit = {m.name: class_of[Span(category.identity(m.dom), m.name)] for m in category.morphisms}
    logger.debug("span localization of %s: %d classes", category, len(representatives))
    return HoCategory(category.objects, homs, composition, identities, unit, representatives)


@dataclass(frozen=True)
class Inconclusive:
    """
    Oracle outcome when the congruence did not stabilize within the bounds.
    :param reason: "max_iter", "refused" or "max_len".
    :param source: object whose enumeration stopped.
    """
    reason: str
    source: Obj
    detail: int = 0

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"inconclusive ({self.reason} at {self.source}, {self.detail})"


class _CosetTable:
    """
    Classes of zigzag words from one object, enumerated Haselgrove-Leech-Trotter style: rows are defined
    in order, every relation is scanned at every row after each definition, coincidences are merged into
    the smaller row.
    """

    def __init__(self, start: Obj, letters: dict[Obj, list[ZigzagLetter]], targets: dict[ZigzagLetter, Obj],
                 relations: dict[Obj, list[tuple[tuple[ZigzagLetter, ...], tuple[ZigzagLetter, ...]]]]):
        self.letters = letters
        self.targets = targets
        self.relations = relations
        self.parent: list[int] = []
        self.objects: list[Obj] = []
        self.depth: list[int] = []
        self.rows: list[dict[ZigzagLetter, int]] = []
        self.add(start, 0)

    def add(self, obj: Obj, depth: int) -> int:
        self.parent.append(len(self.parent))
        self.objects.append(obj)
        self.depth.append(depth)
        self.rows.append({})
        return len(self.parent) - 1

    def find(self, k: int) -> int:
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def live(self) -> list[int]:
        return [k for k in range(len(self.parent)) if self.parent[k] == k]

    def trace(self, k: int, word: Sequence[ZigzagLetter]) -> tuple[int, int]:
        """
        :return: row reached and number of letters followed.
        """
        for position, x in enumerate(word):
            nxt = self.rows[k].get(x)
            if nxt is None:
                return k, position
            k = self.find(nxt)
        return k, len(word)

    def coincide(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = (self.find(k) for k in queue.pop())
            if a == b:
                continue
            if a > b:
                a, b = b, a
            self.parent[b] = a
            for x, t in self.rows[b].items():
                if x in self.rows[a]:
                    queue.append((self.rows[a][x], t))
                else:
                    self.rows[a][x] = t
            self.rows[b] = {}

    def scan(self, k: int, lhs: tuple[ZigzagLetter, ...], rhs: tuple[ZigzagLetter, ...]) -> bool:
        a, i = self.trace(k, lhs)
        b, j = self.trace(k, rhs)
        if i == len(lhs) and j == len(rhs):
            if a != b:
                self.coincide(a, b)
                return True
            return False
        if i == len(lhs) - 1 and j == len(rhs):
            self.rows[a][lhs[-1]] = b
            return True
        if j == len(rhs) - 1 and i == len(lhs):
            self.rows[b][rhs[-1]] = a
            return True
        return False

    def close(self) -> None:
        changed = True
        while changed:
            changed = False
            for k in self.live():
                for lhs, rhs in self.relations.get(self.objects[k], ()):
                    if self.find(k) != k:
                        break
                    changed |= self.scan(k, lhs, rhs)

    def enumerate(self, bound: int, max_iter: int) -> str | None:
        """
        :return: None when the table closed, otherwise the reason it did not.
        """
        defined = 0
        k = 0
        while k < len(self.parent):
            if self.find(k) == k:
                for x in self.letters[self.objects[k]]:
                    if self.find(k) != k:
                        break
                    if x in self.rows[k] or self.depth[k] >= bound:
                        continue
                    defined += 1
                    if defined > max_iter:
                        return "max_iter"
                    self.rows[k][x] = self.add(self.targets[x], self.depth[k] + 1)
                    self.close()
            k += 1
        self.close()
        for k in self.live():
            if any(x not in self.rows[k] for x in self.letters[self.objects[k]]):
                return "refused"
        return None

    def shortlex(self) -> dict[int, tuple[ZigzagLetter, ...]]:
        """
        :return: live row -> shortlex-minimal word reaching it, by breadth-first search in letter order.
        """
        words: dict[int, tuple[ZigzagLetter, ...]] = {self.find(0): ()}
        queue = deque([self.find(0)])
        while queue:
            k = queue.popleft()
            for x in self.letters[self.objects[k]]:
                t = self.find(self.rows[k][x])
                if t not in words:
                    words[t] = words[k] + (x,)
                    queue.append(t)
        return words


def _zigzag_presentation(relative: RelativeCategory) -> tuple[
        dict[Obj, list[ZigzagLetter]], dict[ZigzagLetter, Obj],
        dict[Obj, list[tuple[tuple[ZigzagLetter, ...], tuple[ZigzagLetter, ...]]]]]:
    category = relative.base
    letters: dict[Obj, list[ZigzagLetter]] = {o: [] for o in category.objects}
    targets: dict[ZigzagLetter, Obj] = {}
    for m in category.non_identities():
        forward = ZigzagLetter(m.name, False)
        letters[m.dom].append(forward)
        targets[forward] = m.cod
        if relative.is_hypercover(m.name):
            backward = ZigzagLetter(m.name, True)
            letters[m.cod].append(backward)
            targets[backward] = m.dom
    for o in letters:
        letters[o].sort(key=lambda x: (category.morphism_index(x.symbol), x.inverted))
    relations: dict[Obj, list[tuple[tuple[ZigzagLetter, ...], tuple[ZigzagLetter, ...]]]] = {
        o: [] for o in category.objects}
    for g, f in category.composable_pairs():
        if category.is_identity(g) or category.is_identity(f):
            continue
        h = category.compose(g, f)
        rhs = () if category.is_identity(h) else (ZigzagLetter(h, False),)
        relations[category.dom(f)].append(((ZigzagLetter(f, False), ZigzagLetter(g, False)), rhs))
    for m in category.non_identities():
        if relative.is_hypercover(m.name):
            forward, backward = ZigzagLetter(m.name, False), ZigzagLetter(m.name, True)
            relations[m.dom].append(((forward, backward), ()))
            relations[m.cod].append(((backward, forward), ()))
    return letters, targets, relations


def oracle_localize(relative: RelativeCategory, max_len: int, max_iter: int) -> HoCategory | Inconclusive:
    """
    Independent computation of the homotopy category by congruence closure on zigzag words, one coset
    table per source object. Rows are only defined up to depth max_len + 2.
    :param max_len: longest representative accepted.
    :param max_iter: row definitions allowed per source object.
    :return: HoCategory labelled by shortlex-minimal words, or Inconclusive.
    """
    category = relative.base
    letters, targets, relations = _zigzag_presentation(relative)
    tables: dict[Obj, _CosetTable] = {}
    words: dict[Obj, dict[int, tuple[ZigzagLetter, ...]]] = {}
    for c in category.objects:
        table = _CosetTable(c, letters, targets, relations)
        reason = table.enumerate(max_len + 2, max_iter)
        if reason is not None:
            logger.info("oracle on %s inconclusive at %s: %s", category, c, reason)
            return Inconclusive(reason, c, len(table.parent))
        found = table.shortlex()
        longest = max(len(w) for w in found.values())
        if longest > max_len:
            return Inconclusive("max_len", c, longest)
        tables[c], words[c] = table, found

    representatives: dict[str, ZigzagWord] = {}
    label_of: dict[tuple[Obj, int], str] = {}
    homs: dict[tuple[Obj, Obj], list[str]] = {(c, d): [] for c in category.objects for d in category.objects}
    for c in category.objects:
        for row, letters_ in words[c].items():
            word = ZigzagWord(c, tables[c].objects[row], letters_)
            label_of[(c, row)] = str(word)
            representatives[str(word)] = word
            homs[(c, word.target)].append(str(word))
    composition: dict[tuple[str, str], str] = {}
    for (c, d), first in homs.items():
        for then in first:
            row, _ = tables[c].trace(tables[c].find(0), representatives[then].letters)
            for e in category.objects:
                for after in homs[(d, e)]:
                    end, _ = tables[c].trace(row, representatives[after].letters)
                    composition[(after, then)] = label_of[(c, end)]
    unit = {}
    for m in category.morphisms:
        if category.is_identity(m.name):
            unit[m.name] = f"id_{m.dom}"
        else:
            row, _ = tables[m.dom].trace(tables[m.dom].find(0), (ZigzagLetter(m.name, False),))
            unit[m.name] = label_of[(m.dom, row)]
    logger.debug("oracle on %s: %d classes", category, len(representatives))
    return HoCategory(category.objects, {k: tuple(v) for k, v in homs.items()}, composition,
                      {o: f"id_{o}" for o in category.objects}, unit, representatives)


def compare_localizations(a: HoCategory, b: HoCategory) -> CheckResult:
    """
    Identity-on-objects isomorphism matching the canonical functors, found by evaluating the
    representatives of a in b.
    :return: CheckResult, witness ("hom", c, d, |a|, |b|), ("inverse", label), ("bijection", c, d),
    ("composition", after, then) or ("unit", morphism).
    """
    if set(a.objects) != set(b.objects):
        raise ValueError("Localizations have different objects.")
    for c in a.objects:
        for d in a.objects:
            if len(a.hom(c, d)) != len(b.hom(c, d)):
                return CheckResult(False, ("hom", c, d, len(a.hom(c, d)), len(b.hom(c, d))))
    image: dict[str, str] = {}
    for label, word in a.representatives.items():
        value = b.evaluate(word)
        if value is None:
            return CheckResult(False, ("inverse", label))
        image[label] = value
    for c in a.objects:
        for d in a.objects:
            if {image[x] for x in a.hom(c, d)} != set(b.hom(c, d)):
                return CheckResult(False, ("bijection", c, d))
    for (after, then), composite in a.composition.items():
        if image[composite] != b.compose(image[after], image[then]):
            return CheckResult(False, ("composition", after, then))
    for m, label in a.unit.items():
        if image[label] != b.unit.get(m):
            return CheckResult(False, ("unit", m))
    return CheckResult(True)


def w_locality_report(relative: RelativeCategory) -> CheckResult:
    """
    For every hypercover w: d' -> d and object c, post-composition with w must be a bijection
    pi0 Span^W(c, d') -> pi0 Span^W(c, d).
    :return: CheckResult, witness the tuple of failures (w, c, |source classes|, |target classes|).
    """
    category = relative.base
    failures = []
    for w in relative.ordered_hypercovers():
        if category.is_identity(w):
            continue
        for c in category.objects:
            source = span_classes(relative, c, category.dom(w))
            target = span_classes(relative, c, category.cod(w))
            index = {s: k for k, component in enumerate(target) for s in component}
            images = {index[Span(s.left, category.compose(w, s.right))] for component in source for s in component[:1]}
            if len(images) != len(source) or len(images) != len(target):
                failures.append((w, c, len(source), len(target)))
    logger.info("W-locality on %s: %d failures", category, len(failures))
    return CheckResult(not failures, tuple(failures))


def localized_representable(relative: RelativeCategory, ho: HoCategory, c: Obj) -> SetFunctor:
    """
    hom_Ho(c, -) along the localization functor: d goes to the classes c -> d, a morphism acts by
    post-composition with its class.
    """
    category = relative.base
    return SetFunctor(category, {d: ho.hom(c, d) for d in category.objects},
                      {m.name: {x: ho.compose(ho.unit[m.name], x) for x in ho.hom(c, m.dom)}
                       for m in category.non_identities()})


def fully_faithful_check(relative: RelativeCategory, functor: FinFunctor) -> CheckResult:
    """
    For F inverting W: pi0 Span^W(c, d) -> pi0 Span^iso(Fc, Fd) is a bijection for all c, d, compared
    with full faithfulness of the induced functor Ho -> D.
    :return: CheckResult of the span reading, witness the first failing pair (c, d).
    :raises ValueError: if F does not invert W or the two readings disagree.
    """
    category, target = relative.base, functor.target
    for w in relative.ordered_hypercovers():
        if not target.is_iso(functor.mor(w)):
            raise ValueError(f"Functor does not invert the hypercover {w}.")
    isos = RelativeCategory.isomorphisms_only(target)
    ho = ho_via_spans(relative)
    span_failure = ho_failure = None
    for c in category.objects:
        for d in category.objects:
            fc, fd = functor.obj(c), functor.obj(d)
            classes = span_classes(relative, c, d)
            target_classes = span_classes(isos, fc, fd)
            index = {s: k for k, component in enumerate(target_classes) for s in component}
            images = {index[Span(functor.mor(s.left), functor.mor(s.right))] for component in classes
                      for s in component[:1]}
            if span_failure is None and (len(images) != len(classes) or len(images) != len(target_classes)):
                span_failure = (c, d)
            values = [evaluate_word(target, ZigzagWord(fc, fd, tuple(
                ZigzagLetter(functor.mor(x.symbol), x.inverted) for x in ho.representatives[label].letters)))
                      for label in ho.hom(c, d)]
            if ho_failure is None and (len(set(values)) != len(values) or set(values) != set(target.hom(fc, fd))):
                ho_failure = (c, d)
    if (span_failure is None) != (ho_failure is None):
        raise ValueError(f"Span and homotopy category readings disagree at {span_failure or ho_failure}.")
    return CheckResult(span_failure is None, span_failure)
