import logging
from collections.abc import Callable
from importlib.resources import files
from itertools import combinations

from span_localization.document import CategoryDocument, load, parse
from span_localization.fincat import FinCategory
from span_localization.relcat import RelativeCategory

logger = logging.getLogger(__name__)

FIXTURES = ("meet-poset", "cube-poset", "parallel-pair", "walking-iso", "collapse")


def power_set(n: int) -> list[frozenset[int]]:
    """
    :return: subsets of {1..n} by size, then lexicographically.
    """
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


def subset_label(s: frozenset[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _power_set_poset(n: int, name: str) -> FinCategory:
    return FinCategory.from_poset(power_set(n), lambda a, b: a <= b, subset_label, name)


def meet_poset() -> RelativeCategory:
    category = _power_set_poset(2, "meet-poset")
    return RelativeCategory(category, [m.name for m in category.non_identities()])


def cube_poset() -> RelativeCategory:
    """
    Subsets of {1,2,3}; e < c is a hypercover when c minus e lies in {3}.
    """
    sets = power_set(3)
    category = _power_set_poset(3, "cube-poset")
    return RelativeCategory(category, [f"{subset_label(e)}<{subset_label(c)}" for e in sets for c in sets
                                       if e < c and c - e <= {3}])


def parallel_pair() -> RelativeCategory:
    return RelativeCategory(FinCategory(["x", "y"], [("f", "x", "y"), ("g", "x", "y")], name="parallel-pair"))


def walking_iso() -> RelativeCategory:
    category = FinCategory(["a", "b"], [("i", "a", "b"), ("j", "b", "a")],
                           {("j", "i"): "id_a", ("i", "j"): "id_b"}, name="walking-iso")
    return RelativeCategory(category, ["i", "j"])


def collapse() -> RelativeCategory:
    category = FinCategory(["0", "x", "y"],
                           [("f", "x", "y"), ("g", "x", "y"), ("0_x", "0", "x"), ("0_y", "0", "y")],
                           {("f", "0_x"): "0_y", ("g", "0_x"): "0_y"}, name="collapse")
    return RelativeCategory(category, ["0_x", "0_y"])


BUILDERS: dict[str, Callable[[], RelativeCategory]] = {
    "meet-poset": meet_poset,
    "cube-poset": cube_poset,
    "parallel-pair": parallel_pair,
    "walking-iso": walking_iso,
    "collapse": collapse,
}


def fixture_document(name: str) -> CategoryDocument:
    """
    Bundled fixture document by name.
    """
    if name not in FIXTURES:
        raise ValueError(f"Unknown fixture {name}, expected one of {', '.join(FIXTURES)}.")
    return parse(files("span_localization").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8"))


def load_fixture(name: str) -> RelativeCategory:
    return fixture_document(name).relative()


def resolve_input(value: str) -> tuple[CategoryDocument, bool]:
    """
    :param value: a bundled fixture name or a path.
    :return: the document and whether it is bundled.
    """
    if value in FIXTURES:
        logger.debug("using bundled fixture %s", value)
        return fixture_document(value), True
    return load(value), False
