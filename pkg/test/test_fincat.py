import pytest

from span_localization.exceptions import BudgetExceeded, CospanMismatch
from span_localization.fincat import (FinCategory, FinFunctor, NatTransformation, check_equivalence,
                                      enumerate_functors, is_pullback, pullback, pullback_cones, validate_category)
from span_localization.relcat import RelativeCategory
from span_localization.types import Clause

NON_ASSOCIATIVE = FinCategory(["0", "1", "2", "3"],
                              [("f", "0", "1"), ("g", "1", "2"), ("h", "2", "3"),
                               ("gf", "0", "2"), ("hg", "1", "3"), ("p", "0", "3"), ("q", "0", "3")],
                              {("g", "f"): "gf", ("h", "g"): "hg", ("h", "gf"): "p", ("hg", "f"): "q"})


def test_identities_come_first() -> None:
    c = FinCategory(["a", "b"], [("u", "a", "b")])
    assert [m.name for m in c.morphisms] == ["id_a", "id_b", "u"]
    assert c.identity("b") == "id_b"
    assert c.is_identity("id_a")
    assert not c.is_identity("u")
    assert c.has_object("a")
    assert not c.has_object("c")


def test_identity_laws_without_table() -> None:
    c = FinCategory(["a", "b"], [("u", "a", "b")])
    assert c.compose("u", "id_a") == "u"
    assert c.compose("id_b", "u") == "u"
    assert validate_category(c).is_valid


def test_compose_not_composable() -> None:
    c = FinCategory(["a", "b"], [("u", "a", "b")])
    with pytest.raises(ValueError, match="not composable"):
        c.compose("u", "u")


def test_compose_not_defined() -> None:
    c = FinCategory(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")])
    with pytest.raises(ValueError, match="not defined"):
        c.compose("b", "a")


def test_missing_composite_is_reported() -> None:
    c = FinCategory(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")])
    report = validate_category(c)
    assert report.clauses == {Clause.MISSING_COMPOSITE}
    assert [v.witness for v in report] == [("b", "a")]


def test_associativity_violation_witness() -> None:
    report = validate_category(NON_ASSOCIATIVE)
    assert [v.clause for v in report] == [Clause.ASSOCIATIVITY]
    assert report.violations[0].witness == ("h", "g", "f")


def test_duplicates_are_recorded_not_raised() -> None:
    c = FinCategory(["a", "a"], [("u", "a", "a"), ("u", "a", "a")])
    assert Clause.DUPLICATE_NAME in validate_category(c).clauses


def test_poset_names() -> None:
    c = FinCategory.walking_arrow(2)
    assert c.objects == ("0", "1", "2")
    assert c.hom("0", "2") == ("0<2",)
    assert c.compose("1<2", "0<1") == "0<2"


def test_fixtures_are_categories(relative: RelativeCategory) -> None:
    assert validate_category(relative.base).is_valid


def test_inverse(walking_iso: RelativeCategory) -> None:
    c = walking_iso.base
    assert c.inverse("i") == "j"
    assert c.isomorphisms() == ["id_a", "id_b", "i", "j"]
    assert c.isomorphic("a", "b")


def test_opposite(meet: RelativeCategory) -> None:
    op = meet.base.opposite()
    assert op.dom("{}<{1}") == "{1}"
    assert op.compose("{}<{1}", "{1}<{1,2}") == "{}<{1,2}"
    assert validate_category(op).is_valid


def test_meet_pullback(meet: RelativeCategory) -> None:
    cone = pullback(meet.base, "{1}<{1,2}", "{2}<{1,2}")
    assert cone is not None
    assert (cone.apex, cone.leg1, cone.leg2) == ("{}", "{}<{1}", "{}<{2}")
    assert is_pullback(meet.base, cone)


def test_pullback_along_identity_is_strict(cube: RelativeCategory) -> None:
    c = cube.base
    cone = pullback(c, "{1}<{1,2}", "id_{1,2}")
    assert cone is not None
    assert (cone.apex, cone.leg1, cone.leg2) == ("{1}", "id_{1}", "{1}<{1,2}")
    cone = pullback(c, "id_{1,2}", "{1}<{1,2}")
    assert cone is not None
    assert (cone.apex, cone.leg1, cone.leg2) == ("{1}", "{1}<{1,2}", "id_{1}")


def test_collapse_pullback(collapse: RelativeCategory) -> None:
    cone = pullback(collapse.base, "f", "g")
    assert cone is not None
    assert cone.apex == "0"
    assert (cone.leg1, cone.leg2) == ("0_x", "0_x")


def test_parallel_pair_has_no_pullback(parallel: RelativeCategory) -> None:
    assert pullback(parallel.base, "f", "g") is None
    assert pullback_cones(parallel.base, "f", "g") == []


def test_cospan_mismatch(meet: RelativeCategory) -> None:
    with pytest.raises(CospanMismatch, match="different codomains"):
        pullback(meet.base, "{}<{1}", "{}<{2}")


@pytest.mark.parametrize("source, count", [(FinCategory.terminal(), 4),
                                           (FinCategory.walking_arrow(1), 9),
                                           (FinCategory.walking_arrow(2), 16)])
def test_enumerate_functors_into_meet(source: FinCategory, count: int, meet: RelativeCategory) -> None:
    functors = enumerate_functors(source, meet.base, 10_000)
    assert len(functors) == count
    assert len(set(functors)) == count
    assert all(f.is_valid for f in functors)


def test_enumerate_functors_budget(cube: RelativeCategory) -> None:
    with pytest.raises(BudgetExceeded, match="functor enumeration: search space estimate 4096") as info:
        enumerate_functors(FinCategory.walking_arrow(3), cube.base, 10)
    assert (info.value.explored, info.value.estimate, info.value.budget) == (11, 4096, 10)


def test_functor_compose_and_identity(meet: RelativeCategory) -> None:
    functor = FinFunctor.from_object_map(FinCategory.walking_arrow(1), meet.base, {"0": "{}", "1": "{1}"})
    assert functor.mor("0<1") == "{}<{1}"
    assert FinFunctor.identity(meet.base).compose(functor) == functor


def test_functor_violations() -> None:
    target = FinCategory.walking_arrow(1)
    broken = FinFunctor(target, target, {"0": "1", "1": "0"}, {"0<1": "0<1"})
    assert broken.violations() == ["0<1 is sent to 0<1 with wrong endpoints"]


def test_from_object_map_needs_thin_target(parallel: RelativeCategory) -> None:
    with pytest.raises(ValueError, match="candidate images"):
        FinFunctor.from_object_map(FinCategory.walking_arrow(1), parallel.base, {"0": "x", "1": "y"})


def test_natural_transformation(meet: RelativeCategory) -> None:
    arrow = FinCategory.walking_arrow(1)
    low = FinFunctor.from_object_map(arrow, meet.base, {"0": "{}", "1": "{1}"})
    high = FinFunctor.from_object_map(arrow, meet.base, {"0": "{1}", "1": "{1,2}"})
    assert NatTransformation(low, high, {"0": "{}<{1}", "1": "{1}<{1,2}"}).is_valid
    assert not NatTransformation(low, high, {"0": "{}<{1}"}).is_valid


def test_skeleton_inclusion_is_equivalence(walking_iso: RelativeCategory) -> None:
    skeleton = FinCategory(["a"])
    functor = FinFunctor.from_object_map(skeleton, walking_iso.base, {"a": "a"})
    assert check_equivalence(functor)


def test_collapse_to_point_is_not_equivalence(parallel: RelativeCategory) -> None:
    functor = FinFunctor.from_object_map(parallel.base, FinCategory.terminal(), {"x": "*", "y": "*"})
    result = check_equivalence(functor)
    assert not result
    assert result.witness == ("hom", "x", "y", 2, 1)


def test_missing_object_witness(meet: RelativeCategory) -> None:
    functor = FinFunctor.from_object_map(FinCategory.terminal(), meet.base, {"*": "{}"})
    assert check_equivalence(functor).witness == ("missing", "{1}")
