import random

import pytest

from span_localization.exceptions import DimensionBoundTooLow
from span_localization.fincat import FinFunctor
from span_localization.relcat import RelativeCategory
from span_localization.sset import (SetFunctor, SSetMap, base_change, boundary, disjoint_union, edge_map,
                                    elements_category, fiber, grothendieck, horn, horn_lift_check, nerve, nerve_map,
                                    pi0, pi1_presentation, standard_simplex, summary, unsolvable_horns, w_local_check)
from span_localization.types import LiftingProblem

RANDOM_FUNCTORS = 12


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_nerve_is_simplicial(dim: int, relative: RelativeCategory) -> None:
    assert nerve(relative.base, dim).violations() == []


def test_nerve_simplices(parallel: RelativeCategory) -> None:
    X = nerve(parallel.base, 2)
    assert X.simplices(0) == (("x",), ("y",))
    assert X.nondegenerate(1) == [("f",), ("g",)]
    assert X.nondegenerate(2) == []
    assert X.is_degenerate(1, ("id_x",))
    assert not X.is_degenerate(1, ("f",))
    assert X.face(1, 0, ("f",)) == ("y",)
    assert X.degeneracy(1, 1, ("f",)) == ("f", "id_y")


def test_nerve_inner_face_composes(meet: RelativeCategory) -> None:
    X = nerve(meet.base, 2)
    assert X.face(2, 1, ("{}<{1}", "{1}<{1,2}")) == ("{}<{1,2}",)
    assert X.vertices(2, ("{}<{1}", "{1}<{1,2}")) == (("{}",), ("{1}",), ("{1,2}",))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_standard_simplices_are_simplicial(n: int) -> None:
    assert standard_simplex(n, 3).is_valid
    assert boundary(n, 3).is_valid


def test_horn_subset() -> None:
    assert horn(2, 0, 2).nondegenerate(1) == [(0, 1), (0, 2)]
    assert horn(2, 0, 2).nondegenerate(2) == []
    with pytest.raises(ValueError, match="outside"):
        horn(2, 3, 2)


def test_parallel_pair_is_not_left_fibrant(parallel: RelativeCategory) -> None:
    result = horn_lift_check(SSetMap.to_terminal(nerve(parallel.base, 3)), "left", 3)
    assert not result
    assert result.witness == LiftingProblem(2, 0, (("id_x",), ("f",)), (0, 0, 0))


@pytest.mark.parametrize("kind", ["inner", "left", "right", "kan"])
def test_walking_iso_is_kan(kind: str, walking_iso: RelativeCategory) -> None:
    result = horn_lift_check(SSetMap.to_terminal(nerve(walking_iso.base, 3)), kind, 3)
    assert result, result.witness


def test_nerve_is_inner_fibrant(relative: RelativeCategory) -> None:
    result = horn_lift_check(SSetMap.to_terminal(nerve(relative.base, 3)), "inner", 3)
    assert result, result.witness


def test_dimension_bound_too_low(meet: RelativeCategory) -> None:
    p = SSetMap.to_terminal(nerve(meet.base, 3))
    with pytest.raises(DimensionBoundTooLow):
        horn_lift_check(p, "inner", 1)
    with pytest.raises(ValueError, match="truncated"):
        next(unsolvable_horns(SSetMap.to_terminal(nerve(meet.base, 2)), "inner", 3))


def test_representables_are_left_fibrations(relative: RelativeCategory) -> None:
    category = relative.base
    for c in category.objects:
        p = grothendieck(category, SetFunctor.representable(category, c), 3)
        assert p.is_valid
        result = horn_lift_check(p, "left", 3)
        assert result, result.witness


def test_random_functors_give_left_fibrations(relative: RelativeCategory, rng: random.Random) -> None:
    category = relative.base
    for _ in range(RANDOM_FUNCTORS):
        functor = SetFunctor.random(category, rng)
        assert functor.is_valid, functor.violations()
        assert min(functor.sizes()) >= 1
        result = horn_lift_check(grothendieck(category, functor, 3), "left", 3)
        assert result, result.witness


def test_random_functor_sizes(parallel: RelativeCategory, rng: random.Random) -> None:
    assert SetFunctor.random(parallel.base, rng, max_size=3, min_size=3).sizes() == (3, 3)
    with pytest.raises(ValueError, match="min_size <= max_size"):
        SetFunctor.random(parallel.base, rng, max_size=1, min_size=2)


def test_elements_category(meet: RelativeCategory) -> None:
    elements, projection = elements_category(SetFunctor.representable(meet.base, "{1}"))
    assert elements.objects == ("{1}:id_{1}", "{1,2}:{1}<{1,2}")
    assert projection.is_valid


def test_constant_functor(collapse: RelativeCategory) -> None:
    functor = SetFunctor.constant(collapse.base, ["p", "q"])
    assert functor.is_valid
    assert functor.sizes() == (2, 2, 2)


def test_broken_set_functor(parallel: RelativeCategory) -> None:
    functor = SetFunctor(parallel.base, {"x": ["a"], "y": []}, {"f": {"a": "b"}, "g": {}})
    assert not functor.is_valid


def test_nerve_map_of_identity(cube: RelativeCategory) -> None:
    assert nerve_map(FinFunctor.identity(cube.base), 2).is_valid


def test_w_local_representable_fails(meet: RelativeCategory) -> None:
    p = grothendieck(meet.base, SetFunctor.representable(meet.base, "{1}"), 3)
    result = w_local_check(p, meet, 3)
    assert not result
    assert result.witness[:2] == ("kan", "{}<{1}")


def test_w_local_constant_passes(relative: RelativeCategory) -> None:
    p = grothendieck(relative.base, SetFunctor.constant(relative.base, ["p"]), 3)
    result = w_local_check(p, relative, 3)
    assert result, result.witness


def test_w_local_needs_nerve_target(meet: RelativeCategory) -> None:
    with pytest.raises(ValueError, match="nerve of the base"):
        w_local_check(SSetMap.to_terminal(nerve(meet.base, 2)), meet, 2)


def test_base_change_along_edge(cube: RelativeCategory) -> None:
    base = nerve(cube.base, 2)
    p = SSetMap.identity(base)
    restricted = base_change(p, edge_map(base, "{1,2}<{1,2,3}", 2))
    assert restricted.is_valid
    assert len(restricted.source.simplices(0)) == 2


def test_base_change_needs_shared_target(meet: RelativeCategory) -> None:
    p = SSetMap.to_terminal(nerve(meet.base, 2))
    q = SSetMap.to_terminal(standard_simplex(1, 2))
    with pytest.raises(ValueError, match="share their target"):
        base_change(p, q)


def test_fiber_of_representable(meet: RelativeCategory) -> None:
    p = grothendieck(meet.base, SetFunctor.representable(meet.base, "{}"), 2)
    assert len(fiber(p, ("{1,2}",)).simplices(0)) == 1
    assert fiber(p, ("{1,2}",)).is_valid


def test_pi0() -> None:
    X = disjoint_union(standard_simplex(1, 2), standard_simplex(0, 2))
    assert len(pi0(X)) == 2
    assert pi0(X)[0] == [(0, (0,)), (0, (1,))]


@pytest.mark.parametrize("X, rank", [(boundary(2, 2), 1), (standard_simplex(2, 2), 0), (boundary(3, 2), 0)])
def test_pi1_rank(X, rank: int) -> None:
    assert pi1_presentation(X, (0,)).abelian_rank() == rank


def test_pi1_of_nerves(meet: RelativeCategory, parallel: RelativeCategory) -> None:
    assert pi1_presentation(nerve(meet.base, 2), ("{}",)).abelian_rank() == 0
    assert summary(nerve(parallel.base, 2))["pi1_ranks"] == [1]


def test_pi1_needs_two_skeleton(meet: RelativeCategory) -> None:
    with pytest.raises(DimensionBoundTooLow):
        pi1_presentation(nerve(meet.base, 1), ("{}",))


def test_summary(walking_iso: RelativeCategory) -> None:
    result = summary(nerve(walking_iso.base, 2))
    assert result["simplices"] == [2, 4, 8]
    assert result["nondegenerate"] == [2, 2, 2]
    assert result["components"] == 1
