import pytest

from span_localization.exceptions import MissingPullback, NonMonotone
from span_localization.fincat import FinCategory, enumerate_functors
from span_localization.relcat import RelativeCategory
from span_localization.sigma import (LambdaData, SpanDiagram, all_right_kan_extensions, build_sigma,
                                     check_diagram_conditions, compose_monotone, degeneracy, face, identity_map,
                                     lambda_subposet, monotone, relative_lambda_data, right_kan_extend, sigma_map)
from span_localization.types import DiagramConditions, MonotoneMap, Span

MEET_CHAIN = LambdaData(("{1}", "{1,2}", "{2}"),
                        (Span("id_{1}", "{1}<{1,2}"), Span("{2}<{1,2}", "id_{2}")))


@pytest.mark.parametrize("n, size", [(0, 1), (1, 3), (2, 6), (3, 10)])
def test_sigma_size(n: int, size: int) -> None:
    sigma = build_sigma(n)
    assert len(sigma.elements) == size
    assert len(sigma.off_diagonal) == size - n - 1


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_lambda_subposet_size(n: int) -> None:
    assert len(lambda_subposet(n)) == 2 * n + 1


def test_sigma_order() -> None:
    sigma = build_sigma(2)
    assert sigma.leq((0, 2), (1, 1))
    assert not sigma.leq((1, 1), (0, 2))
    assert sigma.is_marked((0, 2), (0, 1))
    assert not sigma.is_marked((0, 2), (1, 2))
    assert len(sigma.squares()) == 1
    assert sigma.inner_squares() == [(0, 1, 1, 2)]
    assert len(sigma.marked_edges()) == 4


def test_negative_level() -> None:
    with pytest.raises(ValueError, match="non-negative"):
        build_sigma(-1)


@pytest.mark.parametrize("values, target, message", [((), 2, "at least one value"),
                                                     ((0, 3), 2, "leave"),
                                                     ((1, 0), 2, "not monotone")])
def test_monotone_rejects(values: tuple[int, ...], target: int, message: str) -> None:
    with pytest.raises(NonMonotone, match=message):
        monotone(values, target)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cosimplicial_identity(n: int) -> None:
    for j in range(n + 2):
        for i in range(j):
            assert (compose_monotone(face(n + 1, j), face(n, i))
                    == compose_monotone(face(n + 1, i), face(n, j - 1)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_face_then_degeneracy_is_identity(n: int) -> None:
    for j in range(n):
        assert compose_monotone(degeneracy(n - 1, j), face(n, j)) == identity_map(n - 1)
        assert compose_monotone(degeneracy(n - 1, j), face(n, j + 1)) == identity_map(n - 1)


def test_compose_monotone_mismatch() -> None:
    with pytest.raises(ValueError, match="not composable"):
        compose_monotone(face(3, 0), face(1, 0))


@pytest.mark.parametrize("after, then", [(face(3, 1), face(2, 0)),
                                         (degeneracy(2, 1), face(3, 3)),
                                         (face(2, 2), degeneracy(1, 0))])
def test_sigma_map_is_functorial(after: MonotoneMap, then: MonotoneMap) -> None:
    assert sigma_map(compose_monotone(after, then)) == sigma_map(after).compose(sigma_map(then))
    assert sigma_map(after).is_valid


def test_meet_kan_extension(meet: RelativeCategory) -> None:
    diagram = right_kan_extend(meet, MEET_CHAIN)
    assert diagram is not None
    assert diagram.obj((0, 2)) == "{}"
    assert diagram.vertical((0, 2)) == "{}<{1}"
    assert diagram.horizontal((0, 2)) == "{}<{2}"
    assert (diagram.left_leg((0, 2)), diagram.right_leg((0, 2))) == ("{}<{1}", "{}<{2}")
    assert diagram.lambda_data() == MEET_CHAIN
    assert diagram.violations(meet) == []
    assert check_diagram_conditions(meet, diagram) == DiagramConditions(True, True, True)


def test_kan_extension_needs_hypercover_legs(cube: RelativeCategory) -> None:
    chain = LambdaData(("{1,2}", "{1,2}"), (Span("{1}<{1,2}", "{1}<{1,2}"),))
    with pytest.raises(ValueError, match="not a hypercover"):
        right_kan_extend(cube, chain)


def test_kan_extension_rejects_broken_chain(meet: RelativeCategory) -> None:
    chain = LambdaData(("{1}", "{2}"), (Span("id_{1}", "{1}<{1,2}"),))
    with pytest.raises(ValueError, match="does not join"):
        right_kan_extend(meet, chain)


def test_missing_pullback_strict_and_lenient() -> None:
    relative = RelativeCategory(FinCategory(["a", "b", "c"], [("u", "a", "c"), ("v", "b", "c")]), ["u", "v"])
    chain = LambdaData(("a", "c", "b"), (Span("id_a", "u"), Span("v", "id_b")))
    with pytest.raises(MissingPullback):
        right_kan_extend(relative, chain)
    assert right_kan_extend(relative, chain, strict=False) is None


def test_fill_orders_agree(meet: RelativeCategory) -> None:
    for data in relative_lambda_data(meet, 3):
        assert right_kan_extend(meet, data, "column") == right_kan_extend(meet, data, "diagonal")


def test_unknown_fill_order(meet: RelativeCategory) -> None:
    with pytest.raises(ValueError, match="Unknown fill order"):
        right_kan_extend(meet, MEET_CHAIN, "spiral")  # type: ignore[arg-type]


def test_all_kan_extensions_in_poset(meet: RelativeCategory) -> None:
    assert all_right_kan_extensions(meet, MEET_CHAIN) == [right_kan_extend(meet, MEET_CHAIN)]


def test_precompose_with_face(meet: RelativeCategory) -> None:
    diagram = right_kan_extend(meet, MEET_CHAIN)
    assert diagram is not None
    outer = diagram.precompose(face(2, 1))
    assert outer.n == 1
    assert outer.span(1) == Span("{}<{1}", "{}<{2}")


def test_functor_round_trip(meet: RelativeCategory) -> None:
    diagram = right_kan_extend(meet, MEET_CHAIN)
    assert diagram is not None
    functor = diagram.as_functor()
    assert functor.is_valid
    assert SpanDiagram.from_functor(functor, 2) == diagram


@pytest.mark.parametrize("name, n", [("meet", 2), ("meet", 3), ("cube", 2), ("cube", 3)])
def test_diagram_conditions_agree(name: str, n: int, meet: RelativeCategory, cube: RelativeCategory) -> None:
    relative = {"meet": meet, "cube": cube}[name]
    functors = enumerate_functors(build_sigma(n).as_category(), relative.base, 10_000_000)
    assert functors
    for functor in functors:
        conditions = check_diagram_conditions(relative, functor, n)
        assert conditions.all_squares == conditions.inner_squares == conditions.kan_extension, functor


def test_functor_input_needs_level(meet: RelativeCategory) -> None:
    diagram = right_kan_extend(meet, MEET_CHAIN)
    assert diagram is not None
    with pytest.raises(ValueError, match="Level n is required"):
        check_diagram_conditions(meet, diagram.as_functor())


def test_non_cartesian_diagram(meet: RelativeCategory) -> None:
    diagram = SpanDiagram(2,
                          ("{1,2}", "{1,2}", "{1}", "{1,2}", "{1,2}", "{1,2}"),
                          ("id_{1,2}", "{1}<{1,2}", "id_{1,2}"),
                          ("id_{1,2}", "{1}<{1,2}", "id_{1,2}"),
                          meet.base)
    assert diagram.functor_violations() == []
    assert diagram.violations(meet) == ["square (0, 1, 1, 2) is not cartesian"]
    assert check_diagram_conditions(meet, diagram) == DiagramConditions(False, False, False)
