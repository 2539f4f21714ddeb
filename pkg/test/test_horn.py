import pytest

from span_localization.horn import HORN_KINDS, HornKind, Inner, Kan, Left, Right, horn_kind


@pytest.mark.parametrize("kind, n, expected", [(Inner, 3, [1, 2]),
                                               (Inner, 1, []),
                                               (Left, 2, [0, 1]),
                                               (Right, 2, [1, 2]),
                                               (Kan, 2, [0, 1, 2]),
                                               (Kan, 0, []),
                                               (Left, 0, [])])
def test_horn_indices(kind: type[HornKind], n: int, expected: list[int]) -> None:
    assert list(kind(n)()) == expected


@pytest.mark.parametrize("kind", [Inner, Left, Right, Kan])
def test_negative_dimension(kind: type[HornKind]) -> None:
    with pytest.raises(ValueError, match="non-negative"):
        kind(-1)


@pytest.mark.parametrize("n", [1.5, "2", True])
def test_dimension_type(n) -> None:
    with pytest.raises(TypeError, match="Horn dimension must be an int."):
        Inner(n)


def test_horn_kind_lookup() -> None:
    assert horn_kind("left") is Left
    assert set(HORN_KINDS) == {"inner", "left", "right", "kan"}
    with pytest.raises(ValueError, match="Unknown horn kind"):
        horn_kind("outer")
