from argparse import Namespace

import pytest

from span_localization.config import Limits


def test_defaults() -> None:
    limits = Limits()
    assert (limits.budget, limits.level, limits.dim) == (2_000_000, 2, 3)
    assert (limits.max_word_len, limits.max_iter) == (8, 10_000)


@pytest.mark.parametrize("name", ["budget", "level", "dim", "max_word_len", "max_iter"])
def test_negative_limit(name: str) -> None:
    with pytest.raises(ValueError, match=f"Limit {name} must be non-negative"):
        Limits(**{name: -1})


@pytest.mark.parametrize("value", [True, 2.0, "2"])
def test_limit_type(value) -> None:
    with pytest.raises(TypeError, match="Limit level must be an int."):
        Limits(level=value)


def test_from_args() -> None:
    limits = Limits.from_args(Namespace(level=3, budget=None, command="span"))
    assert limits == Limits(level=3)


def test_from_args_validates() -> None:
    with pytest.raises(ValueError, match="non-negative"):
        Limits.from_args(Namespace(dim=-2))
