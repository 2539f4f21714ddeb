from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import override


@dataclass
class HornKind(ABC):
    """
    Abstract class selecting the horns Lambda^i[n] a fibration check must fill. Class is callable.
    :param n: dimension of the horn.
    :return: admissible horn indices i.
    """

    n: int

    def __post_init__(self):
        self._types_validation()

    def _types_validation(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError("Horn dimension must be an int.")
        if self.n < 0:
            raise ValueError(f"Horn dimension must be non-negative, not {self.n}")

    @abstractmethod
    def __call__(self) -> range:
        pass


class Inner(HornKind):
    """
    Inner horns 0 < i < n; fillers make a quasicategory.
    """

    @override
    def __call__(self) -> range:
        return range(1, self.n)


class Left(HornKind):
    """
    Horns 0 <= i < n of left fibrations.
    """

    @override
    def __call__(self) -> range:
        return range(0, self.n) if self.n >= 1 else range(0)


class Right(HornKind):
    """
    Horns 0 < i <= n of right fibrations.
    """

    @override
    def __call__(self) -> range:
        return range(1, self.n + 1) if self.n >= 1 else range(0)


class Kan(HornKind):
    """
    All horns 0 <= i <= n, n >= 1.
    """

    @override
    def __call__(self) -> range:
        return range(0, self.n + 1) if self.n >= 1 else range(0)


HORN_KINDS: dict[str, type[HornKind]] = {"inner": Inner, "left": Left, "right": Right, "kan": Kan}


def horn_kind(name: str) -> type[HornKind]:
    try:
        return HORN_KINDS[name]
    except KeyError:
        raise ValueError(f"Unknown horn kind {name}, expected one of {', '.join(HORN_KINDS)}.") from None
