from argparse import Namespace
from dataclasses import dataclass, fields, replace
from typing import Self


@dataclass(frozen=True)
class Limits:
    """
    Bounds for every enumeration. Defaults are the command line defaults.
    :param budget: search nodes allowed to one enumeration.
    :param level: span level n.
    :param dim: dimension bound D of simplicial sets.
    :param max_word_len: longest zigzag representative accepted by the oracle.
    :param max_iter: row definitions allowed to the oracle per source object.
    """
    budget: int = 2_000_000
    level: int = 2
    dim: int = 3
    max_word_len: int = 8
    max_iter: int = 10_000

    def __post_init__(self):
        self._types_validation()

    def _types_validation(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"Limit {f.name} must be an int.")
            if value < 0:
                raise ValueError(f"Limit {f.name} must be non-negative, not {value}")

    @classmethod
    def from_args(cls, namespace: Namespace) -> Self:
        """
        Defaults overridden by every flag given on the command line.
        """
        given = {f.name: getattr(namespace, f.name) for f in fields(cls)
                 if getattr(namespace, f.name, None) is not None}
        return replace(cls(), **given)
