from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Hashable, Iterator, NamedTuple

Obj = str
Mor = str
Element = tuple[int, int]
Simplex = Hashable


class Clause(Enum):
    DUPLICATE_NAME = "duplicate name"
    UNKNOWN_OBJECT = "unknown object"
    UNKNOWN_MORPHISM = "unknown morphism"
    MISSING_COMPOSITE = "missing composite"
    ILL_TYPED_COMPOSITE = "ill-typed composite"
    SPURIOUS_COMPOSITE = "composite on non-composable pair"
    IDENTITY_LAW = "identity law"
    ASSOCIATIVITY = "associativity"
    MISSING_ISO = "missing isomorphism"
    NOT_CLOSED = "non-closed composite"
    MISSING_PULLBACK = "cospan without pullback"
    UNSTABLE_PROJECTION = "pulled-back projection not in W"


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class Morphism(NamedTuple):
    name: Mor
    dom: Obj
    cod: Obj


class Violation(NamedTuple):
    clause: Clause
    witness: tuple[str, ...]
    message: str


class Span(NamedTuple):
    """
    Span c <= e -> d given by its legs; the apex is the common domain.
    :param left: hypercover leg e -> c.
    :param right: leg e -> d.
    """
    left: Mor
    right: Mor


class MonotoneMap(NamedTuple):
    """
    Monotone map [m] -> [n] as the tuple of its values.
    """
    values: tuple[int, ...]
    target: int


class CommutingSquare(NamedTuple):
    """
    Square d' -top-> c', d' -left-> d, c' -right-> c, d -bottom-> c.
    """
    top: Mor
    left: Mor
    right: Mor
    bottom: Mor


class DiagramConditions(NamedTuple):
    all_squares: bool
    inner_squares: bool
    kan_extension: bool


class LiftingProblem(NamedTuple):
    """
    Horn Lambda^index[n] -> X over an n-simplex of the base.
    :param faces: faces y_j for j != index, in increasing j.
    """
    n: int
    index: int
    faces: tuple[Simplex, ...]
    base: Simplex


class ZigzagLetter(NamedTuple):
    symbol: Mor
    inverted: bool


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of a check. Truthiness is the outcome itself.
    :param ok: True if the checked property holds.
    :param witness: counterexample or supporting datum, None if not applicable.
    """
    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class ValidationReport:
    """
    Report-style validation outcome. Empty report means valid input.
    """
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.is_valid

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    @property
    def is_valid(self) -> bool:
        """
        :return: True if no violation was recorded.
        """
        return not self.violations

    @property
    def clauses(self) -> set[Clause]:
        """
        :return: set of violated clauses.
        """
        return {v.clause for v in self.violations}

    def add(self, clause: Clause, witness: tuple[str, ...], message: str) -> None:
        self.violations.append(Violation(clause, witness, message))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)
