import json
from enum import Enum

import pytest

from span_localization.report import (EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, CheckRecord, Report,
                                      to_jsonable)
from span_localization.types import CheckResult, Clause, LiftingProblem, Span, Status

DIGEST = "0" * 64


class Colour(Enum):
    RED = "red"


@pytest.mark.parametrize("value, expected", [(Span("id_a", "f"), {"left": "id_a", "right": "f"}),
                                             (("x", 1), ["x", 1]),
                                             ({"b", "a"}, ["a", "b"]),
                                             (Colour.RED, "red"),
                                             (Clause.ASSOCIATIVITY, "associativity"),
                                             (None, None),
                                             ({1: (True,)}, {"1": [True]})])
def test_to_jsonable(value, expected) -> None:
    assert to_jsonable(value) == expected


def test_nested_witness() -> None:
    problem = LiftingProblem(2, 0, (("id_x",), ("f",)), (0, 0, 0))
    assert to_jsonable(problem) == {"n": 2, "index": 0, "faces": [["id_x"], ["f"]], "base": [0, 0, 0]}


@pytest.mark.parametrize("statuses, code", [([], EXIT_PASS),
                                            ([True, True], EXIT_PASS),
                                            ([True, None], EXIT_INCONCLUSIVE),
                                            ([None, False], EXIT_FAIL),
                                            ([False, True], EXIT_FAIL)])
def test_exit_code(statuses: list[bool | None], code: int) -> None:
    report = Report("validate", DIGEST)
    for k, ok in enumerate(statuses):
        if ok is None:
            report.add_inconclusive(f"check {k}")
        else:
            report.add(f"check {k}", ok)
    assert report.exit_code() == code


def test_add_takes_witness_from_result() -> None:
    report = Report("bicat", DIGEST)
    record = report.add("square", CheckResult(False, "id_{2}"))
    assert record == CheckRecord("square", Status.FAIL, "id_{2}")
    assert report.add("other", CheckResult(True, "a"), "b").witness == "b"


def test_timing_is_opt_in() -> None:
    report = Report("span", DIGEST)
    with report.timed("level 0"):
        pass
    assert "timing" not in report.as_dict()
    timed = Report("span", DIGEST, timing={})
    with timed.timed("level 0"):
        pass
    assert set(timed.as_dict()["timing"]) == {"level 0"}


def test_to_json() -> None:
    report = Report("localize", DIGEST)
    report.add("oracle agreement", True)
    report.summary = {"hom": {"a->b": ["i"]}}
    data = json.loads(report.to_json())
    assert data == {"command": "localize", "input_digest": DIGEST, "status": "pass",
                    "checks": [{"name": "oracle agreement", "status": "pass", "witness": None}],
                    "summary": {"hom": {"a->b": ["i"]}}}
    assert report.to_json().endswith("}\n")
