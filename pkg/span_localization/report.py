import json
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, is_dataclass
from enum import Enum
from typing import Any

from span_localization.types import CheckResult, Status

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_INCONCLUSIVE = 4


def to_jsonable(value: Any) -> Any:
    """
    Plain JSON value of a witness: named tuples become objects, other tuples lists.
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple) and hasattr(value, "_asdict"):
        return {k: to_jsonable(v) for k, v in value._asdict().items()}
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return str(value)


@dataclass
class CheckRecord:
    name: str
    status: Status
    witness: Any = None

    def as_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status.value, "witness": to_jsonable(self.witness)}


@dataclass
class Report:
    """
    Outcome of one command: input digest, checks in execution order and summaries.
    Timing is only recorded when enabled so that default reports are reproducible byte for byte.
    """
    command: str
    digest: str
    checks: list[CheckRecord] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] | None = None

    def add(self, name: str, result: CheckResult | bool, witness: Any = None) -> CheckRecord:
        if isinstance(result, CheckResult):
            witness = result.witness if witness is None else witness
        record = CheckRecord(name, Status.PASS if result else Status.FAIL, witness)
        self.checks.append(record)
        return record

    def add_inconclusive(self, name: str, witness: Any = None) -> CheckRecord:
        record = CheckRecord(name, Status.INCONCLUSIVE, witness)
        self.checks.append(record)
        return record

    @contextmanager
    def timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.timing is not None:
                self.timing[name] = round(time.perf_counter() - start, 6)

    @property
    def status(self) -> Status:
        statuses = {c.status for c in self.checks}
        if Status.FAIL in statuses:
            return Status.FAIL
        if Status.INCONCLUSIVE in statuses:
            return Status.INCONCLUSIVE
        return Status.PASS

    def exit_code(self) -> int:
        match self.status:
            case Status.FAIL:
                return EXIT_FAIL
            case Status.INCONCLUSIVE:
                return EXIT_INCONCLUSIVE
            case Status.PASS:
                return EXIT_PASS

    def as_dict(self) -> dict[str, Any]:
        result = {
            "command": self.command,
            "input_digest": self.digest,
            "status": self.status.value,
            "checks": [c.as_dict() for c in self.checks],
            "summary": to_jsonable(self.summary),
        }
        if self.timing is not None:
            result["timing"] = dict(self.timing)
        return result

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
