import json
from pathlib import Path

import pytest

from span_localization.catalog import fixture_document
from span_localization.cli import build_parser, main
from span_localization.document import digest, serialize
from span_localization.report import EXIT_BUDGET, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_PASS
from span_localization.types import Status

NO_PULLBACK = {
    "objects": ["a", "b", "c"],
    "morphisms": [{"name": "u", "dom": "a", "cod": "c"}, {"name": "v", "dom": "b", "cod": "c"}],
    "hypercovers": ["u"],
}


@pytest.fixture()
def no_pullback(tmp_path: Path) -> str:
    path = tmp_path / "no-pullback.json"
    path.write_text(json.dumps(NO_PULLBACK), encoding="utf-8")
    return str(path)


@pytest.fixture()
def walking_iso_file(tmp_path: Path) -> str:
    path = tmp_path / "walking-iso.json"
    path.write_text(serialize(fixture_document("walking-iso")), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("command", ["validate", "localize", "bicat", "sset"])
def test_fixtures_pass(command: str, fixture_name: str) -> None:
    assert main([command, "--input", fixture_name]) == EXIT_PASS


@pytest.mark.parametrize("level", [1, 2, 3])
def test_span_levels(level: int, fixture_name: str, tmp_path: Path) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert main(["span", "--input", fixture_name, "--level", str(level), "--json", str(first)]) == EXIT_PASS
    assert main(["span", "--input", fixture_name, "--level", str(level), "--json", str(second)]) == EXIT_PASS
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text(encoding="utf-8"))
    assert [entry["n"] for entry in report["summary"]["levels"]] == list(range(level + 1))
    names = [c["name"] for c in report["checks"]]
    assert [f"segal n={k}" for k in range(1, level + 1)] == [n for n in names if n.startswith("segal")]
    assert sum(n.startswith("cocartesian") for n in names) == len(fixture_document(fixture_name).objects)
    assert all(c["status"] == Status.PASS.value for c in report["checks"])


def test_validate_reports_missing_pullback(no_pullback: str, tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["validate", "--input", no_pullback, "--json", str(out)]) == EXIT_FAIL
    report = json.loads(out.read_text(encoding="utf-8"))
    hypercovers = next(c for c in report["checks"] if c["name"] == "hypercovers")
    assert hypercovers["witness"] == [{"clause": "cospan without pullback", "witness": ["u", "v"],
                                       "message": "Cospan (u, v) has no pullback."}]


@pytest.mark.parametrize("command", ["span", "localize", "bicat", "sset"])
def test_invalid_input_is_refused(command: str, no_pullback: str) -> None:
    args = [command, "--input", no_pullback]
    if command == "localize":
        args += ["--max-word-len", "8", "--max-iter", "100"]
    assert main(args) == EXIT_INVALID


def test_malformed_json(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", "--input", str(path)]) == EXIT_INVALID


def test_missing_file(tmp_path: Path) -> None:
    assert main(["validate", "--input", str(tmp_path / "missing.json")]) == EXIT_INVALID


def test_negative_limit() -> None:
    assert main(["span", "--input", "meet-poset", "--level", "-1"]) == EXIT_INVALID


def test_budget_exceeded() -> None:
    assert main(["span", "--input", "meet-poset", "--budget", "1"]) == EXIT_BUDGET


def test_oracle_inconclusive() -> None:
    assert main(["localize", "--input", "parallel-pair", "--max-word-len", "0"]) == EXIT_INCONCLUSIVE


def test_oracle_bounds_required_for_files(walking_iso_file: str) -> None:
    assert main(["localize", "--input", walking_iso_file]) == EXIT_INVALID
    assert main(["localize", "--input", walking_iso_file, "--max-word-len", "4"]) == EXIT_INVALID
    assert main(["localize", "--input", walking_iso_file, "--max-word-len", "8", "--max-iter", "1000"]) == EXIT_PASS


def test_horn_kinds() -> None:
    assert main(["sset", "--input", "walking-iso", "--kind", "kan"]) == EXIT_PASS
    assert main(["sset", "--input", "parallel-pair", "--kind", "left"]) == EXIT_FAIL


def test_sset_dimension_too_low() -> None:
    assert main(["sset", "--input", "meet-poset", "--dim", "1"]) == EXIT_INVALID


def test_sset_reports_w_locality(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["sset", "--input", "collapse", "--json", str(out)]) == EXIT_PASS
    report = json.loads(out.read_text(encoding="utf-8"))
    checks = {c["name"]: c["status"] for c in report["checks"] if c["name"].startswith("w-locality")}
    assert checks == {f"w-locality hom_Ho({c},-)": Status.PASS.value for c in ("0", "x", "y")}


@pytest.mark.parametrize("name", ["meet-poset", "walking-iso", "collapse"])
@pytest.mark.parametrize("command", ["validate", "span", "localize", "bicat", "sset"])
def test_reports_are_reproducible(command: str, name: str, tmp_path: Path) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert main([command, "--input", name, "--json", str(first)]) == EXIT_PASS
    assert main([command, "--input", name, "--json", str(second)]) == EXIT_PASS
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text(encoding="utf-8"))
    assert report["command"] == command
    assert report["input_digest"] == digest(fixture_document(name))
    assert "timing" not in report


def test_timing(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["span", "--input", "meet-poset", "--level", "1", "--timing", "--json", str(out)]) == EXIT_PASS
    report = json.loads(out.read_text(encoding="utf-8"))
    assert {"level 0", "level 1", "segal 1"} <= set(report["timing"])


def test_span_summary(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["span", "--input", "meet-poset", "--level", "0", "--json", str(out)]) == EXIT_PASS
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["summary"] == {"levels": [{"n": 0, "objects": 4, "arrows": 0}]}


def test_emit_dot(tmp_path: Path) -> None:
    category, spans = tmp_path / "category.dot", tmp_path / "spans.dot"
    assert main(["validate", "--input", "meet-poset", "--emit-dot", str(category)]) == EXIT_PASS
    text = category.read_text(encoding="utf-8")
    assert text.startswith("digraph")
    assert "style=dashed" in text
    assert main(["span", "--input", "meet-poset", "--level", "1", "--emit-dot", str(spans)]) == EXIT_PASS
    assert "subgraph" in spans.read_text(encoding="utf-8")


@pytest.mark.parametrize("command", ["validate", "span"])
def test_plot(command: str, tmp_path: Path) -> None:
    out = tmp_path / f"{command}.png"
    assert main([command, "--input", "meet-poset", "--plot", str(out)]) == EXIT_PASS
    assert out.exists()


def test_parser_defaults() -> None:
    args = build_parser().parse_args(["sset", "--input", "meet-poset"])
    assert args.kind == "inner"
    assert args.dim is None
    assert not args.timing


@pytest.mark.parametrize("argv", [[], ["fold", "--input", "meet-poset"], ["validate"]])
def test_usage_errors(argv: list[str]) -> None:
    with pytest.raises(SystemExit):
        main(argv)
