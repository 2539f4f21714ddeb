from pathlib import Path

import pytest

from span_localization.catalog import FIXTURES, fixture_document, power_set, resolve_input, subset_label
from span_localization.document import serialize


def test_power_set_order() -> None:
    assert [subset_label(s) for s in power_set(2)] == ["{}", "{1}", "{2}", "{1,2}"]
    assert len(power_set(3)) == 8


def test_subset_label() -> None:
    assert subset_label(frozenset({3, 1})) == "{1,3}"
    assert subset_label(frozenset()) == "{}"


def test_unknown_fixture() -> None:
    with pytest.raises(ValueError, match="Unknown fixture"):
        fixture_document("torus")


def test_resolve_bundled() -> None:
    for name in FIXTURES:
        document, bundled = resolve_input(name)
        assert bundled
        assert document.name == name


def test_resolve_path(tmp_path: Path) -> None:
    path = tmp_path / "collapse.json"
    path.write_text(serialize(fixture_document("collapse")), encoding="utf-8")
    document, bundled = resolve_input(str(path))
    assert not bundled
    assert document == fixture_document("collapse").normalized()
