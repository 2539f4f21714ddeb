from pathlib import Path

import pytest

from span_localization.plot import (DiagramPlot, DiagramPlotDef, category_to_dot, diagrams_to_dot, plot_category,
                                    sigma_position, sigma_to_dot)
from span_localization.relcat import RelativeCategory
from span_localization.sigma import LambdaData, SpanDiagram, build_sigma, face, right_kan_extend
from span_localization.types import Span

MEET_CHAIN = LambdaData(("{1}", "{1,2}", "{2}"),
                        (Span("id_{1}", "{1}<{1,2}"), Span("{2}<{1,2}", "id_{2}")))


def _diagram(meet: RelativeCategory) -> SpanDiagram:
    diagram = right_kan_extend(meet, MEET_CHAIN)
    assert diagram is not None
    return diagram


def test_diagram_plot_def(meet: RelativeCategory) -> None:
    fpd = DiagramPlotDef(_diagram(meet), "meet", "red")
    assert isinstance(fpd, DiagramPlotDef)


def test_diagram_plot(meet: RelativeCategory, tmp_path: Path) -> None:
    fp = DiagramPlot(DiagramPlotDef(_diagram(meet), "meet", "red"))
    fp.plot(str(tmp_path / "plot.png"))
    assert (tmp_path / "plot.png").exists()


def test_diagram_plot_add_to_plotlist(meet: RelativeCategory) -> None:
    fp = DiagramPlot(DiagramPlotDef(_diagram(meet), "meet", "red"))
    check_id = id(fp)
    fp = fp.add_to_plotlist(DiagramPlotDef(_diagram(meet), "again", "green"))
    fp = fp.add_to_plotlist(DiagramPlotDef(_diagram(meet).precompose(face(2, 1)), "outer", "blue"))
    assert check_id == id(fp)
    assert len(fp.to_plot) == 3


def test_empty_plot() -> None:
    with pytest.raises(ValueError, match="Nothing to plot."):
        DiagramPlot().plot()


def test_plot_category(relative: RelativeCategory, tmp_path: Path) -> None:
    plot_category(relative, str(tmp_path / "category.png"), "blue")
    assert (tmp_path / "category.png").exists()


def test_sigma_position() -> None:
    assert sigma_position((0, 2)) == (2.0, 2.0)
    assert sigma_position((1, 1)) == (2.0, 0.0)


def test_sigma_to_dot() -> None:
    text = sigma_to_dot(build_sigma(2))
    assert text.startswith('digraph "Sigma_2"')
    assert text.count("style=dashed") == 3


def test_category_to_dot(parallel: RelativeCategory, meet: RelativeCategory) -> None:
    assert "style=dashed" not in category_to_dot(parallel)
    assert category_to_dot(meet).count("style=dashed") == 5


def test_diagrams_to_dot(meet: RelativeCategory) -> None:
    text = diagrams_to_dot([("meet", _diagram(meet))])
    assert 'subgraph "cluster_meet"' in text
    assert text.count("style=dashed") == 3
