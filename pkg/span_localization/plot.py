import logging
from collections.abc import Iterable
from typing import NamedTuple, Self

import matplotlib.pyplot as plt
import networkx as nx
from matplotlib.axes import Axes

from span_localization.relcat import RelativeCategory
from span_localization.sigma import SpanDiagram, SigmaPoset, build_sigma, element_label
from span_localization.types import Element

logger = logging.getLogger(__name__)


class DiagramPlotDef(NamedTuple):
    diagram: SpanDiagram
    label: str
    color: str


def sigma_position(e: Element) -> tuple[float, float]:
    """
    Triangle layout: vertices (i, i) on the bottom row, (0, n) at the top.
    """
    i, j = e
    return float(i + j), float(j - i)


def _arrow(ax: Axes, start: tuple[float, float], end: tuple[float, float], color: str, dashed: bool,
           bend: float = 0.0) -> None:
    ax.annotate("", xy=end, xytext=start,
                arrowprops=dict(arrowstyle="->", color=color, linestyle="--" if dashed else "-",
                                shrinkA=12, shrinkB=12, connectionstyle=f"arc3,rad={bend}"))


def _draw_diagram(ax: Axes, fpd: DiagramPlotDef) -> None:
    sigma = fpd.diagram.sigma
    for e in sigma.elements:
        x, y = sigma_position(e)
        ax.text(x, y, fpd.diagram.obj(e), ha="center", va="center", color=fpd.color)
    for e in sigma.off_diagonal:
        i, j = e
        _arrow(ax, sigma_position(e), sigma_position((i, j - 1)), fpd.color, True)
        _arrow(ax, sigma_position(e), sigma_position((i + 1, j)), fpd.color, False)
    n = sigma.n
    ax.set_xlim(-1, 2 * n + 1)
    ax.set_ylim(-1, n + 1)
    ax.set_title(fpd.label)
    ax.set_axis_off()


class DiagramPlot:
    """
    Class to plot span diagrams over their Sigma_n triangle; marked (hypercover) edges are dashed.
    :param fpd: DiagramPlotDef object. tuple with SpanDiagram, label and color.
    """
    def __init__(self, fpd: DiagramPlotDef | None = None):
        self.to_plot: list[DiagramPlotDef] = [] if fpd is None else [fpd]

    def add_to_plotlist(self, fpd: DiagramPlotDef) -> Self:
        """
        Method to add DiagramPlotDef object to plot.
        :param fpd: DiagramPlotDef object.
        :return: DiagramPlot object.
        """
        self.to_plot.append(fpd)
        return self

    def plot(self, file: str | None = None) -> None:
        """
        Plot execution method, one panel per diagram.
        :param file: Filepath to save plot. If none the plot is shown instead.
        """
        if not self.to_plot:
            raise ValueError("Nothing to plot.")
        fig, axes = plt.subplots(1, len(self.to_plot), figsize=(4 * len(self.to_plot), 4), squeeze=False)
        for ax, fpd in zip(axes[0], self.to_plot):
            _draw_diagram(ax, fpd)
        if file is None:
            plt.show()
        else:
            fig.savefig(file)
            logger.debug("saved %d diagrams to %s", len(self.to_plot), file)
        plt.close(fig)


def plot_category(relative: RelativeCategory, file: str | None = None, color: str = "black") -> None:
    """
    Draws the non-identity morphisms of a relative category, hypercovers dashed.
    Parallel arrows are bent apart; endomorphisms are left out of the picture.
    """
    category = relative.base
    graph = nx.DiGraph()
    graph.add_nodes_from(category.objects)
    graph.add_edges_from((m.dom, m.cod) for m in category.non_identities())
    position = {o: (float(x), float(y)) for o, (x, y) in nx.spring_layout(graph, seed=0).items()}
    fig, ax = plt.subplots(figsize=(6, 6))
    for obj in category.objects:
        x, y = position[obj]
        ax.text(x, y, obj, ha="center", va="center", color=color)
    seen: dict[tuple[str, str], int] = {}
    for m in category.non_identities():
        if m.dom == m.cod:
            continue
        k = seen.get((m.dom, m.cod), 0)
        seen[(m.dom, m.cod)] = k + 1
        _arrow(ax, position[m.dom], position[m.cod], color, relative.is_hypercover(m.name), 0.2 * k)
    ax.set_title(category.name)
    ax.set_axis_off()
    if file is None:
        plt.show()
    else:
        fig.savefig(file)
    plt.close(fig)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_edge(source: str, target: str, label: str, marked: bool) -> str:
    style = ", style=dashed" if marked else ""
    return f"  {_quote(source)} -> {_quote(target)} [label={_quote(label)}{style}];"


def category_to_dot(relative: RelativeCategory) -> str:
    category = relative.base
    lines = [f"digraph {_quote(category.name or 'C')} {{"]
    lines += [f"  {_quote(o)};" for o in category.objects]
    lines += [_dot_edge(m.dom, m.cod, m.name, relative.is_hypercover(m.name)) for m in category.non_identities()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def sigma_to_dot(sigma: SigmaPoset) -> str:
    """
    Generating edges of Sigma_n; marked edges dashed.
    """
    lines = [f"digraph {_quote(f'Sigma_{sigma.n}')} {{"]
    lines += [f"  {_quote(element_label(e))};" for e in sigma.elements]
    for e in sigma.off_diagonal:
        i, j = e
        lines.append(_dot_edge(element_label(e), element_label((i, j - 1)), "", True))
        lines.append(_dot_edge(element_label(e), element_label((i + 1, j)), "", False))
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagrams_to_dot(diagrams: Iterable[tuple[str, SpanDiagram]], name: str = "spans") -> str:
    """
    One cluster per named diagram; nodes are Sigma_n elements labelled by their objects.
    """
    lines = [f"digraph {_quote(name)} {{"]
    for title, diagram in diagrams:
        sigma = build_sigma(diagram.n)
        lines.append(f"  subgraph {_quote('cluster_' + title)} {{")
        lines.append(f"    label={_quote(title)};")

        def node(e: Element) -> str:
            return _quote(f"{title}{element_label(e)}")

        for e in sigma.elements:
            lines.append(f"    {node(e)} [label={_quote(diagram.obj(e))}];")
        for e in sigma.off_diagonal:
            i, j = e
            lines.append(f"    {node(e)} -> {node((i, j - 1))} [label={_quote(diagram.vertical(e))}, style=dashed];")
            lines.append(f"    {node(e)} -> {node((i + 1, j))} [label={_quote(diagram.horizontal(e))}];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
