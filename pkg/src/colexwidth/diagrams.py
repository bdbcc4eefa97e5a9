"""Hasse diagram output: DOT text and rendered figure files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .colex import hasse_cover_edges


def hasse_dot(order, antichain=None):
    """DOT source for the cover-edge diagram, bottom-up."""
    marked = set(antichain or ())
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=circle];"]
    for q in range(order.state_count):
        style = ' [style=filled, fillcolor="gold"]' if q in marked else ""
        lines.append("  %d%s;" % (q, style))
    for u, v in hasse_cover_edges(order):
        lines.append("  %d -> %d;" % (u, v))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layers(order):
    """Height of every state: longest strict chain strictly below it."""
    n = order.state_count
    height = [0] * n
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(n):
                if order.below(u, v) and height[v] < height[u] + 1:
                    height[v] = height[u] + 1
                    changed = True
    return height

def render_hasse_figure(order, path, antichain=None, chains=None, title=None):
    """Render the Hasse diagram to an image file.

    States are layered by chain height; cover edges are drawn as segments.
    Antichain members get a highlight ring, chain blocks share a color.
    """
    n = order.state_count
    height = _layers(order)
    by_layer = {}
    for q in range(n):
        by_layer.setdefault(height[q], []).append(q)
    pos = {}
    for layer, states in sorted(by_layer.items()):
        for i, q in enumerate(sorted(states)):
            pos[q] = (i - (len(states) - 1) / 2.0, layer)

    colors = ["#4878d0"] * n
    if chains is not None:
        palette = plt.get_cmap("tab10")
        for q in range(n):
            colors[q] = palette(chains.chain_of[q] % 10)

    fig, ax = plt.subplots(figsize=(max(4, n * 0.9), max(3, (max(height) + 1) * 1.2)))
    for u, v in hasse_cover_edges(order):
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="#888888", zorder=1, linewidth=1.2)
    xs = [pos[q][0] for q in range(n)]
    ys = [pos[q][1] for q in range(n)]
    ax.scatter(xs, ys, s=600, c=colors, zorder=2, edgecolors="black")
    if antichain:
        axs = [pos[q][0] for q in antichain]
        ays = [pos[q][1] for q in antichain]
        ax.scatter(axs, ays, s=900, facecolors="none", edgecolors="#d65f5f",
                   linewidths=2.5, zorder=3)
    for q in range(n):
        ax.annotate(str(q), pos[q], ha="center", va="center", zorder=4,
                    color="white", fontweight="bold")
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
