"""Matplotlib rendering of module diagrams to image files.

Layer diagrams are drawn in the conventional style: head at the top, socle
at the bottom, one node per simple label, extension edges between adjacent
layers.  Rendering is file-only (Agg backend); nothing opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .typec import ModuleDiagram, ProjectiveDiagram, StructureProvider


def _label(l: int) -> str:
    return rf"$L(\omega_{{{l}}})$" if l else r"$L(0)$"


def _draw_layered(ax, diagram: ModuleDiagram, x0: float, title: str) -> float:
    """Draw one diagram with its head at the top; returns the width used."""
    layers = diagram.layers
    width = max((len(layer) for layer in layers), default=1)
    for depth, layer in enumerate(layers):
        for idx, l in enumerate(layer):
            x = x0 + idx - (len(layer) - 1) / 2.0
            y = -depth
            ax.text(x, y, _label(l), ha="center", va="center", fontsize=9,
                    bbox=dict(boxstyle="round,pad=0.25", fc="white", ec="black",
                              lw=0.8))
        if depth:
            for idx, l in enumerate(layer):
                x = x0 + idx - (len(layer) - 1) / 2.0
                prev = layers[depth - 1]
                for pidx in range(len(prev)):
                    px = x0 + pidx - (len(prev) - 1) / 2.0
                    ax.plot([px, x], [-(depth - 1) - 0.28, -depth + 0.28],
                            color="black", lw=0.8, zorder=0)
    ax.text(x0, 0.9, title, ha="center", va="center", fontsize=10)
    return max(width, 1.6)


def render_weyl_modules(provider: StructureProvider, path: str,
                        labels=None) -> str:
    """Render the nontrivial Weyl-module diagrams of a provider side by side."""
    if labels is None:
        labels = [j for j in provider.gamma if j]
    diagrams = [(j, provider.weyl_module(j)) for j in labels]
    fig, ax = plt.subplots(figsize=(1.9 * max(len(diagrams), 1), 3.4))
    x = 0.0
    for j, d in diagrams:
        w = _draw_layered(ax, d, x, rf"$V(\omega_{{{j}}})$")
        x += w + 0.9
    ax.set_xlim(-1.2, x)
    depth = max((len(d.layers) for _, d in diagrams), default=1)
    ax.set_ylim(-depth + 0.2, 1.4)
    ax.axis("off")
    fig.suptitle(
        f"Weyl modules, type C{provider.n}, p = {provider.p}", fontsize=11)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


_P0_POSITIONS = {
    0: (0.0, 0.0),
    1: (1.0, -0.6),
    2: (1.0, -1.6),
    3: (1.0, -2.6),
    4: (0.0, -3.2),
    5: (-1.0, -2.6),
    6: (-1.0, -1.6),
    7: (-1.0, -0.6),
    8: (0.0, -1.6),
}


def render_projective_cover(diagram: ProjectiveDiagram, path: str,
                            title: str = "Projective cover of the trivial module") -> str:
    """Render a projective-cover node/edge diagram."""
    fig, ax = plt.subplots(figsize=(4.6, 4.2))
    pos = _P0_POSITIONS if len(diagram.nodes) == len(_P0_POSITIONS) else {
        i: (i % 3 - 1.0, -(i // 3)) for i in range(len(diagram.nodes))
    }
    for a, b in diagram.edges:
        (xa, ya), (xb, yb) = pos[a], pos[b]
        ax.plot([xa, xb], [ya, yb], color="black", lw=0.8, zorder=0)
    for i, l in enumerate(diagram.nodes):
        x, y = pos[i]
        ax.text(x, y, _label(l), ha="center", va="center", fontsize=9,
                bbox=dict(boxstyle="round,pad=0.25", fc="white", ec="black",
                          lw=0.8))
    ax.set_xlim(-2.0, 2.0)
    ax.set_ylim(-3.8, 0.6)
    ax.axis("off")
    ax.set_title(title, fontsize=11)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def render_h2_table(rows: dict, p: int, path: str) -> str:
    """Render a nonvanishing chart: rank on the x-axis, one marker per even
    j with one-dimensional second cohomology."""
    fig, ax = plt.subplots(figsize=(8.0, 4.0))
    xs, ys = [], []
    for n, row in sorted(rows.items()):
        for j in row["ones"]:
            xs.append(n)
            ys.append(j)
    ax.scatter(xs, ys, marker="s", s=28, color="tab:blue",
               label="one-dimensional")
    und_x, und_y = [], []
    for n, row in sorted(rows.items()):
        for j in row["undetermined"]:
            und_x.append(n)
            und_y.append(j)
    if und_x:
        ax.scatter(und_x, und_y, marker="x", s=28, color="tab:red",
                   label="undetermined")
    ax.set_xlabel("rank n")
    ax.set_ylabel("fundamental index j")
    ax.set_title(f"Nonvanishing second cohomology, type C, p = {p}")
    ax.grid(True, lw=0.3, alpha=0.5)
    if und_x or xs:
        ax.legend(loc="upper left", fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
