"""Self-contained SVG rendering of a graph window.

One drawing group per period so the scale self-similarity is visible
by comparing adjacent groups.  Rising and falling segments get
distinct classes, lower/upper node points are marked, and one axis
tick is emitted per grid breakpoint.  All styling is inline; the file
references no external assets.
"""

from __future__ import annotations

from .construct import RegularGraph
from .graph import lower_node, segments_in_window, upper_node

_STYLE = """
  .seg { stroke-width: 2; fill: none; stroke-linecap: round; }
  .seg-A { stroke: #2b6fad; }
  .seg-B { stroke: #c24a3f; }
  .node { stroke: #222; stroke-width: 0.8; }
  .node-a { fill: #9ec7e8; }
  .node-b { fill: #eab0a5; }
  .axis { stroke: #555; stroke-width: 1; }
  .tick { stroke: #777; stroke-width: 1; }
  .ticklabel { font: 11px sans-serif; fill: #333; text-anchor: middle; }
  .frame { fill: #fdfdfd; stroke: #999; stroke-width: 1; }
"""


def render_svg(
    g: RegularGraph,
    t_lo: int,
    t_hi: int,
    width: int = 960,
    height: int = 600,
) -> str:
    """Render the window [tau^t_lo, tau^(t_hi+1)] as an SVG document."""
    segs = segments_in_window(g, t_lo, t_hi)
    tau = g.schedule.tau
    k = g.weights.k

    q_lo, q_hi = tau**t_lo, tau ** (t_hi + 1)
    ys = [s.start[1] for s in segs] + [s.end[1] for s in segs] + [0.0]
    y_min, y_max = min(ys), max(ys)
    pad = 0.08 * (y_max - y_min or 1.0)
    y_min -= pad
    y_max += pad

    ml, mr, mt, mb = 55, 20, 20, 42
    iw, ih = width - ml - mr, height - mt - mb

    def sx(q: float) -> float:
        return ml + (q - q_lo) / (q_hi - q_lo) * iw

    def sy(y: float) -> float:
        return mt + (y_max - y) / (y_max - y_min) * ih

    grid = [tau**t * g.schedule.sigmas[j] for t in range(t_lo, t_hi + 1) for j in range(k)]
    grid.append(q_hi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}">',
        f"<style>{_STYLE}</style>",
        f'<rect class="frame" x="{ml}" y="{mt}" width="{iw}" height="{ih}"/>',
        f'<line class="axis" x1="{ml}" y1="{sy(0.0):.2f}" x2="{ml + iw}" y2="{sy(0.0):.2f}"/>',
    ]

    for tick in grid:
        x = sx(tick)
        parts.append(
            f'<line class="tick" x1="{x:.2f}" y1="{mt + ih}" x2="{x:.2f}" y2="{mt + ih + 6}"/>'
        )
        parts.append(
            f'<text class="ticklabel" x="{x:.2f}" y="{mt + ih + 18}">{tick:.4g}</text>'
        )

    by_period: dict[int, list] = {}
    for s in segs:
        by_period.setdefault(s.t, []).append(s)
    for t in sorted(by_period):
        parts.append(f'<g class="period" data-period="{t}">')
        for s in by_period[t]:
            parts.append(
                f'<line class="seg seg-{s.kind}" '
                f'x1="{sx(s.start[0]):.2f}" y1="{sy(s.start[1]):.2f}" '
                f'x2="{sx(s.end[0]):.2f}" y2="{sy(s.end[1]):.2f}"/>'
            )
        parts.append("</g>")

    nodes = []
    for t in range(t_lo, t_hi + 1):
        for r in range(k):
            nodes.append(("a", lower_node(g, r, t)))
            nodes.append(("b", upper_node(g, r, t)))
    nodes.append(("a", lower_node(g, 0, t_hi + 1)))
    nodes.append(("b", upper_node(g, 0, t_hi + 1)))
    for cls, (x, y) in nodes:
        parts.append(
            f'<circle class="node node-{cls}" cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts)


__all__ = ["render_svg"]
