"""
Plain-text SVG line charts of correlation sweeps.

Two charts are written per sweep:
  <stem>_classical.svg: C(B|A) solid, C(A|B) dashed
  <stem>_quantum.svg:   D(B|A) solid, D(A|B) dashed, D(MID) dotted
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

from .models.report import CorrelationReport

logger = logging.getLogger(__name__)


@dataclass
class Series:
    label: str
    xs: Sequence[float]
    ys: Sequence[float]
    style: str = "solid"


class SvgChart:
    """
    Accumulates SVG elements into a string.

    Geometry (canvas, margins, axis ranges, tick counts, dash patterns,
    colors) comes from the plot config.
    """

    def __init__(self, plot_config: Dict):
        self.config = plot_config
        canvas = plot_config["canvas"]
        margins = plot_config["margins"]
        self.width = canvas["width"]
        self.height = canvas["height"]
        self.left = margins["left"]
        self.right = margins["right"]
        self.top = margins["top"]
        self.bottom = margins["bottom"]
        self.svg = ""
        self.x_range: Tuple[float, float] = (0.0, 1.0)
        self.y_range: Tuple[float, float] = (
            plot_config["axes"]["y_min"],
            plot_config["axes"]["y_max"],
        )

    # -- coordinate mapping -------------------------------------------------

    def _px(self, x: float) -> float:
        lo, hi = self.x_range
        span = (hi - lo) or 1.0
        return self.left + (x - lo) / span * (self.width - self.left - self.right)

    def _py(self, y: float) -> float:
        lo, hi = self.y_range
        y = min(max(y, lo), hi)
        return self.height - self.bottom - (y - lo) / (hi - lo) * (self.height - self.top - self.bottom)

    # -- primitives -----------------------------------------------------------

    def header(self):
        self.svg += (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg version="1.1" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>\n'
        )

    def line(self, x1, y1, x2, y2, stroke="black", extra=""):
        self.svg += (
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" {extra}/>\n'
        )

    def text(self, x, y, string, extra=""):
        self.svg += f'<text x="{x:.2f}" y="{y:.2f}" {extra}>{escape(string)}</text>\n'

    def polyline(self, points: List[Tuple[float, float]], color: str, dash: str, label: str):
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.svg += (
            f'<polyline class="series" data-label={quoteattr(label)} points="{coords}" '
            f'fill="none" stroke="{color}" stroke-width="2"{dash_attr}/>\n'
        )

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"

    # -- chart ----------------------------------------------------------------

    def axes(self, x_label: str, y_label: str, title: str):
        axes_cfg = self.config["axes"]
        x0, x1 = self.left, self.width - self.right
        y0, y1 = self.height - self.bottom, self.top
        self.line(x0, y0, x1, y0)
        self.line(x0, y0, x0, y1)

        y_ticks = max(int(axes_cfg["y_ticks"]), 2)
        lo, hi = self.y_range
        for k in range(y_ticks):
            value = lo + (hi - lo) * k / (y_ticks - 1)
            py = self._py(value)
            self.line(x0 - 5, py, x0, py)
            self.text(x0 - 8, py + 4, f"{value:.2f}", 'font-size="11" text-anchor="end"')

        x_ticks = max(int(axes_cfg["x_ticks"]), 2)
        lo, hi = self.x_range
        for k in range(x_ticks):
            value = lo + (hi - lo) * k / (x_ticks - 1)
            px = self._px(value)
            self.line(px, y0, px, y0 + 5)
            self.text(px, y0 + 18, f"{value:.3g}", 'font-size="11" text-anchor="middle"')

        self.text((x0 + x1) / 2, self.height - 15, x_label, 'font-size="13" text-anchor="middle"')
        self.text(
            15, (y0 + y1) / 2, y_label,
            f'font-size="13" text-anchor="middle" transform="rotate(-90 15 {(y0 + y1) / 2:.2f})"',
        )
        self.text((x0 + x1) / 2, self.top - 10, title, 'font-size="14" text-anchor="middle"')

    def legend(self, series: Sequence[Series]):
        x = self.width - self.right - 170
        y = self.top + 15
        for i, s in enumerate(series):
            color = self._color(i)
            dash = self.config["styles"].get(s.style, "")
            dash_attr = f'stroke-dasharray="{dash}"' if dash else ""
            self.line(x, y + 20 * i, x + 30, y + 20 * i, stroke=color,
                      extra=f'stroke-width="2" {dash_attr}')
            self.text(x + 38, y + 20 * i + 4, s.label, 'font-size="12"')

    def _color(self, i: int) -> str:
        colors = self.config["colors"]
        return colors[i % len(colors)]

    def render(self, series: Sequence[Series], title: str, x_label: str, y_label: str) -> str:
        xs = [x for s in series for x in s.xs]
        if xs:
            self.x_range = (min(xs), max(xs))
        self.header()
        self.axes(x_label, y_label, title)
        for i, s in enumerate(series):
            points = [(self._px(x), self._py(y)) for x, y in zip(s.xs, s.ys)]
            self.polyline(points, self._color(i), self.config["styles"].get(s.style, ""), s.label)
        self.legend(series)
        return self.get_svg()


def correlation_series(reports: Sequence[CorrelationReport]) -> Tuple[List[Series], List[Series]]:
    """(classical chart series, quantum chart series)."""
    alphas = [r.params.alpha for r in reports]
    classical = [
        Series("C(B|A)", alphas, [r.classical_a for r in reports], "solid"),
        Series("C(A|B)", alphas, [r.classical_b for r in reports], "dashed"),
    ]
    quantum = [
        Series("D(B|A)", alphas, [r.discord_a for r in reports], "solid"),
        Series("D(A|B)", alphas, [r.discord_b for r in reports], "dashed"),
        Series("D(MID)", alphas, [r.mid_quantum for r in reports], "dotted"),
    ]
    return classical, quantum


def write_correlation_charts(
    reports: Sequence[CorrelationReport],
    output_stem: str,
    plot_config: Dict,
) -> Tuple[Path, Path]:
    """Write <stem>_classical.svg and <stem>_quantum.svg; return their paths."""
    stem = Path(output_stem)
    if stem.suffix.lower() in (".svg", ".csv"):
        stem = stem.with_suffix("")
    if stem.parent and not stem.parent.exists():
        stem.parent.mkdir(parents=True, exist_ok=True)

    classical, quantum = correlation_series(reports)
    paths = []
    for suffix, series, title in (
        ("classical", classical, "Classical correlation vs dilaton"),
        ("quantum", quantum, "Quantum correlation vs dilaton"),
    ):
        path = stem.parent / f"{stem.name}_{suffix}.svg"
        svg = SvgChart(plot_config).render(series, title, "dilaton alpha", "correlation (bits)")
        path.write_text(svg, encoding="utf-8")
        logger.info(f"Wrote {path}")
        paths.append(path)
    return paths[0], paths[1]
