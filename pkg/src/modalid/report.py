"""Run reporting: per-generation CSV tables and SVG convergence charts.

Charts are emitted as hand-built SVG 1.1 documents rather than through a
plotting library so that identical runs produce byte-identical artifacts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .evolution import GENE_NAMES, RunResult
from .serialize import fmt_float, write_text

GENERATIONS_CSV = "generations.csv"
INDIVIDUALS_CSV = "individuals.csv"

CHART_FILES = (
    "std_mse1.svg",
    "std_mse2.svg",
    "mean_mse1.svg",
    "mean_mse2.svg",
    "fitness_scatter.svg",
)


@dataclass(frozen=True)
class ReportBundle:
    """Paths of everything write_report produced."""

    stats_csv: str
    scatter_csv: str
    charts: tuple


def ols_trend(xs, ys) -> tuple[float, float]:
    """Ordinary least-squares (slope, intercept) of ys over xs."""
    n = len(xs)
    if n != len(ys) or n == 0:
        raise ValueError("xs and ys must be equally sized and non-empty")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0.0:
        return 0.0, mean_y
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, mean_y - slope * mean_x


def write_stats(result: RunResult, out_dir) -> tuple[str, str]:
    """Emit generations.csv and individuals.csv (17-significant-digit floats)."""
    os.makedirs(out_dir, exist_ok=True)
    gen_path = os.path.join(out_dir, GENERATIONS_CSV)
    lines = ["generation,mean_mse1,std_mse1,min_mse1,mean_mse2,std_mse2,min_mse2"]
    for st in result.history:
        lines.append(
            ",".join(
                [str(st.generation)]
                + [
                    fmt_float(v)
                    for v in (
                        st.mean_mse1,
                        st.std_mse1,
                        st.min_mse1,
                        st.mean_mse2,
                        st.std_mse2,
                        st.min_mse2,
                    )
                ]
            )
        )
    write_text(gen_path, "\n".join(lines) + "\n")

    ind_path = os.path.join(out_dir, INDIVIDUALS_CSV)
    lines = ["generation,index," + ",".join(GENE_NAMES) + ",mse1,mse2,rank"]
    for ind in result.archive:
        lines.append(
            ",".join(
                [str(ind.generation), str(ind.index)]
                + [fmt_float(v) for v in ind.genome]
                + [fmt_float(ind.fitness.mse1), fmt_float(ind.fitness.mse2), str(ind.rank)]
            )
        )
    write_text(ind_path, "\n".join(lines) + "\n")
    return gen_path, ind_path


def render_charts(result: RunResult, out_dir) -> list[str]:
    """Emit the five convergence charts.

    Four line charts (standard deviation and mean per objective, generation
    on the x axis; the mean charts carry a least-squares trendline) plus one
    scatter of every individual colored from red (early generations) to
    blue (late).
    """
    os.makedirs(out_dir, exist_ok=True)
    gens = [st.generation for st in result.history]
    series = {
        "std_mse1.svg": ("std dev of shape error", [st.std_mse1 for st in result.history], False),
        "std_mse2.svg": ("std dev of tcp error", [st.std_mse2 for st in result.history], False),
        "mean_mse1.svg": ("mean shape error", [st.mean_mse1 for st in result.history], True),
        "mean_mse2.svg": ("mean tcp error", [st.mean_mse2 for st in result.history], True),
    }
    paths = []
    for name, (title, ys, with_trend) in series.items():
        path = os.path.join(out_dir, name)
        write_text(path, _line_chart_svg(title, gens, ys, with_trend))
        paths.append(path)
    scatter_path = os.path.join(out_dir, "fitness_scatter.svg")
    write_text(scatter_path, _scatter_svg(result))
    paths.append(scatter_path)
    return paths


def write_report(result: RunResult, out_dir) -> ReportBundle:
    gen_path, ind_path = write_stats(result, out_dir)
    charts = render_charts(result, out_dir)
    return ReportBundle(stats_csv=gen_path, scatter_csv=ind_path, charts=tuple(charts))


# ---------------------------------------------------------------------------
# SVG primitives

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 80, 24, 48, 56


def _px(t: float) -> str:
    return format(t, ".2f")


class _Axes:
    """Maps data coordinates to pixel coordinates inside fixed margins."""

    def __init__(self, xmin, xmax, ymin, ymax, width=_W, height=_H):
        self.width = width
        self.height = height
        self.xmin, self.xmax = xmin, xmax
        self.ymin, self.ymax = ymin, ymax
        self.xspan = (xmax - xmin) or 1.0
        self.yspan = (ymax - ymin) or 1.0

    def x(self, v: float) -> float:
        return _ML + (v - self.xmin) / self.xspan * (self.width - _ML - _MR)

    def y(self, v: float) -> float:
        return _MT + (self.ymax - v) / self.yspan * (self.height - _MT - _MB)

    def frame_elements(self, title: str, xlabel: str, ylabel: str) -> list[str]:
        x0, x1 = _ML, self.width - _MR
        y0, y1 = _MT, self.height - _MB
        parts = [
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>',
            f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/>',
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
            f'<text x="{(x0 + x1) // 2}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>',
            f'<text x="{(x0 + x1) // 2}" y="{self.height - 14}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{xlabel}</text>',
            f'<text x="20" y="{(y0 + y1) // 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 20 {(y0 + y1) // 2})">{ylabel}</text>',
        ]
        # y tick labels at min / mid / max
        for v in (self.ymin, (self.ymin + self.ymax) / 2.0, self.ymax):
            py = self.y(v)
            parts.append(
                f'<line x1="{x0 - 4}" y1="{_px(py)}" x2="{x0}" y2="{_px(py)}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{x0 - 8}" y="{_px(py + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">{format(v, ".4g")}</text>'
            )
        return parts

    def x_ticks(self, values) -> list[str]:
        y1 = self.height - _MB
        parts = []
        for v in values:
            px = self.x(v)
            parts.append(
                f'<line x1="{_px(px)}" y1="{y1}" x2="{_px(px)}" y2="{y1 + 4}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{_px(px)}" y="{y1 + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{v}</text>'
            )
        return parts


def _svg_doc(body: list[str], width=_W, height=_H) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def _line_chart_svg(title: str, gens, ys, with_trend: bool) -> str:
    ymin, ymax = min(ys), max(ys)
    trend = ols_trend(gens, ys) if with_trend else None
    if trend is not None:
        fitted = [trend[0] * g + trend[1] for g in gens]
        ymin = min(ymin, min(fitted))
        ymax = max(ymax, max(fitted))
    ax = _Axes(min(gens), max(gens), ymin, ymax)
    parts = ax.frame_elements(title, "generation", title)
    parts.extend(ax.x_ticks(gens if len(gens) <= 20 else gens[:: len(gens) // 20 + 1]))
    pts = " ".join(f"{_px(ax.x(g))},{_px(ax.y(v))}" for g, v in zip(gens, ys))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for g, v in zip(gens, ys):
        parts.append(
            f'<circle cx="{_px(ax.x(g))}" cy="{_px(ax.y(v))}" r="3" fill="#1f77b4"/>'
        )
    if trend is not None:
        slope, intercept = trend
        g0, g1 = gens[0], gens[-1]
        parts.append(
            f'<line class="trendline" data-slope="{fmt_float(slope)}" '
            f'data-intercept="{fmt_float(intercept)}" '
            f'x1="{_px(ax.x(g0))}" y1="{_px(ax.y(slope * g0 + intercept))}" '
            f'x2="{_px(ax.x(g1))}" y2="{_px(ax.y(slope * g1 + intercept))}" '
            f'stroke="#d62728" stroke-width="1.5" stroke-dasharray="6,4"/>'
        )
    return _svg_doc(parts)


def _ramp_color(t: float) -> str:
    # red (earliest generation) to blue (latest)
    r = round(255 * (1.0 - t))
    b = round(255 * t)
    return f"rgb({r},0,{b})"


def _scatter_svg(result: RunResult) -> str:
    last_gen = max(1, len(result.history) - 1)
    width = 2 * _W
    body = [f'<rect x="0" y="0" width="{width}" height="{_H}" fill="white"/>']
    for panel, key in enumerate(("mse1", "mse2")):
        values = [getattr(ind.fitness, key) for ind in result.archive]
        gens = [ind.generation for ind in result.archive]
        ax = _Axes(0, last_gen, min(values), max(values))
        offset = panel * _W
        title = "shape error by generation" if key == "mse1" else "tcp error by generation"
        parts = ax.frame_elements(title, "generation", title)
        parts.extend(ax.x_ticks(sorted(set(gens)) if last_gen < 20 else []))
        for g, v in zip(gens, values):
            t = g / last_gen
            parts.append(
                f'<circle cx="{_px(ax.x(g))}" cy="{_px(ax.y(v))}" r="3" '
                f'fill="{_ramp_color(t)}" fill-opacity="0.7"/>'
            )
        body.append(f'<g transform="translate({offset} 0)">')
        body.extend(parts)
        body.append("</g>")
    return _svg_doc(body, width=width)
