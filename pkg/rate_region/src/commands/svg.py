"""
两用户速率区域 SVG 渲染

画出两条完整势线 Φ(:,P_max) 与 Φ(P_max,:)、功率控制前沿、晶体化边界，
并标注角点 A/B/C 以及（若存在）拐点 D。模板用 jinja2 渲染，不含时间戳。
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from rate_region.src.channel.model import TwoUserParams
from rate_region.src.crystallize.hull import CrystallizedHull
from rate_region.src.errors import WrongDimension
from rate_region.src.frontier2.convexity import ConvexityReport
from rate_region.src.frontier2.frontier import FrontierTrace, corner_points, potential_line

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"
TEMPLATE_NAME = "region.svg.j2"

WIDTH, HEIGHT = 640, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 30, 80, 60
TICK_COUNT = 5

_environment = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    autoescape=True,
    undefined=StrictUndefined,
    keep_trailing_newline=True,
)


def _num(value: float) -> str:
    return "%.6g" % value


class _Frame:
    """速率坐标到画布坐标的映射"""

    def __init__(self, x_span: float, y_span: float):
        self.x_span = x_span if x_span > 0 else 1.0
        self.y_span = y_span if y_span > 0 else 1.0
        self.plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def x(self, r1: float) -> float:
        return round(MARGIN_LEFT + r1 / self.x_span * self.plot_w, 3)

    def y(self, r2: float) -> float:
        return round(HEIGHT - MARGIN_BOTTOM - r2 / self.y_span * self.plot_h, 3)

    def points(self, r1: Sequence[float], r2: Sequence[float]) -> str:
        return " ".join(f"{_num(self.x(u))},{_num(self.y(v))}" for u, v in zip(r1, r2))

    def ticks(self, span: float, axis: str) -> List[Dict[str, str]]:
        values = np.linspace(0.0, span / 1.05, TICK_COUNT)
        place = self.x if axis == "x" else self.y
        # y 轴刻度文字下移 4 像素与刻度线对齐
        shift = 0.0 if axis == "x" else 4.0
        return [{"pos": _num(place(v)), "label_pos": _num(place(v) + shift), "label": "%.3g" % v} for v in values]


def render_region_svg(params: TwoUserParams, trace: FrontierTrace, crystallized: CrystallizedHull,
                      report: Optional[ConvexityReport] = None, samples: int = 256) -> str:
    """
    渲染两用户区域

    Args:
        params: 两用户参数
        trace: 功率控制前沿采样
        crystallized: 晶体化凸包（必须是两用户折线）
        report: 凸性报告；提供且含拐点时标注 D

    Raises:
        WrongDimension: 凸包不是两用户
    """
    if crystallized.n != 2 or crystallized.polyline is None:
        raise WrongDimension(f"SVG 只支持两用户区域，实际 n={crystallized.n}")

    frame = _Frame(params.r1_max * 1.05, params.r2_max * 1.05)
    phi2_line = potential_line(params, p2=params.p_max, samples=samples)
    phi1_line = potential_line(params, p1=params.p_max, samples=samples)

    chain = np.array([vertex.r for vertex in crystallized.polyline], dtype=float)
    closed = np.vstack([[0.0, 0.0], chain, [0.0, 0.0]])

    curves = [
        {"id": "phi2", "label": "Φ(:, Pmax)", "stroke": "#1f77b4", "width": 1, "dash": "4 3",
         "points": frame.points(phi2_line.r1, phi2_line.r2)},
        {"id": "phi1", "label": "Φ(Pmax, :)", "stroke": "#2ca02c", "width": 1, "dash": "4 3",
         "points": frame.points(phi1_line.r1, phi1_line.r2)},
        {"id": "frontier", "label": "power control", "stroke": "#000000", "width": 2, "dash": "",
         "points": frame.points(trace.r1, trace.r2)},
        {"id": "crystallized", "label": "crystallized", "stroke": "#d62728", "width": 2, "dash": "",
         "points": frame.points(closed[:, 0], closed[:, 1])},
    ]

    corners = corner_points(params)
    markers = [
        {"label": label, "x": frame.x(point[0]), "y": frame.y(point[1]), "fill": "#000000"}
        for label, point in zip("ABC", (corners.point_a, corners.point_b, corners.point_c))
    ]
    if report is not None and report.inflection_point_d is not None:
        d_r1, d_r2 = report.inflection_point_d
        markers.append({"label": "D", "x": frame.x(d_r1), "y": frame.y(d_r2), "fill": "#ff7f0e"})

    template = _environment.get_template(TEMPLATE_NAME)
    return template.render(
        title=f"a={_num(params.a)} b={_num(params.b)} c={_num(params.c)} d={_num(params.d)} Pmax={_num(params.p_max)}",
        width=WIDTH,
        height=HEIGHT,
        origin={"x": frame.x(0.0), "y": frame.y(0.0)},
        x_end=frame.x(frame.x_span),
        y_end=frame.y(frame.y_span),
        x_ticks=frame.ticks(frame.x_span, "x"),
        y_ticks=frame.ticks(frame.y_span, "y"),
        curves=curves,
        markers=markers,
    )
