"""
前沿凸性分类与 TDM 最优性判定

Φ2 在 r1 坐标下二阶导数的符号等于
    (α + a d P1)² - (a - α)(a - α + a c P),  α = d(1 + bP)
的符号；该式关于 P1 单调递增，唯一零点即拐点阈值 Q1。Φ1 对称地由 β = b(1 + dP) 给出 Q2。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from rate_region.src.channel.model import TwoUserParams, log2_1p
from rate_region.src.config import FRONTIER
from rate_region.src.errors import NoInterference
from rate_region.src.frontier2.frontier import corner_points
from rate_region.src.logger import get_logger


class ConvexityClass(str, Enum):
    """前沿形状"""
    CONCAVE = "Concave"
    INFLECTION = "Inflection"
    CONVEX = "Convex"


class Strategy(str, Enum):
    """推荐的工作方式"""
    POWER_CONTROL_ONLY = "PowerControlOnly"
    TIME_SHARE_FROM_D = "ConcaveThenTimeShareFromD"
    TIME_SHARE_THROUGH_B = "TimeShareThroughB"
    PURE_TDM = "PureTDM_A_to_C"


@dataclass(frozen=True)
class FrontierShape:
    """单条前沿的分类；拐点类别附带拐点功率"""
    kind: ConvexityClass
    at_power: Optional[float] = None

    def __str__(self) -> str:
        if self.kind == ConvexityClass.INFLECTION:
            return f"Inflection({self.at_power:.6g})"
        return self.kind.value


@dataclass(frozen=True)
class ConvexityReport:
    """凸性报告"""
    q1: float
    q2: float
    class_phi2: FrontierShape
    class_phi1: FrontierShape
    inflection_point_d: Optional[Tuple[float, float]]
    tdm_optimal: bool
    strategy: Strategy

    def to_dict(self) -> Dict[str, Any]:
        """序列化为 convexity.json 的字段；无穷阈值写成 null"""
        def finite_or_none(value: float) -> Optional[float]:
            return float(value) if np.isfinite(value) else None

        d_point = None
        if self.inflection_point_d is not None:
            d_point = {"r1": self.inflection_point_d[0], "r2": self.inflection_point_d[1]}
        return {
            "q1": finite_or_none(self.q1),
            "q2": finite_or_none(self.q2),
            "class_phi2": self.class_phi2.kind.value,
            "class_phi1": self.class_phi1.kind.value,
            "inflection_d": d_point,
            "tdm_optimal": self.tdm_optimal,
            "strategy": self.strategy.value,
        }


def _re_sqrt(x: float) -> float:
    """实部开方：负数取 0"""
    return float(np.sqrt(x)) if x > 0 else 0.0


def second_derivative_phi2(params: TwoUserParams, p1: float) -> float:
    """Φ2 曲率符号式，0 ≤ p1 ≤ P_max"""
    a, b, c, d, P = params.a, params.b, params.c, params.d, params.p_max
    alpha = d * (1.0 + b * P)
    return (alpha + a * d * p1) ** 2 - (a - alpha) * (a - alpha + a * c * P)


def second_derivative_phi1(params: TwoUserParams, p2: float) -> float:
    """Φ1 曲率符号式（交换用户角色后的 Φ2 式），0 ≤ p2 ≤ P_max"""
    return second_derivative_phi2(params.swapped(), p2)


def inflection_thresholds(params: TwoUserParams) -> Tuple[float, float]:
    """
    拐点阈值 (Q1, Q2)

    交叉增益为零的一侧前沿处处凹，阈值记为 +inf。

    Raises:
        NoInterference: b = d = 0
    """
    a, b, c, d, P = params.a, params.b, params.c, params.d, params.p_max
    if b == 0 and d == 0:
        raise NoInterference("b = d = 0：无干扰，区域为矩形，拐点阈值无定义")

    if d > 0:
        alpha = d * (1.0 + b * P)
        q1 = (_re_sqrt((a - alpha) * (a - alpha + a * c * P)) - alpha) / (a * d)
    else:
        q1 = float("inf")

    if b > 0:
        beta = b * (1.0 + d * P)
        q2 = (_re_sqrt((c - beta) * (c - beta + a * c * P)) - beta) / (c * b)
    else:
        q2 = float("inf")

    return q1, q2


def _shape_from_threshold(q: float, p_max: float) -> FrontierShape:
    band = FRONTIER.classification_band(p_max)
    if q >= p_max - band:
        return FrontierShape(ConvexityClass.CONCAVE)
    if q <= band:
        return FrontierShape(ConvexityClass.CONVEX)
    return FrontierShape(ConvexityClass.INFLECTION, q)


def inflection_point_d(params: TwoUserParams, q1: float) -> Tuple[float, float]:
    """Φ2 上 P1 = Q1 处的速率点 D"""
    P = params.p_max
    r1 = float(log2_1p(params.a * q1 / (1.0 + params.b * P)))
    r2 = float(log2_1p(params.c * P / (1.0 + params.d * q1)))
    return r1, r2


def tdm_optimal(params: TwoUserParams) -> bool:
    """
    纯 TDM（A 与 C 之间时分）是否最优

    (1+cP)(1+dP)/(1+cP+dP) ≥ ((1+aP+bP)/(1+bP))^γ,  γ = log2(1+cP)/log2(1+aP)
    取等时判为 TDM。
    """
    a, b, c, d, P = params.a, params.b, params.c, params.d, params.p_max
    gamma = params.r2_max / params.r1_max
    lhs = (1.0 + c * P) * (1.0 + d * P) / (1.0 + c * P + d * P)
    rhs = ((1.0 + a * P + b * P) / (1.0 + b * P)) ** gamma
    return bool(lhs >= rhs)


def tdm_chord_gap(params: TwoUserParams) -> float:
    """A–C 弦在 r1(B) 处的高度减去 B 的 r2；非负当且仅当 TDM 最优"""
    point_a, point_b, point_c = corner_points(params)
    chord = point_a[1] * (1.0 - point_b[0] / point_c[0])
    return chord - point_b[1]


def symmetric_threshold_b2(a: float, p_max: float) -> float:
    """对称两用户信道切换到 TDM 的交叉增益阈值 sqrt(1 + aP)/P"""
    return float(np.sqrt(1.0 + a * p_max) / p_max)


def _strategy(shape_phi2: FrontierShape, shape_phi1: FrontierShape, is_tdm: bool) -> Strategy:
    if is_tdm:
        return Strategy.PURE_TDM
    kinds = {shape_phi2.kind, shape_phi1.kind}
    if kinds == {ConvexityClass.CONCAVE}:
        return Strategy.POWER_CONTROL_ONLY
    if ConvexityClass.INFLECTION in kinds:
        return Strategy.TIME_SHARE_FROM_D
    return Strategy.TIME_SHARE_THROUGH_B


def classify(params: TwoUserParams) -> ConvexityReport:
    """
    生成凸性报告

    Q ≥ P_max 为凹，0 < Q < P_max 有拐点，Q ≤ 0 为凸；容差带内取非拐点类别。
    """
    logger = get_logger()
    P = params.p_max
    try:
        q1, q2 = inflection_thresholds(params)
    except NoInterference:
        q1 = q2 = float("inf")

    shape_phi2 = _shape_from_threshold(q1, P)
    shape_phi1 = _shape_from_threshold(q2, P)

    point_d = None
    if shape_phi2.kind == ConvexityClass.INFLECTION:
        point_d = inflection_point_d(params, q1)

    is_tdm = tdm_optimal(params)
    chord_gap = tdm_chord_gap(params)
    if (chord_gap >= 0) != is_tdm and abs(chord_gap) > 1e-9 * max(1.0, params.r2_max):
        logger.warning(f"TDM 判据与弦几何检验不一致: chord_gap={chord_gap:.3e}")

    strategy = _strategy(shape_phi2, shape_phi1, is_tdm)
    logger.debug(f"Q1={q1:.6g}, Q2={q2:.6g}, Φ2={shape_phi2}, Φ1={shape_phi1}, 策略={strategy.value}")
    return ConvexityReport(q1, q2, shape_phi2, shape_phi1, point_d, is_tdm, strategy)
