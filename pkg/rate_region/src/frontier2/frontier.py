"""
两用户功率控制前沿

区间 1（0 ≤ r1 ≤ r1(B)）上 P2 = P_max，前沿是 Φ2：
    r2 = log2(1 + cP / (1 + (d/a)(1+bP)(2^r1 - 1))),  P1 = (1+bP)(2^r1 - 1)/a
区间 2（r1(B) ≤ r1 ≤ log2(1+aP)）上 P1 = P_max，前沿是 Φ1：
    r2 = log2(1 + (c/b)(aP - t) / (t(1+dP))),  P2 = (aP/t - 1)/b,  t = 2^r1 - 1
两段在点 B = Φ(P_max, P_max) 处连续。
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rate_region.src.channel.model import TwoUserParams, exp2_m1, log2_1p, rate_matrix
from rate_region.src.config import FRONTIER
from rate_region.src.errors import Infeasible, InvalidArgument, NoInterference, OutOfDomain

Scalar = Union[float, NDArray[np.float64]]


class FrontierId(str, Enum):
    """前沿标识"""
    PHI1 = "PHI1"
    PHI2 = "PHI2"
    COMBINED = "COMBINED"


class FrontierSample(NamedTuple):
    """前沿上的一个采样点"""
    r1: float
    r2: float
    p1: float
    p2: float


class CornerSet2(NamedTuple):
    """两用户角点 A = Φ(0,P), B = Φ(P,P), C = Φ(P,0)"""
    point_a: Tuple[float, float]
    point_b: Tuple[float, float]
    point_c: Tuple[float, float]


@dataclass(frozen=True)
class FrontierTrace:
    """沿前沿按 r1 递增排列的采样 (r1, r2, p1, p2)"""
    frontier_id: FrontierId
    r1: NDArray[np.float64]
    r2: NDArray[np.float64]
    p1: NDArray[np.float64]
    p2: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.r1)

    @property
    def samples(self) -> List[FrontierSample]:
        return [FrontierSample(*row) for row in zip(self.r1.tolist(), self.r2.tolist(),
                                                     self.p1.tolist(), self.p2.tolist())]

    @property
    def points(self) -> NDArray[np.float64]:
        """(N, 2) 的速率点数组"""
        return np.column_stack([self.r1, self.r2])


@dataclass(frozen=True)
class PotentialLine:
    """固定一个发射功率、扫描另一个得到的势线"""
    fixed_user: int
    fixed_power: float
    r1: NDArray[np.float64]
    r2: NDArray[np.float64]
    p1: NDArray[np.float64]
    p2: NDArray[np.float64]


def _as_output(values: NDArray[np.float64], scalar_input: bool) -> Scalar:
    return float(values) if scalar_input else values


def _check_domain(r1: NDArray[np.float64], low: float, high: float, label: str) -> NDArray[np.float64]:
    tol = FRONTIER.DOMAIN_TOLERANCE * max(1.0, high)
    if not np.all(np.isfinite(r1)) or np.any(r1 < low - tol) or np.any(r1 > high + tol):
        raise OutOfDomain(f"r1 超出{label} [{low}, {high}]")
    return np.clip(r1, low, high)


def phi2(params: TwoUserParams, r1: Union[float, ArrayLike]) -> Scalar:
    """区间 1 上的前沿 Φ2（P2 = P_max）"""
    scalar_input = np.ndim(r1) == 0
    r1 = _check_domain(np.asarray(r1, dtype=float), 0.0, params.r1_junction, "区间 1")
    t = exp2_m1(r1)
    P = params.p_max
    r2 = log2_1p(params.c * P / (1.0 + (params.d / params.a) * (1.0 + params.b * P) * t))
    return _as_output(r2, scalar_input)


def phi1(params: TwoUserParams, r1: Union[float, ArrayLike]) -> Scalar:
    """
    区间 2 上的前沿 Φ1（P1 = P_max）

    Raises:
        NoInterference: b = 0 时 Φ1 无定义，区域为矩形
        OutOfDomain: r1 不在区间 2
    """
    if params.b == 0:
        raise NoInterference("b = 0：Φ1 无定义，区域退化为矩形")
    scalar_input = np.ndim(r1) == 0
    r1 = _check_domain(np.asarray(r1, dtype=float), params.r1_junction, params.r1_max, "区间 2")
    t = exp2_m1(r1)
    P = params.p_max
    slack = np.maximum(params.a * P - t, 0.0)
    r2 = log2_1p((params.c / params.b) * slack / (t * (1.0 + params.d * P)))
    return _as_output(r2, scalar_input)


def frontier_arrays(params: TwoUserParams, r1: ArrayLike) -> Tuple[NDArray, NDArray, NDArray]:
    """向量化的分段前沿，返回 (r2, p1, p2) 三个数组"""
    r1 = _check_domain(np.atleast_1d(np.asarray(r1, dtype=float)), 0.0, params.r1_max, "前沿定义域")
    P = params.p_max
    t = exp2_m1(r1)
    junction = params.r1_junction
    first = r1 <= junction

    r2 = np.empty_like(r1)
    p1 = np.empty_like(r1)
    p2 = np.empty_like(r1)

    # 区间 1: P2 = P_max，P1 由功率关系给出
    if np.any(first):
        r2[first] = phi2(params, r1[first])
        p1[first] = np.minimum(t[first] * (1.0 + params.b * P) / params.a, P)
        p2[first] = P

    # 区间 2: P1 = P_max
    second = ~first
    if np.any(second):
        r2[second] = phi1(params, r1[second])
        p1[second] = P
        p2[second] = np.clip((params.a * P / t[second] - 1.0) / params.b, 0.0, P)

    return r2, p1, p2


def frontier(params: TwoUserParams, r1: float) -> Tuple[float, float, float]:
    """
    合并前沿在 r1 处的取值

    Returns:
        (r2, p1, p2)：最大的 r2 以及实现它的功率对
    """
    r2, p1, p2 = frontier_arrays(params, [r1])
    return float(r2[0]), float(p1[0]), float(p2[0])


def frontier_curve(params: TwoUserParams, r1: ArrayLike) -> NDArray[np.float64]:
    """只返回前沿 r2 的向量化版本"""
    return frontier_arrays(params, r1)[0]


def rate_to_power(params: TwoUserParams, r1: float, r2: float) -> Tuple[float, float]:
    """
    由速率对反解唯一的功率对

    解线性方程组 P1 = (t1/a)(1 + b P2), P2 = (t2/c)(1 + d P1)。

    Raises:
        Infeasible: 行列式非正或解出的功率超出 [0, P_max]
    """
    if r1 < 0 or r2 < 0:
        raise Infeasible(f"速率必须非负: ({r1}, {r2})")
    a, b, c, d, P = params.a, params.b, params.c, params.d, params.p_max
    t1 = float(exp2_m1(r1))
    t2 = float(exp2_m1(r2))
    det = 1.0 - t1 * t2 * b * d / (a * c)
    if det <= 0:
        raise Infeasible(f"速率对 ({r1}, {r2}) 在功率控制区域之外（行列式 {det:.3e} ≤ 0）")
    p1 = (t1 / a) * (1.0 + b * t2 / c) / det
    p2 = (t2 / c) * (1.0 + d * t1 / a) / det

    tol = FRONTIER.ROUND_TRIP_TOLERANCE * max(1.0, P)
    if p1 > P + tol or p2 > P + tol:
        raise Infeasible(f"速率对 ({r1}, {r2}) 需要功率 ({p1}, {p2})，超出 P_max={P}")
    return min(p1, P), min(p2, P)


def corner_points(params: TwoUserParams) -> CornerSet2:
    """两用户角点 A, B, C"""
    P = params.p_max
    point_a = (0.0, params.r2_max)
    point_b = (params.r1_junction, float(log2_1p(params.c * P / (1.0 + params.d * P))))
    point_c = (params.r1_max, 0.0)
    return CornerSet2(point_a, point_b, point_c)


def constrained_rate(params: TwoUserParams, r1: Union[float, ArrayLike], p2: Union[float, ArrayLike]) -> Scalar:
    """
    固定 r1 时用户 2 的速率 R2(P2)

    P1 由功率关系 P1 = (2^r1 - 1)(1 + bP2)/a 决定，要求 P1 ≤ P_max。
    """
    scalar_input = np.ndim(r1) == 0 and np.ndim(p2) == 0
    r1 = np.asarray(r1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    P = params.p_max
    t = exp2_m1(r1)
    p1 = t * (1.0 + params.b * p2) / params.a
    tol = FRONTIER.DOMAIN_TOLERANCE * max(1.0, P)
    if np.any(p2 < -tol) or np.any(p2 > P + tol) or np.any(p1 > P + tol):
        raise OutOfDomain("所需 P1 或给定 P2 超出功率盒")
    r2 = log2_1p(params.c * p2 / (1.0 + params.d * p1))
    return _as_output(r2, scalar_input)


def constrained_rate_derivative(params: TwoUserParams, r1: Union[float, ArrayLike],
                                p2: Union[float, ArrayLike]) -> Scalar:
    """
    dR2/dP2（固定 r1）

    SINR2(P2) = a c P2 / (a + d t (1 + b P2)) 的导数为 a c (a + d t) / (a + d t (1 + b P2))²，
    再乘以 1 / ((1 + SINR2) ln 2)。
    """
    scalar_input = np.ndim(r1) == 0 and np.ndim(p2) == 0
    r1 = np.asarray(r1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    a, b, c, d = params.a, params.b, params.c, params.d
    t = exp2_m1(r1)
    denominator = a + d * t * (1.0 + b * p2)
    g = a * c * p2 / denominator
    g_prime = a * c * (a + d * t) / denominator ** 2
    value = g_prime / ((1.0 + g) * np.log(2.0))
    return _as_output(value, scalar_input)


def potential_line(params: TwoUserParams, p1: Optional[float] = None, p2: Optional[float] = None,
                   samples: int = FRONTIER.DEFAULT_SAMPLES) -> PotentialLine:
    """
    势线 Φ(:, p2) 或 Φ(p1, :)

    恰好给定 p1、p2 中的一个；另一个功率在 [0, P_max] 上均匀扫描。
    Φ(:, P_max) 与 Φ(P_max, :) 分别是 Φ2 与 Φ1 的完整曲线（可越过点 B）。
    """
    if (p1 is None) == (p2 is None):
        raise InvalidArgument("必须且只能固定 p1 或 p2 中的一个")
    sweep = np.linspace(0.0, params.p_max, samples)
    if p2 is not None:
        powers = np.column_stack([sweep, np.full_like(sweep, p2)])
        fixed_user, fixed_power = 1, float(p2)
    else:
        powers = np.column_stack([np.full_like(sweep, p1), sweep])
        fixed_user, fixed_power = 0, float(p1)
    rates = rate_matrix(params.to_channel(), powers)
    return PotentialLine(fixed_user, fixed_power, rates[:, 0], rates[:, 1], powers[:, 0], powers[:, 1])


def sample_frontier(params: TwoUserParams, frontier_id: FrontierId = FrontierId.COMBINED,
                    samples: int = FRONTIER.DEFAULT_SAMPLES) -> FrontierTrace:
    """
    在 r1 上均匀采样前沿，端点和点 B 精确插入

    Args:
        params: 两用户参数
        frontier_id: PHI2 只取区间 1，PHI1 只取区间 2，COMBINED 取两段（B 只出现一次）
        samples: 每个区间的采样数

    Raises:
        NoInterference: b = 0 时请求 PHI1
    """
    if samples < 2:
        raise InvalidArgument(f"采样数至少为 2: {samples}")
    frontier_id = FrontierId(frontier_id)
    junction, r1_max = params.r1_junction, params.r1_max
    has_second = params.b > 0 and r1_max > junction

    if frontier_id == FrontierId.PHI1 and not has_second:
        raise NoInterference("b = 0：区间 2 退化为一点，Φ1 无定义")

    parts = []
    if frontier_id in (FrontierId.PHI2, FrontierId.COMBINED):
        parts.append(np.linspace(0.0, junction, samples))
    if frontier_id in (FrontierId.PHI1, FrontierId.COMBINED) and has_second:
        grid = np.linspace(junction, r1_max, samples)
        parts.append(grid[1:] if frontier_id == FrontierId.COMBINED else grid)

    r1 = np.concatenate(parts)
    r2, p1, p2 = frontier_arrays(params, r1)
    return FrontierTrace(frontier_id, r1, r2, p1, p2)
