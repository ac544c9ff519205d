"""
区域评估指标与前沿验证

- 面积：功率控制前沿下方的面积（梯形积分）与晶体化多边形的面积（鞋带公式）
- 最大速率间隙：功率控制前沿与晶体化边界之间的相对差距
- 对称信道的交叉增益扫描
- 闭式前沿对网格预言机的验证
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import trapezoid

from rate_region.src.channel.model import ChannelInstance, TwoUserParams, rate_vector
from rate_region.src.config import FRONTIER, ORACLE
from rate_region.src.crystallize.hull import envelope_height, hull
from rate_region.src.errors import Infeasible, InvalidArgument, RegionError, WrongDimension
from rate_region.src.frontier2.frontier import FrontierId, frontier_curve, rate_to_power, sample_frontier
from rate_region.src.logger import create_process_logger, get_logger
from .grid import grid_pareto

GAP_METRICS = ("radial", "vertical")
_BISECTION_STEPS = 64


class GapResult(NamedTuple):
    """gap_pct 是功率控制优于晶体化的最大相对差（百分比），gain_pct 是反方向"""
    gap_pct: float
    at_r1: float
    gain_pct: float


@dataclass(frozen=True)
class GapRow:
    b_db: float
    b: float
    area_pc: float
    area_crystal: float
    max_gap_pct: float
    gap_argmax_r1: float


@dataclass
class GapReport:
    """对称信道 b 扫描结果，行按 b 升序"""
    a: float
    p_max: float
    metric: str
    rows: List[GapRow] = field(default_factory=list)

    @property
    def b_values(self) -> List[float]:
        return [row.b for row in self.rows]

    @property
    def max_gap_pct(self) -> float:
        return max((row.max_gap_pct for row in self.rows), default=0.0)


@dataclass
class FrontierVerification:
    max_violation: float
    roundtrip_max_error: float
    failures: List[str]
    passed: bool
    grid_points: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_violation": self.max_violation,
            "roundtrip_max_error": self.roundtrip_max_error,
            "failures": list(self.failures),
            "passed": self.passed,
            "grid_points": self.grid_points,
        }


def crystal_chain(params: TwoUserParams) -> NDArray[np.float64]:
    """两用户晶体化边界折线，从 (0, r2_max) 到 (r1_max, 0)"""
    crystallized = hull(params.to_channel())
    return np.array([vertex.r for vertex in crystallized.polyline], dtype=float)


def area_power_control(params: TwoUserParams, samples: int = ORACLE.AREA_SAMPLES) -> float:
    """
    功率控制区域面积：前沿在 [0, log2(1+aP)] 上的梯形积分，点 B 精确插入

    Raises:
        DegenerateChannel: 直达增益为零（在构造 params 时抛出）
    """
    if samples < 16:
        raise InvalidArgument(f"面积采样数至少为 16: {samples}")
    trace = sample_frontier(params, FrontierId.COMBINED, samples)
    return float(trapezoid(trace.r2, trace.r1))


def polygon_area(vertices: NDArray[np.float64]) -> float:
    """鞋带公式"""
    x, y = vertices[:, 0], vertices[:, 1]
    return float(abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2.0)


def area_crystallized(ch: ChannelInstance) -> float:
    """
    晶体化多边形（含坐标轴闭合）的面积

    Raises:
        WrongDimension: n ≠ 2
    """
    if ch.n != 2:
        raise WrongDimension(f"晶体化面积只对两用户定义，实际 n={ch.n}")
    crystallized = hull(ch)
    chain = np.array([vertex.r for vertex in crystallized.polyline], dtype=float)
    return polygon_area(np.vstack([[0.0, 0.0], chain]))


def _vertical_gap(params: TwoUserParams, chain: NDArray[np.float64],
                  samples: int) -> Tuple[NDArray, NDArray, NDArray]:
    r1 = np.linspace(0.0, params.r1_max, samples)
    pc = frontier_curve(params, r1)
    crystal = envelope_height(chain, r1)
    return r1, pc, crystal


def _radial_crystal(chain: NDArray[np.float64], directions: NDArray[np.float64]) -> NDArray[np.float64]:
    """射线与晶体化边界的交点距离：各边半平面 w·r ≤ h 的最小 h/(w·u)"""
    start, end = chain[:-1], chain[1:]
    normals = np.column_stack([start[:, 1] - end[:, 1], end[:, 0] - start[:, 0]])
    offsets = np.einsum("ij,ij->i", normals, start)
    projection = directions @ normals.T
    with np.errstate(divide="ignore", invalid="ignore"):
        reach = np.where(projection > 0, offsets[None, :] / projection, np.inf)
    return reach.min(axis=1)


def _radial_power_control(params: TwoUserParams, angles: NDArray[np.float64]) -> NDArray[np.float64]:
    """射线 r2 = r1·tanφ 与功率控制前沿交点的 r1，二分求 f(r1) = r1·tanφ"""
    slope = np.tan(angles)
    x_max = params.r1_max
    lo = np.zeros_like(angles)
    hi = np.full_like(angles, x_max)
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        above = frontier_curve(params, mid) >= mid * slope
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    # 竖直边：射线在 r1_max 处仍在前沿下方
    wall = frontier_curve(params, np.full_like(angles, x_max)) >= x_max * slope
    return np.where(wall, x_max, lo)


def _radial_gap(params: TwoUserParams, chain: NDArray[np.float64],
                samples: int) -> Tuple[NDArray, NDArray, NDArray]:
    angles = (np.arange(samples) + 0.5) / samples * (np.pi / 2.0)
    directions = np.column_stack([np.cos(angles), np.sin(angles)])
    r1 = _radial_power_control(params, angles)
    pc = r1 / directions[:, 0]
    crystal = _radial_crystal(chain, directions)
    return r1, pc, crystal


def max_gap(params: TwoUserParams, samples: int = ORACLE.GAP_SAMPLES,
            metric: str = ORACLE.GAP_METRIC) -> GapResult:
    """
    功率控制前沿与晶体化边界之间的最大相对速率间隙

    Args:
        params: 两用户参数
        samples: r1 网格点数（vertical）或射线条数（radial）
        metric: vertical 在相同 r1 处比较 r2；radial 沿原点出发的射线比较距离

    Returns:
        GapResult: 损失方向 (pc - crystal)/pc 的最大值及其位置，另附增益方向最大值
    """
    if samples < 64:
        raise InvalidArgument(f"间隙采样数至少为 64: {samples}")
    if metric not in GAP_METRICS:
        raise InvalidArgument(f"未知间隙度量: {metric}，可选 {GAP_METRICS}")

    chain = crystal_chain(params)
    sampler = _radial_gap if metric == "radial" else _vertical_gap
    r1, pc, crystal = sampler(params, chain, samples)

    valid = pc >= ORACLE.GAP_FLOOR
    if not np.any(valid):
        return GapResult(0.0, 0.0, 0.0)
    r1, pc, crystal = r1[valid], pc[valid], crystal[valid]
    loss = (pc - crystal) / pc
    gain = (crystal - pc) / pc
    worst = int(np.argmax(loss))
    return GapResult(
        gap_pct=max(0.0, float(loss[worst])) * 100.0,
        at_r1=float(r1[worst]),
        gain_pct=max(0.0, float(gain.max())) * 100.0,
    )


def b_grid(b_db_range: Tuple[float, float, float]) -> NDArray[np.float64]:
    """lo:hi:step 对应的 dB 网格，包含两端"""
    lo, hi, step = (float(v) for v in b_db_range)
    if not lo < hi:
        raise InvalidArgument(f"扫描区间需要 lo < hi: {lo}, {hi}")
    if step <= 0:
        raise InvalidArgument(f"扫描步长必须为正: {step}")
    count = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, lo + (count - 1) * step, count)


def _sweep_row(a: float, p_max: float, b_db: float, area_samples: int,
               gap_samples: int, metric: str) -> GapRow:
    b = float(10.0 ** (b_db / 10.0))
    params = TwoUserParams(a, b, a, b, p_max)
    gap = max_gap(params, gap_samples, metric)
    return GapRow(
        b_db=float(b_db),
        b=b,
        area_pc=area_power_control(params, area_samples),
        area_crystal=area_crystallized(params.to_channel()),
        max_gap_pct=gap.gap_pct,
        gap_argmax_r1=gap.at_r1,
    )


def sweep_b_symmetric(a: float, p_max: float, b_db_range: Tuple[float, float, float],
                      area_samples: int = ORACLE.AREA_SAMPLES,
                      gap_samples: int = ORACLE.GAP_SAMPLES,
                      metric: str = ORACLE.GAP_METRIC,
                      max_workers: int = ORACLE.MAX_WORKERS) -> GapReport:
    """
    对称信道 a = c、b = d 的交叉增益扫描

    每个 b 独立计算面积与最大间隙；线程池并行，结果按 b 的顺序组装。
    """
    if a <= 0 or p_max <= 0:
        raise RegionError(f"需要 a > 0 且 P_max > 0: a={a}, P_max={p_max}")
    grid = b_grid(b_db_range)
    process = create_process_logger("交叉增益扫描")
    process.start(f"a={a}, P_max={p_max}, {len(grid)} 个 b 值，度量 {metric}")

    rows: List[Optional[GapRow]] = [None] * len(grid)
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        future_to_index = {
            executor.submit(_sweep_row, a, p_max, b_db, area_samples, gap_samples, metric): index
            for index, b_db in enumerate(grid)
        }
        for done, future in enumerate(as_completed(future_to_index), start=1):
            rows[future_to_index[future]] = future.result()
            process.progress(done, len(grid), "b 值")

    report = GapReport(float(a), float(p_max), metric, rows)
    process.complete(f"最大间隙 {report.max_gap_pct:.4f}%")
    return report


def verify_frontier(params: TwoUserParams, m: int = ORACLE.GRID_TWO_USER,
                    tol: float = ORACLE.VERIFY_TOLERANCE) -> FrontierVerification:
    """
    用网格预言机验证闭式前沿

    1. 每个网格 Pareto 点满足 r2 ≤ frontier(r1) + tol
    2. 每个前沿采样点经 rate_to_power 反解后落在功率盒内，并回到原速率

    失败不抛异常，记录在报告里。
    """
    logger = get_logger()
    failures: List[str] = []

    points = grid_pareto(params.to_channel(), m)
    r1 = np.minimum(points[:, 0], params.r1_max)
    excess = np.maximum(points[:, 0] - params.r1_max, 0.0)
    violation = np.maximum(points[:, 1] - frontier_curve(params, r1), excess)
    max_violation = max(0.0, float(violation.max()))
    for index in np.flatnonzero(violation > tol):
        failures.append(f"网格点 ({points[index, 0]:.12g}, {points[index, 1]:.12g}) 越过前沿 {violation[index]:.3e}")

    channel = params.to_channel()
    roundtrip = 0.0
    for sample in sample_frontier(params, FrontierId.COMBINED).samples:
        try:
            p1, p2 = rate_to_power(params, sample.r1, sample.r2)
        except Infeasible as exc:
            failures.append(f"前沿点 ({sample.r1:.12g}, {sample.r2:.12g}) 反解失败: {exc}")
            continue
        rates = rate_vector(channel, [p1, p2])
        roundtrip = max(roundtrip, float(np.max(np.abs(rates - [sample.r1, sample.r2]))))
    if roundtrip > FRONTIER.ROUND_TRIP_TOLERANCE:
        failures.append(f"速率往返误差 {roundtrip:.3e} 超过 {FRONTIER.ROUND_TRIP_TOLERANCE}")

    passed = not failures
    logger.debug(f"网格 {m}: {len(points)} 个 Pareto 点，最大越界 {max_violation:.3e}，往返误差 {roundtrip:.3e}")
    return FrontierVerification(max_violation, roundtrip, failures, passed, len(points))
