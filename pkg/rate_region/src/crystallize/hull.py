"""
晶体化速率域的凸包

区域是角点及其向坐标轴投影（下闭包）的凸包：
- n ≤ 2：右上边界折线
- n = 3：scipy.spatial.ConvexHull 的外法向非负的三角面
- n ≥ 4：确定性低差异方向集上的支撑函数采样
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import ConvexHull, QhullError
from scipy.stats import qmc

from rate_region.src.channel.model import ChannelInstance
from rate_region.src.config import CRYSTAL
from rate_region.src.crystallize.corners import CornerPoint, corner_rates
from rate_region.src.crystallize.decompose import max_scale_exact, max_scale_lp, require_exact_mode
from rate_region.src.errors import InvalidArgument
from rate_region.src.logger import get_logger

HULL_MODES = ("auto", "exact", "support")


class HullVertex(NamedTuple):
    """边界折线顶点；k 为角点序号，坐标轴端点为 None"""
    r: Tuple[float, ...]
    k: Optional[int]


class Facet(NamedTuple):
    """三用户凸包的一个支撑三角面"""
    vertices: Tuple[Optional[int], ...]
    points: Tuple[Tuple[float, ...], ...]
    normal: Tuple[float, ...]
    offset: float


class SupportSample(NamedTuple):
    """支撑函数采样：方向、最大值与取到最大值的角点（单位质量 θ）"""
    direction: Tuple[float, ...]
    value: float
    k: int


@dataclass(frozen=True)
class CrystallizedHull:
    """晶体化凸包"""
    n: int
    corners: List[CornerPoint]
    boundary_kind: str
    polyline: Optional[List[HullVertex]] = None
    facets: Optional[List[Facet]] = None
    support: Optional[List[SupportSample]] = None
    dominated: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """序列化为 hull.json"""
        boundary: Dict[str, Any] = {"kind": self.boundary_kind}
        if self.polyline is not None:
            boundary["polyline"] = [{"k": v.k, "rates": list(v.r)} for v in self.polyline]
        if self.facets is not None:
            boundary["facets"] = [
                {"vertices": list(f.vertices), "points": [list(p) for p in f.points],
                 "normal": list(f.normal), "offset": f.offset}
                for f in self.facets
            ]
        if self.support is not None:
            boundary["support_samples"] = [
                {"direction": list(s.direction), "value": s.value, "k": s.k} for s in self.support
            ]
        return {
            "n": self.n,
            "corners": [{"k": c.k, "mask": list(c.mask), "rates": list(c.rates)} for c in self.corners],
            "boundary": boundary,
            "dominated": list(self.dominated),
        }


def _corner_label(point: NDArray[np.float64], corners: List[CornerPoint]) -> Optional[int]:
    for corner in corners:
        if np.array_equal(point, np.asarray(corner.rates)):
            return corner.k
    return None


def upper_hull_2d(points: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    下闭二维点集的右上边界（单调链），去掉共线的中间点

    从 (0, max r2) 走到 (max r1, 0)，必要时包含末端的竖直下降边。
    """
    x_max, y_max = points[:, 0].max(), points[:, 1].max()
    candidates = np.vstack([points, [[0.0, y_max], [x_max, 0.0]]])
    candidates = np.unique(candidates, axis=0)
    # x 升序，同 x 时 y 降序
    order = np.lexsort((-candidates[:, 1], candidates[:, 0]))

    chain: List[NDArray[np.float64]] = []
    for point in candidates[order]:
        while len(chain) >= 2:
            o, a = chain[-2], chain[-1]
            cross = (a[0] - o[0]) * (point[1] - o[1]) - (a[1] - o[1]) * (point[0] - o[0])
            if cross >= 0:
                chain.pop()
            else:
                break
        chain.append(point)
    return np.array(chain)


def _down_closure(rates: NDArray[np.float64]) -> NDArray[np.float64]:
    """角点及其所有坐标投影（含原点），去重"""
    n = rates.shape[1]
    keep_masks = np.array(list(product((0.0, 1.0), repeat=n)))
    projected = (rates[:, None, :] * keep_masks[None, :, :]).reshape(-1, n)
    return np.unique(projected, axis=0)


def _facets_3d(corners: List[CornerPoint]) -> List[Facet]:
    rates = np.array([c.rates for c in corners])
    points = _down_closure(rates)
    try:
        qhull = ConvexHull(points)
    except QhullError:
        get_logger().warning("Qhull 处理退化点集失败，改用 QJ 抖动重试")
        qhull = ConvexHull(points, qhull_options="QJ")

    facets = []
    for simplex, equation in zip(qhull.simplices, qhull.equations):
        normal, offset = equation[:3], equation[3]
        if np.any(normal < -1e-12):
            continue
        vertices = tuple(_corner_label(points[i], corners) for i in simplex)
        facets.append(Facet(
            vertices=vertices,
            points=tuple(tuple(float(v) for v in points[i]) for i in simplex),
            normal=tuple(float(v) for v in normal),
            offset=float(-offset),
        ))
    # 稳定顺序：按顶点坐标排序
    facets.sort(key=lambda f: f.points)
    return facets


def support_directions(n: int, count: int = CRYSTAL.SUPPORT_DIRECTIONS) -> NDArray[np.float64]:
    """非扰动 Halton 序列生成的非负单位方向（跳过首个零点）"""
    sampler = qmc.Halton(d=n, scramble=False)
    raw = sampler.random(count + 1)[1:]
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def _support_samples(corners: List[CornerPoint], count: int) -> List[SupportSample]:
    rates = np.array([c.rates for c in corners])
    directions = support_directions(rates.shape[1], count)
    values = directions @ rates.T
    best = np.argmax(values, axis=1)
    return [
        SupportSample(tuple(float(v) for v in directions[j]), float(values[j, best[j]]), int(best[j]) + 1)
        for j in range(len(directions))
    ]


def dominated_corners(corners: List[CornerPoint], exact: bool) -> List[int]:
    """
    不是凸包顶点的角点序号

    角点 k 被其余角点的凸包（下闭）覆盖，即沿自身方向的最大缩放 ≥ 1 时视为被支配。
    """
    rates = np.array([c.rates for c in corners])
    dominated = []
    for index, corner in enumerate(corners):
        own = rates[index]
        if not np.any(own > 0):
            dominated.append(corner.k)
            continue
        others = np.delete(rates, index, axis=0)
        if len(others) == 0:
            continue
        if exact:
            scale, _ = max_scale_exact(others, own)
        else:
            scale, _ = max_scale_lp(others, own)
        if scale >= 1.0 - CRYSTAL.BOUNDARY_TOLERANCE:
            dominated.append(corner.k)
    return dominated


def hull(ch: ChannelInstance, mode: str = "auto",
         support_count: int = CRYSTAL.SUPPORT_DIRECTIONS) -> CrystallizedHull:
    """
    构造晶体化凸包

    Args:
        ch: 信道实例
        mode: auto（n ≤ 3 精确，n ≥ 4 支撑采样）、exact（n ≤ 5）、support（任意 n）
        support_count: 支撑方向个数

    Raises:
        CapExceeded: exact 模式下 n > 5，或 n > 16
    """
    if mode not in HULL_MODES:
        raise InvalidArgument(f"未知凸包模式: {mode}，可选 {HULL_MODES}")
    logger = get_logger()
    if mode == "exact":
        require_exact_mode(ch.n)
    exact = mode == "exact" or (mode == "auto" and ch.n <= 3)

    corners = corner_rates(ch)
    logger.debug(f"n={ch.n}: {len(corners)} 个角点，模式 {mode}")

    if ch.n == 1:
        vertex = HullVertex(corners[0].rates, corners[0].k)
        return CrystallizedHull(1, corners, "point", polyline=[vertex], dominated=[])

    if ch.n == 2:
        rates = np.array([c.rates for c in corners])
        chain = upper_hull_2d(rates)
        polyline = [HullVertex(tuple(float(v) for v in p), _corner_label(p, corners)) for p in chain]
        on_hull = {v.k for v in polyline if v.k is not None}
        dominated = [c.k for c in corners if c.k not in on_hull]
        return CrystallizedHull(2, corners, "polyline", polyline=polyline, dominated=dominated)

    if ch.n == 3 and mode != "support":
        facets = _facets_3d(corners)
        on_hull = {k for f in facets for k in f.vertices if k is not None}
        dominated = [c.k for c in corners if c.k not in on_hull]
        return CrystallizedHull(3, corners, "facets", facets=facets, dominated=dominated)

    support = _support_samples(corners, support_count)
    return CrystallizedHull(ch.n, corners, "support_samples", support=support,
                            dominated=dominated_corners(corners, exact))


def envelope_height(chain: NDArray[np.float64], x: NDArray[np.float64]) -> NDArray[np.float64]:
    """右上边界折线在 x 处的高度；竖直边取上端"""
    xs, inverse = np.unique(chain[:, 0], return_inverse=True)
    ys = np.full(len(xs), -np.inf)
    np.maximum.at(ys, inverse, chain[:, 1])
    return np.interp(x, xs, ys)
