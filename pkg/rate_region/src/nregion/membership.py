"""
两用户区域成员判定
"""

from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from rate_region.src.channel.model import TwoUserParams
from rate_region.src.config import CRYSTAL, FRONTIER
from rate_region.src.crystallize.hull import envelope_height, upper_hull_2d
from rate_region.src.errors import DimensionMismatch, RegionError
from rate_region.src.frontier2.frontier import FrontierId, frontier_curve, sample_frontier


class Membership(str, Enum):
    INSIDE_POWER_CONTROL = "InsidePowerControl"
    INSIDE_CONVEX_HULL_ONLY = "InsideConvexHullOnly"
    OUTSIDE = "Outside"


def membership_2user(params: TwoUserParams, r: ArrayLike,
                     samples: int = FRONTIER.DEFAULT_SAMPLES) -> Membership:
    """
    判定速率点属于功率控制区域、仅属于其凸包，还是在外部

    功率控制区域是前沿下方的下闭集合 R1 ∪ R2；凸包取采样前沿加坐标轴端点的上凸包。
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (2,):
        raise DimensionMismatch(f"速率点长度必须为 2，实际形状 {r.shape}")
    if np.any(r < 0) or not np.all(np.isfinite(r)):
        raise RegionError(f"速率必须非负: {r.tolist()}")

    tol = CRYSTAL.BOUNDARY_TOLERANCE
    r1, r2 = float(r[0]), float(r[1])
    if r1 > params.r1_max + tol:
        return Membership.OUTSIDE

    r1 = min(r1, params.r1_max)
    if r2 <= float(frontier_curve(params, [r1])[0]) + tol:
        return Membership.INSIDE_POWER_CONTROL

    trace = sample_frontier(params, FrontierId.COMBINED, samples)
    chain = upper_hull_2d(trace.points)
    if r2 <= float(envelope_height(chain, np.array([r1]))[0]) + tol:
        return Membership.INSIDE_CONVEX_HULL_ONLY
    return Membership.OUTSIDE
