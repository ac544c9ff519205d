"""
暴力网格预言机

在 [0, P_max]^n 的均匀功率网格上逐点计算速率，保留坐标意义下不被支配的点。
作为闭式前沿的独立参照，网格只会落在前沿之下，不会越过前沿。
"""

import numpy as np
from numpy.typing import NDArray

from rate_region.src.channel.model import ChannelInstance, rate_matrix
from rate_region.src.config import ORACLE
from rate_region.src.errors import CapExceeded, InvalidArgument


def power_grid(ch: ChannelInstance, m: int) -> NDArray[np.float64]:
    """m^n 个功率向量组成的 (m^n, n) 数组"""
    if m < 2:
        raise InvalidArgument(f"网格点数至少为 2: {m}")
    if m ** ch.n > ORACLE.GRID_CAP:
        raise CapExceeded(f"网格规模 {m}^{ch.n} 超过上限 {ORACLE.GRID_CAP}")
    axis = np.linspace(0.0, ch.p_max, m)
    mesh = np.meshgrid(*([axis] * ch.n), indexing="ij")
    return np.column_stack([g.ravel() for g in mesh])


def pareto_filter(points: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    去重后返回不被支配的点

    两维时按 r1 降序扫描；一般维数按坐标和降序逐点比较，支配者总是先出现。
    """
    points = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(points) == 0:
        return points

    if points.shape[1] == 2:
        order = np.lexsort((-points[:, 1], -points[:, 0]))
        ordered = points[order]
        best = np.maximum.accumulate(ordered[:, 1])
        keep = np.empty(len(ordered), dtype=bool)
        keep[0] = True
        keep[1:] = ordered[1:, 1] > best[:-1]
        return ordered[keep]

    order = np.argsort(-points.sum(axis=1), kind="stable")
    kept = []
    for point in points[order]:
        if kept and np.any(np.all(np.asarray(kept) >= point, axis=1)):
            continue
        kept.append(point)
    return np.asarray(kept)


def grid_pareto(ch: ChannelInstance, m: int) -> NDArray[np.float64]:
    """
    网格上的 Pareto 速率点

    Args:
        ch: 信道实例
        m: 每个功率维度的网格点数

    Raises:
        CapExceeded: m^n > 10^7
    """
    return pareto_filter(rate_matrix(ch, power_grid(ch, m)))
