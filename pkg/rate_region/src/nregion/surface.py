"""
n 用户超曲面采样

固定发射机 i 满功率、其余 n-1 个功率在 [0, P_max] 上均匀取网格，得到可达区域外边界的一片超曲面 Φ_i。
"""

from dataclasses import dataclass
from typing import List

import numpy as np
from numpy.typing import NDArray

from rate_region.src.channel.model import ChannelInstance, rate_matrix
from rate_region.src.config import SURFACE
from rate_region.src.errors import CapExceeded, DimensionMismatch, InvalidArgument, WrongDimension


@dataclass(frozen=True)
class SurfaceSample:
    """超曲面采样：powers 与 rates 均为 (N, n)，第 surface_index 列功率恒为 P_max"""
    surface_index: int
    powers: NDArray[np.float64]
    rates: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.powers)


def _power_grid(ch: ChannelInstance, i: int, grid_res: int) -> NDArray[np.float64]:
    if not 0 <= i < ch.n:
        raise DimensionMismatch(f"超曲面下标 {i} 超出范围 [0, {ch.n})")
    if grid_res < 2:
        raise InvalidArgument(f"网格分辨率至少为 2: {grid_res}")
    if grid_res ** (ch.n - 1) > SURFACE.GRID_CAP:
        raise CapExceeded(f"网格规模 {grid_res}^{ch.n - 1} 超过上限 {SURFACE.GRID_CAP}")

    axis = np.linspace(0.0, ch.p_max, grid_res)
    free = [axis] * (ch.n - 1)
    mesh = np.meshgrid(*free, indexing="ij") if free else []
    columns = [m.ravel() for m in mesh]
    count = columns[0].size if columns else 1
    columns.insert(i, np.full(count, ch.p_max))
    return np.column_stack(columns)


def sample_surface(ch: ChannelInstance, i: int, grid_res: int) -> SurfaceSample:
    """
    采样超曲面 Φ_i

    Args:
        ch: 信道实例
        i: 满功率发射机下标（从 0 开始）
        grid_res: 每个自由维度的网格点数

    Raises:
        CapExceeded: grid_res^(n-1) > 10^7
    """
    powers = _power_grid(ch, i, grid_res)
    return SurfaceSample(i, powers, rate_matrix(ch, powers))


def surface_contours(ch: ChannelInstance, i: int, grid_res: int) -> List[NDArray[np.float64]]:
    """
    三用户闭合势曲面的四条边界曲线

    每条曲线对应一个自由功率取 0 或 P_max、另一个自由功率扫描的情形；返回速率点数组列表。
    """
    if ch.n != 3:
        raise WrongDimension(f"边界曲线只对三用户信道定义，实际 n={ch.n}")
    if not 0 <= i < 3:
        raise DimensionMismatch(f"超曲面下标 {i} 超出范围 [0, 3)")
    free = [j for j in range(3) if j != i]
    sweep = np.linspace(0.0, ch.p_max, grid_res)
    contours = []
    for held, swept in (free, free[::-1]):
        for level in (0.0, ch.p_max):
            powers = np.zeros((grid_res, 3))
            powers[:, i] = ch.p_max
            powers[:, held] = level
            powers[:, swept] = sweep
            contours.append(rate_matrix(ch, powers))
    return contours
