"""
二进制开关功率掩码的角点

第 k 个角点（k = 1..2^n-1）的掩码由 k 的二进制位给出：第 i 位（从 0 起）对应用户 i。
角点速率就是各激活用户以 P_max 发射、其余静默时的速率。
"""

from math import comb
from typing import List, NamedTuple, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rate_region.src.channel.model import ChannelInstance, RatePoint, rate_matrix
from rate_region.src.config import CRYSTAL
from rate_region.src.errors import CapExceeded, InvalidArgument, SimplexViolation


class CornerPoint(NamedTuple):
    """角点：序号 k、掩码与对应速率"""
    k: int
    mask: Tuple[int, ...]
    rates: Tuple[float, ...]

    @property
    def mask_label(self) -> str:
        """掩码位串，用户 1 在最左"""
        return "".join(str(bit) for bit in self.mask)


def corner_masks(n: int) -> NDArray[np.int8]:
    """
    枚举全部非零掩码

    Returns:
        形状 (2^n - 1, n) 的 0/1 数组，第 k-1 行是第 k 个掩码

    Raises:
        CapExceeded: n > 16
    """
    if n < 1:
        raise InvalidArgument(f"用户数必须 ≥ 1: {n}")
    if n > CRYSTAL.MAX_USERS:
        raise CapExceeded(f"角点枚举上限为 n ≤ {CRYSTAL.MAX_USERS}，实际 n={n}")
    k = np.arange(1, 2 ** n, dtype=np.int64)
    bits = (k[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1
    return bits.astype(np.int8)


def corner_rate_matrix(ch: ChannelInstance) -> NDArray[np.float64]:
    """形状 (2^n - 1, n) 的角点速率矩阵"""
    masks = corner_masks(ch.n)
    return rate_matrix(ch, masks.astype(float) * ch.p_max)


def corner_rates(ch: ChannelInstance) -> List[CornerPoint]:
    """全部角点；n = 2 时依次为 C、A、B"""
    masks = corner_masks(ch.n)
    rates = corner_rate_matrix(ch)
    return [
        CornerPoint(k + 1, tuple(int(bit) for bit in masks[k]), tuple(float(r) for r in rates[k]))
        for k in range(len(masks))
    ]


def validate_theta(theta: ArrayLike, num_corners: int) -> NDArray[np.float64]:
    """
    校验时分系数在单纯形上

    Raises:
        SimplexViolation: 长度不对、含负数或和不为 1
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (num_corners,):
        raise SimplexViolation(f"θ 长度必须为 {num_corners}，实际形状 {theta.shape}")
    if not np.all(np.isfinite(theta)) or np.any(theta < -CRYSTAL.NEGATIVE_THETA_TOLERANCE):
        raise SimplexViolation("θ 必须非负")
    if abs(theta.sum() - 1.0) > CRYSTAL.SIMPLEX_TOLERANCE:
        raise SimplexViolation(f"θ 之和必须为 1，实际 {theta.sum()!r}")
    return theta


def theta_rates(ch: ChannelInstance, theta: ArrayLike) -> RatePoint:
    """时分速率 R(θ) = Σ_k θ_k R^(k)，关于 θ 线性"""
    rates = corner_rate_matrix(ch)
    return validate_theta(theta, len(rates)) @ rates


def max_facet_count(n: int) -> int:
    """时分多面体个数上界 C(2^n - 1, n)"""
    return comb(2 ** n - 1, n)
