"""
高斯干扰信道模型

把干扰当作噪声时，第 i 对收发机的可达速率为
    R_i = log2(1 + g_ii p_i / (σ² + Σ_{j≠i} g_ij p_j))

增益矩阵按"每行一个接收机"组织：gains[i, j] 是发射机 j 到接收机 i 的功率增益。
库函数的用户下标从 0 开始。
"""

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rate_region.src.config import CHANNEL
from rate_region.src.errors import (
    DegenerateChannel,
    DimensionMismatch,
    PowerOutOfRange,
    RegionError,
    WrongDimension,
)

# 功率向量和速率点都用一维 float64 数组表示
PowerVector = NDArray[np.float64]
RatePoint = NDArray[np.float64]

_LN2 = np.log(2.0)


def log2_1p(x: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
    """log2(1 + x)，小 x 时保持精度；全库统一使用此函数求速率"""
    return np.log1p(x) / _LN2


def exp2_m1(r: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
    """2^r - 1，log2_1p 的逆"""
    return np.expm1(np.asarray(r, dtype=float) * _LN2)


@dataclass(frozen=True, eq=False)
class ChannelInstance:
    """n 用户高斯干扰信道实例（不可变）"""

    gains: NDArray[np.float64]
    noise_var: float
    p_max: float
    degenerate: bool = False
    n: int = field(init=False)

    def __post_init__(self):
        gains = np.array(self.gains, dtype=float, copy=True)
        if gains.ndim != 2 or gains.shape[0] != gains.shape[1] or gains.shape[0] < 1:
            raise DimensionMismatch(f"增益矩阵必须是 n×n 方阵，实际形状 {gains.shape}")
        if not np.all(np.isfinite(gains)) or np.any(gains < 0):
            raise RegionError("增益必须是非负有限数")
        if not (np.isfinite(self.noise_var) and self.noise_var > 0):
            raise RegionError(f"噪声方差必须为正: {self.noise_var}")
        if not (np.isfinite(self.p_max) and self.p_max > 0):
            raise RegionError(f"P_max 必须为正: {self.p_max}")
        if not self.degenerate and np.any(np.diag(gains) == 0):
            raise DegenerateChannel("直连增益 g_ii 为零；如确需此类信道请显式标记 degenerate=True")

        gains.setflags(write=False)
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "noise_var", float(self.noise_var))
        object.__setattr__(self, "p_max", float(self.p_max))
        object.__setattr__(self, "n", gains.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChannelInstance):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.gains, other.gains)
            and self.noise_var == other.noise_var
            and self.p_max == other.p_max
            and self.degenerate == other.degenerate
        )

    __hash__ = None

    @property
    def normalized_gains(self) -> NDArray[np.float64]:
        """按噪声方差归一化的增益矩阵"""
        return self.gains / self.noise_var

    def is_symmetric(self) -> bool:
        """所有直连增益相等且所有交叉增益相等"""
        diag = np.diag(self.gains)
        off = self.gains[~np.eye(self.n, dtype=bool)]
        return bool(np.all(diag == diag[0]) and (off.size == 0 or np.all(off == off[0])))


@dataclass(frozen=True)
class TwoUserParams:
    """
    两用户工作坐标：a = g11/σ², b = g12/σ², c = g22/σ², d = g21/σ²

    注意 d 来自增益矩阵第二行第一列（发射机 1 到接收机 2）。
    """

    a: float
    b: float
    c: float
    d: float
    p_max: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "p_max"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise RegionError(f"参数 {name} 必须是有限数: {value}")
            object.__setattr__(self, name, float(value))
        if self.a <= 0 or self.c <= 0:
            raise DegenerateChannel(f"直连增益必须为正: a={self.a}, c={self.c}")
        if self.b < 0 or self.d < 0:
            raise RegionError(f"交叉增益必须非负: b={self.b}, d={self.d}")
        if self.p_max <= 0:
            raise RegionError(f"P_max 必须为正: {self.p_max}")

    @classmethod
    def from_gains(cls, gains: ArrayLike, noise_var: float = 1.0, p_max: float = 1.0) -> "TwoUserParams":
        """从 2×2 原始增益矩阵构造"""
        return normalize_two_user(ChannelInstance(np.asarray(gains, dtype=float), noise_var, p_max))

    @property
    def r1_max(self) -> float:
        """点 C 的 r1 = log2(1 + aP)"""
        return float(log2_1p(self.a * self.p_max))

    @property
    def r2_max(self) -> float:
        """点 A 的 r2 = log2(1 + cP)"""
        return float(log2_1p(self.c * self.p_max))

    @property
    def r1_junction(self) -> float:
        """点 B 的 r1 = log2(1 + aP/(1 + bP))，区间 1 与区间 2 的分界"""
        return float(log2_1p(self.a * self.p_max / (1.0 + self.b * self.p_max)))

    @property
    def is_symmetric(self) -> bool:
        return self.a == self.c and self.b == self.d

    def swapped(self) -> "TwoUserParams":
        """交换两个用户的角色"""
        return TwoUserParams(self.c, self.d, self.a, self.b, self.p_max)

    def to_channel(self) -> ChannelInstance:
        """σ² = 1 的等价信道实例"""
        return ChannelInstance(np.array([[self.a, self.b], [self.d, self.c]]), 1.0, self.p_max)


def symmetric_channel(n: int, a: float, b: float, p_max: float) -> ChannelInstance:
    """构造 σ² = 1 的对称 n 用户信道"""
    gains = np.full((n, n), float(b))
    np.fill_diagonal(gains, float(a))
    return ChannelInstance(gains, 1.0, p_max)


def _check_powers(ch: ChannelInstance, powers: NDArray[np.float64]) -> NDArray[np.float64]:
    """校验功率盒约束，并把容差内的越界值钳回 [0, P_max]"""
    if powers.shape[-1] != ch.n:
        raise DimensionMismatch(f"功率向量长度 {powers.shape[-1]} 与用户数 {ch.n} 不一致")
    tolerance = CHANNEL.POWER_BOX_TOLERANCE * ch.p_max
    if not np.all(np.isfinite(powers)) or np.any(powers < -tolerance) or np.any(powers > ch.p_max + tolerance):
        raise PowerOutOfRange(f"功率必须在 [0, {ch.p_max}] 内: {powers.tolist()}")
    return np.clip(powers, 0.0, ch.p_max)


def sinr_matrix(ch: ChannelInstance, powers: ArrayLike) -> NDArray[np.float64]:
    """批量计算 SINR；powers 形状 (N, n) 或 (n,)"""
    p = _check_powers(ch, np.asarray(powers, dtype=float))
    diag = np.diag(ch.gains)
    received = p @ ch.gains.T            # 每个接收机收到的总功率
    signal = p * diag
    interference = received - signal
    return signal / (ch.noise_var + interference)


def rate_matrix(ch: ChannelInstance, powers: ArrayLike) -> NDArray[np.float64]:
    """批量计算速率；powers 形状 (N, n) 或 (n,)，返回同形状"""
    return log2_1p(sinr_matrix(ch, powers))


def rate_vector(ch: ChannelInstance, p: ArrayLike) -> RatePoint:
    """
    计算单个功率向量的速率点

    Args:
        ch: 信道实例
        p: 长度为 n 的功率向量

    Returns:
        长度为 n 的速率数组（bits/channel use）

    Raises:
        DimensionMismatch: 长度不等于 n
        PowerOutOfRange: 任一功率超出 [0, P_max]
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise DimensionMismatch(f"功率向量必须是一维，实际形状 {p.shape}")
    return rate_matrix(ch, p)


def sinr(ch: ChannelInstance, p: ArrayLike, i: int) -> float:
    """第 i 个用户（从 0 开始）的 SINR"""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise DimensionMismatch(f"功率向量必须是一维，实际形状 {p.shape}")
    if not 0 <= i < ch.n:
        raise DimensionMismatch(f"用户下标 {i} 超出范围 [0, {ch.n})")
    return float(sinr_matrix(ch, p)[i])


def normalize_two_user(ch: ChannelInstance) -> TwoUserParams:
    """
    两用户信道归一化

    Raises:
        WrongDimension: n != 2
        DegenerateChannel: g11 = 0 或 g22 = 0
    """
    if ch.n != 2:
        raise WrongDimension(f"归一化只适用于两用户信道，实际 n={ch.n}")
    g = ch.gains
    if g[0, 0] == 0 or g[1, 1] == 0:
        raise DegenerateChannel(f"直连增益为零: g11={g[0, 0]}, g22={g[1, 1]}")
    s2 = ch.noise_var
    return TwoUserParams(
        a=g[0, 0] / s2,
        b=g[0, 1] / s2,
        c=g[1, 1] / s2,
        d=g[1, 0] / s2,
        p_max=ch.p_max,
    )

