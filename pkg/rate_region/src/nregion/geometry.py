"""
对称信道几何与 n 用户 TDM 阈值

对称 n 用户信道中，B 是全部用户满功率的点，B' 是 TDM 超平面上的对称点：
    ||OB||  = √n · log2(1 + aP/(1 + (n-1)bP))
    ||OB'|| = log2(1 + aP) / √n
||OB'|| ≥ ||OB|| 当且仅当 b 不低于 n 用户阈值。
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

import numpy as np

from rate_region.src.channel.model import log2_1p
from rate_region.src.errors import RegionError


@dataclass(frozen=True)
class SymmetricGeometry:
    n: int
    a: float
    b: float
    p_max: float
    ob_len: float
    obprime_len: float
    b_star_n: float
    b_star_inf: float

    def to_dict(self) -> Dict[str, Any]:
        """geometry.json 字段"""
        data = asdict(self)
        data["ob"] = data.pop("ob_len")
        data["obprime"] = data.pop("obprime_len")
        return {key: data[key] for key in ("n", "a", "b", "p_max", "ob", "obprime", "b_star_n", "b_star_inf")}


def _check(a: float, p_max: float, n: int = 2) -> None:
    if a <= 0 or p_max <= 0:
        raise RegionError(f"需要 a > 0 且 P_max > 0: a={a}, P_max={p_max}")
    if n < 2:
        raise RegionError(f"需要 n ≥ 2: {n}")


def ob_lengths(a: float, b: float, p_max: float, n: int) -> Tuple[float, float]:
    """(||OB||, ||OB'||)"""
    _check(a, p_max, n)
    if b < 0:
        raise RegionError(f"交叉增益必须非负: {b}")
    root_n = np.sqrt(n)
    ob = root_n * float(log2_1p(a * p_max / (1.0 + (n - 1) * b * p_max)))
    obprime = float(log2_1p(a * p_max)) / root_n
    return ob, obprime


def tdm_threshold_n(a: float, p_max: float, n: int) -> float:
    """n 用户对称信道的 TDM 阈值 (aP/((1+aP)^{1/n} - 1) - 1)/((n-1)P)"""
    _check(a, p_max, n)
    root_gain = np.expm1(np.log1p(a * p_max) / n)
    return float((a * p_max / root_gain - 1.0) / ((n - 1) * p_max))


def asymptotic_threshold(a: float, p_max: float) -> float:
    """n → ∞ 时阈值的极限 a/ln(1 + aP)"""
    _check(a, p_max)
    return float(a / np.log1p(a * p_max))


def symmetric_geometry(a: float, b: float, p_max: float, n: int) -> SymmetricGeometry:
    """组装对称几何记录"""
    ob, obprime = ob_lengths(a, b, p_max, n)
    return SymmetricGeometry(
        n=n, a=float(a), b=float(b), p_max=float(p_max),
        ob_len=ob, obprime_len=obprime,
        b_star_n=tdm_threshold_n(a, p_max, n),
        b_star_inf=asymptotic_threshold(a, p_max),
    )
