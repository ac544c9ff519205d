"""
n 用户区域模块

超曲面采样、两用户成员判定与对称信道的 TDM 几何。
"""

from .surface import SurfaceSample, sample_surface, surface_contours
from .membership import Membership, membership_2user
from .geometry import (
    SymmetricGeometry,
    ob_lengths,
    tdm_threshold_n,
    asymptotic_threshold,
    symmetric_geometry,
)

__all__ = [
    "SurfaceSample",
    "sample_surface",
    "surface_contours",
    "Membership",
    "membership_2user",
    "SymmetricGeometry",
    "ob_lengths",
    "tdm_threshold_n",
    "asymptotic_threshold",
    "symmetric_geometry",
]
