"""
晶体化速率域模块

二进制开关掩码角点、时分速率、凸包构造与 θ 分解。
"""

from .corners import (
    CornerPoint,
    corner_masks,
    corner_rate_matrix,
    corner_rates,
    theta_rates,
    validate_theta,
    max_facet_count,
)
from .decompose import decompose, max_scale, support_value, pareto_slack
from .hull import (
    CrystallizedHull,
    HullVertex,
    Facet,
    SupportSample,
    hull,
    upper_hull_2d,
    envelope_height,
    support_directions,
    dominated_corners,
)

__all__ = [
    "CornerPoint",
    "corner_masks",
    "corner_rate_matrix",
    "corner_rates",
    "theta_rates",
    "validate_theta",
    "max_facet_count",
    "decompose",
    "max_scale",
    "support_value",
    "pareto_slack",
    "CrystallizedHull",
    "HullVertex",
    "Facet",
    "SupportSample",
    "hull",
    "upper_hull_2d",
    "envelope_height",
    "support_directions",
    "dominated_corners",
]
