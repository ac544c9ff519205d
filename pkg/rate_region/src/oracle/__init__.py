"""
暴力网格预言机与评估指标模块
"""

from .grid import power_grid, pareto_filter, grid_pareto
from .metrics import (
    GAP_METRICS,
    GapResult,
    GapRow,
    GapReport,
    FrontierVerification,
    crystal_chain,
    area_power_control,
    polygon_area,
    area_crystallized,
    max_gap,
    b_grid,
    sweep_b_symmetric,
    verify_frontier,
)
from .sampling import random_two_user_params, random_symmetric_params, random_channel

__all__ = [
    "power_grid",
    "pareto_filter",
    "grid_pareto",
    "GAP_METRICS",
    "GapResult",
    "GapRow",
    "GapReport",
    "FrontierVerification",
    "crystal_chain",
    "area_power_control",
    "polygon_area",
    "area_crystallized",
    "max_gap",
    "b_grid",
    "sweep_b_symmetric",
    "verify_frontier",
    "random_two_user_params",
    "random_symmetric_params",
    "random_channel",
]
