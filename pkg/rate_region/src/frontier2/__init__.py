"""
两用户前沿模块

闭式功率控制前沿 Φ1/Φ2、速率到功率的反解、凸性分类与 TDM 最优判据。
"""

from .frontier import (
    FrontierId,
    FrontierSample,
    FrontierTrace,
    PotentialLine,
    CornerSet2,
    phi1,
    phi2,
    frontier,
    frontier_arrays,
    frontier_curve,
    rate_to_power,
    corner_points,
    constrained_rate,
    constrained_rate_derivative,
    potential_line,
    sample_frontier,
)
from .convexity import (
    ConvexityClass,
    ConvexityReport,
    FrontierShape,
    Strategy,
    second_derivative_phi1,
    second_derivative_phi2,
    inflection_thresholds,
    inflection_point_d,
    classify,
    tdm_optimal,
    tdm_chord_gap,
    symmetric_threshold_b2,
)

__all__ = [
    "FrontierId",
    "FrontierSample",
    "FrontierTrace",
    "PotentialLine",
    "CornerSet2",
    "phi1",
    "phi2",
    "frontier",
    "frontier_arrays",
    "frontier_curve",
    "rate_to_power",
    "corner_points",
    "constrained_rate",
    "constrained_rate_derivative",
    "potential_line",
    "sample_frontier",
    "ConvexityClass",
    "ConvexityReport",
    "FrontierShape",
    "Strategy",
    "second_derivative_phi1",
    "second_derivative_phi2",
    "inflection_thresholds",
    "inflection_point_d",
    "classify",
    "tdm_optimal",
    "tdm_chord_gap",
    "symmetric_threshold_b2",
]
