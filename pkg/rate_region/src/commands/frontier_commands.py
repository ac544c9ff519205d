"""
两用户前沿子命令：前沿采样与凸性分类
"""
from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from rate_region.src.channel.model import TwoUserParams
from rate_region.src.config import FRONTIER, PATH
from rate_region.src.crystallize.hull import hull
from rate_region.src.frontier2.convexity import ConvexityReport, classify
from rate_region.src.frontier2.frontier import FrontierId, FrontierTrace, sample_frontier
from .artifacts import write_csv, write_json, write_text
from .base_command import AnalysisCommand
from .svg import render_region_svg


def region_svg(params: TwoUserParams, trace: Optional[FrontierTrace] = None,
               report: Optional[ConvexityReport] = None) -> str:
    """组装 region.svg 所需的前沿、凸包与凸性报告"""
    if trace is None:
        trace = sample_frontier(params, FrontierId.COMBINED)
    if report is None:
        report = classify(params)
    return render_region_svg(params, trace, hull(params.to_channel()), report)


class FrontierCommand(AnalysisCommand):
    """沿 r1 采样功率控制前沿"""

    @staticmethod
    def name() -> str:
        return "frontier"

    @staticmethod
    def description() -> str:
        return "采样两用户功率控制前沿，输出 r1,r2,p1,p2"

    def execute(self) -> List[Path]:
        params = self.two_user()
        samples = self.config.samples or FRONTIER.DEFAULT_SAMPLES
        trace = sample_frontier(params, FrontierId.COMBINED, samples)
        svg = region_svg(params, trace) if self.wants_svg() else None
        self.logger.info(f"前沿采样 {len(trace)} 点，B 在 r1={params.r1_junction:.6g}")

        rows = zip(trace.r1, trace.r2, trace.p1, trace.p2)
        written = [write_csv(self.artifact(PATH.FRONTIER_FILE), ("r1", "r2", "p1", "p2"), rows)]
        if svg is not None:
            written.append(write_text(self.artifact(PATH.REGION_SVG_FILE), svg))
        return written


class ClassifyCommand(AnalysisCommand):
    """Φ1/Φ2 凸性分类与 TDM 判据"""

    @staticmethod
    def name() -> str:
        return "classify"

    @staticmethod
    def description() -> str:
        return "判定两条前沿的凹/拐点/凸类别、TDM 最优性与对应的时分策略"

    def execute(self) -> List[Path]:
        params = self.two_user()
        report = classify(params)
        svg = region_svg(params, report=report) if self.wants_svg() else None
        self.logger.info(
            f"Φ2: {report.class_phi2}，Φ1: {report.class_phi1}，TDM: {report.tdm_optimal}，策略: {report.strategy.value}"
        )

        written = [write_json(self.artifact(PATH.CONVEXITY_FILE), report.to_dict())]
        if svg is not None:
            written.append(write_text(self.artifact(PATH.REGION_SVG_FILE), svg))
        return written
