"""
评估与验证子命令：对称信道 b 扫描、前沿的网格验证
"""
from __future__ import annotations

from pathlib import Path
from typing import List

from rate_region.src.config import ORACLE, PATH
from rate_region.src.errors import InvalidArgument, VerificationFailed
from rate_region.src.oracle.metrics import sweep_b_symmetric, verify_frontier
from rate_region.src.utils.common_utils import parse_range
from .artifacts import write_csv, write_json
from .base_command import AnalysisCommand


class SweepCommand(AnalysisCommand):
    """对称信道交叉增益扫描：面积与最大间隙"""

    requires_channel = False

    @staticmethod
    def name() -> str:
        return "sweep"

    @staticmethod
    def description() -> str:
        return "在 dB 网格上扫描对称信道的交叉增益 b，输出两种区域面积与最大速率间隙"

    def execute(self) -> List[Path]:
        if self.config.a is None or self.config.b_db is None:
            raise InvalidArgument("sweep 需要 --a 与 --b-db lo:hi:step")
        kwargs = ORACLE.get_sweep_kwargs()
        kwargs["metric"] = self.config.metric
        if self.config.samples:
            kwargs["area_samples"] = kwargs["gap_samples"] = self.config.samples
        report = sweep_b_symmetric(self.config.a, self.config.pmax, parse_range(self.config.b_db), **kwargs)
        self.logger.info(f"{len(report.rows)} 个 b 值，最大间隙 {report.max_gap_pct:.4f}%")

        header = ("b_db", "area_pc", "area_crystal", "max_gap_pct", "gap_argmax_r1")
        rows = [(r.b_db, r.area_pc, r.area_crystal, r.max_gap_pct, r.gap_argmax_r1) for r in report.rows]
        return [write_csv(self.artifact(PATH.GAP_REPORT_FILE), header, rows)]


class VerifyCommand(AnalysisCommand):
    """闭式前沿对暴力网格的验证"""

    @staticmethod
    def name() -> str:
        return "verify"

    @staticmethod
    def description() -> str:
        return "用 m×m 功率网格验证闭式前沿，并检查前沿点的功率反解"

    def execute(self) -> List[Path]:
        params = self.two_user()
        grid = self.config.grid or ORACLE.GRID_TWO_USER
        tol = self.config.tol if self.config.tol is not None else ORACLE.VERIFY_TOLERANCE
        result = verify_frontier(params, grid, tol)

        written = [write_json(self.artifact(PATH.VERIFY_FILE), result.to_dict())]
        if not result.passed:
            for failure in result.failures[:10]:
                self.logger.warning(failure)
            raise VerificationFailed(f"前沿验证未通过：{len(result.failures)} 处失败，报告见 {written[0]}")
        self.logger.success(f"前沿验证通过，最大越界 {result.max_violation:.3e}")
        return written
