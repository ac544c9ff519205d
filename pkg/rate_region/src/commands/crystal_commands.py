"""
晶体化子命令：凸包与 θ 分解
"""
from __future__ import annotations

from pathlib import Path
from typing import List

import numpy as np

from rate_region.src.config import PATH
from rate_region.src.crystallize.corners import corner_rates
from rate_region.src.crystallize.decompose import decompose
from rate_region.src.crystallize.hull import hull
from rate_region.src.channel.model import normalize_two_user
from rate_region.src.utils.common_utils import parse_float_list
from .artifacts import write_csv, write_json, write_text
from .base_command import AnalysisCommand
from .frontier_commands import region_svg


class CrystallizeCommand(AnalysisCommand):
    """角点与晶体化凸包"""

    @staticmethod
    def name() -> str:
        return "crystallize"

    @staticmethod
    def description() -> str:
        return "枚举二进制开关角点并构造晶体化凸包"

    def execute(self) -> List[Path]:
        ch = self.load_channel()
        crystallized = hull(ch, mode=self.config.hull_mode)
        svg = None
        if self.wants_svg():
            if ch.n == 2:
                svg = region_svg(normalize_two_user(ch))
            else:
                self.logger.warning(f"n={ch.n}：SVG 只支持两用户，跳过 region.svg")
        self.logger.info(
            f"{len(crystallized.corners)} 个角点，边界类型 {crystallized.boundary_kind}，"
            f"被支配角点 {crystallized.dominated}"
        )

        header = ["k", "mask"] + [f"r{i + 1}" for i in range(ch.n)]
        rows = [[c.k, c.mask_label, *c.rates] for c in crystallized.corners]
        written = [
            write_json(self.artifact(PATH.HULL_FILE), crystallized.to_dict()),
            write_csv(self.artifact(PATH.CORNERS_FILE), header, rows),
        ]
        if svg is not None:
            written.append(write_text(self.artifact(PATH.REGION_SVG_FILE), svg))
        return written


class DecomposeCommand(AnalysisCommand):
    """目标速率点的时分系数"""

    @staticmethod
    def name() -> str:
        return "decompose"

    @staticmethod
    def description() -> str:
        return "把凸包内的目标速率点分解成至多 n 个角点的时分组合"

    def execute(self) -> List[Path]:
        ch = self.load_channel()
        target = np.asarray(parse_float_list(self.config.target or "", "target"))
        theta = decompose(ch, target)
        support = int(np.count_nonzero(theta))
        self.logger.info(f"目标 {target.tolist()} 由 {support} 个角点时分得到")

        rows = [(c.k, c.mask_label, theta[c.k - 1]) for c in corner_rates(ch)]
        return [write_csv(self.artifact(PATH.THETA_FILE), ("k", "mask", "theta"), rows)]
