"""
n 用户超曲面子命令
"""
from __future__ import annotations

from pathlib import Path
from typing import List

import numpy as np

from rate_region.src.config import ORACLE, PATH
from rate_region.src.errors import DimensionMismatch
from rate_region.src.nregion.geometry import symmetric_geometry
from rate_region.src.nregion.surface import sample_surface
from .artifacts import write_csv, write_json
from .base_command import AnalysisCommand


class SurfaceCommand(AnalysisCommand):
    """固定一个发射机满功率，采样其余功率网格上的速率"""

    @staticmethod
    def name() -> str:
        return "surface"

    @staticmethod
    def description() -> str:
        return "采样超曲面 Φ_i（--surface 为 1 起的用户序号，默认最后一个用户）"

    def execute(self) -> List[Path]:
        ch = self.load_channel()
        user = self.config.surface or ch.n
        if not 1 <= user <= ch.n:
            raise DimensionMismatch(f"--surface 必须在 1..{ch.n} 之间: {user}")
        grid = self.config.grid or (ORACLE.GRID_TWO_USER if ch.n == 2 else ORACLE.GRID_THREE_USER)

        surface = sample_surface(ch, user - 1, grid)
        geometry = None
        if ch.n >= 2 and ch.is_symmetric():
            normalized = ch.normalized_gains
            geometry = symmetric_geometry(float(normalized[0, 0]), float(normalized[0, 1]), ch.p_max, ch.n)
        self.logger.info(f"超曲面 Φ_{user}: {len(surface)} 个采样点")

        header = [f"p{i + 1}" for i in range(ch.n)] + [f"r{i + 1}" for i in range(ch.n)]
        rows = np.hstack([surface.powers, surface.rates])
        written = [write_csv(self.artifact(PATH.SURFACE_FILE), header, rows)]
        if geometry is not None:
            written.append(write_json(self.artifact(PATH.GEOMETRY_FILE), geometry.to_dict()))
        return written
