"""
信道级子命令：速率计算与信道文件写出
"""
from __future__ import annotations

from pathlib import Path
from typing import List

import numpy as np

from rate_region.src.channel.loader import db_to_linear, write_channel_file
from rate_region.src.channel.model import ChannelInstance, rate_vector, sinr_matrix
from rate_region.src.config import PATH
from rate_region.src.utils.common_utils import parse_float_list, parse_matrix
from .artifacts import write_csv
from .base_command import AnalysisCommand


class RatesCommand(AnalysisCommand):
    """给定功率向量下每个用户的 SINR 与速率"""

    @staticmethod
    def name() -> str:
        return "rates"

    @staticmethod
    def description() -> str:
        return "计算给定功率向量下各用户的 SINR 与速率（默认全部满功率）"

    def execute(self) -> List[Path]:
        ch = self.load_channel()
        if self.config.powers:
            powers = np.asarray(parse_float_list(self.config.powers, "powers"))
        else:
            powers = np.full(ch.n, ch.p_max)

        rates = rate_vector(ch, powers)
        sinrs = sinr_matrix(ch, powers[None, :])[0]
        self.logger.info(f"速率: {np.array2string(rates, precision=6)}")

        rows = [(i + 1, powers[i], sinrs[i], rates[i]) for i in range(ch.n)]
        return [write_csv(self.artifact(PATH.RATES_FILE), ("i", "p", "sinr", "r"), rows)]


class WriteChannelCommand(AnalysisCommand):
    """由命令行增益写出信道文件"""

    requires_channel = False

    @staticmethod
    def name() -> str:
        return "write-channel"

    @staticmethod
    def description() -> str:
        return "把 --gains 给出的增益矩阵写成信道文件"

    def execute(self) -> List[Path]:
        gains = parse_matrix(self.config.gains or "", "gains")
        if self.config.units == "dB":
            gains = db_to_linear(gains)
        ch = ChannelInstance(gains, self.config.noise_var, self.config.pmax)
        path = write_channel_file(ch, str(self.artifact(PATH.CHANNEL_FILE)), self.config.units)
        self.logger.success(f"信道文件已写出: {path}")
        return [path]
