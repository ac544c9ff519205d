"""
信道文件解析器

信道文件是 JSON 文本：
    {"n": 2, "units": "linear", "gains": [[10, 1], [4, 10]], "noise_var": 1.0, "p_max": 1.0}

units 为 "dB" 时按 10^(dB/10) 把功率增益换算成线性值；noise_var 与 p_max 总是线性值。
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from rate_region.src.channel.model import ChannelInstance
from rate_region.src.config import CHANNEL
from rate_region.src.errors import ChannelFileError, RegionError
from rate_region.src.logger import get_logger
from rate_region.src.utils.common_utils import ensure_output_dir, validate_file_exists


def db_to_linear(values: Any) -> np.ndarray:
    """功率增益 dB -> 线性"""
    return np.power(CHANNEL.DB_BASE, np.asarray(values, dtype=float) / 10.0)


def linear_to_db(values: Any) -> np.ndarray:
    """功率增益 线性 -> dB"""
    return 10.0 * np.log10(np.asarray(values, dtype=float))


class ChannelFileParser:
    """信道文件解析器"""

    REQUIRED_FIELDS = ("n", "gains", "noise_var", "p_max")

    @staticmethod
    def _line_of(content: str, field: str) -> Optional[int]:
        """查找字段键首次出现的行号（从 1 开始）"""
        match = re.search(rf'"{re.escape(field)}"\s*:', content)
        if not match:
            return None
        return content.count("\n", 0, match.start()) + 1

    def _fail(self, content: str, field: str, message: str) -> ChannelFileError:
        return ChannelFileError(message, field=field, line=self._line_of(content, field))

    def _number(self, content: str, document: Dict[str, Any], field: str) -> float:
        value = document[field]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self._fail(content, field, f"必须是数值，实际为 {value!r}")
        return float(value)

    def parse_content(self, content: str) -> ChannelInstance:
        """
        解析信道文件内容

        Args:
            content: JSON 文本

        Returns:
            信道实例

        Raises:
            ChannelFileError: 语法错误、缺少字段或字段取值非法
        """
        logger = get_logger()
        logger.step("解析信道文件")

        try:
            document = json.loads(content)
        except json.JSONDecodeError as exc:
            raise ChannelFileError(f"JSON 语法错误: {exc.msg}", line=exc.lineno) from exc

        if not isinstance(document, dict):
            raise ChannelFileError("顶层必须是 JSON 对象", line=1)

        for field in self.REQUIRED_FIELDS:
            if field not in document:
                raise ChannelFileError("缺少必需字段", field=field)

        n = document["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise self._fail(content, "n", f"必须是正整数，实际为 {n!r}")

        units = document.get("units", "linear")
        if units not in CHANNEL.SUPPORTED_UNITS:
            raise self._fail(content, "units", f"只支持 {CHANNEL.SUPPORTED_UNITS}，实际为 {units!r}")

        raw_gains = document["gains"]
        if (not isinstance(raw_gains, list) or len(raw_gains) != n
                or any(not isinstance(row, list) or len(row) != n for row in raw_gains)):
            raise self._fail(content, "gains", f"必须是 {n}×{n} 数组")
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for row in raw_gains for v in row):
            raise self._fail(content, "gains", "所有元素必须是数值")

        gains = np.asarray(raw_gains, dtype=float)
        if units == "dB":
            gains = db_to_linear(gains)

        if np.any(gains < 0) or not np.all(np.isfinite(gains)):
            raise self._fail(content, "gains", "增益必须是非负有限数")

        noise_var = self._number(content, document, "noise_var")
        if not noise_var > 0:
            raise self._fail(content, "noise_var", f"必须为正，实际为 {noise_var}")
        p_max = self._number(content, document, "p_max")
        if not p_max > 0:
            raise self._fail(content, "p_max", f"必须为正，实际为 {p_max}")
        degenerate = bool(document.get("degenerate", False))

        # 直连增益为零属于领域错误（DegenerateChannel），不在此转换
        channel = ChannelInstance(gains, noise_var, p_max, degenerate=degenerate)

        logger.debug(f"信道: n={channel.n}, σ²={channel.noise_var}, P_max={channel.p_max}, units={units}")
        return channel

    def parse_file(self, file_path: str) -> ChannelInstance:
        """
        解析信道文件

        Raises:
            FileNotFoundError: 文件不存在
            ChannelFileError: 内容格式错误
        """
        validate_file_exists(str(file_path), "信道文件")
        path = Path(file_path)

        content = path.read_text(encoding="utf-8")
        channel = self.parse_content(content)
        get_logger().success(f"信道文件解析完成: {path.name} (n={channel.n})")
        return channel


def dump_channel(ch: ChannelInstance, units: str = "linear") -> str:
    """
    把信道实例序列化为信道文件文本

    linear 单位下浮点数按 repr 精度写出，重新解析后得到相等的实例。
    """
    if units not in CHANNEL.SUPPORTED_UNITS:
        raise RegionError(f"不支持的单位: {units}")
    gains = ch.gains if units == "linear" else linear_to_db(ch.gains)
    document: Dict[str, Any] = {
        "n": ch.n,
        "units": units,
        "gains": [[float(v) for v in row] for row in gains],
        "noise_var": ch.noise_var,
        "p_max": ch.p_max,
    }
    if ch.degenerate:
        document["degenerate"] = True
    return json.dumps(document, indent=2) + "\n"


def write_channel_file(ch: ChannelInstance, file_path: str, units: str = "linear") -> Path:
    """写出信道文件"""
    path = Path(file_path)
    ensure_output_dir(path)
    path.write_text(dump_channel(ch, units), encoding="utf-8")
    return path
