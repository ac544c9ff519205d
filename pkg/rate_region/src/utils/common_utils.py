"""
通用工具模块

命令行字符串解析与输出目录处理。
"""

import os
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from rate_region.src.errors import InvalidArgument


def validate_file_exists(file_path: str, file_type: str = "文件") -> bool:
    """
    验证文件是否存在

    Raises:
        FileNotFoundError: 文件不存在时抛出
    """
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"{file_type}不存在: {file_path}")
    return True


def ensure_output_dir(file_path: Union[str, Path]) -> Path:
    """
    如果目录不存在则创建

    Args:
        file_path: 文件路径（将创建其父目录）
    """
    output_dir = Path(file_path).parent
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir


def parse_float_list(text: str, label: str = "数值列表") -> List[float]:
    """'0.5,1' → [0.5, 1.0]"""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise InvalidArgument(f"{label} 为空")
    try:
        return [float(item) for item in items]
    except ValueError:
        raise InvalidArgument(f"{label} 不是逗号分隔的数值: '{text}'") from None


def parse_matrix(text: str, label: str = "矩阵") -> np.ndarray:
    """'10,1;4,10' → 2×2 数组，行用分号分隔"""
    rows = [parse_float_list(row, label) for row in text.split(";") if row.strip()]
    if not rows:
        raise InvalidArgument(f"{label} 为空")
    if len({len(row) for row in rows}) != 1:
        raise InvalidArgument(f"{label} 各行长度不一致: '{text}'")
    return np.array(rows, dtype=float)


def parse_range(text: str) -> Tuple[float, float, float]:
    """'lo:hi:step' → (lo, hi, step)"""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidArgument(f"区间格式应为 lo:hi:step: '{text}'")
    try:
        lo, hi, step = (float(part) for part in parts)
    except ValueError:
        raise InvalidArgument(f"区间格式应为 lo:hi:step: '{text}'") from None
    return lo, hi, step


def format_duration(seconds: float) -> str:
    """
    格式化时间长度

    Args:
        seconds: 秒数

    Returns:
        str: 格式化的时间字符串
    """
    if seconds < 60:
        return f"{seconds:.2f}秒"
    minutes = int(seconds // 60)
    return f"{minutes}分{seconds - minutes * 60:.1f}秒"
