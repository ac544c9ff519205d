"""
产物写出

CSV 用 '.' 作小数点、17 位有效数字，JSON 键排序，均以换行结尾，不含时间戳。
同一输入重复运行得到逐字节相同的文件。
"""

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from rate_region.src.utils.common_utils import ensure_output_dir


def format17(value: Any) -> str:
    """浮点数按 17 位有效数字输出；整数与字符串原样输出"""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    ensure_output_dir(path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format17(value) for value in row])
    return path


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    return value


def write_json(path: Path, data: Any) -> Path:
    ensure_output_dir(path)
    text = json.dumps(_plain(data), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_text(path: Path, text: str) -> Path:
    ensure_output_dir(path)
    path.write_text(text, encoding="utf-8")
    return path
