"""
工具模块

提供项目中常用的工具函数
"""

from .common_utils import (
    validate_file_exists,
    ensure_output_dir,
    parse_float_list,
    parse_matrix,
    parse_range,
    format_duration,
)

__all__ = [
    "validate_file_exists",
    "ensure_output_dir",
    "parse_float_list",
    "parse_matrix",
    "parse_range",
    "format_duration",
]
