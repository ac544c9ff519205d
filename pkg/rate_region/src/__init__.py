"""
干扰信道速率区域工具 - 干扰按噪声处理的 n 用户高斯干扰信道

本包提供：
- channel: 信道实例、速率公式与信道文件读写
- frontier2: 两用户闭式功率控制前沿、凸性分类与 TDM 判据
- crystallize: 二进制开关角点、晶体化凸包与时分分解
- nregion: n 用户超曲面采样、两用户成员判定与对称几何
- oracle: 暴力网格验证与面积/间隙指标
- cli: 命令行接口
"""

__version__ = "0.1.0"

from rate_region.src import config
from rate_region.src import errors
from rate_region.src import logger
from rate_region.src import utils

__all__ = [
    "config",
    "errors",
    "logger",
    "utils",
]
