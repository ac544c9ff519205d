#!/usr/bin/env python3
"""
高斯干扰信道速率区域分析的命令行入口。

示例：
    python rate_region/run_region.py classify --input channel.json --out output
    python rate_region/run_region.py sweep --a 1 --pmax 1 --b-db -20:0:0.25
"""

import sys
from pathlib import Path

# 获取项目根目录
current_file = Path(__file__).resolve()
project_root = current_file.parent.parent

# 添加到 sys.path（如果还没有的话）
project_root_str = str(project_root)
if project_root_str not in sys.path:
    sys.path.append(project_root_str)

from rate_region.src.cli import main

if __name__ == "__main__":
    sys.exit(main())
