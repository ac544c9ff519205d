#!/usr/bin/env python3
"""
测试运行器

优先用 pytest 运行 test 目录下的全部测试；pytest 不可用或失败时改用 unittest 逐模块加载。
"""

import importlib
import subprocess
import sys
import unittest
from pathlib import Path

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

TEST_DIR = current_file.parent
TEST_MODULES = [
    "test_channel",
    "test_channel_loader",
    "test_frontier2",
    "test_convexity",
    "test_crystallize",
    "test_nregion",
    "test_oracle",
    "test_properties",
    "test_utils",
    "test_cli",
]


def run_pytest() -> int:
    files = sorted(path.name for path in TEST_DIR.glob("test_*.py"))
    if not files:
        return 1
    return subprocess.run([sys.executable, "-m", "pytest", *files, "-v"], cwd=TEST_DIR).returncode


def run_unittest() -> int:
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for module_name in TEST_MODULES:
        try:
            module = importlib.import_module(f"rate_region.test.{module_name}")
        except ImportError as e:
            print(f"⚠️  跳过模块 {module_name}: {e}")
            continue
        print(f"📝 加载测试模块: {module_name}")
        suite.addTests(loader.loadTestsFromModule(module))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return 0 if result.wasSuccessful() else 1


if __name__ == '__main__':
    print("🧪 运行所有单元测试...")
    code = run_pytest()
    if code != 0:
        print("📋 使用unittest运行测试...")
        code = run_unittest()
    sys.exit(code)
