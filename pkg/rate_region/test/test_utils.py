"""
命令行字符串解析与产物写出测试
"""

import json
import unittest
import sys
import tempfile
import shutil
from pathlib import Path

import numpy as np

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

from rate_region.src.commands.artifacts import format17, write_csv, write_json
from rate_region.src.config import ORACLE, PATH, get_config
from rate_region.src.utils.common_utils import (
    ensure_output_dir,
    format_duration,
    parse_float_list,
    parse_matrix,
    parse_range,
)


class TestParsers(unittest.TestCase):
    """字符串解析"""

    def test_float_list(self):
        self.assertEqual(parse_float_list("0.5, 1,2e-1"), [0.5, 1.0, 0.2])
        with self.assertRaises(ValueError):
            parse_float_list("")
        with self.assertRaises(ValueError):
            parse_float_list("1,x")

    def test_matrix(self):
        np.testing.assert_array_equal(parse_matrix("10,1;4,10"), [[10.0, 1.0], [4.0, 10.0]])
        with self.assertRaises(ValueError):
            parse_matrix("1,2;3")

    def test_range(self):
        self.assertEqual(parse_range("-20:0:0.25"), (-20.0, 0.0, 0.25))
        with self.assertRaises(ValueError):
            parse_range("-20:0")
        with self.assertRaises(ValueError):
            parse_range("a:b:c")

    def test_duration(self):
        self.assertEqual(format_duration(1.5), "1.50秒")
        self.assertEqual(format_duration(75.0), "1分15.0秒")


class TestConfig(unittest.TestCase):
    """配置访问"""

    def test_get_config(self):
        self.assertIs(get_config("oracle"), ORACLE)
        self.assertIs(get_config("path"), PATH)
        self.assertIsNone(get_config("tts"))

    def test_sweep_kwargs(self):
        kwargs = ORACLE.get_sweep_kwargs()
        self.assertEqual(set(kwargs), {"area_samples", "gap_samples", "metric", "max_workers"})
        self.assertEqual(kwargs["metric"], "radial")
        self.assertGreaterEqual(kwargs["max_workers"], 1)


class TestArtifacts(unittest.TestCase):
    """CSV 与 JSON 写出"""

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_format17(self):
        self.assertEqual(format17(0.1), "0.10000000000000001")
        self.assertEqual(format17(np.float64(2.0)), "2")
        self.assertEqual(format17(3), "3")
        self.assertEqual(format17(True), "true")
        self.assertEqual(format17("01"), "01")
        self.assertEqual(float(format17(1 / 3)), 1 / 3)

    def test_write_csv(self):
        path = write_csv(self.temp_dir / "nested" / "t.csv", ("k", "x"), [(1, 0.5), (2, 0.25)])
        self.assertEqual(path.read_text(encoding="utf-8"), "k,x\n1,0.5\n2,0.25\n")

    def test_write_json(self):
        path = write_json(self.temp_dir / "t.json", {"b": np.float64(1.5), "a": [np.int64(2), float("inf")], "c": np.bool_(True)})
        text = path.read_text(encoding="utf-8")
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(json.loads(text), {"a": [2, None], "b": 1.5, "c": True})
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_ensure_output_dir(self):
        target = self.temp_dir / "x" / "y" / "file.txt"
        self.assertEqual(ensure_output_dir(target), target.parent)
        self.assertTrue(target.parent.is_dir())


if __name__ == '__main__':
    unittest.main()
