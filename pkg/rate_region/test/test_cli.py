"""
命令行前端测试

子命令产物、退出码与重复运行的逐字节一致性。
"""

import csv
import json
import unittest
import sys
import tempfile
import shutil
import xml.etree.ElementTree as ET
from pathlib import Path
from unittest import mock

import numpy as np

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

from rate_region.src.channel.loader import ChannelFileParser, write_channel_file
from rate_region.src.channel.model import ChannelInstance, TwoUserParams, symmetric_channel
from rate_region.src.cli import EXIT_DOMAIN_ERROR, EXIT_INPUT_ERROR, EXIT_OK, RunConfig, main, run
from rate_region.src.commands import get_command, list_available_commands
from rate_region.src.commands.svg import render_region_svg
from rate_region.src.crystallize.hull import hull
from rate_region.src.errors import InvalidArgument, WrongDimension
from rate_region.src.frontier2.frontier import FrontierId, sample_frontier

SVG_NS = "{http://www.w3.org/2000/svg}"


def read_csv(path: Path):
    with open(path, encoding="utf-8", newline="") as handle:
        return list(csv.reader(handle))


class CliTestCase(unittest.TestCase):
    """公共夹具：临时目录与几个信道文件"""

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())
        self.out = self.temp_dir / "out"
        self.case_ii = self.channel("case_ii.json", [[10, 1], [4, 10]])
        self.strong = self.channel("strong.json", [[1, 3], [3, 1]])
        self.rectangle = self.channel("rectangle.json", [[1, 0], [0, 1]])

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def channel(self, filename: str, gains) -> str:
        ch = ChannelInstance(np.array(gains, dtype=float), 1.0, 1.0)
        return str(write_channel_file(ch, str(self.temp_dir / filename)))

    def cli(self, *args: str) -> int:
        return main([*args, "--out", str(self.out), "--log-level", "WARNING"])


class TestCommandRegistry(unittest.TestCase):
    """子命令注册表"""

    def test_all_commands_registered(self):
        self.assertEqual(
            set(list_available_commands()),
            {"rates", "frontier", "classify", "crystallize", "decompose", "surface", "sweep", "verify", "write-channel"},
        )

    def test_unknown_command(self):
        with self.assertRaises(ValueError):
            get_command("plot", RunConfig(command="plot"))
        with self.assertRaises(SystemExit) as ctx:
            main(["plot"])
        self.assertEqual(ctx.exception.code, 2)


class TestChannelCommands(CliTestCase):
    """rates 与 write-channel"""

    def test_rates_default_full_power(self):
        self.assertEqual(self.cli("rates", "--input", self.case_ii), EXIT_OK)
        rows = read_csv(self.out / "rates.csv")
        self.assertEqual(rows[0], ["i", "p", "sinr", "r"])
        self.assertEqual([row[0] for row in rows[1:]], ["1", "2"])
        self.assertAlmostEqual(float(rows[1][2]), 5.0, places=12)
        self.assertAlmostEqual(float(rows[1][3]), np.log2(6), places=12)

    def test_rates_out_of_range_power(self):
        self.assertEqual(self.cli("rates", "--input", self.case_ii, "--powers", "2,0"), EXIT_DOMAIN_ERROR)
        self.assertFalse((self.out / "rates.csv").exists())

    def test_rates_wrong_length(self):
        self.assertEqual(self.cli("rates", "--input", self.case_ii, "--powers", "1,1,1"), EXIT_DOMAIN_ERROR)

    def test_missing_and_malformed_files(self):
        self.assertEqual(self.cli("rates", "--input", str(self.temp_dir / "absent.json")), EXIT_INPUT_ERROR)
        broken = self.temp_dir / "broken.json"
        broken.write_text('{"n": 2, "gains": [[1, 0]], "noise_var": 1, "p_max": 1}', encoding="utf-8")
        self.assertEqual(self.cli("classify", "--input", str(broken)), EXIT_INPUT_ERROR)
        self.assertEqual(self.cli("classify"), EXIT_INPUT_ERROR)

    def test_write_channel_round_trip(self):
        code = self.cli("write-channel", "--gains", "10,1;4,10", "--noise-var", "2", "--pmax", "3")
        self.assertEqual(code, EXIT_OK)
        ch = ChannelFileParser().parse_file(str(self.out / "channel.json"))
        np.testing.assert_array_equal(ch.gains, [[10.0, 1.0], [4.0, 10.0]])
        self.assertEqual((ch.noise_var, ch.p_max), (2.0, 3.0))

    def test_write_channel_db(self):
        self.assertEqual(self.cli("write-channel", "--gains", "10,0;0,10", "--units", "dB"), EXIT_OK)
        ch = ChannelFileParser().parse_file(str(self.out / "channel.json"))
        np.testing.assert_allclose(ch.gains, [[10.0, 1.0], [1.0, 10.0]], rtol=1e-12)

    def test_write_channel_bad_matrix(self):
        self.assertEqual(self.cli("write-channel", "--gains", "10,1;4"), EXIT_INPUT_ERROR)

    def test_write_channel_ignores_input(self):
        code = self.cli("write-channel", "--gains", "10,1;4,10", "--input", str(self.temp_dir / "absent.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue((self.out / "channel.json").exists())

    def test_channel_free_command_never_loads_channel(self):
        command = get_command("sweep", RunConfig(command="sweep", input_path=self.case_ii))
        self.assertFalse(command.requires_channel)
        with self.assertRaises(InvalidArgument):
            command.load_channel()
        self.assertTrue(get_command("rates", RunConfig(command="rates")).requires_channel)


class TestFrontierCommands(CliTestCase):
    """frontier 与 classify"""

    def test_frontier_csv(self):
        self.assertEqual(self.cli("frontier", "--input", self.case_ii, "--samples", "32"), EXIT_OK)
        rows = read_csv(self.out / "frontier.csv")
        self.assertEqual(rows[0], ["r1", "r2", "p1", "p2"])
        self.assertEqual(len(rows), 1 + 63)
        self.assertEqual(float(rows[1][0]), 0.0)
        self.assertAlmostEqual(float(rows[-1][0]), np.log2(11), places=12)

    def test_classify_inflection(self):
        self.assertEqual(self.cli("classify", "--input", self.case_ii), EXIT_OK)
        report = json.loads((self.out / "convexity.json").read_text(encoding="utf-8"))
        self.assertEqual(report["class_phi2"], "Inflection")
        self.assertEqual(report["class_phi1"], "Concave")
        self.assertAlmostEqual(report["q1"], 0.15707, delta=1e-5)
        self.assertIsNotNone(report["inflection_d"])

    def test_classify_requires_two_users(self):
        path = str(write_channel_file(symmetric_channel(3, 1.0, 0.5, 1.0), str(self.temp_dir / "three.json")))
        self.assertEqual(self.cli("classify", "--input", path), EXIT_DOMAIN_ERROR)

    def test_svg_marks_inflection_point(self):
        self.assertEqual(self.cli("classify", "--input", self.case_ii, "--format", "svg"), EXIT_OK)
        svg = (self.out / "region.svg").read_text(encoding="utf-8")
        self.assertIn(">D</text>", svg)
        for label in "ABC":
            self.assertIn(f">{label}</text>", svg)
        root = ET.fromstring(svg)
        ids = {element.get("id") for element in root.iter(f"{SVG_NS}polyline")}
        self.assertEqual(ids, {"phi1", "phi2", "frontier", "crystallized"})

    def test_svg_tick_labels_follow_tick_lines(self):
        self.assertEqual(self.cli("classify", "--input", self.case_ii, "--format", "svg"), EXIT_OK)
        root = ET.fromstring((self.out / "region.svg").read_text(encoding="utf-8"))
        ticks = next(g for g in root.iter(f"{SVG_NS}g") if g.get("id") == "ticks")
        lines = list(ticks.iter(f"{SVG_NS}line"))
        texts = list(ticks.iter(f"{SVG_NS}text"))
        self.assertEqual(len(lines), len(texts))
        y_pairs = [(line, text) for line, text in zip(lines, texts) if text.get("text-anchor") == "end"]
        self.assertEqual(len(y_pairs), 5)
        for line, text in y_pairs:
            self.assertAlmostEqual(float(text.get("y")), float(line.get("y1")) + 4.0, places=3)
        for line, text in zip(lines, texts):
            if text.get("text-anchor") == "middle":
                self.assertEqual(float(text.get("x")), float(line.get("x1")))

    def test_render_region_svg_two_users_only(self):
        params = TwoUserParams(10.0, 1.0, 10.0, 4.0, 1.0)
        trace = sample_frontier(params, FrontierId.COMBINED)
        with self.assertRaises(WrongDimension):
            render_region_svg(params, trace, hull(symmetric_channel(3, 1.0, 0.5, 1.0)))
        svg = render_region_svg(params, trace, hull(params.to_channel()), samples=32)
        self.assertNotIn(">D</text>", svg)
        ET.fromstring(svg)

    def crystallized_points(self, channel_path: str):
        self.assertEqual(self.cli("frontier", "--input", channel_path, "--format", "svg"), EXIT_OK)
        root = ET.fromstring((self.out / "region.svg").read_text(encoding="utf-8"))
        for element in root.iter(f"{SVG_NS}polyline"):
            if element.get("id") == "crystallized":
                return [tuple(float(v) for v in pair.split(",")) for pair in element.get("points").split()]
        self.fail("缺少 crystallized 折线")

    def test_svg_rectangle_outline(self):
        points = self.crystallized_points(self.rectangle)
        self.assertEqual(len(points), 5)
        self.assertEqual(points[0], points[-1])
        for start, end in zip(points, points[1:]):
            self.assertTrue(start[0] == end[0] or start[1] == end[1])

    def test_svg_strong_interference_chord(self):
        points = self.crystallized_points(self.strong)
        self.assertEqual(len(points), 4)
        self.assertNotIn(">D</text>", (self.out / "region.svg").read_text(encoding="utf-8"))


class TestCrystalCommands(CliTestCase):
    """crystallize 与 decompose"""

    def test_crystallize_two_user(self):
        self.assertEqual(self.cli("crystallize", "--input", self.strong), EXIT_OK)
        hull_data = json.loads((self.out / "hull.json").read_text(encoding="utf-8"))
        self.assertEqual(hull_data["dominated"], [3])
        rows = read_csv(self.out / "corners.csv")
        self.assertEqual(rows[0], ["k", "mask", "r1", "r2"])
        self.assertEqual([row[1] for row in rows[1:]], ["10", "01", "11"])

    def test_crystallize_three_user_svg_skipped(self):
        path = str(write_channel_file(symmetric_channel(3, 1.0, 0.5, 1.0), str(self.temp_dir / "three.json")))
        self.assertEqual(self.cli("crystallize", "--input", path, "--format", "svg"), EXIT_OK)
        self.assertTrue((self.out / "hull.json").exists())
        self.assertFalse((self.out / "region.svg").exists())

    def test_decompose(self):
        self.assertEqual(self.cli("decompose", "--input", self.strong, "--target", "0.5,0.5"), EXIT_OK)
        rows = read_csv(self.out / "theta.csv")
        self.assertEqual(rows[0], ["k", "mask", "theta"])
        theta = [float(row[2]) for row in rows[1:]]
        np.testing.assert_allclose(theta, [0.5, 0.5, 0.0], atol=1e-12)

    def test_decompose_outside_hull(self):
        self.assertEqual(self.cli("decompose", "--input", self.strong, "--target", "0.6,0.6"), EXIT_DOMAIN_ERROR)
        self.assertFalse((self.out / "theta.csv").exists())


class TestSurfaceCommand(CliTestCase):
    """surface"""

    def test_three_user_symmetric(self):
        path = str(write_channel_file(symmetric_channel(3, 1.0, 3.0, 1.0), str(self.temp_dir / "three.json")))
        self.assertEqual(self.cli("surface", "--input", path, "--grid", "5"), EXIT_OK)
        rows = read_csv(self.out / "surface.csv")
        self.assertEqual(rows[0], ["p1", "p2", "p3", "r1", "r2", "r3"])
        self.assertEqual(len(rows), 1 + 25)
        self.assertTrue(all(row[2] == "1" or float(row[2]) == 1.0 for row in rows[1:]))
        geometry = json.loads((self.out / "geometry.json").read_text(encoding="utf-8"))
        self.assertEqual(geometry["n"], 3)
        self.assertGreater(geometry["obprime"], geometry["ob"])

    def test_surface_index_out_of_range(self):
        self.assertEqual(self.cli("surface", "--input", self.case_ii, "--surface", "3"), EXIT_DOMAIN_ERROR)


class TestOracleCommands(CliTestCase):
    """sweep 与 verify"""

    def test_sweep_negative_range(self):
        code = self.cli("sweep", "--a", "1", "--pmax", "1", "--b-db", "-20:0:0.5")
        self.assertEqual(code, EXIT_OK)
        rows = read_csv(self.out / "gap_report.csv")
        self.assertEqual(rows[0], ["b_db", "area_pc", "area_crystal", "max_gap_pct", "gap_argmax_r1"])
        self.assertEqual(len(rows), 1 + 41)
        self.assertLessEqual(max(float(row[3]) for row in rows[1:]), 1.5)

    def test_sweep_bad_range(self):
        self.assertEqual(self.cli("sweep", "--a", "1", "--b-db", "0:-20:0.5"), EXIT_INPUT_ERROR)

    def test_sweep_without_range(self):
        code = run(RunConfig(command="sweep", a=1.0, output_dir=str(self.out), log_level="ERROR"))
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertFalse((self.out / "gap_report.csv").exists())

    def test_verify_passes(self):
        self.assertEqual(self.cli("verify", "--input", self.case_ii, "--grid", "101"), EXIT_OK)
        result = json.loads((self.out / "verify.json").read_text(encoding="utf-8"))
        self.assertTrue(result["passed"])
        self.assertEqual(result["failures"], [])

    def test_verify_failure_exit_code(self):
        code = run(RunConfig(command="verify", input_path=self.case_ii, output_dir=str(self.out),
                             grid=101, tol=-1.0, log_level="ERROR"))
        self.assertEqual(code, EXIT_DOMAIN_ERROR)
        result = json.loads((self.out / "verify.json").read_text(encoding="utf-8"))
        self.assertFalse(result["passed"])


class TestExitCodes(CliTestCase):
    """异常到退出码的映射"""

    def test_bad_argument_is_input_error(self):
        code = self.cli("decompose", "--input", self.strong, "--target", "0.5,half")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertFalse((self.out / "theta.csv").exists())

    def test_foreign_value_error_propagates(self):
        command = mock.MagicMock()
        command.name.return_value = "rates"
        command.description.return_value = ""
        command.execute.side_effect = ValueError("math domain error")
        config = RunConfig(command="rates", input_path=self.case_ii, output_dir=str(self.out), log_level="ERROR")
        with mock.patch("rate_region.src.cli.get_command", return_value=command):
            with self.assertRaises(ValueError) as ctx:
                run(config)
        self.assertNotIsInstance(ctx.exception, InvalidArgument)


class TestDeterminism(CliTestCase):
    """重复运行产物逐字节一致"""

    def test_repeat_runs_identical(self):
        channels = [self.channel(f"case_{i}.json", gains) for i, gains in enumerate(
            ([[10, 1], [1, 10]], [[10, 1], [4, 10]], [[10, 1], [6, 10]], [[10, 15], [4, 10]]))]
        for path in channels:
            outputs = []
            for attempt in range(2):
                target = self.temp_dir / f"run{attempt}"
                for command in ("classify", "frontier", "crystallize"):
                    code = main([command, "--input", path, "--out", str(target), "--format", "svg",
                                 "--log-level", "WARNING"])
                    self.assertEqual(code, EXIT_OK)
                outputs.append({name: (target / name).read_bytes()
                                for name in ("convexity.json", "frontier.csv", "hull.json", "corners.csv", "region.svg")})
            self.assertEqual(outputs[0], outputs[1])


if __name__ == '__main__':
    unittest.main()
