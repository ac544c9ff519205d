"""
n 用户区域测试

超曲面采样、两用户成员判定与对称信道几何。
"""

import unittest
import sys
from pathlib import Path

import numpy as np

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

from rate_region.src.channel.model import TwoUserParams, rate_matrix, symmetric_channel
from rate_region.src.errors import CapExceeded, DimensionMismatch, RegionError, WrongDimension
from rate_region.src.frontier2.frontier import frontier_curve, phi1
from rate_region.src.nregion import (
    Membership,
    asymptotic_threshold,
    membership_2user,
    ob_lengths,
    sample_surface,
    surface_contours,
    symmetric_geometry,
    tdm_threshold_n,
)

STRONG = TwoUserParams(1, 3, 1, 3, 1)
CASE_II = TwoUserParams(10, 1, 10, 4, 1)


class TestSurface(unittest.TestCase):
    """超曲面采样"""

    def test_two_user_surface_is_phi1(self):
        params = TwoUserParams(10, 1, 10, 1, 1)
        surface = sample_surface(params.to_channel(), 0, 101)
        self.assertEqual(len(surface), 101)
        np.testing.assert_array_equal(surface.powers[:, 0], 1.0)
        top = int(np.argmax(surface.rates[:, 1]))
        self.assertAlmostEqual(surface.rates[top, 1], phi1(params, params.r1_junction), places=12)
        np.testing.assert_allclose(surface.rates[:, 1], phi1(params, surface.rates[:, 0]), rtol=1e-9, atol=1e-12)

    def test_three_user_grid(self):
        ch = symmetric_channel(3, 1.0, 0.5, 1.0)
        surface = sample_surface(ch, 2, 11)
        self.assertEqual(surface.powers.shape, (121, 3))
        np.testing.assert_array_equal(surface.powers[:, 2], 1.0)
        np.testing.assert_allclose(surface.rates, rate_matrix(ch, surface.powers), rtol=1e-15)

    def test_projection_below_two_user_frontier(self):
        ch = symmetric_channel(3, 1.0, 0.5, 1.0)
        pair = TwoUserParams(1.0, 0.5, 1.0, 0.5, 1.0)
        surface = sample_surface(ch, 2, 41)
        r1, r2 = surface.rates[:, 0], surface.rates[:, 1]
        self.assertTrue(np.all(r2 <= frontier_curve(pair, r1) + 1e-9))

    def test_errors(self):
        ch = symmetric_channel(3, 1.0, 0.5, 1.0)
        with self.assertRaises(DimensionMismatch):
            sample_surface(ch, 3, 11)
        with self.assertRaises(ValueError):
            sample_surface(ch, 0, 1)
        with self.assertRaises(CapExceeded):
            sample_surface(symmetric_channel(5, 1.0, 0.5, 1.0), 0, 100)

    def test_contours(self):
        ch = symmetric_channel(3, 1.0, 0.5, 1.0)
        contours = surface_contours(ch, 2, 21)
        self.assertEqual(len(contours), 4)
        for contour in contours:
            self.assertEqual(contour.shape, (21, 3))
        # 两个自由功率都为 0 时只有用户 3 发射
        np.testing.assert_allclose(contours[0][0], [0.0, 0.0, 1.0], atol=1e-15)
        with self.assertRaises(WrongDimension):
            surface_contours(symmetric_channel(4, 1.0, 0.5, 1.0), 0, 11)


class TestMembership(unittest.TestCase):
    """两用户成员判定"""

    def test_strong_interference(self):
        self.assertEqual(membership_2user(STRONG, [0.1, 0.1]), Membership.INSIDE_POWER_CONTROL)
        self.assertEqual(membership_2user(STRONG, [0.5, 0.5]), Membership.INSIDE_CONVEX_HULL_ONLY)
        self.assertEqual(membership_2user(STRONG, [0.6, 0.6]), Membership.OUTSIDE)
        self.assertEqual(membership_2user(STRONG, [1.5, 0.0]), Membership.OUTSIDE)

    def test_frontier_points_inside(self):
        r1 = np.linspace(0.0, CASE_II.r1_max, 17)
        for x, y in zip(r1, frontier_curve(CASE_II, r1)):
            self.assertEqual(membership_2user(CASE_II, [x, y]), Membership.INSIDE_POWER_CONTROL)

    def test_values(self):
        self.assertEqual(Membership.INSIDE_POWER_CONTROL.value, "InsidePowerControl")
        self.assertEqual(Membership.OUTSIDE.value, "Outside")

    def test_errors(self):
        with self.assertRaises(DimensionMismatch):
            membership_2user(STRONG, [0.1, 0.1, 0.1])
        with self.assertRaises(RegionError):
            membership_2user(STRONG, [-0.1, 0.1])


class TestSymmetricGeometry(unittest.TestCase):
    """对称几何与 n 用户阈值"""

    def test_ob_lengths(self):
        ob, obprime = ob_lengths(1, 3, 1, 2)
        self.assertAlmostEqual(ob, np.sqrt(2) * np.log2(1.25), places=14)
        self.assertAlmostEqual(ob, 0.45528, places=5)
        self.assertAlmostEqual(obprime, 0.70711, places=5)

    def test_threshold_values(self):
        self.assertAlmostEqual(tdm_threshold_n(1, 1, 2), np.sqrt(2), delta=1e-12)
        self.assertAlmostEqual(tdm_threshold_n(1, 1, 3), 1.423661, delta=1e-6)
        self.assertAlmostEqual(tdm_threshold_n(1, 1, 10 ** 6), 1 / np.log(2), delta=1e-3)

    def test_asymptotic_threshold(self):
        self.assertAlmostEqual(asymptotic_threshold(1, 1), 1.44270, places=5)
        self.assertAlmostEqual(asymptotic_threshold(3, 1), 2.16404, places=5)
        self.assertAlmostEqual(asymptotic_threshold(1e-6, 1), 1.0, delta=1e-5)

    def test_threshold_increases_with_n(self):
        rng = np.random.default_rng(53)
        for _ in range(200):
            a = float(10 ** rng.uniform(-2, 2))
            p_max = float(rng.choice([0.1, 1.0, 10.0]))
            values = [tdm_threshold_n(a, p_max, n) for n in range(2, 11)]
            limit = asymptotic_threshold(a, p_max)
            for lower, upper in zip(values, values[1:]):
                self.assertGreaterEqual(upper, lower * (1 - 1e-12))
            self.assertLessEqual(values[-1], limit * (1 + 1e-9))

    def test_geometry_matches_threshold(self):
        rng = np.random.default_rng(59)
        checked = 0
        for _ in range(1000):
            a = float(10 ** rng.uniform(-2, 2))
            b = float(10 ** rng.uniform(-2, 2))
            p_max = float(rng.choice([0.1, 1.0, 10.0]))
            n = int(rng.integers(2, 11))
            b_star = tdm_threshold_n(a, p_max, n)
            if abs(b - b_star) <= 1e-9 * max(1.0, b_star):
                continue
            ob, obprime = ob_lengths(a, b, p_max, n)
            self.assertEqual(np.sign(obprime - ob), np.sign(b - b_star))
            checked += 1
        self.assertGreater(checked, 900)

    def test_two_user_threshold_matches_symmetric_rule(self):
        for a, p_max in ((1.0, 1.0), (3.0, 1.0), (10.0, 0.1), (0.5, 10.0)):
            self.assertAlmostEqual(tdm_threshold_n(a, p_max, 2), np.sqrt(1 + a * p_max) / p_max, delta=1e-12 * max(1.0, a))

    def test_record(self):
        record = symmetric_geometry(1, 3, 1, 2).to_dict()
        self.assertEqual(list(record), ["n", "a", "b", "p_max", "ob", "obprime", "b_star_n", "b_star_inf"])
        self.assertAlmostEqual(record["b_star_n"], np.sqrt(2), delta=1e-12)

    def test_invalid(self):
        with self.assertRaises(RegionError):
            tdm_threshold_n(1, 1, 1)
        with self.assertRaises(RegionError):
            ob_lengths(0, 1, 1, 2)
        with self.assertRaises(RegionError):
            ob_lengths(1, -1, 1, 2)


if __name__ == '__main__':
    unittest.main()
