"""
基于 hypothesis 的性质测试

增益在 ±20 dB 内取值，P_max 取自 {0.1, 1, 10}。
"""

import unittest
import sys
from pathlib import Path

import numpy as np
from hypothesis import given, settings, example
from hypothesis import strategies as st

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

from rate_region.src.channel.model import TwoUserParams, rate_vector, symmetric_channel
from rate_region.src.crystallize import decompose, max_scale, theta_rates
from rate_region.src.frontier2.convexity import classify, inflection_thresholds, tdm_chord_gap
from rate_region.src.frontier2.frontier import frontier_curve, phi1, phi2, rate_to_power
from rate_region.src.nregion import Membership, membership_2user

gain_db = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False, allow_infinity=False)
p_max = st.sampled_from([0.1, 1.0, 10.0])
unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)

two_user_params = st.builds(
    lambda a, b, c, d, p: TwoUserParams(10 ** (a / 10), 10 ** (b / 10), 10 ** (c / 10), 10 ** (d / 10), p),
    gain_db, gain_db, gain_db, gain_db, p_max,
)


class TestFrontierProperties(unittest.TestCase):
    """两用户前沿的性质"""

    @settings(max_examples=300, deadline=None)
    @given(two_user_params, unit, unit)
    @example(TwoUserParams(10, 1, 10, 1, 1), 1.0, 1.0)
    def test_round_trip(self, params, u1, u2):
        powers = np.array([u1, u2]) * params.p_max
        r1, r2 = rate_vector(params.to_channel(), powers)
        recovered = rate_to_power(params, r1, r2)
        np.testing.assert_allclose(recovered, powers, rtol=0, atol=1e-9 * max(1.0, params.p_max))

    @settings(max_examples=300, deadline=None)
    @given(two_user_params)
    def test_continuity_at_junction(self, params):
        junction = params.r1_junction
        self.assertLessEqual(abs(phi1(params, junction) - phi2(params, junction)), 1e-9)

    @settings(max_examples=200, deadline=None)
    @given(two_user_params, unit)
    def test_frontier_points_are_in_region(self, params, u):
        r1 = u * params.r1_max
        r2 = float(frontier_curve(params, [r1])[0])
        self.assertEqual(membership_2user(params, [r1, r2], samples=64), Membership.INSIDE_POWER_CONTROL)

    @settings(max_examples=300, deadline=None)
    @given(two_user_params)
    def test_swap_exchanges_classes(self, params):
        report = classify(params)
        mirrored = classify(params.swapped())
        self.assertEqual(report.class_phi2.kind, mirrored.class_phi1.kind)
        self.assertEqual(report.class_phi1.kind, mirrored.class_phi2.kind)
        if abs(tdm_chord_gap(params)) > 1e-9:
            self.assertEqual(report.tdm_optimal, mirrored.tdm_optimal)

    @settings(max_examples=300, deadline=None)
    @given(gain_db, gain_db, p_max)
    def test_symmetric_thresholds_coincide(self, a_db, b_db, p):
        a, b = 10 ** (a_db / 10), 10 ** (b_db / 10)
        q1, q2 = inflection_thresholds(TwoUserParams(a, b, a, b, p))
        self.assertLessEqual(abs(q1 - q2), 1e-12 * max(1.0, abs(q1)))


class TestCrystallizeProperties(unittest.TestCase):
    """晶体化区域的性质"""

    @settings(max_examples=100, deadline=None)
    @given(gain_db, gain_db, p_max,
           st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=3, max_size=3),
           st.floats(min_value=0.1, max_value=1.0))
    def test_scaled_boundary_points_decompose(self, a_db, b_db, p, direction, fraction):
        ch = symmetric_channel(3, 10 ** (a_db / 10), 10 ** (b_db / 10), p)
        direction = np.asarray(direction)
        scale, _ = max_scale(ch, direction)
        target = fraction * scale * direction
        theta = decompose(ch, target)
        self.assertLessEqual(int(np.count_nonzero(theta)), 3)
        self.assertAlmostEqual(float(theta.sum()), 1.0, places=12)
        self.assertTrue(np.all(theta_rates(ch, theta) >= target - 1e-9))


if __name__ == '__main__':
    unittest.main()
