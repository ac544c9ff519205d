"""
信道模型测试

速率公式、SINR、两用户归一化与信道实例的校验。
"""

import unittest
import sys
from pathlib import Path

import numpy as np

# 添加项目根目录到路径
current_file = Path(__file__).resolve()
sys.path.insert(0, str(current_file.parent.parent.parent))

from rate_region.src.channel.model import (
    ChannelInstance,
    TwoUserParams,
    normalize_two_user,
    rate_matrix,
    rate_vector,
    sinr,
    symmetric_channel,
)
from rate_region.src.errors import (
    DegenerateChannel,
    DimensionMismatch,
    PowerOutOfRange,
    RegionError,
    WrongDimension,
)
from rate_region.src.oracle.sampling import random_channel


class TestRateVector(unittest.TestCase):
    """速率公式"""

    def setUp(self):
        self.ch = ChannelInstance(np.array([[10.0, 1.0], [1.0, 10.0]]), 1.0, 1.0)

    def test_full_power(self):
        r = rate_vector(self.ch, [1, 1])
        np.testing.assert_allclose(r, [np.log2(6), np.log2(6)], rtol=1e-12)
        self.assertAlmostEqual(r[0], 2.5850, places=4)

    def test_zero_power(self):
        np.testing.assert_array_equal(rate_vector(self.ch, [0, 0]), [0.0, 0.0])

    def test_single_user_active(self):
        r = rate_vector(self.ch, [1, 0])
        self.assertAlmostEqual(r[0], np.log2(11), places=12)
        self.assertAlmostEqual(r[0], 3.4594, places=4)
        self.assertEqual(r[1], 0.0)

    def test_wrong_length(self):
        with self.assertRaises(DimensionMismatch):
            rate_vector(self.ch, [1, 1, 1])

    def test_power_out_of_range(self):
        with self.assertRaises(PowerOutOfRange):
            rate_vector(self.ch, [1.5, 0])
        with self.assertRaises(PowerOutOfRange):
            rate_vector(self.ch, [-0.1, 0])

    def test_batch_matches_single(self):
        powers = np.array([[0.0, 0.0], [0.3, 0.7], [1.0, 1.0]])
        batch = rate_matrix(self.ch, powers)
        for row, p in zip(batch, powers):
            np.testing.assert_allclose(row, rate_vector(self.ch, p), rtol=1e-14, atol=0)


class TestSinr(unittest.TestCase):
    """SINR（用户下标从 0 开始）"""

    def setUp(self):
        self.ch = ChannelInstance(np.array([[10.0, 1.0], [1.0, 10.0]]), 1.0, 1.0)

    def test_examples(self):
        self.assertAlmostEqual(sinr(self.ch, [1, 1], 0), 5.0, places=12)
        self.assertAlmostEqual(sinr(self.ch, [1, 0], 0), 10.0, places=12)
        self.assertEqual(sinr(self.ch, [0, 1], 0), 0.0)

    def test_consistent_with_rate(self):
        p = [0.4, 0.9]
        for i in range(2):
            self.assertAlmostEqual(rate_vector(self.ch, p)[i], np.log2(1 + sinr(self.ch, p, i)), places=12)

    def test_bad_index(self):
        with self.assertRaises(DimensionMismatch):
            sinr(self.ch, [1, 1], 2)


class TestNormalizeTwoUser(unittest.TestCase):
    """两用户归一化：d 取自增益矩阵第二行第一列"""

    def test_identity_noise(self):
        ch = ChannelInstance(np.array([[10.0, 1.0], [4.0, 10.0]]), 1.0, 1.0)
        params = normalize_two_user(ch)
        self.assertEqual((params.a, params.b, params.c, params.d), (10.0, 1.0, 10.0, 4.0))
        self.assertEqual(params.p_max, 1.0)

    def test_noise_scaling(self):
        ch = ChannelInstance(np.array([[20.0, 2.0], [8.0, 20.0]]), 2.0, 1.0)
        params = normalize_two_user(ch)
        self.assertEqual((params.a, params.b, params.c, params.d), (10.0, 1.0, 10.0, 4.0))

    def test_degenerate_rejected(self):
        ch = ChannelInstance(np.array([[0.0, 1.0], [1.0, 10.0]]), 1.0, 1.0, degenerate=True)
        with self.assertRaises(DegenerateChannel):
            normalize_two_user(ch)

    def test_wrong_dimension(self):
        with self.assertRaises(WrongDimension):
            normalize_two_user(symmetric_channel(3, 1.0, 0.5, 1.0))

    def test_params_reproduce_rates(self):
        ch = ChannelInstance(np.array([[3.0, 0.6], [1.8, 2.4]]), 0.3, 2.0)
        equivalent = normalize_two_user(ch).to_channel()
        for p in ([0, 0], [2, 0], [0.5, 1.7], [2, 2]):
            np.testing.assert_allclose(rate_vector(ch, p), rate_vector(equivalent, p), rtol=1e-12)

    def test_swapped(self):
        params = TwoUserParams(10, 1, 8, 4, 1)
        swapped = params.swapped()
        self.assertEqual((swapped.a, swapped.b, swapped.c, swapped.d), (8.0, 4.0, 10.0, 1.0))
        self.assertAlmostEqual(swapped.r1_max, params.r2_max, places=15)


class TestChannelInstance(unittest.TestCase):
    """信道实例的构造校验"""

    def test_non_square(self):
        with self.assertRaises(DimensionMismatch):
            ChannelInstance(np.ones((2, 3)), 1.0, 1.0)

    def test_zero_diagonal_needs_flag(self):
        with self.assertRaises(DegenerateChannel):
            ChannelInstance(np.array([[0.0, 1.0], [1.0, 1.0]]), 1.0, 1.0)
        ch = ChannelInstance(np.array([[0.0, 1.0], [1.0, 1.0]]), 1.0, 1.0, degenerate=True)
        self.assertTrue(ch.degenerate)

    def test_invalid_scalars(self):
        with self.assertRaises(RegionError):
            ChannelInstance(np.eye(2), 0.0, 1.0)
        with self.assertRaises(RegionError):
            ChannelInstance(np.eye(2), 1.0, -1.0)
        with self.assertRaises(RegionError):
            ChannelInstance(np.array([[1.0, -0.1], [0.0, 1.0]]), 1.0, 1.0)

    def test_gains_are_read_only(self):
        source = np.array([[1.0, 0.5], [0.5, 1.0]])
        ch = ChannelInstance(source, 1.0, 1.0)
        source[0, 0] = 99.0
        self.assertEqual(ch.gains[0, 0], 1.0)
        with self.assertRaises(ValueError):
            ch.gains[0, 0] = 2.0

    def test_equality(self):
        first = symmetric_channel(3, 1.0, 0.2, 1.0)
        second = symmetric_channel(3, 1.0, 0.2, 1.0)
        self.assertEqual(first, second)
        self.assertNotEqual(first, symmetric_channel(3, 1.0, 0.3, 1.0))
        self.assertTrue(first.is_symmetric())


class TestRateInvariants(unittest.TestCase):
    """速率单调性、尺度不变性与非负有限性（播种的随机信道）"""

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_monotone_in_own_and_other_power(self):
        for _ in range(200):
            ch = random_channel(self.rng, int(self.rng.integers(2, 5)))
            p = self.rng.uniform(0.1, 0.9, ch.n) * ch.p_max
            base = rate_vector(ch, p)
            for i in range(ch.n):
                bumped = p.copy()
                bumped[i] += 0.05 * ch.p_max
                lifted = rate_vector(ch, bumped)
                self.assertGreater(lifted[i], base[i])
                others = np.arange(ch.n) != i
                self.assertTrue(np.all(lifted[others] <= base[others]))

    def test_scale_invariance(self):
        for _ in range(200):
            ch = random_channel(self.rng, 3)
            k = float(10 ** self.rng.uniform(-3, 3))
            scaled = ChannelInstance(ch.gains * k, ch.noise_var * k, ch.p_max)
            p = self.rng.uniform(0, 1, 3) * ch.p_max
            np.testing.assert_allclose(rate_vector(scaled, p), rate_vector(ch, p), rtol=1e-12, atol=1e-15)

    def test_nonnegative_and_finite(self):
        for _ in range(200):
            ch = random_channel(self.rng, 4)
            r = rate_vector(ch, self.rng.uniform(0, 1, 4) * ch.p_max)
            self.assertTrue(np.all(np.isfinite(r)))
            self.assertTrue(np.all(r >= 0))


if __name__ == '__main__':
    unittest.main()
