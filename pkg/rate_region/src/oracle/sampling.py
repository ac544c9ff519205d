"""
随机信道分布

增益在 ±20 dB 内对数均匀，P_max 取自 {0.1, 1, 10}，噪声方差固定为 1。
所有函数接受 numpy.random.Generator，由调用方负责播种。
"""

import numpy as np

from rate_region.src.channel.model import ChannelInstance, TwoUserParams
from rate_region.src.config import ORACLE


def _log_uniform_gains(rng: np.random.Generator, size) -> np.ndarray:
    span = ORACLE.RANDOM_DB_SPAN
    return 10.0 ** (rng.uniform(-span, span, size=size) / 10.0)


def _power(rng: np.random.Generator) -> float:
    return float(rng.choice(ORACLE.RANDOM_POWER_LADDER))


def random_two_user_params(rng: np.random.Generator) -> TwoUserParams:
    a, b, c, d = _log_uniform_gains(rng, 4)
    return TwoUserParams(float(a), float(b), float(c), float(d), _power(rng))


def random_symmetric_params(rng: np.random.Generator) -> TwoUserParams:
    a, b = _log_uniform_gains(rng, 2)
    return TwoUserParams(float(a), float(b), float(a), float(b), _power(rng))


def random_channel(rng: np.random.Generator, n: int) -> ChannelInstance:
    """n 用户随机信道"""
    return ChannelInstance(_log_uniform_gains(rng, (n, n)), 1.0, _power(rng))
