"""
信道模块

提供信道实例、两用户归一化参数、速率公式以及信道文件的读写。
"""

from .model import (
    ChannelInstance,
    TwoUserParams,
    PowerVector,
    RatePoint,
    log2_1p,
    exp2_m1,
    rate_vector,
    rate_matrix,
    sinr,
    sinr_matrix,
    normalize_two_user,
    symmetric_channel,
)
from .loader import ChannelFileParser, dump_channel, write_channel_file, db_to_linear, linear_to_db

__all__ = [
    "ChannelInstance",
    "TwoUserParams",
    "PowerVector",
    "RatePoint",
    "log2_1p",
    "exp2_m1",
    "rate_vector",
    "rate_matrix",
    "sinr",
    "sinr_matrix",
    "normalize_two_user",
    "symmetric_channel",
    "ChannelFileParser",
    "dump_channel",
    "write_channel_file",
    "db_to_linear",
    "linear_to_db",
]
