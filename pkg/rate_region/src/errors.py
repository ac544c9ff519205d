"""
异常定义

所有领域错误都继承自 RegionError（ValueError 的子类）。
命令行层把 ChannelFileError 与 InvalidArgument 映射为退出码 2，其余 RegionError 映射为退出码 1；
其它异常不做转换。
"""

from typing import Optional


class RegionError(ValueError):
    """速率域分析的基础异常"""


class DimensionMismatch(RegionError):
    """向量长度与用户数 n 不一致"""


class PowerOutOfRange(RegionError):
    """发射功率超出 [0, P_max]"""


class WrongDimension(RegionError):
    """操作只对特定用户数有效"""


class DegenerateChannel(RegionError):
    """直连增益为零，信道退化"""


class OutOfDomain(RegionError):
    """速率参数落在前沿的定义区间之外"""


class NoInterference(RegionError):
    """交叉增益为零，相应前沿或阈值无定义"""


class Infeasible(RegionError):
    """速率对不在功率控制区域内，无法反解功率"""


class SimplexViolation(RegionError):
    """时分系数不在单纯形上"""


class CapExceeded(RegionError):
    """超出枚举或网格规模上限"""


class OutsideHull(RegionError):
    """目标速率点在晶体化凸包之外"""


class ZeroDirection(RegionError):
    """方向向量全为零"""


class ChannelFileError(RegionError):
    """信道文件格式错误，携带出错字段和行号"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"第 {line} 行")
        if field is not None:
            location.append(f"字段 '{field}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")
        self.field = field
        self.line = line


class VerificationFailed(RegionError):
    """闭式前沿未通过网格预言机验证"""


class InvalidArgument(RegionError):
    """调用参数不合法（采样数、模式名、区间字符串等）"""
