"""
配置管理模块

统一管理速率域分析工具的数值容差、采样默认值与输出路径。
支持从可选的 .env 文件加载环境配置；未配置时全部使用内置默认值。
"""

from pathlib import Path
from typing import Dict, Any
import os
import dotenv


# 加载环境配置
def load_env_config():
    """加载环境配置文件"""
    env_file = Path(__file__).parent.parent / '.env'
    if env_file.exists():
        dotenv.load_dotenv(env_file)

load_env_config()

# 项目根目录（rate_region/ 的上一级）
REPO_ROOT = Path(__file__).resolve().parent.parent.parent


def resolve_env_path(env_name: str, default: str) -> Path:
    """环境变量给出的路径：相对路径按仓库根解析，绝对路径原样返回"""
    value = os.getenv(env_name, default).strip()
    path = Path(value).expanduser()
    if path.is_absolute():
        return path
    return (REPO_ROOT / path).resolve()


def _env_int(env_name: str, default: int) -> int:
    """读取整数环境变量，非法值回退到默认值"""
    try:
        return int(os.getenv(env_name, str(default)))
    except ValueError:
        return default


class ChannelConfig:
    """信道模型相关配置"""
    # 功率盒约束的相对容差（吸收逆运算的舍入误差）
    POWER_BOX_TOLERANCE = 1e-12
    # 功率增益 dB -> 线性: 10^(dB/10)
    DB_BASE = 10.0
    SUPPORTED_UNITS = ("linear", "dB")


class FrontierConfig:
    """两用户功率控制前沿配置"""
    DEFAULT_SAMPLES = 512          # 每个区间的均匀采样数
    DOMAIN_TOLERANCE = 1e-12       # r1 定义域边界容差
    CLASSIFICATION_TOLERANCE = 1e-9  # 乘以 max(1, P_max)
    ROUND_TRIP_TOLERANCE = 1e-9

    @classmethod
    def classification_band(cls, p_max: float) -> float:
        """q 阈值比较所用的绝对容差"""
        return cls.CLASSIFICATION_TOLERANCE * max(1.0, p_max)


class CrystalConfig:
    """晶体化（角点时分）区域配置"""
    MAX_USERS = 16                 # 角点枚举上限 2^16-1
    EXACT_MAX_USERS = 5            # 子集枚举精确模式上限
    BOUNDARY_TOLERANCE = 1e-9
    SIMPLEX_TOLERANCE = 1e-9
    NEGATIVE_THETA_TOLERANCE = 1e-12
    SUPPORT_DIRECTIONS = 1024
    ENUMERATION_CHUNK = 20000      # 批量求解时每块的子集数

    @classmethod
    def get_linprog_kwargs(cls) -> Dict[str, Any]:
        """获取 scipy.optimize.linprog 的默认参数"""
        return {
            "method": "highs",
            "options": {
                "primal_feasibility_tolerance": 1e-10,
                "dual_feasibility_tolerance": 1e-10,
            },
        }


class SurfaceConfig:
    """n 用户超曲面采样配置"""
    GRID_CAP = 10 ** 7


class OracleConfig:
    """暴力网格验证与评估指标配置"""
    GRID_TWO_USER = 201
    GRID_THREE_USER = 41
    GRID_CAP = 10 ** 7
    AREA_SAMPLES = 1024
    GAP_SAMPLES = 1024
    GAP_FLOOR = 1e-6               # 相对间隙分母下限
    GAP_METRIC = "radial"
    VERIFY_TOLERANCE = 1e-6
    MAX_WORKERS = _env_int("RATE_REGION_MAX_WORKERS", 4)

    # 随机信道分布：增益在 ±20 dB 内对数均匀
    RANDOM_DB_SPAN = 20.0
    RANDOM_POWER_LADDER = (0.1, 1.0, 10.0)

    @classmethod
    def get_sweep_kwargs(cls) -> Dict[str, Any]:
        """获取 b 扫描的默认参数字典"""
        return {
            "area_samples": cls.AREA_SAMPLES,
            "gap_samples": cls.GAP_SAMPLES,
            "metric": cls.GAP_METRIC,
            "max_workers": cls.MAX_WORKERS,
        }


class PathConfig:
    """路径相关配置"""
    DEFAULT_OUTPUT_DIR = str(resolve_env_path("RATE_REGION_OUTPUT_DIR", "output"))

    # 固定的产物文件名
    RATES_FILE = "rates.csv"
    FRONTIER_FILE = "frontier.csv"
    CONVEXITY_FILE = "convexity.json"
    HULL_FILE = "hull.json"
    CORNERS_FILE = "corners.csv"
    THETA_FILE = "theta.csv"
    SURFACE_FILE = "surface.csv"
    GEOMETRY_FILE = "geometry.json"
    GAP_REPORT_FILE = "gap_report.csv"
    VERIFY_FILE = "verify.json"
    REGION_SVG_FILE = "region.svg"
    CHANNEL_FILE = "channel.json"


class LogConfig:
    """日志相关配置"""
    DEFAULT_LEVEL = os.getenv("RATE_REGION_LOG_LEVEL", "INFO")
    LOGGER_NAME = "rate_region"


# 全局配置实例
CONFIG = {
    'channel': ChannelConfig,
    'frontier': FrontierConfig,
    'crystal': CrystalConfig,
    'surface': SurfaceConfig,
    'oracle': OracleConfig,
    'path': PathConfig,
    'log': LogConfig,
}


def get_config(category: str) -> Any:
    """
    获取指定类别的配置

    Args:
        category: 配置类别 ('channel', 'frontier', 'crystal', 'surface', 'oracle', 'path', 'log')

    Returns:
        对应的配置类
    """
    return CONFIG.get(category)


# 常用配置的快捷访问
CHANNEL = ChannelConfig
FRONTIER = FrontierConfig
CRYSTAL = CrystalConfig
SURFACE = SurfaceConfig
ORACLE = OracleConfig
PATH = PathConfig
LOG = LogConfig
