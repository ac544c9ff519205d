"""
命令行前端

子命令与库函数一一对应；所有计算都在库里完成，这里只负责解析参数、分派和退出码：
    0 成功
    1 领域错误（信息写到标准错误）
    2 输入/解析错误（信道文件格式、文件不存在、参数不合法）
"""

import argparse
import sys
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

from rate_region.src.commands import get_command, get_command_description, list_available_commands
from rate_region.src.config import CHANNEL, LOG, ORACLE, PATH
from rate_region.src.errors import ChannelFileError, InvalidArgument, RegionError
from rate_region.src.logger import setup_logging
from rate_region.src.utils.common_utils import format_duration

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_INPUT_ERROR = 2

OUTPUT_FORMATS = ("csv", "json", "svg")
HULL_MODES = ("auto", "exact", "support")


@dataclass
class RunConfig:
    """一次命令行运行的完整配置"""
    command: str
    input_path: Optional[str] = None
    output_dir: str = PATH.DEFAULT_OUTPUT_DIR
    samples: Optional[int] = None
    grid: Optional[int] = None
    format: str = "csv"
    powers: Optional[str] = None
    target: Optional[str] = None
    surface: Optional[int] = None
    a: Optional[float] = None
    pmax: float = 1.0
    b_db: Optional[str] = None
    tol: Optional[float] = None
    metric: str = ORACLE.GAP_METRIC
    hull_mode: str = "auto"
    gains: Optional[str] = None
    noise_var: float = 1.0
    units: str = "linear"
    log_level: str = LOG.DEFAULT_LEVEL


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """构建带子命令的参数解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", help="信道文件路径（JSON）")
    common.add_argument("--out", dest="output_dir", default=PATH.DEFAULT_OUTPUT_DIR, help="产物输出目录")
    common.add_argument("--samples", type=_positive_int, help="每段前沿的采样数 / 间隙与面积的采样数")
    common.add_argument("--grid", type=_positive_int, help="每个功率维度的网格点数")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="csv",
                        help="产物格式；svg 额外写出 region.svg（仅两用户）")
    common.add_argument("--log-level", default=LOG.DEFAULT_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别")

    parser = argparse.ArgumentParser(
        description="高斯干扰信道速率区域分析工具（干扰按噪声处理）",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

    for name in list_available_commands():
        sub = subparsers.add_parser(
            name, parents=[common], help=get_command_description(name),
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        if name == "rates":
            sub.add_argument("--powers", help="逗号分隔的功率向量；缺省为全部 P_max")
        elif name == "decompose":
            sub.add_argument("--target", required=True, help="逗号分隔的目标速率点")
        elif name == "surface":
            sub.add_argument("--surface", type=_positive_int, help="满功率用户序号（从 1 开始）")
        elif name == "crystallize":
            sub.add_argument("--mode", dest="hull_mode", choices=HULL_MODES, default="auto", help="凸包模式")
        elif name == "sweep":
            sub.add_argument("--a", type=float, required=True, help="对称直连增益 a = c")
            sub.add_argument("--pmax", type=float, default=1.0, help="功率上限")
            sub.add_argument("--b-db", dest="b_db", required=True, help="交叉增益扫描区间 lo:hi:step（dB）")
            sub.add_argument("--metric", choices=("radial", "vertical"), default=ORACLE.GAP_METRIC,
                             help="速率间隙度量")
        elif name == "verify":
            sub.add_argument("--tol", type=float, default=ORACLE.VERIFY_TOLERANCE, help="越界容差")
        elif name == "write-channel":
            sub.add_argument("--gains", required=True, help="增益矩阵，行用分号分隔，如 '10,1;4,10'")
            sub.add_argument("--noise-var", dest="noise_var", type=float, default=1.0, help="噪声方差")
            sub.add_argument("--pmax", type=float, default=1.0, help="功率上限")
            sub.add_argument("--units", choices=CHANNEL.SUPPORTED_UNITS, default="linear", help="增益单位")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if key in RunConfig.__dataclass_fields__}
    return RunConfig(**values)


def run(config: RunConfig) -> int:
    """
    执行一次子命令

    Returns:
        退出码：0 成功，1 领域错误，2 输入/解析错误或参数不合法；
        库外抛出的 ValueError 等异常不转换，原样抛出
    """
    logger = setup_logging(config.log_level)
    start_time = time.time()
    try:
        command = get_command(config.command, config)
        logger.step(f"{command.name()}: {command.description()}")
        command.check_inputs()
        written = command.execute()
    except ChannelFileError as exc:
        logger.error(f"信道文件错误: {exc}")
        return EXIT_INPUT_ERROR
    except FileNotFoundError as exc:
        logger.error(str(exc))
        return EXIT_INPUT_ERROR
    except InvalidArgument as exc:
        logger.error(f"参数错误: {exc}")
        return EXIT_INPUT_ERROR
    except RegionError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_DOMAIN_ERROR
    except OSError as exc:
        logger.error(f"读写失败: {exc}")
        return EXIT_INPUT_ERROR

    for path in written:
        logger.info(f"已写出: {path}")
    logger.success(f"完成，用时 {format_duration(time.time() - start_time)}")
    return EXIT_OK


def _attach_range_values(argv: Sequence[str]) -> List[str]:
    """'--b-db -20:0:0.5' 改写成 '--b-db=-20:0:0.5'，否则负号开头的区间会被当成选项"""
    joined: List[str] = []
    tokens = list(argv)
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token == "--b-db" and index + 1 < len(tokens):
            joined.append(f"{token}={tokens[index + 1]}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行入口"""
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_attach_range_values(argv))
    return run(config_from_args(args))
