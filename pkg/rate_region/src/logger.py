"""
日志系统

彩色、带时间戳与调用者标签的结构化日志；长任务（b 扫描）按进度分档汇报。
INFO 及以下写到标准输出，WARNING 及以上写到标准错误。
"""

import inspect
import logging
import sys
import time
from datetime import datetime
from typing import Dict, Optional, Tuple

import colorama
from colorama import Fore, Style
colorama.init(autoreset=True)

from rate_region.src.config import LOG

# 级别 -> (颜色, 前缀标记)
_STYLES: Dict[str, Tuple[str, str]] = {
    "DEBUG": (Fore.MAGENTA, ""),
    "INFO": (Fore.CYAN, ""),
    "STEP": (Fore.CYAN, "🔄 "),
    "SUCCESS": (Fore.GREEN, "✅ "),
    "WARNING": (Fore.YELLOW, "⚠️  "),
    "ERROR": (Fore.RED, "❌ "),
}


class _BelowWarning(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        return record.levelno < logging.WARNING


class RegionLogger:
    """速率域分析日志器"""

    def __init__(self, name: str = LOG.LOGGER_NAME, log_level: str = LOG.DEFAULT_LEVEL):
        self.logger = logging.getLogger(name)
        self.logger.propagate = False
        self.set_level(log_level)

        # 避免重复添加handler
        if not self.logger.handlers:
            formatter = logging.Formatter('%(message)s')
            for stream, level, below_warning in ((sys.stdout, logging.DEBUG, True), (sys.stderr, logging.WARNING, False)):
                handler = logging.StreamHandler(stream)
                handler.setLevel(level)
                handler.setFormatter(formatter)
                if below_warning:
                    handler.addFilter(_BelowWarning())
                self.logger.addHandler(handler)

    def set_level(self, log_level: str) -> None:
        self.logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    @staticmethod
    def _caller_tag() -> str:
        """调用者的类名（或函数名），取不到时为空"""
        frame = inspect.currentframe()
        try:
            # _caller_tag <- _render <- info/warning/... <- 调用者
            caller = frame.f_back.f_back.f_back
            owner = caller.f_locals.get('self')
            if owner is not None:
                return f"[{type(owner).__name__}]"
            name = caller.f_code.co_name
            return "" if name == '<module>' else f"[{name}]"
        except AttributeError:
            return ""
        finally:
            del frame

    def _render(self, level: str, message: str) -> str:
        color, marker = _STYLES[level]
        tag = self._caller_tag()
        body = f"{tag} {message}" if tag else message
        return f"{color}{marker}[{datetime.now():%H:%M:%S}] {body}{Style.RESET_ALL}"

    def debug(self, message: str) -> None:
        self.logger.debug(self._render("DEBUG", message))

    def info(self, message: str) -> None:
        self.logger.info(self._render("INFO", message))

    def step(self, message: str) -> None:
        """步骤日志"""
        self.logger.info(self._render("STEP", message))

    def success(self, message: str) -> None:
        self.logger.info(self._render("SUCCESS", message))

    def warning(self, message: str) -> None:
        self.logger.warning(self._render("WARNING", message))

    def error(self, message: str) -> None:
        """错误日志，写到标准错误"""
        self.logger.error(self._render("ERROR", message))


class ProcessLogger:
    """
    长任务进度日志

    progress 每跨过一个 10% 档位写一条 INFO，其余写 DEBUG；complete 附带总耗时。
    """

    def __init__(self, process_name: str):
        self.process_name = process_name
        self.logger = get_logger()
        self._started = time.monotonic()
        self._last_decile = -1

    def start(self, message: str = "") -> None:
        self._started = time.monotonic()
        self._last_decile = -1
        self.logger.step(f"{self.process_name}开始: {message}" if message else f"{self.process_name}开始")

    def progress(self, current: int, total: int, unit: str = "") -> None:
        percentage = 100.0 * current / total if total > 0 else 100.0
        label = f" {unit}" if unit else ""
        message = f"{self.process_name} {current}/{total}{label} ({percentage:.1f}%)"
        decile = int(percentage // 10)
        if decile > self._last_decile:
            self._last_decile = decile
            self.logger.info(message)
        else:
            self.logger.debug(message)

    def complete(self, message: str = "") -> None:
        elapsed = time.monotonic() - self._started
        suffix = f": {message}" if message else ""
        self.logger.success(f"{self.process_name}完成（{elapsed:.2f}秒）{suffix}")


# 全局日志器实例
_global_logger: Optional[RegionLogger] = None


def get_logger(name: str = LOG.LOGGER_NAME, log_level: str = LOG.DEFAULT_LEVEL) -> RegionLogger:
    """获取进程内唯一的日志器"""
    global _global_logger
    if _global_logger is None:
        _global_logger = RegionLogger(name, log_level)
    return _global_logger


def setup_logging(level: str = LOG.DEFAULT_LEVEL) -> RegionLogger:
    """
    设置日志系统

    Args:
        level: 日志级别（DEBUG / INFO / WARNING / ERROR）
    """
    logger = get_logger()
    logger.set_level(level)
    return logger


def create_process_logger(process_name: str) -> ProcessLogger:
    return ProcessLogger(process_name)
