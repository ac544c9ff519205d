"""
分析子命令抽象基类
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional

from rate_region.src.channel.loader import ChannelFileParser
from rate_region.src.channel.model import ChannelInstance, TwoUserParams, normalize_two_user
from rate_region.src.errors import ChannelFileError, InvalidArgument
from rate_region.src.logger import get_logger

if TYPE_CHECKING:
    from rate_region.src.cli import RunConfig


class AnalysisCommand(ABC):
    """子命令：读取输入、调用库函数、全部计算成功后再写产物"""

    requires_channel = True

    def __init__(self, config: "RunConfig"):
        self.config = config
        self.output_dir = Path(config.output_dir)
        self.logger = get_logger()
        self._channel: Optional[ChannelInstance] = None

    @staticmethod
    @abstractmethod
    def name() -> str:
        """子命令名称"""
        pass

    @staticmethod
    @abstractmethod
    def description() -> str:
        """子命令描述"""
        pass

    @abstractmethod
    def execute(self) -> List[Path]:
        """执行子命令，返回写出的产物路径"""
        raise NotImplementedError

    def check_inputs(self) -> None:
        """计算前检查 --input 是否与子命令相符"""
        if self.requires_channel and not self.config.input_path:
            raise ChannelFileError(f"子命令 {self.name()} 需要 --input 信道文件", field="input")
        if not self.requires_channel and self.config.input_path:
            self.logger.warning(f"子命令 {self.name()} 不读取信道文件，忽略 --input {self.config.input_path}")

    def load_channel(self) -> ChannelInstance:
        if not self.requires_channel:
            raise InvalidArgument(f"子命令 {self.name()} 不接受信道文件")
        if self._channel is None:
            self.check_inputs()
            self._channel = ChannelFileParser().parse_file(self.config.input_path)
        return self._channel

    def two_user(self) -> TwoUserParams:
        return normalize_two_user(self.load_channel())

    def artifact(self, filename: str) -> Path:
        return self.output_dir / filename

    def wants_svg(self) -> bool:
        return self.config.format == "svg"
