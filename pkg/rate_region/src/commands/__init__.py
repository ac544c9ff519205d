"""
子命令注册与工厂

动态发现所有分析子命令，按名称实例化。
"""
from __future__ import annotations

import inspect
from typing import TYPE_CHECKING, Dict, List, Type

from rate_region.src.errors import InvalidArgument
from .base_command import AnalysisCommand

if TYPE_CHECKING:
    from rate_region.src.cli import RunConfig

# 子命令注册表
_command_registry: Dict[str, Type[AnalysisCommand]] = {}


def _register_commands():
    """自动发现并注册所有子命令类"""
    from . import channel_commands, crystal_commands, frontier_commands, oracle_commands, surface_command

    command_modules = [
        channel_commands,
        frontier_commands,
        crystal_commands,
        surface_command,
        oracle_commands,
    ]

    for module in command_modules:
        for _, obj in inspect.getmembers(module):
            if inspect.isclass(obj) and issubclass(obj, AnalysisCommand) and obj is not AnalysisCommand:
                _command_registry[obj.name()] = obj


_register_commands()


def get_command(name: str, config: "RunConfig") -> AnalysisCommand:
    """
    子命令工厂函数

    Raises:
        InvalidArgument: 找不到指定的子命令
    """
    command_class = _command_registry.get(name)
    if not command_class:
        raise InvalidArgument(f"未知子命令: '{name}'. 可用子命令: {list_available_commands()}")
    return command_class(config)


def list_available_commands() -> List[str]:
    """返回所有子命令名称"""
    return sorted(_command_registry.keys())


def get_command_description(name: str) -> str:
    command_class = _command_registry.get(name)
    if not command_class:
        return "未知子命令"
    return command_class.description()


__all__ = [
    "AnalysisCommand",
    "get_command",
    "list_available_commands",
    "get_command_description",
]
