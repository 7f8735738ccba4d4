"""Per-tick hero commands accepted by the simulator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.grid.geometry import WorldPos


class CommandKind(str, Enum):
    MOVE = "Move"
    ATTACK = "Attack"
    HOLD = "Hold"


@dataclass(frozen=True)
class Command:
    kind: CommandKind
    pos: Optional[WorldPos] = None
    target: Optional[str] = None

    @classmethod
    def move(cls, pos: WorldPos) -> "Command":
        return cls(CommandKind.MOVE, pos=pos)

    @classmethod
    def attack(cls, target: str) -> "Command":
        return cls(CommandKind.ATTACK, target=target)

    @classmethod
    def hold(cls) -> "Command":
        return cls(CommandKind.HOLD)

