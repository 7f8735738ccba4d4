"""
Simulation Entities

Units (heroes and creeps), towers and Nexus structures of the single-lane
world, plus the enums shared with the influence and agent layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from src.grid.geometry import WorldPos


class Team(str, Enum):
    BLUE = "Blue"
    RED = "Red"

    @property
    def enemy(self) -> "Team":
        return Team.RED if self is Team.BLUE else Team.BLUE


class UnitKind(str, Enum):
    HERO = "Hero"
    MELEE_CREEP = "MeleeCreep"
    RANGED_CREEP = "RangedCreep"

    @property
    def is_creep(self) -> bool:
        return self is not UnitKind.HERO


class TowerState(str, Enum):
    IDLE = "Idle"
    PASSIVE_AGGRO = "PassiveAggro"
    ACTIVE_AGGRO = "ActiveAggro"


@dataclass
class Unit:
    id: str
    team: Team
    kind: UnitKind
    pos: WorldPos
    hp: float
    max_hp: float
    attack_damage: float
    attack_period: float
    windup: float
    range: float
    move_speed: float
    aggro_radius: float = 0.0
    last_attack_time: float = float("-inf")
    attack_lock_until: float = float("-inf")
    # pending attack: lands at attack_lock_until if still valid
    pending_target: Optional[str] = None
    target_id: Optional[str] = None
    # last Attack order, kept while the hero walks into range
    order_target: Optional[str] = None
    waypoint_index: int = 0
    controller: str = "agent"
    profile: str = ""
    respawn_at: Optional[float] = None

    @property
    def alive(self) -> bool:
        return self.hp > 0

    @property
    def is_hero(self) -> bool:
        return self.kind is UnitKind.HERO

    def attack_ready(self, now: float) -> bool:
        return now >= self.last_attack_time + self.attack_period and now >= self.attack_lock_until


@dataclass
class Tower:
    id: str
    team: Team
    pos: WorldPos
    hp: float
    max_hp: float
    damage: float
    attack_period: float
    range: float
    state: TowerState = TowerState.IDLE
    locked_target: Optional[str] = None
    last_attack_time: float = float("-inf")
    # enemy id -> time it entered range, drives the entry-order preference
    entered_at: dict = field(default_factory=dict)

    windup: float = 0.0
    pending_target: Optional[str] = None
    attack_lock_until: float = float("-inf")

    @property
    def alive(self) -> bool:
        return self.hp > 0

    def attack_ready(self, now: float) -> bool:
        return now >= self.last_attack_time + self.attack_period


@dataclass
class Nexus:
    id: str
    team: Team
    pos: WorldPos
    hp: float
    max_hp: float

    @property
    def alive(self) -> bool:
        return self.hp > 0
