"""
Feature Snapshots

Immutable views of the world handed to the influence composer: one
snapshot per unit/structure plus the controlled agent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import msgspec

from src.grid.geometry import WorldPos, distance
from src.sim.entities import TowerState

ALPHA_SHIELD = 3


class InfluenceTuning(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    """Knobs of the influence equations; defaults reproduce the published constants."""

    hero_range_override: Optional[float] = None
    phi_enabled: bool = True
    creep_bonus: float = 100.0
    ally_tower_margin: float = 200.0
    enemy_creep_falloff_enabled: bool = True
    falloff_extent: float = 300.0
    tau_denominator_floor: float = 100.0
    nexus_radius: float = 775.0
    # "damage": epsilon from tower dps and agent hp; "fixed": epsilon_fixed
    epsilon_policy: str = "damage"
    epsilon_fixed: float = 0.0

    def __post_init__(self):
        if self.creep_bonus < 0:
            raise ValueError("creep_bonus must be >= 0")
        if self.ally_tower_margin < 0:
            raise ValueError("ally_tower_margin must be >= 0")
        if self.tau_denominator_floor <= 0:
            raise ValueError("tau_denominator_floor must be > 0")
        if self.falloff_extent < 0:
            raise ValueError("falloff_extent must be >= 0")
        if self.hero_range_override is not None and self.hero_range_override <= 0:
            raise ValueError("hero_range_override must be > 0")
        if self.epsilon_policy not in ("damage", "fixed"):
            raise ValueError("epsilon_policy must be 'damage' or 'fixed'")
        if self.epsilon_fixed < 0:
            raise ValueError("epsilon_fixed must be >= 0")


@dataclass(frozen=True)
class TowerContext:
    """Aggro state of an enemy tower as seen by the agent, plus its creep shield count."""

    state: TowerState
    alpha: int

    @property
    def favorable(self) -> bool:
        return self.state is not TowerState.ACTIVE_AGGRO and self.alpha >= ALPHA_SHIELD

    @classmethod
    def from_tower(cls, tower, agent_id: str, shield: Iterable[Tuple[str, WorldPos]]) -> "TowerContext":
        """
        Context of a simulator tower for one agent.

        The tower counts as actively aggressive only while it targets that
        agent. Alpha counts the agent's allied creeps inside the tower range
        that the tower would pick before the agent: all of them while the
        agent is outside the range, otherwise those that entered no later
        than the agent did.
        """
        agent_entry = tower.entered_at.get(agent_id)
        alpha = 0
        for creep_id, pos in shield:
            if distance(pos, tower.pos) > tower.range:
                continue
            if agent_entry is None or tower.entered_at.get(creep_id, float("inf")) <= agent_entry:
                alpha += 1
        if tower.locked_target is None:
            state = TowerState.IDLE
        elif tower.locked_target == agent_id:
            state = TowerState.ACTIVE_AGGRO
        else:
            state = TowerState.PASSIVE_AGGRO
        return cls(state, alpha)


@dataclass(frozen=True)
class UnitView:
    id: str
    pos: WorldPos
    hp: float
    max_hp: float
    attack_damage: float = 0.0
    range: float = 0.0
    move_speed: float = 0.0
    target_id: Optional[str] = None
    effective_range: float = 0.0
    tactical_value: float = 0.0
    windup: float = 0.0
    ready_at: float = float("-inf")
    winding: bool = False
    aggro_radius: float = 0.0


@dataclass(frozen=True)
class TowerView:
    id: str
    pos: WorldPos
    hp: float
    range: float
    damage: float
    attack_period: float
    ctx: TowerContext = TowerContext(TowerState.IDLE, 0)


@dataclass(frozen=True)
class NexusView:
    id: str
    pos: WorldPos
    hp: float
    vulnerable: bool = False


@dataclass(frozen=True)
class AgentView:
    """The controlled hero: ``hero_range`` is H_r in the equations."""

    id: str
    pos: WorldPos
    hp: float
    max_hp: float
    hero_range: float
    attack_range: float
    attack_damage: float
    move_speed: float
    tactical_value: float = 0.0
    attack_period: float = 1.0
    last_attack_time: float = float("-inf")
    attack_lock_until: float = float("-inf")
    windup: float = 0.0


@dataclass(frozen=True)
class FeatureView:
    agent: AgentView
    agent_base: WorldPos
    enemy_creeps: Tuple[UnitView, ...] = ()
    ally_creeps: Tuple[UnitView, ...] = ()
    enemy_towers: Tuple[TowerView, ...] = ()
    ally_towers: Tuple[TowerView, ...] = ()
    enemy_heroes: Tuple[UnitView, ...] = ()
    ally_heroes: Tuple[UnitView, ...] = ()
    enemy_nexus: Optional[NexusView] = None
    enemy_base: Optional[WorldPos] = None
