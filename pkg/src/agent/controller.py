"""
Agent Controller

Ties the two layers together once per tick. The influence grid refreshes at
its own rate; `decide` picks a destination and a target and hands both to
the orbwalker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger

from src.agent.micro import (
    attack_locked,
    chasing_threat,
    kite,
    orbwalk,
    premature_hit,
    select_target,
    targetables,
)
from src.agent.navigation import (
    SHIELD_SPARE,
    creep_pressure,
    in_forbidden_zone,
    kite_point,
    last_hit_approach,
    navigate_cell,
    path_clear,
    rally_point,
    retreat_point,
    search_radius,
)
from src.grid.geometry import GridSpec, WorldPos, cell_center
from src.grid.influence_grid import InfluenceGrid
from src.influence.composer import compose_with_attribution
from src.influence.features import FeatureView, InfluenceTuning
from src.sim.commands import Command
from src.sim.config import AgentConfig


@dataclass
class AgentState:
    hero_id: str
    spec: GridSpec
    tuning: InfluenceTuning = field(default_factory=InfluenceTuning)
    latency: float = 0.05
    turn_time: float = 0.0
    im_rate: float = 10.0
    decision_horizon: float = 1.0
    lane_presence: bool = True
    decision_grid: Optional[InfluenceGrid] = None
    enemy_mask: Optional[np.ndarray] = None
    grid_time: float = float("-inf")
    recomputes: int = 0
    nav_target: Optional[WorldPos] = None
    waypoint: Optional[WorldPos] = None
    current_target: Optional[str] = None
    kite_spin: int = 0

    def __post_init__(self):
        if self.latency < 0:
            raise ValueError("latency must be >= 0")
        if self.im_rate <= 0:
            raise ValueError("im_rate must be > 0")

    @classmethod
    def from_config(cls, hero_id: str, spec: GridSpec, cfg: AgentConfig) -> "AgentState":
        return cls(
            hero_id=hero_id,
            spec=spec,
            tuning=cfg.tuning,
            latency=cfg.latency,
            turn_time=cfg.turn_time,
            im_rate=cfg.im_rate,
            decision_horizon=cfg.decision_horizon,
            lane_presence=cfg.lane_presence,
        )

    def grid_stale(self, now: float) -> bool:
        return self.decision_grid is None or now - self.grid_time >= 1.0 / self.im_rate - 1e-9


def refresh_grid(view: FeatureView, agent: AgentState, now: float, force: bool = False) -> InfluenceGrid:
    if force or agent.grid_stale(now):
        agent.decision_grid, agent.enemy_mask = compose_with_attribution(
            view, agent.spec, agent.tuning, agent.decision_grid
        )
        agent.grid_time = now
        agent.recomputes += 1
    return agent.decision_grid


def plan_waypoint(view: FeatureView, agent: AgentState, grid: InfluenceGrid) -> WorldPos:
    """Grid destination for this refresh: best cell, lane rally, or escape when the walk is blocked."""
    cell = navigate_cell(view, grid, agent.decision_horizon)
    waypoint = cell_center(cell, grid.spec)
    if agent.lane_presence:
        rally = rally_point(view, grid, agent.enemy_mask, cell)
        if rally is not None:
            return rally
    if not path_clear(grid, view.agent.pos, waypoint):
        return retreat_point(grid, view, agent.decision_horizon)
    return waypoint


def _retarget(agent: AgentState, target_id: Optional[str], now: float) -> None:
    if target_id != agent.current_target:
        logger.trace(f"{agent.hero_id} target {agent.current_target} -> {target_id} at t={now:.2f}")
    agent.current_target = target_id


def decide(view: FeatureView, agent: AgentState, now: float) -> Command:
    """
    One tick of the agent.

    Inside a hostile tower's forbidden radius it walks out at once, even
    mid-animation. A shorter-ranged chaser gets the stutter-step. Creep
    aggro, or standing inside the radius of a tower whose creep shield is
    thin, sends it back toward base. Otherwise it follows the grid
    waypoint (recomputed with the grid), steps in for a last hit just out
    of range, holds the shot that would only set a creep up for allied
    creeps, and lets the orbwalker pick the command.
    """
    hero = view.agent
    exposed = in_forbidden_zone(view, agent.spec, agent.tuning)
    before = agent.recomputes
    grid = refresh_grid(view, agent, now, force=exposed)

    if exposed:
        agent.nav_target = retreat_point(grid, view, agent.decision_horizon)
        agent.waypoint = None
        _retarget(agent, None, now)
        logger.trace(f"{agent.hero_id} leaving a tower's forbidden radius at t={now:.2f}")
        return Command.move(agent.nav_target)

    threat = chasing_threat(view)
    if threat is not None:
        agent.nav_target, agent.kite_spin = kite_point(
            hero.pos, threat.pos, agent.spec, search_radius(view, agent.decision_horizon), agent.kite_spin
        )
        _retarget(agent, threat.id, now)
        return kite(agent, threat, agent.nav_target, now, hero)

    if creep_pressure(view) or in_forbidden_zone(view, agent.spec, agent.tuning, spare=SHIELD_SPARE):
        agent.nav_target = retreat_point(grid, view, agent.decision_horizon)
        agent.waypoint = None
        _retarget(agent, None, now)
        if attack_locked(hero, now, agent):
            return Command.hold()
        return Command.move(agent.nav_target)

    if agent.waypoint is None or agent.recomputes != before:
        agent.waypoint = plan_waypoint(view, agent, grid)
    target_id = select_target(view)
    step_in = last_hit_approach(view, grid)
    if step_in is not None:
        agent.nav_target = step_in
        if target_id is not None and any(c.id == target_id for c in view.enemy_creeps):
            target_id = None
    else:
        agent.nav_target = agent.waypoint
    if premature_hit(view, target_id):
        target_id = None

    _retarget(agent, target_id, now)
    target = targetables(view).get(target_id) if target_id else None
    return orbwalk(agent, target, agent.nav_target, now, hero)
