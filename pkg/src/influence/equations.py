"""
Influence Equations

Per-cell weights written by each game feature. Every function returns the
weight for a single cell, or None when the cell lies outside the feature's
footprint (the caller leaves such cells untouched).
"""

from __future__ import annotations

from typing import Optional

from src.grid.geometry import WorldPos, distance
from src.grid.influence_grid import NEG_INF
from src.influence.features import AgentView, InfluenceTuning, TowerContext, TowerView, UnitView

DEFAULT_TAU_FLOOR = 100.0


def tau(unit_pos: WorldPos, cell_pos: WorldPos, base_pos: WorldPos, floor: float = DEFAULT_TAU_FLOOR) -> float:
    """
    Base-relative safety weight: unit-to-base distance over cell-to-base distance.

    The cell-to-base distance is floored so cells on the base never divide by zero.
    """
    if floor <= 0:
        raise ValueError(f"floor must be > 0, got {floor}")
    return distance(unit_pos, base_pos) / max(distance(cell_pos, base_pos), floor)


def tower_dps(tower: TowerView) -> float:
    return tower.damage / tower.attack_period


def epsilon_radius(tower: TowerView, agent: AgentView) -> float:
    """
    Radius around an enemy tower where a round trip would cost more than the agent's HP.

    eps = clamp(T_r - hp * move_speed / (2 * dps), 0, T_r)
    """
    dps = tower_dps(tower)
    if dps <= 0 or agent.move_speed <= 0:
        raise ValueError("tower dps and agent move speed must be > 0")
    eps = tower.range - agent.hp * agent.move_speed / (2.0 * dps)
    return min(max(eps, 0.0), tower.range)


def resolve_epsilon(tower: TowerView, agent: AgentView, tuning: Optional[InfluenceTuning] = None) -> float:
    if tuning is not None and tuning.epsilon_policy == "fixed":
        return min(tuning.epsilon_fixed, tower.range)
    return epsilon_radius(tower, agent)


def favorable_tower_weight(d_pt: float, t: float, hero_range: float, tower_range: float, delta: float) -> float:
    if d_pt < hero_range - delta:
        return d_pt
    if d_pt <= hero_range:
        return t * d_pt
    return tower_range - d_pt


def enemy_tower_influence(cell: WorldPos, tower: TowerView, ctx: TowerContext, agent: AgentView,
                          base: WorldPos, delta: float, epsilon: Optional[float] = None,
                          tau_floor: float = DEFAULT_TAU_FLOOR) -> Optional[float]:
    """
    Enemy tower weight for one cell.

    With a creep shield (alpha >= 3) and the tower not targeting the agent the
    cell gets the favorable ring profile; otherwise the whole footprint is
    -T_r and the inner epsilon zone is the -inf sentinel.

    Args:
        cell: Cell centre
        tower: Enemy tower snapshot (T_r = tower.range)
        ctx: Aggro state and alpha for this tower
        agent: Controlled hero (H_r = agent.hero_range)
        base: Agent's own base
        delta: Half-resolution correction
        epsilon: Entry radius; computed from damage when omitted

    Returns:
        The weight, or None outside the tower range
    """
    d_pt = distance(cell, tower.pos)
    if d_pt > tower.range:
        return None

    if ctx.favorable:
        t = tau(tower.pos, cell, base, tau_floor)
        return favorable_tower_weight(d_pt, t, agent.hero_range, tower.range, delta)

    eps = epsilon_radius(tower, agent) if epsilon is None else epsilon
    if d_pt > eps:
        return -tower.range
    return NEG_INF


def nexus_influence(cell: WorldPos, nexus_pos: WorldPos, radius: float, agent: AgentView,
                    base: WorldPos, delta: float, tau_floor: float = DEFAULT_TAU_FLOOR) -> Optional[float]:
    """Exposed enemy Nexus: the favorable tower profile, it never shoots back."""
    d = distance(cell, nexus_pos)
    if d > radius:
        return None
    t = tau(nexus_pos, cell, base, tau_floor)
    return favorable_tower_weight(d, t, agent.hero_range, radius, delta)


def phi(creep: UnitView, enabled: bool = True) -> float:
    """Remaining HP percent; fixed at 100 when the HP term is disabled."""
    if not enabled or creep.max_hp <= 0:
        return 100.0
    return 100.0 * creep.hp / creep.max_hp


def enemy_creep_influence(cell: WorldPos, creep: UnitView, agent: AgentView, base: WorldPos,
                          delta: float, tuning: InfluenceTuning) -> Optional[float]:
    """
    Enemy creep weight for one cell: distance inside H_r - delta, the HP-weighted
    ring up to H_r, then an optional linear falloff.
    """
    d_pm = distance(cell, creep.pos)
    h_r = agent.hero_range
    if d_pm < h_r - delta:
        return d_pm

    p = phi(creep, tuning.phi_enabled)
    if d_pm <= h_r:
        return tau(creep.pos, cell, base, tuning.tau_denominator_floor) * (d_pm + tuning.creep_bonus - p)

    if tuning.enemy_creep_falloff_enabled and d_pm <= h_r + tuning.falloff_extent:
        t = tau(creep.pos, cell, base, tuning.tau_denominator_floor)
        return max(0.0, t * (h_r + tuning.creep_bonus - p) - (d_pm - h_r))
    return None


def ally_tower_influence(cell: WorldPos, tower: TowerView, margin: float) -> Optional[float]:
    """Linear decay from the tower; nothing inside the collision margin or past the range."""
    d_pt = distance(cell, tower.pos)
    if d_pt > tower.range or d_pt <= margin:
        return None
    return tower.range - d_pt


def hero_influence(cell: WorldPos, hero: UnitView, current: float, enemy: bool) -> float:
    """
    New cell value after a hero's plateau.

    Enemy heroes overwrite with -tactical_value, ally heroes add +tactical_value,
    both over hero.effective_range. Sentinel cells stay forbidden.
    """
    if current == NEG_INF or distance(cell, hero.pos) > hero.effective_range:
        return current
    if enemy:
        return -hero.tactical_value
    return current + hero.tactical_value
