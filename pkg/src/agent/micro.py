"""
Micromanagement Layer

Target selector (danger first, then last hits, then a shielded push, then
any creep), the orbwalker that decides per tick between attacking,
holding through the attack animation and moving, and the stutter-step
used against shorter-ranged chasers.
"""

from __future__ import annotations

from typing import Dict, Optional, Protocol

from src.grid.geometry import WorldPos, distance
from src.influence.features import ALPHA_SHIELD, AgentView, FeatureView, UnitView
from src.sim.commands import Command

# separation a free shot must leave beyond the chaser's range
KITE_MARGIN = 50.0


class Targetable(Protocol):
    id: str
    pos: WorldPos


class LockTiming(Protocol):
    latency: float
    turn_time: float


def targetables(view: FeatureView) -> Dict[str, Targetable]:
    found: Dict[str, Targetable] = {}
    for group in (view.enemy_creeps, view.enemy_heroes, view.enemy_towers):
        for item in group:
            found[item.id] = item
    if view.enemy_nexus is not None and view.enemy_nexus.vulnerable:
        found[view.enemy_nexus.id] = view.enemy_nexus
    return found


def select_target(view: FeatureView) -> Optional[str]:
    """
    Pick what to shoot among enemies inside the agent's attack range.

    Order: an enemy hero aiming at the agent; a creep the next hit kills;
    an enemy tower under a creep shield with no enemy hero near, or an
    exposed Nexus; the lowest-HP creep.
    """
    agent = view.agent
    reach = agent.attack_range

    def near(pos: WorldPos) -> bool:
        return distance(agent.pos, pos) <= reach

    threats = [h for h in view.enemy_heroes if near(h.pos) and h.target_id == agent.id]
    if threats:
        return min(threats, key=lambda h: (h.hp, h.id)).id

    creeps = [c for c in view.enemy_creeps if near(c.pos)]
    killable = [c for c in creeps if c.hp <= agent.attack_damage]
    if killable:
        return min(killable, key=lambda c: (c.hp, c.id)).id

    for tower in sorted(view.enemy_towers, key=lambda t: (t.hp, t.id)):
        if not near(tower.pos) or tower.ctx.alpha < ALPHA_SHIELD:
            continue
        if any(distance(h.pos, agent.pos) <= tower.range for h in view.enemy_heroes):
            continue
        return tower.id
    nexus = view.enemy_nexus
    if nexus is not None and nexus.vulnerable and near(nexus.pos):
        return nexus.id

    if creeps:
        return min(creeps, key=lambda c: (c.hp, c.id)).id
    return None


def attack_locked(hero: AgentView, now: float, timing: LockTiming) -> bool:
    return now < hero.attack_lock_until + timing.turn_time + timing.latency


def orbwalk(timing: LockTiming, target: Optional[Targetable], nav_target: WorldPos,
            now: float, hero: AgentView) -> Command:
    """
    Hold while the attack animation plays out (windup + turn time + latency),
    attack when the target is in range and the cooldown is up, else move.
    """
    if attack_locked(hero, now, timing):
        return Command.hold()
    if (target is not None and distance(hero.pos, target.pos) <= hero.attack_range
            and now >= hero.last_attack_time + hero.attack_period):
        return Command.attack(target.id)
    return Command.move(nav_target)


def chasing_threat(view: FeatureView) -> Optional[UnitView]:
    """Nearest enemy hero inside the agent's range that is out-ranged and ordered onto the agent."""
    agent = view.agent
    chasers = [
        h for h in view.enemy_heroes
        if h.target_id == agent.id and h.move_speed > 0 and h.range < agent.attack_range
        and distance(agent.pos, h.pos) <= agent.attack_range
    ]
    if not chasers:
        return None
    return min(chasers, key=lambda h: (distance(agent.pos, h.pos), h.id))


def kite(timing: LockTiming, threat: UnitView, flee: WorldPos, now: float, hero: AgentView) -> Command:
    """
    Stutter-step against a shorter-ranged chaser.

    Shots from far enough out that the chaser cannot reach its own range
    during our animation are free. Closer in, a shot is only taken when the
    chaser is ready to swing and will start that swing inside our animation
    and still be winding up when we walk off, so the swing whiffs and the
    chaser stands while we regain ground. Between those two bands we hold
    ground until it walks into the second one.
    """
    if attack_locked(hero, now, timing):
        return Command.hold()
    if threat.winding:
        return Command.move(flee)
    gap = distance(hero.pos, threat.pos)
    if gap > hero.attack_range or now < hero.last_attack_time + hero.attack_period:
        return Command.move(flee)

    lock = hero.windup + timing.turn_time + timing.latency
    closing = threat.move_speed * lock
    if gap >= threat.range + closing + KITE_MARGIN:
        return Command.attack(threat.id)
    if now < threat.ready_at:
        return Command.move(flee)
    if gap < threat.range + closing:
        entry = max(0.0, gap - threat.range) / threat.move_speed
        if entry + threat.windup > lock:
            return Command.attack(threat.id)
        return Command.move(flee)
    return Command.hold()


def premature_hit(view: FeatureView, target_id: Optional[str]) -> bool:
    """
    True when ``target_id`` is an enemy creep one hit would drop into
    last-hit range without killing, handing the kill to allied creeps.
    """
    damage = view.agent.attack_damage
    for creep in view.enemy_creeps:
        if creep.id == target_id:
            return damage < creep.hp <= 2 * damage
    return False
