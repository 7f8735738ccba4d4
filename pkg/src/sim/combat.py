"""
Auto-Attack Combat

Attacks start with an Attack event and a windup lock, and land at windup
completion: flat damage, floored at zero hp, with death and last-hit
attribution to the source of the killing blow.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Union

from src.grid.geometry import distance
from src.sim.entities import Nexus, Team, Tower, Unit
from src.sim.events import Event, EventKind

if TYPE_CHECKING:
    from src.sim.world import WorldState

Attacker = Union[Unit, Tower]
Target = Union[Unit, Tower, Nexus]

# tolerance on tick-quantized times
TIME_EPS = 1e-9


def damage_of(attacker: Attacker) -> float:
    return attacker.damage if isinstance(attacker, Tower) else attacker.attack_damage


def attackable(world: "WorldState", team: Team, target: Optional[Target]) -> bool:
    """Alive, hostile, and for a Nexus exposed (no tower of its team left)."""
    if target is None or not target.alive or target.team is team:
        return False
    if isinstance(target, Nexus):
        return world.nexus_vulnerable(target.team)
    return True


def in_range(attacker: Attacker, target: Target) -> bool:
    return distance(attacker.pos, target.pos) <= attacker.range + TIME_EPS


def start_attack(world: "WorldState", attacker: Attacker, target_id: str) -> Event:
    """Begin an attack: cooldown starts now, the hit lands after the windup."""
    now = world.clock
    attacker.last_attack_time = now
    attacker.attack_lock_until = now + attacker.windup
    attacker.pending_target = target_id
    if isinstance(attacker, Unit):
        attacker.target_id = target_id
    return Event(world.tick_index, now, EventKind.ATTACK, attacker.id, target_id)


def cancel_attack(attacker: Attacker) -> Optional[str]:
    target_id = attacker.pending_target
    attacker.pending_target = None
    attacker.attack_lock_until = float("-inf")
    return target_id


def landing_due(attacker: Attacker, now: float) -> bool:
    return attacker.pending_target is not None and now + TIME_EPS >= attacker.attack_lock_until


def resolve_attack(world: "WorldState", attacker: Attacker) -> List[Event]:
    """
    Land ``attacker``'s pending hit.

    The hit misses when the target is gone, no longer attackable, or left
    range during the windup.
    """
    target_id = attacker.pending_target
    attacker.pending_target = None
    target = world.entity(target_id)
    if not attackable(world, attacker.team, target) or not in_range(attacker, target):
        return [Event(world.tick_index, world.clock, EventKind.MISS, attacker.id, target_id)]
    return apply_damage(world, attacker, target, damage_of(attacker))


def apply_damage(world: "WorldState", source: Attacker, target: Target, amount: float) -> List[Event]:
    tick, now = world.tick_index, world.clock
    dealt = min(amount, target.hp)
    target.hp = max(target.hp - amount, 0.0)
    events = [Event(tick, now, EventKind.DAMAGE, source.id, target.id, dealt)]
    if target.alive:
        return events

    if isinstance(target, Tower):
        events.append(Event(tick, now, EventKind.TOWER_DEATH, target.id, source.id))
    elif isinstance(target, Nexus):
        events.append(Event(tick, now, EventKind.NEXUS_DEATH, target.id, source.id))
    else:
        events.append(Event(tick, now, EventKind.UNIT_DEATH, target.id, source.id))
        if isinstance(source, Unit) and source.is_hero and target.kind.is_creep:
            events.append(Event(tick, now, EventKind.LAST_HIT, source.id, target.id))
    return events
