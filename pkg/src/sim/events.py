"""
Match Events and Replay

Event records emitted by the simulator, the JSON-Lines replay format, the
stream hash and the ledger that folds events into per-hero stats.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional

import msgspec

# seconds a damage contribution counts toward an assist
ASSIST_WINDOW = 10.0


class EventKind(str, Enum):
    SPAWN = "Spawn"
    ATTACK = "Attack"
    DAMAGE = "Damage"
    LAST_HIT = "LastHit"
    UNIT_DEATH = "UnitDeath"
    TOWER_DEATH = "TowerDeath"
    NEXUS_DEATH = "NexusDeath"
    AGGRO_CHANGE = "AggroChange"
    MOVE = "Move"
    MISS = "Miss"
    REJECT = "Reject"
    RESPAWN = "Respawn"


class Event(msgspec.Struct, frozen=True):
    """
    One replay line. Field order is the serialized order.

    actor/target meaning per kind: Spawn (unit, unit kind), Attack/Damage/Miss
    (attacker, victim), UnitDeath/TowerDeath/NexusDeath (victim, killer),
    LastHit (hero, creep), AggroChange (tower, new target or null),
    Move (hero, null; value = distance moved), Reject (hero, requested target).
    """

    tick: int
    time: float
    kind: EventKind
    actor: Optional[str] = None
    target: Optional[str] = None
    value: Optional[float] = None


_encoder = msgspec.json.Encoder()
_decoder = msgspec.json.Decoder(Event)


def encode_event(event: Event) -> bytes:
    return _encoder.encode(event) + b"\n"


def decode_event(line: bytes) -> Event:
    return _decoder.decode(line)


def encode_stream(events: Iterable[Event]) -> bytes:
    return b"".join(encode_event(e) for e in events)


def decode_stream(data: bytes) -> List[Event]:
    return [decode_event(line) for line in data.splitlines() if line.strip()]


def stream_hash(events: Iterable[Event]) -> str:
    """SHA-256 hex digest of the JSON-Lines serialization."""
    h = hashlib.sha256()
    for e in events:
        h.update(encode_event(e))
    return h.hexdigest()


def team_of(entity_id: str) -> str:
    """Entity ids are "<Team>-<tag>", e.g. "Blue-H0" or "Red-Nexus"."""
    return entity_id.split("-", 1)[0]


@dataclass
class HeroTally:
    last_hits: int = 0
    kills: int = 0
    deaths: int = 0
    assists: int = 0

    def as_dict(self) -> dict:
        return {
            "last_hits": self.last_hits,
            "kills": self.kills,
            "deaths": self.deaths,
            "assists": self.assists,
        }


@dataclass
class StatsLedger:
    """
    Per-hero stats folded from events, in emission order.

    The simulator feeds every event it emits through a ledger, so replaying a
    persisted log through a fresh ledger reproduces the match stats.
    """

    heroes: Dict[str, HeroTally] = field(default_factory=dict)
    # victim id -> {hero id: last time it dealt damage}
    _recent_damage: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def apply(self, event: Event) -> None:
        kind = event.kind
        if kind is EventKind.SPAWN:
            if event.target == "Hero":
                self.heroes.setdefault(event.actor, HeroTally())
        elif kind is EventKind.DAMAGE:
            if event.actor in self.heroes and event.target in self.heroes:
                self._recent_damage.setdefault(event.target, {})[event.actor] = event.time
        elif kind is EventKind.LAST_HIT:
            if event.actor in self.heroes:
                self.heroes[event.actor].last_hits += 1
        elif kind is EventKind.UNIT_DEATH:
            self._unit_death(event)

    def _unit_death(self, event: Event) -> None:
        victim, killer = event.actor, event.target
        if victim not in self.heroes:
            return
        self.heroes[victim].deaths += 1
        if killer in self.heroes:
            self.heroes[killer].kills += 1
        contributors = self._recent_damage.pop(victim, {})
        for hero_id, when in sorted(contributors.items()):
            if hero_id == killer or team_of(hero_id) == team_of(victim):
                continue
            if event.time - when <= ASSIST_WINDOW:
                self.heroes[hero_id].assists += 1

    def tally(self, hero_id: str) -> HeroTally:
        return self.heroes.get(hero_id, HeroTally())

    def as_dict(self) -> Dict[str, dict]:
        return {hid: t.as_dict() for hid, t in sorted(self.heroes.items())}


def replay_reduce(events: Iterable[Event]) -> StatsLedger:
    """Rebuild per-hero stats from an event log."""
    ledger = StatsLedger()
    for e in events:
        ledger.apply(e)
    return ledger
