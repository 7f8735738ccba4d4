"""
Match Metrics

Per-match stats, the farming ablation report, and the trace metrics for
kiting and tower-dive safety.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import msgspec
import numpy as np

from src.grid.geometry import WorldPos, distance

# community farming baseline, creeps per minute = 100% efficiency
BASELINE_CPM = 10.0
KITING_WINDOW = 10.0
KITING_MIN_ATTACKS = 3
KITING_MIN_MOVES = 10
KITING_MIN_SEPARATION = 200.0
KITING_SEPARATION_SHARE = 0.8


class UndefinedRateError(ValueError):
    """A rate was requested over a zero-length match."""


class MatchStats(msgspec.Struct, forbid_unknown_fields=True):
    seed: int
    winner: Optional[str]
    duration: float
    hero_id: str
    kills: int = 0
    deaths: int = 0
    assists: int = 0
    last_hits: int = 0
    cpm: Optional[float] = None
    replay_hash: str = ""
    phi_enabled: bool = True
    safety_violations: int = 0
    heroes: Dict[str, Dict[str, int]] = msgspec.field(default_factory=dict)
    message: str = ""


def creeps_per_minute(stats: MatchStats) -> float:
    if stats.duration <= 0:
        raise UndefinedRateError(f"match {stats.seed} has no duration")
    return stats.last_hits / (stats.duration / 60.0)


def efficiency(cpm: float) -> float:
    """Percent of the 10-CPM baseline."""
    return cpm / BASELINE_CPM * 100.0


def _mean_std(values: Sequence[float]):
    if not values:
        return 0.0, None
    arr = np.asarray(values, dtype=np.float64)
    std = float(arr.std()) if len(values) > 1 else None
    return float(arr.mean()), std


class AblationReport(msgspec.Struct, forbid_unknown_fields=True):
    phi_on: List[MatchStats]
    phi_off: List[MatchStats]
    mean_cpm_on: float
    mean_cpm_off: float
    efficiency_on: float
    efficiency_off: float
    std_cpm_on: Optional[float] = None
    std_cpm_off: Optional[float] = None

    @classmethod
    def build(cls, phi_on: Sequence[MatchStats], phi_off: Sequence[MatchStats]) -> "AblationReport":
        """Aggregate both arms; matches are ordered by seed first."""
        on = sorted(phi_on, key=lambda s: s.seed)
        off = sorted(phi_off, key=lambda s: s.seed)
        mean_on, std_on = _mean_std([creeps_per_minute(s) for s in on if not s.message])
        mean_off, std_off = _mean_std([creeps_per_minute(s) for s in off if not s.message])
        return cls(
            phi_on=on,
            phi_off=off,
            mean_cpm_on=mean_on,
            mean_cpm_off=mean_off,
            efficiency_on=efficiency(mean_on),
            efficiency_off=efficiency(mean_off),
            std_cpm_on=std_on,
            std_cpm_off=std_off,
        )

    @property
    def ratio(self) -> Optional[float]:
        if self.mean_cpm_off == 0:
            return None
        return self.mean_cpm_on / self.mean_cpm_off

    def passes(self, factor: float = 1.15) -> bool:
        return self.mean_cpm_on >= factor * self.mean_cpm_off

    def to_json(self) -> bytes:
        return msgspec.json.encode(self)

    @classmethod
    def from_json(cls, data: bytes) -> "AblationReport":
        return msgspec.json.decode(data, type=cls)


class SoloSummary(msgspec.Struct, forbid_unknown_fields=True):
    n: int
    wins: int
    total_deaths: int
    capped: int
    mean_duration: float
    std_duration: float
    safety_violations: int
    matches: List[MatchStats]

    @classmethod
    def build(cls, matches: Sequence[MatchStats], team: str) -> "SoloSummary":
        ordered = sorted(matches, key=lambda s: s.seed)
        durations = np.asarray([s.duration for s in ordered], dtype=np.float64)
        return cls(
            n=len(ordered),
            wins=sum(1 for s in ordered if s.winner == team),
            total_deaths=sum(s.deaths for s in ordered),
            capped=sum(1 for s in ordered if s.winner is None),
            mean_duration=float(durations.mean()) if len(ordered) else 0.0,
            std_duration=float(durations.std()) if len(ordered) else 0.0,
            safety_violations=sum(s.safety_violations for s in ordered),
            matches=ordered,
        )


@dataclass(frozen=True)
class TickSample:
    time: float
    agent_pos: WorldPos
    command: str
    agent_alive: bool = True
    pursuer_pos: Optional[WorldPos] = None


@dataclass(frozen=True)
class KitingWindow:
    start: float
    attacks: int
    moves: int
    separation_share: float

    @property
    def ok(self) -> bool:
        return (self.attacks >= KITING_MIN_ATTACKS and self.moves >= KITING_MIN_MOVES
                and self.separation_share >= KITING_SEPARATION_SHARE)


def first_contact(trace: Sequence[TickSample], reach: float) -> Optional[float]:
    for s in trace:
        if s.pursuer_pos is not None and distance(s.agent_pos, s.pursuer_pos) <= reach:
            return s.time
    return None


def kiting_windows(trace: Sequence[TickSample], contact: float,
                   window: float = KITING_WINDOW) -> List[KitingWindow]:
    """Consecutive full windows after ``contact``; a trailing partial window is dropped."""
    if not trace:
        return []
    end = trace[-1].time
    windows: List[KitingWindow] = []
    start = contact
    while start + window <= end + 1e-9:
        samples = [s for s in trace if start <= s.time < start + window]
        apart = [
            s for s in samples
            if s.pursuer_pos is not None and distance(s.agent_pos, s.pursuer_pos) >= KITING_MIN_SEPARATION
        ]
        windows.append(KitingWindow(
            start=start,
            attacks=sum(1 for s in samples if s.command == "Attack"),
            moves=sum(1 for s in samples if s.command == "Move"),
            separation_share=len(apart) / len(samples) if samples else 0.0,
        ))
        start += window
    return windows


def safety_violations(flags: Sequence[bool]) -> int:
    """Ticks the agent spent inside a hostile tower's forbidden radius."""
    return sum(1 for f in flags if f)
