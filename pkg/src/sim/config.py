"""
Match Configuration

Typed sections of the match config document, decoding from JSON and
validation that reports every offending field at once.
"""

from __future__ import annotations

import os
from typing import List, Optional, Tuple

import msgspec

from src.influence.features import InfluenceTuning


class ConfigError(ValueError):
    """Invalid match configuration; ``issues`` lists "<path>: <message>" entries."""

    def __init__(self, issues: List[str], source: Optional[str] = None):
        self.issues = list(issues)
        self.source = source
        where = f" in {source}" if source else ""
        super().__init__(f"invalid config{where}: " + "; ".join(self.issues))


class UnitStats(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    hp: float
    damage: float
    attack_period: float
    windup: float
    range: float
    move_speed: float
    aggro_radius: float = 0.0


class TowerStats(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    hp: float = 3500.0
    damage: float = 150.0
    attack_period: float = 1.2
    range: float = 775.0


class StatsConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    hero: UnitStats = msgspec.field(default_factory=lambda: UnitStats(
        hp=600.0, damage=60.0, attack_period=1 / 0.7, windup=0.25, range=550.0, move_speed=325.0))
    melee_creep: UnitStats = msgspec.field(default_factory=lambda: UnitStats(
        hp=450.0, damage=12.0, attack_period=1.25, windup=0.2, range=110.0, move_speed=325.0,
        aggro_radius=600.0))
    ranged_creep: UnitStats = msgspec.field(default_factory=lambda: UnitStats(
        hp=280.0, damage=23.0, attack_period=1.5, windup=0.3, range=500.0, move_speed=325.0,
        aggro_radius=600.0))
    tower: TowerStats = msgspec.field(default_factory=TowerStats)
    nexus_hp: float = 2000.0


class MapConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    width: float = 12000.0
    height: float = 3000.0
    lane_y: float = 1500.0
    blue_base_x: float = 500.0
    red_base_x: float = 11500.0
    blue_towers: Tuple[float, ...] = (3500.0, 5000.0)
    red_towers: Tuple[float, ...] = (7000.0, 8500.0)


class WaveConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    period: float = 30.0
    first_spawn: float = 15.0
    melee_count: int = 3
    ranged_count: int = 3
    spawn_spacing: float = 60.0
    spawn_jitter: float = 40.0


class GridConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    resolution: float = 100.0


class AgentConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    tuning: InfluenceTuning = msgspec.field(default_factory=InfluenceTuning)
    latency: float = 0.05
    turn_time: float = 0.0
    im_rate: float = 10.0
    decision_horizon: float = 1.0
    lane_presence: bool = True


class HeroSlot(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    team: str = "Blue"
    controller: str = "agent"
    profile: str = "ranged_carry"
    spawn_x: Optional[float] = None
    spawn_y: Optional[float] = None
    stats: Optional[UnitStats] = None


class MatchConfig(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    map: MapConfig = msgspec.field(default_factory=MapConfig)
    stats: StatsConfig = msgspec.field(default_factory=StatsConfig)
    wave: WaveConfig = msgspec.field(default_factory=WaveConfig)
    grid: GridConfig = msgspec.field(default_factory=GridConfig)
    agent: AgentConfig = msgspec.field(default_factory=AgentConfig)
    heroes: Tuple[HeroSlot, ...] = msgspec.field(default_factory=lambda: (HeroSlot(),))
    dt: float = 1 / 30
    time_cap: float = 2400.0
    seed: int = 0
    hero_respawn: float = 10.0
    profiles_path: Optional[str] = None


TEAMS = ("Blue", "Red")
CONTROLLERS = ("agent", "chaser", "idle")


def _check_unit(path: str, s: UnitStats, issues: List[str]) -> None:
    for name in ("hp", "range", "move_speed", "attack_period"):
        if getattr(s, name) <= 0:
            issues.append(f"{path}.{name}: must be > 0")
    if s.damage < 0:
        issues.append(f"{path}.damage: must be >= 0")
    if s.windup < 0:
        issues.append(f"{path}.windup: must be >= 0")
    if s.attack_period <= s.windup:
        issues.append(f"{path}.attack_period: must exceed windup ({s.windup})")
    if s.aggro_radius < 0:
        issues.append(f"{path}.aggro_radius: must be >= 0")


def validation_issues(cfg: MatchConfig) -> List[str]:
    """Collect every range violation in ``cfg``; empty when valid."""
    issues: List[str] = []
    m = cfg.map
    if m.width <= 0 or m.height <= 0:
        issues.append("map: width and height must be > 0")
    if not 0 <= m.lane_y <= m.height:
        issues.append("map.lane_y: must lie inside the map")
    for name in ("blue_base_x", "red_base_x"):
        if not 0 <= getattr(m, name) <= m.width:
            issues.append(f"map.{name}: must lie inside the map")
    for name in ("blue_towers", "red_towers"):
        for i, x in enumerate(getattr(m, name)):
            if not 0 <= x <= m.width:
                issues.append(f"map.{name}[{i}]: must lie inside the map")

    _check_unit("stats.hero", cfg.stats.hero, issues)
    _check_unit("stats.melee_creep", cfg.stats.melee_creep, issues)
    _check_unit("stats.ranged_creep", cfg.stats.ranged_creep, issues)
    t = cfg.stats.tower
    for name in ("hp", "damage", "attack_period", "range"):
        if getattr(t, name) <= 0:
            issues.append(f"stats.tower.{name}: must be > 0")
    if cfg.stats.nexus_hp <= 0:
        issues.append("stats.nexus_hp: must be > 0")

    w = cfg.wave
    if w.period <= 0:
        issues.append("wave.period: must be > 0")
    if w.first_spawn < 0:
        issues.append("wave.first_spawn: must be >= 0")
    if w.melee_count < 0 or w.ranged_count < 0:
        issues.append("wave: counts must be >= 0")
    if w.spawn_spacing < 0 or w.spawn_jitter < 0:
        issues.append("wave: spawn_spacing and spawn_jitter must be >= 0")

    if cfg.grid.resolution <= 0:
        issues.append("grid.resolution: must be > 0")

    a = cfg.agent
    if a.latency < 0:
        issues.append("agent.latency: must be >= 0")
    if a.turn_time < 0:
        issues.append("agent.turn_time: must be >= 0")
    if a.im_rate <= 0:
        issues.append("agent.im_rate: must be > 0")
    if a.decision_horizon <= 0:
        issues.append("agent.decision_horizon: must be > 0")

    if not cfg.heroes:
        issues.append("heroes: at least one hero slot is required")
    for i, slot in enumerate(cfg.heroes):
        if slot.team not in TEAMS:
            issues.append(f"heroes[{i}].team: must be one of {', '.join(TEAMS)}")
        if slot.controller not in CONTROLLERS:
            issues.append(f"heroes[{i}].controller: must be one of {', '.join(CONTROLLERS)}")
        if slot.stats is not None:
            _check_unit(f"heroes[{i}].stats", slot.stats, issues)

    if cfg.dt <= 0:
        issues.append("dt: must be > 0")
    if cfg.time_cap <= 0:
        issues.append("time_cap: must be > 0")
    if cfg.hero_respawn < 0:
        issues.append("hero_respawn: must be >= 0")
    return issues


def validate(cfg: MatchConfig, source: Optional[str] = None) -> MatchConfig:
    issues = validation_issues(cfg)
    if issues:
        raise ConfigError(issues, source)
    return cfg


def _line_of(text: str, message: str) -> Optional[int]:
    # msgspec reports syntax errors as "... (byte N)"
    marker = "(byte "
    if marker not in message:
        return None
    try:
        offset = int(message.split(marker, 1)[1].split(")", 1)[0])
    except ValueError:
        return None
    return text[:offset].count("\n") + 1


def parse_config(text: str, source: Optional[str] = None) -> MatchConfig:
    """
    Decode and validate a match config document.

    Raises:
        ConfigError: syntax errors (with line), schema errors (with JSON path)
            or range violations (every offending field)
    """
    try:
        cfg = msgspec.json.decode(text.encode("utf-8") if isinstance(text, str) else text, type=MatchConfig)
    except msgspec.ValidationError as e:
        raise ConfigError([str(e)], source) from e
    except msgspec.DecodeError as e:
        line = _line_of(text, str(e))
        where = f"line {line}: " if line else ""
        raise ConfigError([f"{where}{e}"], source) from e
    return validate(cfg, source)


def load_config(path: Optional[str]) -> MatchConfig:
    """Load a config file; ``None`` gives the validated defaults."""
    if path is None:
        return validate(MatchConfig())
    if not os.path.exists(path):
        raise ConfigError([f"{path}: file not found"], path)
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read(), path)


def config_to_dict(cfg: MatchConfig) -> dict:
    return msgspec.to_builtins(cfg)


def dump_config(cfg: MatchConfig) -> str:
    return msgspec.json.format(msgspec.json.encode(cfg), indent=2).decode("utf-8")
