"""
Hero Profiles

Archetype table standing in for a per-hero knowledge base: how far a hero
threatens (effective range) and how much its presence weighs (tactical value).
"""

from __future__ import annotations

import os
from typing import Dict, Optional, Tuple

import msgspec
from loguru import logger

from src.sim.config import ConfigError, UnitStats


class HeroProfile(msgspec.Struct, frozen=True, forbid_unknown_fields=True):
    name: str
    effective_range: float
    tactical_value: float
    is_melee: bool = False
    stats: Optional[UnitStats] = None


DEFAULT_PROFILES: Tuple[HeroProfile, ...] = (
    HeroProfile("ranged_carry", effective_range=600.0, tactical_value=400.0),
    HeroProfile(
        "melee_bruiser", effective_range=400.0, tactical_value=350.0, is_melee=True,
        stats=UnitStats(hp=600.0, damage=60.0, attack_period=1 / 0.7, windup=0.25, range=150.0,
                        move_speed=325.0),
    ),
    HeroProfile(
        "mage", effective_range=700.0, tactical_value=450.0,
        stats=UnitStats(hp=560.0, damage=55.0, attack_period=1 / 0.65, windup=0.3, range=525.0,
                        move_speed=325.0),
    ),
)


def profile_issues(profile: HeroProfile, attack_range: float, where: str) -> list:
    issues = []
    if profile.tactical_value <= 0:
        issues.append(f"{where}.tactical_value: must be > 0")
    if profile.effective_range < attack_range:
        issues.append(f"{where}.effective_range: must be >= auto-attack range {attack_range}")
    return issues


def build_table(profiles, default_stats: UnitStats, source: Optional[str] = None) -> Dict[str, HeroProfile]:
    """Index profiles by name, checking each against the stats it will play with."""
    table: Dict[str, HeroProfile] = {}
    issues = []
    for i, p in enumerate(profiles):
        stats = p.stats or default_stats
        issues += profile_issues(p, stats.range, f"profiles[{i}]")
        if p.name in table:
            issues.append(f"profiles[{i}].name: duplicate '{p.name}'")
        table[p.name] = p
    if issues:
        raise ConfigError(issues, source)
    return table


def load_profiles(path: Optional[str], default_stats: UnitStats) -> Dict[str, HeroProfile]:
    """Load the archetype table from JSON; the built-in table when ``path`` is None."""
    if path is None:
        return build_table(DEFAULT_PROFILES, default_stats)
    if not os.path.exists(path):
        raise ConfigError([f"{path}: file not found"], path)
    with open(path, "rb") as f:
        raw = f.read()
    try:
        profiles = msgspec.json.decode(raw, type=Tuple[HeroProfile, ...])
    except (msgspec.ValidationError, msgspec.DecodeError) as e:
        raise ConfigError([str(e)], path) from e
    table = build_table(profiles, default_stats, path)
    logger.debug(f"loaded {len(table)} hero profiles from {path}")
    return table
