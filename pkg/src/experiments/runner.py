"""
Match Runner

Drives the simulator and the agents tick by tick to victory or the time
cap, streaming the replay into its hash and optionally to a JSON-Lines file.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import msgspec
from loguru import logger

from src.agent.controller import AgentState, decide
from src.agent.navigation import in_forbidden_zone
from src.agent.profiles import HeroProfile, load_profiles
from src.agent.sensors import observe
from src.grid.geometry import GridSpec
from src.sim.commands import Command
from src.sim.config import ConfigError, HeroSlot, MatchConfig, UnitStats, validate
from src.sim.events import Event, encode_event
from src.sim.world import WorldState, build_world, step
from src.experiments.metrics import (
    KitingWindow,
    MatchStats,
    TickSample,
    UndefinedRateError,
    creeps_per_minute,
    first_contact,
    kiting_windows,
    safety_violations,
)


@dataclass
class MatchResult:
    stats: MatchStats
    events: List[Event] = field(default_factory=list)
    trace: List[TickSample] = field(default_factory=list)
    wall_seconds: float = 0.0
    # JSON-Lines replay, when asked for
    stream: bytes = b""


def grid_spec_for(config: MatchConfig) -> GridSpec:
    return GridSpec.for_map(config.map.width, config.map.height, config.grid.resolution)


def with_seed(config: MatchConfig, seed: int) -> MatchConfig:
    return msgspec.structs.replace(config, seed=seed)


def with_phi(config: MatchConfig, enabled: bool) -> MatchConfig:
    tuning = msgspec.structs.replace(config.agent.tuning, phi_enabled=enabled)
    return msgspec.structs.replace(config, agent=msgspec.structs.replace(config.agent, tuning=tuning))


def run_match(config: MatchConfig, seed: Optional[int] = None,
              profiles: Optional[Mapping[str, HeroProfile]] = None,
              keep_events: bool = False, record_trace: bool = False,
              replay_path: Optional[str] = None, keep_stream: bool = False) -> MatchResult:
    """
    Play one match to victory or the time cap.

    The first agent-controlled hero is the one reported in the stats.
    ``keep_stream`` returns the encoded replay on the result instead of
    writing it, so pool workers leave file output to the coordinator.

    Raises:
        ConfigError: invalid config, or no agent-controlled hero
    """
    validate(config)
    seed = config.seed if seed is None else seed
    if profiles is None:
        profiles = load_profiles(config.profiles_path, config.stats.hero)

    started = time.perf_counter()
    world = build_world(config, seed, profiles)
    spec = grid_spec_for(config)
    agents: Dict[str, AgentState] = {
        h.id: AgentState.from_config(h.id, spec, config.agent)
        for h in sorted(world.heroes(), key=lambda u: u.id) if h.controller == "agent"
    }
    if not agents:
        raise ConfigError(["heroes: no agent-controlled hero"])
    main_id = next(iter(agents))

    hasher = hashlib.sha256()
    events: List[Event] = []
    trace: List[TickSample] = []
    flags: List[bool] = []
    lines: List[bytes] = []
    sink = open(replay_path, "wb") if replay_path else None
    try:
        while not world.finished:
            now = world.clock
            commands: Dict[str, Command] = {}
            for hero_id, agent in agents.items():
                if hero_id not in world.units:
                    continue
                view = observe(world, hero_id, profiles, agent.tuning)
                commands[hero_id] = decide(view, agent, now)
                if hero_id == main_id:
                    flags.append(in_forbidden_zone(view, spec, agent.tuning))
            if record_trace:
                trace.append(_sample(world, main_id, commands.get(main_id), now))

            _, tick_events = step(world, commands)
            for e in tick_events:
                line = encode_event(e)
                hasher.update(line)
                if sink is not None:
                    sink.write(line)
                if keep_stream:
                    lines.append(line)
            if keep_events:
                events.extend(tick_events)
    finally:
        if sink is not None:
            sink.close()

    tally = world.ledger.tally(main_id)
    stats = MatchStats(
        seed=seed,
        winner=world.winner.value if world.winner else None,
        duration=world.clock,
        hero_id=main_id,
        kills=tally.kills,
        deaths=tally.deaths,
        assists=tally.assists,
        last_hits=tally.last_hits,
        replay_hash=hasher.hexdigest(),
        phi_enabled=config.agent.tuning.phi_enabled,
        safety_violations=safety_violations(flags),
        heroes=world.ledger.as_dict(),
    )
    try:
        stats.cpm = creeps_per_minute(stats)
    except UndefinedRateError:
        stats.cpm = None

    wall = time.perf_counter() - started
    logger.info(
        f"seed {seed}: winner={stats.winner} t={stats.duration / 60:.1f}min "
        f"cs={stats.last_hits} deaths={stats.deaths} ({wall:.1f}s)"
    )
    return MatchResult(stats, events, trace, wall, b"".join(lines))


def _sample(world: WorldState, hero_id: str, cmd: Optional[Command], now: float) -> TickSample:
    hero = world.hero(hero_id)
    pursuers = sorted(world.heroes(hero.team.enemy), key=lambda u: u.id)
    return TickSample(
        time=now,
        agent_pos=hero.pos,
        command=cmd.kind.value if cmd is not None else "None",
        agent_alive=hero_id in world.units,
        pursuer_pos=pursuers[0].pos if pursuers else None,
    )


# --- duel -------------------------------------------------------------------

DUEL_PURSUER_HP = 5000.0
# heavy melee swing
DUEL_PURSUER_WINDUP = 0.6


@dataclass
class DuelResult:
    stats: MatchStats
    contact: Optional[float]
    windows: List[KitingWindow]

    @property
    def ok(self) -> bool:
        return (self.contact is not None and bool(self.windows)
                and all(w.ok for w in self.windows) and self.stats.deaths == 0)


def duel_config(config: MatchConfig, duration: float = 60.0, gap: float = 1200.0) -> MatchConfig:
    """
    Open-field duel: no towers or creeps, the agent against a melee
    pursuer with equal move speed, far from both bases.
    """
    m = config.map
    hero = config.stats.hero
    pursuer = UnitStats(hp=DUEL_PURSUER_HP, damage=hero.damage, attack_period=hero.attack_period,
                        windup=DUEL_PURSUER_WINDUP, range=150.0, move_speed=hero.move_speed)
    mid = (m.blue_base_x + m.red_base_x) / 2
    return msgspec.structs.replace(
        config,
        map=msgspec.structs.replace(m, blue_towers=(), red_towers=()),
        wave=msgspec.structs.replace(config.wave, melee_count=0, ranged_count=0),
        heroes=(
            HeroSlot(team="Blue", controller="agent", profile="ranged_carry", spawn_x=mid),
            HeroSlot(team="Red", controller="chaser", profile="melee_bruiser", spawn_x=mid + gap,
                     stats=pursuer),
        ),
        time_cap=duration,
    )


def run_duel(config: MatchConfig, seed: Optional[int] = None, duration: float = 60.0) -> DuelResult:
    cfg = duel_config(config, duration)
    result = run_match(cfg, seed, record_trace=True)
    contact = first_contact(result.trace, cfg.stats.hero.range)
    windows = kiting_windows(result.trace, contact) if contact is not None else []
    return DuelResult(result.stats, contact, windows)


# --- determinism ------------------------------------------------------------

def run_determinism_check(configs: Sequence[Tuple[str, MatchConfig]], repeats: int = 3,
                          seed: Optional[int] = None) -> Dict[str, List[str]]:
    """Replay hashes per labelled config; each list should hold one value repeated."""
    hashes: Dict[str, List[str]] = {}
    for label, cfg in configs:
        hashes[label] = [run_match(cfg, seed).stats.replay_hash for _ in range(repeats)]
        logger.debug(f"{label}: {len(set(hashes[label]))} distinct hash(es)")
    return hashes


def deterministic(hashes: Mapping[str, List[str]]) -> bool:
    return all(len(set(v)) == 1 for v in hashes.values())
