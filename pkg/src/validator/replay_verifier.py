#!/usr/bin/env python3
"""
Replay Verification

Re-reads persisted JSON-Lines replays and checks them against the stats
written next to them: event ordering, tower lock consistency, attack
cadence, stream hash, and per-hero stats rebuilt through the reducer.
"""

import glob
import hashlib
import json
import os
import sys
from typing import Dict, List, Mapping, Optional

from src.agent.profiles import HeroProfile, load_profiles
from src.sim.config import MatchConfig
from src.sim.events import Event, EventKind, decode_stream, replay_reduce
from src.experiments.metrics import MatchStats
from src.utils.file_utils import read_json


def period_floors(config: MatchConfig,
                  profiles: Optional[Mapping[str, HeroProfile]] = None) -> Dict[str, float]:
    """
    Shortest attack period per entity tag (T tower, H hero, M/R creeps).

    Hero periods come from the config defaults, slot overrides and the
    profile table, loaded from ``config.profiles_path`` when not given.
    """
    if profiles is None:
        profiles = load_profiles(config.profiles_path, config.stats.hero)
    hero_periods = [config.stats.hero.attack_period]
    hero_periods += [s.stats.attack_period for s in config.heroes if s.stats is not None]
    hero_periods += [p.stats.attack_period for p in profiles.values() if p.stats is not None]
    return {
        "T": config.stats.tower.attack_period,
        "H": min(hero_periods),
        "M": config.stats.melee_creep.attack_period,
        "R": config.stats.ranged_creep.attack_period,
    }


def _tag(entity_id: str) -> str:
    return entity_id.split("-", 1)[1][:1] if "-" in entity_id else ""


def check_order(events: List[Event]) -> Optional[str]:
    for prev, cur in zip(events, events[1:]):
        if cur.time < prev.time or cur.tick < prev.tick:
            return f"time goes backwards at tick {cur.tick}"
    return None


def check_tower_lock(events: List[Event]) -> Optional[str]:
    locks: Dict[str, Optional[str]] = {}
    for e in events:
        if e.kind is EventKind.AGGRO_CHANGE:
            locks[e.actor] = e.target
        elif e.kind is EventKind.ATTACK and _tag(e.actor) == "T":
            if locks.get(e.actor) != e.target:
                return f"{e.actor} attacked {e.target} while locked on {locks.get(e.actor)} (tick {e.tick})"
    return None


def check_cadence(events: List[Event], floors: Dict[str, float], dt: float) -> Optional[str]:
    last: Dict[str, float] = {}
    for e in events:
        if e.kind is not EventKind.ATTACK:
            continue
        floor = floors.get(_tag(e.actor))
        if floor is not None and e.actor in last and e.time - last[e.actor] < floor - dt:
            return f"{e.actor} attacked twice within {e.time - last[e.actor]:.3f}s (tick {e.tick})"
        last[e.actor] = e.time
    return None


def verify_replay(replay_path: str, stats_path: Optional[str] = None,
                  config: Optional[MatchConfig] = None, verbose: bool = False) -> Dict:
    """
    Verify one replay file.

    Returns:
        Verification result dictionary
    """
    config = config or MatchConfig()
    result = {
        'file': replay_path,
        'verification': {
            'success': False,
            'order_ok': False,
            'tower_lock_ok': False,
            'cadence_ok': False,
            'hash_match': None,
            'stats_match': None,
            'message': ''
        },
        'statistics': {
            'events': 0,
            'duration': 0.0,
            'stream_hash': ''
        }
    }
    check = result['verification']

    try:
        with open(replay_path, 'rb') as f:
            raw = f.read()
        events = decode_stream(raw)
    except Exception as e:
        check['message'] = f"Error reading replay: {e}"
        return result

    digest = hashlib.sha256(raw).hexdigest()
    result['statistics'].update(events=len(events), stream_hash=digest,
                                duration=events[-1].time if events else 0.0)

    problems = []
    for key, problem in (
        ('order_ok', check_order(events)),
        ('tower_lock_ok', check_tower_lock(events)),
        ('cadence_ok', check_cadence(events, period_floors(config), config.dt)),
    ):
        check[key] = problem is None
        if problem:
            problems.append(problem)

    if stats_path is not None:
        try:
            stats = read_json(stats_path, type=MatchStats)
        except Exception as e:
            check['message'] = f"Error reading stats: {e}"
            return result
        check['hash_match'] = stats.replay_hash == digest
        check['stats_match'] = replay_reduce(events).as_dict() == stats.heroes
        if not check['hash_match']:
            problems.append("stream hash differs from stats")
        if not check['stats_match']:
            problems.append("reduced stats differ from persisted stats")

    check['success'] = not problems
    check['message'] = "; ".join(problems)

    if verbose:
        print(f"\n{'=' * 60}")
        print(f"File: {os.path.basename(replay_path)}")
        print(f"Verification: {check}")
        print(f"Statistics: {result['statistics']}")

    return result


def verify_directory(target_dir: str, output_report: Optional[str] = None,
                     config: Optional[MatchConfig] = None, verbose: bool = False) -> Dict:
    """Verify every ``*.jsonl`` replay in a directory (stats matched by name when present)."""
    replays = sorted(glob.glob(os.path.join(target_dir, "**", "*.jsonl"), recursive=True))
    results = {
        'summary': {'total': 0, 'pass': 0, 'fail': 0},
        'details': []
    }

    print(f"Verifying {len(replays)} replay files...")
    for replay_path in replays:
        candidates = [os.path.splitext(replay_path)[0] + '.stats.json',
                      os.path.join(os.path.dirname(replay_path), 'stats.json')]
        stats_path = next((p for p in candidates if os.path.exists(p)), None)
        result = verify_replay(replay_path, stats_path, config, verbose)
        results['details'].append(result)
        results['summary']['total'] += 1
        ok = result['verification']['success']
        results['summary']['pass' if ok else 'fail'] += 1
        print(f"  {'[PASS]' if ok else '[FAIL]'} {os.path.basename(replay_path)}")

    print("\n" + "=" * 60)
    print("REPLAY VERIFICATION SUMMARY")
    print("=" * 60)
    print(f"Total files: {results['summary']['total']}")
    print(f"Pass: {results['summary']['pass']}, Fail: {results['summary']['fail']}")

    if output_report:
        with open(output_report, 'w', encoding='utf-8') as f:
            json.dump(results, f, indent=2)
        print(f"\nReport saved to: {output_report}")

    return results


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description='Verify match replays')
    parser.add_argument('path', help='Replay file or directory of replays')
    parser.add_argument('--stats', help='Stats JSON for a single replay')
    parser.add_argument('--output', '-o', help='Output report JSON path')
    parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')
    args = parser.parse_args()

    if not os.path.exists(args.path):
        print(f"Error: Path not found: {args.path}")
        sys.exit(1)

    if os.path.isfile(args.path):
        outcome = verify_replay(args.path, args.stats, verbose=args.verbose)
        print(json.dumps(outcome, indent=2))
        sys.exit(0 if outcome['verification']['success'] else 1)
    verify_directory(args.path, args.output, verbose=args.verbose)
