#!/usr/bin/env python3
"""
Lanecraft command line

Runs single matches, the experiment suites, the kiting duel and the
heatmap scenarios, and verifies persisted replays.

Exit codes: 0 success, 2 usage or config error, 3 assertion failure.
"""

import argparse
import os
import sys
from typing import List, Optional

import msgspec
from loguru import logger

from src.cli.scenarios import SCENARIOS, UnknownScenarioError, build_scenario
from src.grid.heatmap_export import write_csv, write_pgm
from src.influence.composer import compose, compose_sum
from src.sim.config import ConfigError, MatchConfig, load_config
from src.experiments.metrics import KITING_WINDOW
from src.experiments.report import ablation_rows, ablation_text, solo_text
from src.experiments.runner import run_duel, run_match, with_phi
from src.experiments.suites import run_farm_ablation, run_solo_win_suite
from src.utils.file_utils import ensure_dir, output_path, write_json, write_text
from src.validator.replay_verifier import verify_directory, verify_replay

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ASSERT = 3

SEED_ENV = "LANECRAFT_SEED"
LOG_LEVEL_ENV = "LANECRAFT_LOG_LEVEL"
DEFAULT_OUT = "out"
ABLATION_FACTOR = 1.15


class UsageError(ValueError):
    pass


def setup_logging(level: Optional[str]) -> None:
    level = (level or os.environ.get(LOG_LEVEL_ENV) or "INFO").upper()
    logger.remove()
    logger.add(sys.stderr, level=level,
               format="<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {message}")


def resolve_seed(flag: Optional[int], config: MatchConfig) -> int:
    """--seed wins, then LANECRAFT_SEED, then the config's own seed."""
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got '{env}'")
    return config.seed


def load_run_config(args) -> MatchConfig:
    """Load and validate the config, then apply flag overrides."""
    cfg = load_config(args.config)
    if getattr(args, "phi", None) is not None:
        cfg = with_phi(cfg, args.phi == "on")
    if not any(s.controller == "agent" for s in cfg.heroes):
        raise ConfigError(["heroes: no agent-controlled hero"], args.config)
    return msgspec.structs.replace(cfg, seed=resolve_seed(args.seed, cfg))


def _check_n(n: int) -> int:
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")
    return n


# --- commands ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    cfg = load_run_config(args)
    out_dir = ensure_dir(args.out)
    result = run_match(cfg, cfg.seed, replay_path=os.path.join(out_dir, "replay.jsonl"))
    write_json(os.path.join(out_dir, "stats.json"), result.stats)
    s = result.stats
    print(f"winner={s.winner} duration={s.duration / 60:.2f}min last_hits={s.last_hits} "
          f"deaths={s.deaths} hash={s.replay_hash[:12]}")
    print(f"Output: {out_dir}")
    return EXIT_OK


def cmd_solo_suite(args) -> int:
    n = _check_n(args.n)
    cfg = load_run_config(args)
    out_dir = ensure_dir(args.out)
    replay_dir = os.path.join(out_dir, "replays") if args.replays else None
    summary = run_solo_win_suite(cfg, n, cfg.seed, args.jobs, replay_dir)
    write_json(output_path(out_dir, "solo_summary.json"), summary)
    text = solo_text(summary)
    write_text(output_path(out_dir, "solo_summary.txt"), text)
    print(text, end="")

    if args.check:
        ok = summary.wins == summary.n and summary.total_deaths == 0 and summary.safety_violations == 0
        if not ok:
            logger.error(f"solo suite assertion failed: {summary.wins}/{summary.n} wins, "
                         f"{summary.total_deaths} deaths, {summary.safety_violations} violations")
            return EXIT_ASSERT
    return EXIT_OK


def cmd_farm_ablation(args) -> int:
    n = _check_n(args.n)
    cfg = load_run_config(args)
    out_dir = ensure_dir(args.out)
    replay_dir = os.path.join(out_dir, "replays") if args.replays else None
    report = run_farm_ablation(cfg, n, cfg.seed, args.jobs, replay_dir)
    write_json(output_path(out_dir, "ablation_report.json"), report)
    write_json(output_path(out_dir, "ablation_table.json"), ablation_rows(report))
    text = ablation_text(report, ABLATION_FACTOR)
    write_text(output_path(out_dir, "ablation_report.txt"), text)
    print(text, end="")

    if args.check and not report.passes(ABLATION_FACTOR):
        logger.error(f"ablation assertion failed: on {report.mean_cpm_on:.3f} "
                     f"< {ABLATION_FACTOR} x off {report.mean_cpm_off:.3f}")
        return EXIT_ASSERT
    return EXIT_OK


def cmd_duel(args) -> int:
    cfg = load_run_config(args)
    out_dir = ensure_dir(args.out)
    result = run_duel(cfg, cfg.seed, args.duration)
    write_json(output_path(out_dir, "duel.json"), {
        "stats": result.stats,
        "contact": result.contact,
        "windows": result.windows,
        "ok": result.ok,
    })

    print("=" * 60)
    print("KITING DUEL")
    print("=" * 60)
    print(f"First contact: {'-' if result.contact is None else f'{result.contact:.2f}s'}")
    print(f"Agent deaths:  {result.stats.deaths}")
    print(f"{'start':>8}{'attacks':>9}{'moves':>7}{'apart %':>9}")
    for w in result.windows:
        print(f"{w.start:>8.2f}{w.attacks:>9}{w.moves:>7}{w.separation_share * 100:>9.1f}"
              f"  {'ok' if w.ok else 'FAIL'}")
    print(f"Windows of {KITING_WINDOW:.0f}s: {sum(w.ok for w in result.windows)}/{len(result.windows)} ok")
    print("=" * 60)

    if args.check and not result.ok:
        logger.error("kiting assertion failed")
        return EXIT_ASSERT
    return EXIT_OK


def cmd_heatmap(args) -> int:
    cfg = load_config(args.config)
    try:
        scenario, spec = build_scenario(args.scenario, cfg)
    except UnknownScenarioError as e:
        raise UsageError(e.args[0])

    out_dir = ensure_dir(args.out)
    grids = [("max", compose(scenario.view, spec, scenario.tuning))]
    if scenario.variants == "both":
        grids.append(("sum", compose_sum(scenario.view, spec, scenario.tuning)))

    for variant, grid in grids:
        stem = scenario.name if len(grids) == 1 else f"{scenario.name}_{variant}"
        write_csv(grid, os.path.join(out_dir, f"{stem}.csv"))
        write_pgm(grid, os.path.join(out_dir, f"{stem}.pgm"))
        logger.info(f"wrote {stem}.csv / {stem}.pgm ({spec.cols}x{spec.rows})")
    print(f"Output: {out_dir}")
    return EXIT_OK


def cmd_verify_replay(args) -> int:
    cfg = load_config(args.config)
    if not os.path.exists(args.path):
        raise UsageError(f"path not found: {args.path}")
    if os.path.isdir(args.path):
        results = verify_directory(args.path, args.output, cfg, args.verbose)
        return EXIT_OK if results['summary']['fail'] == 0 else EXIT_ASSERT

    outcome = verify_replay(args.path, args.stats, cfg, args.verbose)
    check = outcome['verification']
    print(f"{'[PASS]' if check['success'] else '[FAIL]'} {args.path} "
          f"({outcome['statistics']['events']} events) {check['message']}")
    if args.output:
        write_json(args.output, outcome)
    return EXIT_OK if check['success'] else EXIT_ASSERT


# --- parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser, seeded: bool = True) -> None:
    p.add_argument('--config', '-c', default=None, help='Match config JSON (default: built-in defaults)')
    p.add_argument('--out', '-o', default=DEFAULT_OUT, help=f'Output directory (default: {DEFAULT_OUT})')
    p.add_argument('--log-level', default=None, help=f'Log level (default: ${LOG_LEVEL_ENV} or INFO)')
    if seeded:
        p.add_argument('--seed', type=int, default=None, help=f'Seed (default: ${SEED_ENV} or config seed)')
        p.add_argument('--phi', choices=['on', 'off'], default=None, help='Override the creep HP term')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lanecraft",
        description="Influence-map lane agent: matches, experiments and heatmaps",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    python -m src.cli.main simulate --seed 42 --out out/match
    python -m src.cli.main solo-suite --n 20 --jobs 4 --assert
    python -m src.cli.main farm-ablation --n 10 --assert
    python -m src.cli.main heatmap --scenario max-vs-sum --out out/heatmaps
    python -m src.cli.main verify-replay out/match/replay.jsonl --stats out/match/stats.json
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser('simulate', help='Play one match')
    _common(p)
    p.set_defaults(func=cmd_simulate)

    for name, func, default_n, help_text in (
        ('solo-suite', cmd_solo_suite, 20, 'Solo matches against towers and creeps'),
        ('farm-ablation', cmd_farm_ablation, 10, 'Seed-paired matches with the HP term on and off'),
    ):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        p.add_argument('--n', type=int, default=default_n, help=f'Matches (per arm) (default: {default_n})')
        p.add_argument('--jobs', '-j', type=int, default=None, help='Worker processes (default: CPU count)')
        p.add_argument('--replays', action='store_true', help='Also write every replay')
        p.add_argument('--assert', dest='check', action='store_true', help='Exit 3 if the result misses its bound')
        p.set_defaults(func=func)

    p = sub.add_parser('duel', help='Kiting duel against a melee pursuer')
    _common(p)
    p.add_argument('--duration', type=float, default=60.0, help='Duel length in seconds (default: 60)')
    p.add_argument('--assert', dest='check', action='store_true', help='Exit 3 unless every window kites')
    p.set_defaults(func=cmd_duel)

    p = sub.add_parser('heatmap', help='Write a canned scenario grid as CSV + PGM')
    _common(p, seeded=False)
    p.add_argument('--scenario', '-s', required=True, help=f"One of: {', '.join(SCENARIOS)}")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser('verify-replay', help='Check a replay file or a directory of replays')
    p.add_argument('path', help='Replay file or directory')
    p.add_argument('--stats', default=None, help='Stats JSON for a single replay')
    p.add_argument('--config', '-c', default=None, help='Match config the replay was played with')
    p.add_argument('--output', default=None, help='Write the verification report here')
    p.add_argument('--log-level', default=None)
    p.add_argument('--verbose', '-v', action='store_true')
    p.set_defaults(func=cmd_verify_replay)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    setup_logging(args.log_level)

    try:
        return args.func(args)
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
