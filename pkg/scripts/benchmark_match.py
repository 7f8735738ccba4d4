#!/usr/bin/env python3
"""
Match wall-clock benchmark

Plays full solo matches in this process and reports wall time per match,
simulated minutes per wall second and the per-tick cost.

Usage:
    python scripts/benchmark_match.py
    python scripts/benchmark_match.py --seeds 3 --cap 1800
"""

import argparse
import os
import sys

import msgspec
import numpy as np
from loguru import logger
from tqdm import tqdm

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.experiments.runner import run_match  # noqa: E402
from src.sim.config import load_config  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description='Benchmark full simulated matches')
    parser.add_argument('--config', '-c', default=None, help='Match config JSON')
    parser.add_argument('--seeds', '-n', type=int, default=3, help='Matches to play (default: 3)')
    parser.add_argument('--cap', type=float, default=1800.0, help='Time cap in seconds (default: 1800)')
    args = parser.parse_args()

    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    cfg = msgspec.structs.replace(load_config(args.config), time_cap=args.cap)

    rows = []
    for seed in tqdm(range(args.seeds), desc="Matches", unit="match"):
        result = run_match(cfg, seed)
        ticks = round(result.stats.duration / cfg.dt)
        rows.append((seed, result.stats.duration, result.wall_seconds, ticks))

    print("\n" + "=" * 60)
    print("MATCH BENCHMARK")
    print("=" * 60)
    print(f"{'seed':<6}{'sim min':>10}{'wall s':>10}{'ms/tick':>10}")
    for seed, duration, wall, ticks in rows:
        print(f"{seed:<6}{duration / 60:>10.1f}{wall:>10.2f}{wall / max(ticks, 1) * 1e3:>10.3f}")
    walls = np.array([r[2] for r in rows])
    print(f"\nmean wall {walls.mean():.2f}s (target < 15 s per 30-min match)")
    return 0


if __name__ == "__main__":
    exit(main())
