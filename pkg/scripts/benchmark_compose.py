#!/usr/bin/env python3
"""
Compose micro-benchmark

Times full-grid composition for each heatmap scenario on the default map.

Usage:
    python scripts/benchmark_compose.py
    python scripts/benchmark_compose.py --repeats 500 --resolution 50
"""

import argparse
import os
import sys
import time

import msgspec
import numpy as np
from tqdm import tqdm

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.cli.scenarios import SCENARIOS, build_scenario  # noqa: E402
from src.grid.influence_grid import InfluenceGrid  # noqa: E402
from src.influence.composer import compose  # noqa: E402
from src.sim.config import load_config  # noqa: E402


def bench(name, cfg, repeats):
    scenario, spec = build_scenario(name, cfg)
    grid = InfluenceGrid(spec)
    samples = np.empty(repeats)
    for i in range(repeats):
        started = time.perf_counter()
        compose(scenario.view, spec, scenario.tuning, grid)
        samples[i] = time.perf_counter() - started
    return spec, samples


def main():
    parser = argparse.ArgumentParser(description='Benchmark influence grid composition')
    parser.add_argument('--config', '-c', default=None, help='Match config JSON')
    parser.add_argument('--repeats', '-n', type=int, default=200, help='Compositions per scenario (default: 200)')
    parser.add_argument('--resolution', '-r', type=float, default=None, help='Override grid resolution')
    args = parser.parse_args()

    cfg = load_config(args.config)
    if args.resolution:
        cfg = msgspec.structs.replace(cfg, grid=msgspec.structs.replace(cfg.grid, resolution=args.resolution))

    rows = []
    for name in tqdm(SCENARIOS, desc="Scenarios"):
        spec, samples = bench(name, cfg, args.repeats)
        rows.append((name, spec, samples))

    print("\n" + "=" * 60)
    print("COMPOSE BENCHMARK")
    print("=" * 60)
    print(f"{'scenario':<22}{'grid':>10}{'mean ms':>10}{'p95 ms':>10}")
    for name, spec, samples in rows:
        print(f"{name:<22}{f'{spec.cols}x{spec.rows}':>10}"
              f"{samples.mean() * 1e3:>10.3f}{np.percentile(samples, 95) * 1e3:>10.3f}")
    return 0


if __name__ == "__main__":
    exit(main())
