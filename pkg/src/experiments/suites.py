"""
Experiment Suites

Batches of seeded matches run on a bounded process pool: the solo win
suite and the seed-paired farming ablation. Workers hand their replay
streams back; only this process writes replay files.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple

from loguru import logger
from tqdm import tqdm

from src.sim.config import MatchConfig
from src.experiments.metrics import AblationReport, MatchStats, SoloSummary
from src.experiments.runner import run_match, with_phi, with_seed

Played = Tuple[MatchStats, bytes]


def replay_name(config: MatchConfig, seed: int) -> str:
    tag = "on" if config.agent.tuning.phi_enabled else "off"
    return f"replay_seed{seed}_phi-{tag}.jsonl"


def _play(config: MatchConfig, seed: int, keep_stream: bool) -> Played:
    try:
        result = run_match(with_seed(config, seed), seed, keep_stream=keep_stream)
        return result.stats, result.stream
    except Exception as e:
        logger.error(f"seed {seed} failed: {e}")
        stats = MatchStats(seed=seed, winner=None, duration=0.0, hero_id="",
                           phi_enabled=config.agent.tuning.phi_enabled, message=str(e))
        return stats, b""


def default_jobs() -> int:
    return os.cpu_count() or 1


def _save(config: MatchConfig, played: Played, replay_dir: Optional[str]) -> MatchStats:
    stats, stream = played
    if replay_dir and stream:
        with open(os.path.join(replay_dir, replay_name(config, stats.seed)), "wb") as f:
            f.write(stream)
    return stats


def run_batch(config: MatchConfig, seeds: Sequence[int], jobs: Optional[int] = None,
              replay_dir: Optional[str] = None, desc: str = "Matches",
              play: Callable[[MatchConfig, int, bool], Played] = _play) -> List[MatchStats]:
    """Run one match per seed; results come back sorted by seed."""
    jobs = jobs or default_jobs()
    keep = bool(replay_dir)
    if replay_dir:
        os.makedirs(replay_dir, exist_ok=True)
    results: List[MatchStats] = []
    if jobs <= 1 or len(seeds) <= 1:
        for seed in tqdm(seeds, desc=desc, unit="match"):
            results.append(_save(config, play(config, seed, keep), replay_dir))
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(seeds))) as executor:
            futures = {executor.submit(play, config, seed, keep): seed for seed in seeds}
            with tqdm(total=len(futures), desc=desc, unit="match") as pbar:
                for future in as_completed(futures):
                    results.append(_save(config, future.result(), replay_dir))
                    pbar.update(1)
    return sorted(results, key=lambda s: s.seed)


def solo_seeds(n: int, base_seed: int) -> List[int]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return list(range(base_seed, base_seed + n))


def run_solo_win_suite(config: MatchConfig, n: int, base_seed: int, jobs: Optional[int] = None,
                       replay_dir: Optional[str] = None) -> SoloSummary:
    """``n`` solo matches over consecutive seeds, summarized for the agent's team."""
    seeds = solo_seeds(n, base_seed)
    matches = run_batch(config, seeds, jobs, replay_dir, desc="Solo suite")
    team = next((s.team for s in config.heroes if s.controller == "agent"), "Blue")
    return SoloSummary.build(matches, team)


def run_farm_ablation(config: MatchConfig, n_per_arm: int, base_seed: int, jobs: Optional[int] = None,
                      replay_dir: Optional[str] = None) -> AblationReport:
    """Both HP-term arms on the same seed list."""
    seeds = solo_seeds(n_per_arm, base_seed)
    on = run_batch(with_phi(config, True), seeds, jobs, replay_dir, desc="phi on")
    off = run_batch(with_phi(config, False), seeds, jobs, replay_dir, desc="phi off")
    return AblationReport.build(on, off)
