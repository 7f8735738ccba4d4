"""
Experiment Reports

Aligned-column text renderings of suite results, with the published
reference figures printed alongside for comparison (never asserted).
"""

from __future__ import annotations

from typing import List, Optional

from src.experiments.metrics import BASELINE_CPM, AblationReport, SoloSummary, efficiency

REFERENCE_SOLO = {
    "matches": 20,
    "wins": 20,
    "deaths": 0,
    "mean_minutes": 22.6,
    "std_minutes": 5.0,
}
REFERENCE_FARM = {
    "phi_off_cpm": 6.084,
    "phi_on_cpm": 9.224,
}

BANNER = "=" * 60


def _fmt(value: Optional[float], digits: int = 2) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def solo_text(summary: SoloSummary) -> str:
    lines: List[str] = [
        BANNER,
        "SOLO WIN SUITE",
        BANNER,
        f"Matches:            {summary.n}",
        f"Wins:               {summary.wins}/{summary.n}",
        f"Capped (no winner): {summary.capped}",
        f"Total agent deaths: {summary.total_deaths}",
        f"Mean duration:      {summary.mean_duration / 60:.2f} min",
        f"Std duration:       {summary.std_duration / 60:.2f} min",
        f"Safety violations:  {summary.safety_violations}",
        "",
        f"{'seed':>6}  {'winner':<8}{'minutes':>9}{'cs':>6}{'cpm':>8}{'deaths':>8}",
    ]
    for s in summary.matches:
        lines.append(
            f"{s.seed:>6}  {str(s.winner):<8}{s.duration / 60:>9.2f}{s.last_hits:>6}"
            f"{_fmt(s.cpm):>8}{s.deaths:>8}"
        )
    ref = REFERENCE_SOLO
    lines += [
        "",
        "Published reference (different engine, directional only):",
        f"  {ref['wins']}/{ref['matches']} wins, {ref['deaths']} deaths, "
        f"{ref['mean_minutes']} +/- {ref['std_minutes']} min",
        BANNER,
    ]
    return "\n".join(lines) + "\n"


def ablation_rows(report: AblationReport) -> List[dict]:
    """Method / CPM / Efficiency rows: baseline, HP term off, HP term on."""
    return [
        {"method": "Baseline", "cpm": BASELINE_CPM, "efficiency": 100.0, "reference_cpm": BASELINE_CPM},
        {"method": "phi disabled", "cpm": report.mean_cpm_off, "efficiency": report.efficiency_off,
         "reference_cpm": REFERENCE_FARM["phi_off_cpm"]},
        {"method": "phi enabled", "cpm": report.mean_cpm_on, "efficiency": report.efficiency_on,
         "reference_cpm": REFERENCE_FARM["phi_on_cpm"]},
    ]


def ablation_text(report: AblationReport, factor: float = 1.15) -> str:
    lines: List[str] = [
        BANNER,
        "FARMING ABLATION (HP term)",
        BANNER,
        f"Matches per arm: {len(report.phi_on)}",
        "",
        f"{'Method':<14}{'CPM':>8}{'Eff. %':>9}{'Ref CPM':>9}{'Ref %':>8}",
    ]
    for row in ablation_rows(report):
        lines.append(
            f"{row['method']:<14}{row['cpm']:>8.3f}{row['efficiency']:>9.2f}"
            f"{row['reference_cpm']:>9.3f}{efficiency(row['reference_cpm']):>8.2f}"
        )
    if report.std_cpm_on is not None:
        lines.append(f"Std CPM: on {_fmt(report.std_cpm_on, 3)}, off {_fmt(report.std_cpm_off, 3)}")
    ratio = report.ratio
    lines += [
        "",
        f"Ratio on/off: {_fmt(ratio, 3)} (required >= {factor:.2f}) -> "
        f"{'PASS' if report.passes(factor) else 'FAIL'}",
        BANNER,
    ]
    return "\n".join(lines) + "\n"
