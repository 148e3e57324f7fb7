"""Campaign driver: run checks over a trial stream, serially or in parallel.

Aggregation is order-independent by construction — counts are sums, worst
margins are minima, and failures are sorted by (trial, check_id) — so a
parallel run merges to exactly the same result as a serial one, and the
machine-readable reports are byte-identical across repeats.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .checks import CheckOutcome, applicable_checks, run_checks
from .generator import GeneratorConfig, generate_instance
from .space import DEFAULT_TOL, ToleranceConfig

__all__ = ["FailureRecord", "CampaignResult", "run_campaign", "replay_trial"]


@dataclass(frozen=True)
class FailureRecord:
    """One failed check outcome, addressable for replay."""

    trial: int
    check_id: str
    margin: float
    values: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class CampaignResult:
    config: GeneratorConfig
    checks: tuple[str, ...]
    counts: dict[str, int]
    worst_margin: dict[str, float]
    failures: tuple[FailureRecord, ...]
    runtime: float

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def total_outcomes(self) -> int:
        return sum(self.counts.values())


def _merge_outcomes(
    trial: int,
    outcomes: list[CheckOutcome],
    counts: dict[str, int],
    worst: dict[str, float],
    failures: list[FailureRecord],
) -> None:
    for oc in outcomes:
        counts[oc.check_id] = counts.get(oc.check_id, 0) + 1
        prev = worst.get(oc.check_id)
        if prev is None or oc.margin < prev:
            worst[oc.check_id] = oc.margin
        if not oc.ok:
            failures.append(
                FailureRecord(trial=trial, check_id=oc.check_id, margin=oc.margin, values=oc.values)
            )


def _run_range(
    config: GeneratorConfig,
    names: tuple[str, ...],
    start: int,
    stop: int,
    tol: ToleranceConfig,
) -> tuple[dict[str, int], dict[str, float], list[FailureRecord]]:
    counts: dict[str, int] = {}
    worst: dict[str, float] = {}
    failures: list[FailureRecord] = []
    for trial in range(start, stop):
        instance = generate_instance(config, trial, tol)
        _merge_outcomes(trial, run_checks(instance, names, tol), counts, worst, failures)
    return counts, worst, failures


def run_campaign(
    config: GeneratorConfig,
    checks: tuple[str, ...] | list[str] | None = None,
    jobs: int = 1,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> CampaignResult:
    """Run ``config.trials`` independent trials of the named checks.

    ``checks=None`` selects every check applicable to the config. With
    ``jobs > 1`` the trial range is split across worker processes; results
    are identical to a serial run.
    """
    names = tuple(checks) if checks is not None else applicable_checks(config)
    started = time.perf_counter()
    counts: dict[str, int] = {}
    worst: dict[str, float] = {}
    failures: list[FailureRecord] = []
    trials = config.trials
    if jobs <= 1 or trials < 2:
        counts, worst, failures = _run_range(config, names, 0, trials, tol)
    else:
        jobs = min(jobs, trials)
        edges = [trials * i // jobs for i in range(jobs + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(
                    _run_range,
                    [config] * jobs,
                    [names] * jobs,
                    edges[:-1],
                    edges[1:],
                    [tol] * jobs,
                )
            )
        for part_counts, part_worst, part_failures in parts:
            for key, value in part_counts.items():
                counts[key] = counts.get(key, 0) + value
            for key, value in part_worst.items():
                if key not in worst or value < worst[key]:
                    worst[key] = value
            failures.extend(part_failures)
    failures.sort(key=lambda f: (f.trial, f.check_id))
    runtime = time.perf_counter() - started
    return CampaignResult(
        config=config,
        checks=names,
        counts=dict(sorted(counts.items())),
        worst_margin=dict(sorted(worst.items())),
        failures=tuple(failures),
        runtime=runtime,
    )


def replay_trial(
    config: GeneratorConfig,
    trial: int,
    checks: tuple[str, ...] | list[str] | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list[CheckOutcome]:
    """Re-run one trial exactly as the campaign saw it and return every outcome."""
    if not (0 <= trial):
        raise ValueError("trial index must be >= 0")
    names = tuple(checks) if checks is not None else applicable_checks(config)
    instance = generate_instance(config, trial, tol)
    return run_checks(instance, names, tol)
