"""Approximate randomization testing and significance-based ranking.

Two systems scored on the same segments are compared by randomly swapping
per-segment sufficient statistics between them and checking how often the
swapped corpus-score gap reaches the observed one. Rankings group systems
into clusters whose adjacent members are statistically indistinguishable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import MetricError
from .metrics import MetricId, MetricReport, SegmentStats, score_from_sums, stack_counts

# Two swap patterns whose score gaps differ by less than this (relative to
# the observed gap) are treated as equal, so enumeration and sampling agree
# on mathematically tied patterns despite float rounding.
_TIE_RTOL = 1e-12

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class ArtConfig:
    """Randomization-test parameters."""

    trials: int = 10000
    alpha: float = 0.05
    seed: int = 42

    def __post_init__(self):
        if self.trials < 1:
            raise MetricError("randomization test needs at least one trial")
        if not 0.0 < self.alpha < 1.0:
            raise MetricError("significance level must lie strictly between 0 and 1")


@dataclass(frozen=True)
class ArtResult:
    """Outcome of one paired randomization test."""

    metric: MetricId
    score_a: float
    score_b: float
    p_value: float
    trials: int

    def significant(self, alpha: float) -> bool:
        return self.p_value < alpha


def _paired_counts(
    stats_a: Sequence[SegmentStats], stats_b: Sequence[SegmentStats], metric: MetricId
) -> tuple[np.ndarray, np.ndarray]:
    if len(stats_a) != len(stats_b):
        raise MetricError(
            "randomization test needs the two systems scored on the same segments "
            f"({len(stats_a)} vs {len(stats_b)})"
        )
    if not stats_a:
        raise MetricError("cannot run a randomization test on an empty corpus")
    for s in (*stats_a, *stats_b):
        if s.metric is not metric:
            raise MetricError(f"expected {metric.display} statistics, got {s.metric.display}")
    return stack_counts(stats_a), stack_counts(stats_b)


def _gap(metric: MetricId, sums_a: np.ndarray, sums_b: np.ndarray) -> np.ndarray:
    return np.abs(score_from_sums(metric, sums_a) - score_from_sums(metric, sums_b))


def _trial_masks(n_segments: int, trials: int, seed: int) -> np.ndarray:
    """Per-trial swap masks, each trial drawn from its own counter stream.

    Keying the generator by (seed, trial index) makes a trial's mask
    independent of every other trial, so the p-value for a given seed is
    reproducible regardless of evaluation order or worker count.
    """
    masks = np.empty((trials, n_segments), dtype=bool)
    for t in range(trials):
        rng = np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, t]))
        masks[t] = rng.random(n_segments) < 0.5
    return masks


def _count_hits(
    metric: MetricId, counts_a: np.ndarray, counts_b: np.ndarray, masks: np.ndarray
) -> tuple[float, float, int]:
    """Observed scores plus the number of masks whose gap reaches the observed one."""
    sums_a = counts_a.sum(axis=0)
    total = sums_a + counts_b.sum(axis=0)
    observed = float(_gap(metric, sums_a, total - sums_a))
    threshold = observed - _TIE_RTOL * max(observed, 1.0)
    # swapping preserves the pooled totals, so one matmul gives every trial's
    # side-A sums and the complement gives side B
    trial_sums_a = sums_a + masks.astype(float) @ (counts_b - counts_a)
    gaps = _gap(metric, trial_sums_a, total - trial_sums_a)
    hits = int(np.count_nonzero(gaps >= threshold))
    score_a = float(score_from_sums(metric, sums_a))
    score_b = float(score_from_sums(metric, total - sums_a))
    return score_a, score_b, hits


def art_test(
    stats_a: Sequence[SegmentStats],
    stats_b: Sequence[SegmentStats],
    metric: MetricId,
    config: ArtConfig = ArtConfig(),
) -> float:
    """Paired approximate randomization test over per-segment statistics.

    The observed statistic is the absolute corpus-score gap. Each trial
    swaps every segment's stats pair independently with probability 1/2 and
    recomputes the gap; the observed assignment itself counts as one trial:
    p = (hits + 1) / (trials + 1), so p is never 0.
    """
    counts_a, counts_b = _paired_counts(stats_a, stats_b, metric)
    masks = _trial_masks(len(counts_a), config.trials, config.seed)
    _, _, hits = _count_hits(metric, counts_a, counts_b, masks)
    return (hits + 1) / (config.trials + 1)


def exact_art_test(
    stats_a: Sequence[SegmentStats], stats_b: Sequence[SegmentStats], metric: MetricId
) -> float:
    """Exhaustive variant of `art_test` over all 2^n swap patterns.

    Only viable for small corpora; it exists as a ground truth to validate
    the sampled test against. The identity pattern is among the 2^n, so no
    +1 correction applies.
    """
    counts_a, counts_b = _paired_counts(stats_a, stats_b, metric)
    n = len(counts_a)
    if n > ENUMERATION_LIMIT:
        raise MetricError(f"exhaustive test is limited to {ENUMERATION_LIMIT} segments, got {n}")
    patterns = np.arange(2**n, dtype=np.uint64)
    masks = ((patterns[:, None] >> np.arange(n, dtype=np.uint64)) & 1).astype(bool)
    _, _, hits = _count_hits(metric, counts_a, counts_b, masks)
    return hits / len(patterns)


def compare_reports(a: MetricReport, b: MetricReport, config: ArtConfig = ArtConfig()) -> ArtResult:
    """Randomization test between two reports of the same metric."""
    if a.metric is not b.metric:
        raise MetricError(f"cannot compare {a.metric.display} against {b.metric.display} reports")
    p_value = art_test(a.segment_stats, b.segment_stats, a.metric, config)
    return ArtResult(
        metric=a.metric,
        score_a=a.corpus_score,
        score_b=b.corpus_score,
        p_value=p_value,
        trials=config.trials,
    )


@dataclass(frozen=True)
class ClusterRanking:
    """Systems ordered best to worst and grouped by indistinguishability.

    `clusters` holds system names; cluster 0 is the best group. `p_values`
    has one entry per adjacent pair in ranked order.
    """

    metric: MetricId
    clusters: tuple[tuple[str, ...], ...]
    p_values: tuple[float, ...]
    config: ArtConfig = field(default_factory=ArtConfig)

    @property
    def ranked_names(self) -> tuple[str, ...]:
        return tuple(name for cluster in self.clusters for name in cluster)

    def cluster_of(self, name: str) -> int:
        """Zero-based cluster index of a system."""
        for index, cluster in enumerate(self.clusters):
            if name in cluster:
                return index
        raise KeyError(name)


def _checked_reports(reports: Sequence[MetricReport], metric: MetricId | None) -> tuple[MetricId, list[MetricReport]]:
    if not reports:
        raise MetricError("need at least one system report")
    resolved = metric or reports[0].metric
    for report in reports:
        if report.metric is not resolved:
            raise MetricError(
                f"expected {resolved.display} reports, got {report.metric.display} "
                f"for {report.system_name!r}"
            )
    names = [r.system_name for r in reports]
    if len(set(names)) != len(names):
        duplicate = next(n for n in names if names.count(n) > 1)
        raise MetricError(f"duplicate system name {duplicate!r}")
    return resolved, list(reports)


def _ranked(reports: Sequence[MetricReport], metric: MetricId) -> list[MetricReport]:
    def key(report: MetricReport):
        direction = -report.corpus_score if metric.higher_is_better else report.corpus_score
        return (direction, report.system_name)

    return sorted(reports, key=key)


def sort_systems(reports: Sequence[MetricReport], metric: MetricId | None = None) -> list[str]:
    """System names best first; exact score ties break alphabetically."""
    resolved, checked = _checked_reports(reports, metric)
    return [report.system_name for report in _ranked(checked, resolved)]


def cluster_systems(
    reports: Sequence[MetricReport],
    metric: MetricId | None = None,
    config: ArtConfig = ArtConfig(),
) -> ClusterRanking:
    """Rank systems and split them into significance clusters.

    Systems are sorted best first, then each one is tested against the one
    ranked directly above it. A significant difference opens a new cluster,
    otherwise the system joins the current one. Only adjacent pairs are
    tested.
    """
    resolved, checked = _checked_reports(reports, metric)
    ranked = _ranked(checked, resolved)
    clusters: list[list[str]] = [[ranked[0].system_name]]
    p_values: list[float] = []
    for previous, current in zip(ranked, ranked[1:]):
        p_value = art_test(previous.segment_stats, current.segment_stats, resolved, config)
        p_values.append(p_value)
        if p_value < config.alpha:
            clusters.append([current.system_name])
        else:
            clusters[-1].append(current.system_name)
    return ClusterRanking(
        metric=resolved,
        clusters=tuple(tuple(c) for c in clusters),
        p_values=tuple(p_values),
        config=config,
    )
