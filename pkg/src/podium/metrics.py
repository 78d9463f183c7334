"""Corpus- and segment-level scoring for BLEU, TER, chrF, WER and bWER.

Every metric has the same call shape: a list of hypothesis strings and a list
of reference strings in, a `MetricReport` out. Reports carry per-segment
sufficient statistics from which the corpus score is exactly recomputable
(`aggregate_from_stats`), which is what makes randomization testing over
segment swaps cheap.

Scores live on a 0-100 percentage scale. BLEU and chrF are bounded by 100;
the error rates are unbounded above (a hypothesis much longer than its
reference can exceed 100).
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .editdistance import levenshtein, shifted_edit_distance
from .errors import MetricError

BLEU_ORDER = 4
CHRF_ORDER = 6
CHRF_BETA = 2


class MetricId(Enum):
    """A scoring metric and the direction in which it improves."""

    BLEU = ("BLEU", True)
    TER = ("TER", False)
    CHRF = ("chrF", True)
    WER = ("WER", False)
    BWER = ("bWER", False)

    def __init__(self, display: str, higher_is_better: bool):
        self.display = display
        self.higher_is_better = higher_is_better

    @classmethod
    def parse(cls, name: str) -> "MetricId":
        """Resolve a metric name case-insensitively ("bleu", "chrF", "BWER", ...)."""
        wanted = name.strip().lower()
        for metric in cls:
            if wanted in (metric.name.lower(), metric.display.lower()):
                return metric
        supported = ", ".join(m.display for m in cls)
        raise MetricError(f"unknown metric {name!r}; supported metrics: {supported}")


# Width of the sufficient-statistics vector per metric.
STAT_WIDTH = {
    MetricId.BLEU: 2 * BLEU_ORDER + 2,  # matches 1..4, totals 1..4, hyp len, ref len
    MetricId.TER: 2,  # edits, reference words
    MetricId.CHRF: 3 * CHRF_ORDER,  # (match, hyp total, ref total) per order 1..6
    MetricId.WER: 2,
    MetricId.BWER: 2,
}


@dataclass(frozen=True)
class SegmentStats:
    """Per-segment counts sufficient to recompute a corpus score."""

    metric: MetricId
    counts: tuple[float, ...]

    def __post_init__(self):
        if len(self.counts) != STAT_WIDTH[self.metric]:
            raise MetricError(
                f"{self.metric.display} stats need {STAT_WIDTH[self.metric]} counts, "
                f"got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise MetricError(f"{self.metric.display} stats contain a negative count")


@dataclass(frozen=True)
class MetricReport:
    """Scores of one system under one metric."""

    system_name: str
    metric: MetricId
    corpus_score: float
    segment_scores: tuple[float, ...]
    segment_stats: tuple[SegmentStats, ...]

    def named(self, system_name: str) -> "MetricReport":
        return replace(self, system_name=system_name)


_PUNCT = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_PERIOD_COMMA_PRE = re.compile(r"([^0-9])([\.,])")
_PERIOD_COMMA_POST = re.compile(r"([\.,])([^0-9])")
_DIGIT_DASH = re.compile(r"([0-9])(-)")


def tokenize(text: str) -> list[str]:
    """mteval-13a-style tokenization: unescape entities, split punctuation.

    Language-agnostic; digits keep their decimal/thousands separators and a
    dash is split only after a digit.
    """
    norm = text.replace("<skipped>", "")
    norm = norm.replace("-\n", "").replace("\n", " ")
    norm = norm.replace("&quot;", '"').replace("&amp;", "&")
    norm = norm.replace("&lt;", "<").replace("&gt;", ">")
    norm = f" {norm} "
    norm = _PUNCT.sub(r" \1 ", norm)
    norm = _PERIOD_COMMA_PRE.sub(r"\1 \2 ", norm)
    norm = _PERIOD_COMMA_POST.sub(r" \1 \2", norm)
    norm = _DIGIT_DASH.sub(r"\1 \2 ", norm)
    return norm.split()


def _ngram_counts(tokens: Sequence[str], order: int) -> Counter:
    counts: Counter = Counter()
    for n in range(1, order + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i : i + n])] += 1
    return counts


def _char_ngrams(text: str, n: int) -> Counter:
    return Counter(text[i : i + n] for i in range(len(text) - n + 1))


def _check_pair(hypotheses: Sequence[str], references: Sequence[str]) -> None:
    if len(hypotheses) != len(references):
        raise MetricError(
            f"hypothesis/reference length mismatch: {len(hypotheses)} vs {len(references)}"
        )
    if not references:
        raise MetricError("cannot score an empty corpus")


# ---------------------------------------------------------------------------
# Sufficient statistics per segment


def _bleu_stats(hyp: str, ref: str) -> SegmentStats:
    hyp_tokens = tokenize(hyp)
    ref_tokens = tokenize(ref)
    hyp_ngrams = _ngram_counts(hyp_tokens, BLEU_ORDER)
    ref_ngrams = _ngram_counts(ref_tokens, BLEU_ORDER)
    matches = [0] * BLEU_ORDER
    totals = [0] * BLEU_ORDER
    for ngram, count in hyp_ngrams.items():
        n = len(ngram) - 1
        totals[n] += count
        matches[n] += min(count, ref_ngrams.get(ngram, 0))
    counts = tuple(float(v) for v in (*matches, *totals, len(hyp_tokens), len(ref_tokens)))
    return SegmentStats(MetricId.BLEU, counts)


def _chrf_stats(hyp: str, ref: str) -> SegmentStats:
    hyp_chars = re.sub(r"\s+", "", hyp)
    ref_chars = re.sub(r"\s+", "", ref)
    counts: list[float] = []
    for n in range(1, CHRF_ORDER + 1):
        hyp_ngrams = _char_ngrams(hyp_chars, n)
        ref_ngrams = _char_ngrams(ref_chars, n)
        matched = sum((hyp_ngrams & ref_ngrams).values())
        counts += [float(matched), float(sum(hyp_ngrams.values())), float(sum(ref_ngrams.values()))]
    return SegmentStats(MetricId.CHRF, tuple(counts))


def _edit_stats(metric: MetricId, edits: int, ref_words: int) -> SegmentStats:
    return SegmentStats(metric, (float(edits), float(ref_words)))


def _ter_stats(hyp: str, ref: str) -> SegmentStats:
    ref_tokens = tokenize(ref)
    if not ref_tokens:
        # empty references contribute nothing to either side of the rate
        return _edit_stats(MetricId.TER, 0, 0)
    return _edit_stats(MetricId.TER, shifted_edit_distance(tokenize(hyp), ref_tokens), len(ref_tokens))


def _wer_stats(hyp: str, ref: str) -> SegmentStats:
    ref_tokens = ref.split()
    if not ref_tokens:
        return _edit_stats(MetricId.WER, 0, 0)
    return _edit_stats(MetricId.WER, levenshtein(hyp.split(), ref_tokens), len(ref_tokens))


def _bwer_stats(hyp: str, ref: str) -> SegmentStats:
    ref_tokens = ref.split()
    if not ref_tokens:
        return _edit_stats(MetricId.BWER, 0, 0)
    hyp_tokens = hyp.split()
    matched = sum((Counter(hyp_tokens) & Counter(ref_tokens)).values())
    errors = max(len(hyp_tokens), len(ref_tokens)) - matched
    return _edit_stats(MetricId.BWER, errors, len(ref_tokens))


_STAT_FUNCS: dict[MetricId, Callable[[str, str], SegmentStats]] = {
    MetricId.BLEU: _bleu_stats,
    MetricId.TER: _ter_stats,
    MetricId.CHRF: _chrf_stats,
    MetricId.WER: _wer_stats,
    MetricId.BWER: _bwer_stats,
}


# ---------------------------------------------------------------------------
# Scores from summed counts

def stack_counts(stats: Sequence[SegmentStats]) -> np.ndarray:
    """Per-segment count vectors as an (n_segments, width) float array."""
    return np.asarray([s.counts for s in stats], dtype=float)


def _bleu_from_sums(sums: np.ndarray) -> np.ndarray:
    matches = sums[..., 0:BLEU_ORDER]
    totals = sums[..., BLEU_ORDER : 2 * BLEU_ORDER]
    hyp_len = sums[..., 2 * BLEU_ORDER]
    ref_len = sums[..., 2 * BLEU_ORDER + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(totals > 0, matches / np.where(totals > 0, totals, 1.0), 0.0)
        log_precision = np.where(precision > 0, np.log(np.where(precision > 0, precision, 1.0)), -np.inf)
        geo_mean = np.exp(np.mean(log_precision, axis=-1))
        brevity = np.where(
            (hyp_len > 0) & (hyp_len < ref_len),
            np.exp(1.0 - ref_len / np.where(hyp_len > 0, hyp_len, 1.0)),
            1.0,
        )
    score = 100.0 * brevity * np.where(np.all(precision > 0, axis=-1), geo_mean, 0.0)
    return np.where(hyp_len > 0, score, 0.0)


def _chrf_from_sums(sums: np.ndarray) -> np.ndarray:
    matched = sums[..., 0::3]
    hyp_total = sums[..., 1::3]
    ref_total = sums[..., 2::3]
    valid = (hyp_total > 0) & (ref_total > 0)
    n_valid = valid.sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(valid, matched / np.where(valid, hyp_total, 1.0), 0.0).sum(axis=-1)
        recall = np.where(valid, matched / np.where(valid, ref_total, 1.0), 0.0).sum(axis=-1)
        precision = precision / np.where(n_valid > 0, n_valid, 1)
        recall = recall / np.where(n_valid > 0, n_valid, 1)
    factor = CHRF_BETA**2
    denom = factor * precision + recall
    f_score = np.where(denom > 0, (1 + factor) * precision * recall / np.where(denom > 0, denom, 1.0), 0.0)
    return np.where(n_valid > 0, 100.0 * f_score, 0.0)


def _rate_from_sums(sums: np.ndarray) -> np.ndarray:
    edits = sums[..., 0]
    ref_words = sums[..., 1]
    if np.any(ref_words <= 0):
        raise MetricError("score undefined: total reference word count is zero")
    return 100.0 * edits / ref_words


_SUM_SCORERS: dict[MetricId, Callable[[np.ndarray], np.ndarray]] = {
    MetricId.BLEU: _bleu_from_sums,
    MetricId.TER: _rate_from_sums,
    MetricId.CHRF: _chrf_from_sums,
    MetricId.WER: _rate_from_sums,
    MetricId.BWER: _rate_from_sums,
}


def score_from_sums(metric: MetricId, sums: np.ndarray) -> np.ndarray:
    """Corpus score(s) from summed counts; vectorized over leading axes."""
    return _SUM_SCORERS[metric](np.asarray(sums, dtype=float))


def aggregate_from_stats(metric: MetricId, stats: Sequence[SegmentStats]) -> float:
    """Corpus score recomputed from per-segment sufficient statistics."""
    if not stats:
        raise MetricError("cannot aggregate an empty statistics list")
    for s in stats:
        if s.metric is not metric:
            raise MetricError(f"mixed metrics in statistics: {s.metric.display} vs {metric.display}")
    sums = stack_counts(stats).sum(axis=0)
    return float(score_from_sums(metric, sums))


# ---------------------------------------------------------------------------
# Per-segment scores


def _bleu_segment_score(counts: Sequence[float]) -> float:
    """Sentence BLEU with exponential-decay smoothing and effective order."""
    matches = counts[0:BLEU_ORDER]
    totals = counts[BLEU_ORDER : 2 * BLEU_ORDER]
    hyp_len = counts[2 * BLEU_ORDER]
    ref_len = counts[2 * BLEU_ORDER + 1]
    precisions: list[float] = []
    smooth = 1.0
    for n in range(BLEU_ORDER):
        if totals[n] == 0:
            break
        if matches[n] == 0:
            smooth *= 2.0
            precisions.append(1.0 / (smooth * totals[n]))
        else:
            precisions.append(matches[n] / totals[n])
    if not precisions or hyp_len == 0:
        return 0.0
    geo_mean = math.exp(sum(math.log(p) for p in precisions) / len(precisions))
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * geo_mean


def _segment_score(stats: SegmentStats) -> float:
    if stats.metric is MetricId.BLEU:
        return _bleu_segment_score(stats.counts)
    if stats.metric is MetricId.CHRF:
        return float(score_from_sums(MetricId.CHRF, np.asarray(stats.counts)))
    edits, ref_words = stats.counts
    return 100.0 * edits / ref_words if ref_words > 0 else 0.0


def _report(metric: MetricId, hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    _check_pair(hypotheses, references)
    stats = tuple(_STAT_FUNCS[metric](h, r) for h, r in zip(hypotheses, references))
    return MetricReport(
        system_name="",
        metric=metric,
        corpus_score=aggregate_from_stats(metric, stats),
        segment_scores=tuple(_segment_score(s) for s in stats),
        segment_stats=stats,
    )


def bleu(hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Corpus BLEU: geometric mean of 4-gram precisions times a brevity penalty."""
    return _report(MetricId.BLEU, hypotheses, references)


def ter(hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Translation edit rate: word edits plus block shifts per reference word."""
    return _report(MetricId.TER, hypotheses, references)


def chrf(hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Character n-gram F-score (beta=2) averaged over orders 1-6."""
    return _report(MetricId.CHRF, hypotheses, references)


def wer(hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Word error rate: whitespace-token edit distance per reference word."""
    return _report(MetricId.WER, hypotheses, references)


def bwer(hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Bag-of-words WER: word-multiset mismatch per reference word."""
    return _report(MetricId.BWER, hypotheses, references)


_METRIC_FUNCS: dict[MetricId, Callable[[Sequence[str], Sequence[str]], MetricReport]] = {
    MetricId.BLEU: bleu,
    MetricId.TER: ter,
    MetricId.CHRF: chrf,
    MetricId.WER: wer,
    MetricId.BWER: bwer,
}


def score(metric: MetricId, hypotheses: Sequence[str], references: Sequence[str]) -> MetricReport:
    """Score one system under one metric; dispatch by MetricId."""
    return _METRIC_FUNCS[metric](hypotheses, references)


def default_metrics(task: str) -> list[MetricId]:
    """Conventional metric set per task; the first one is the main metric."""
    if task.upper() == "OCR":
        return [MetricId.WER, MetricId.BWER]
    return [MetricId.BLEU, MetricId.TER, MetricId.CHRF]
