"""Shared fixtures: the frozen 10-sentence corpus with its golden scores,
the 8-system results fixture used by sorting, export, and server tests, and
a scripted docker stand-in for exercising the container harness offline."""

from __future__ import annotations

import stat

import pytest

from podium.metrics import MetricId, MetricReport
from podium.results import ResultsFile, SystemResult
from podium.significance import ArtConfig, ClusterRanking

# 10-sentence bilingual fixture. Golden values were frozen once from an
# independent reference scorer (BLEU, chrF, both corpus and segment level)
# and from an exhaustive shifted-edit-distance search (TER); the TER greedy
# search and the exhaustive minimum agree on every segment.
FIXTURE_HYPS = (
    "The committee approved the new budget Friday.",
    "The delay was caused by heavy rain, a spokesman said.",
    "Researchers presented the results of the study in Berlin.",
    "The museum opened the doors to visitors in 1995.",
    "More than 200 persons attended the annual conference.",
    "The two countries signed a trade agreement in the last week.",
    "Local farmers expect good harvest this year.",
    "The library closes early on public holidays.",
    "Officials confirmed the bridge will be repaired soon.",
    "The report describes the effects on coastal cities of climate change.",
)
FIXTURE_REFS = (
    "The committee approved the new budget on Friday.",
    "A spokesman said the delay was caused by heavy rain.",
    "Researchers announced the results of the study in Berlin.",
    "The museum opened its doors to visitors in 1995.",
    "More than 200 people attended the annual conference.",
    "The two countries signed a trade agreement last week.",
    "Local farmers expect a good harvest this year.",
    "The library will close early on public holidays.",
    "Officials confirmed that the bridge will be repaired soon.",
    "The report describes the effects of climate change on coastal cities.",
)

GOLDEN_BLEU = 64.2234475453
GOLDEN_TER = 16.1616161616
GOLDEN_CHRF = 86.9898714930

GOLDEN_SEGMENT_BLEU = (
    67.5291821813,
    48.3269783091,
    78.2542290037,
    65.8037006476,
    59.6949179202,
    63.4046627705,
    61.0195043211,
    52.4735797761,
    71.8939337518,
    53.3167536341,
)
GOLDEN_SEGMENT_CHRF = (
    89.0156009601,
    86.1795545610,
    79.7471995087,
    85.5113152482,
    84.4922950787,
    91.7873181364,
    90.6667167905,
    77.3838725423,
    90.9092809295,
    92.1610092368,
)
GOLDEN_SEGMENT_TER_EDITS = (1, 5, 1, 1, 1, 2, 1, 2, 1, 1)
GOLDEN_SEGMENT_REF_WORDS = (9, 11, 10, 10, 9, 10, 9, 9, 10, 12)

# 8-system MT benchmark fixture: (name, BLEU, TER, chrF, seconds).
BENCHMARK_ROWS = (
    ("Seed-x7b", 38.84, 51.00, 65.45, 236.28),
    ("MADLAD-400", 36.03, 52.43, 63.31, 870.62),
    ("NLLB-200", 33.60, 55.34, 60.17, 774.95),
    ("OPUS-MT", 30.02, 57.81, 58.80, 57.60),
    ("M2M-100", 27.70, 60.68, 55.04, 417.13),
    ("mBART", 27.68, 59.81, 57.15, 228.66),
    ("T5-large", 19.43, 73.65, 43.53, 252.56),
    ("EuroLLM", 0.85, 279.03, 22.11, 865.11),
)

BLEU_ORDER = (
    "Seed-x7b",
    "MADLAD-400",
    "NLLB-200",
    "OPUS-MT",
    "M2M-100",
    "mBART",
    "T5-large",
    "EuroLLM",
)
CHRF_ORDER = (
    "Seed-x7b",
    "MADLAD-400",
    "NLLB-200",
    "OPUS-MT",
    "mBART",
    "M2M-100",
    "T5-large",
    "EuroLLM",
)
TER_ORDER = (
    "Seed-x7b",
    "MADLAD-400",
    "NLLB-200",
    "OPUS-MT",
    "mBART",
    "M2M-100",
    "T5-large",
    "EuroLLM",
)


def score_report(name: str, metric: MetricId, corpus_score: float) -> MetricReport:
    """A corpus-score-only report, enough for sorting and export fixtures."""
    return MetricReport(
        system_name=name,
        metric=metric,
        corpus_score=corpus_score,
        segment_scores=(),
        segment_stats=(),
    )


def benchmark_reports(metric: MetricId) -> list[MetricReport]:
    column = {MetricId.BLEU: 1, MetricId.TER: 2, MetricId.CHRF: 3}[metric]
    return [score_report(row[0], metric, row[column]) for row in BENCHMARK_ROWS]


def _singleton_clusters(names, config, shared_top=False):
    if shared_top:
        clusters = ((names[0], names[1]), *((n,) for n in names[2:]))
        p_values = (0.08, *([0.0001] * (len(names) - 2)))
    else:
        clusters = tuple((n,) for n in names)
        p_values = tuple([0.0001] * (len(names) - 1))
    return clusters, p_values


def benchmark_results(created_at: str = "2026-08-14T00:00:00Z") -> ResultsFile:
    """The 8-system fixture as a full, validated ResultsFile.

    BLEU and chrF differences are all significant (one cluster per system);
    under TER the top two systems share a cluster.
    """
    config = ArtConfig()
    metrics = (MetricId.BLEU, MetricId.TER, MetricId.CHRF)
    systems = tuple(
        SystemResult(
            name=name,
            corpus_scores={
                MetricId.BLEU: bleu,
                MetricId.TER: ter,
                MetricId.CHRF: chrf,
            },
            wall_time_seconds=seconds,
            is_baseline=(name == "OPUS-MT"),
        )
        for name, bleu, ter, chrf, seconds in BENCHMARK_ROWS
    )
    rankings = {}
    for metric, order in (
        (MetricId.BLEU, BLEU_ORDER),
        (MetricId.TER, TER_ORDER),
        (MetricId.CHRF, CHRF_ORDER),
    ):
        clusters, p_values = _singleton_clusters(
            order, config, shared_top=metric is MetricId.TER
        )
        rankings[metric] = ClusterRanking(
            metric=metric, clusters=clusters, p_values=p_values, config=config
        )
    results = ResultsFile(
        task="MT",
        main_metric=MetricId.BLEU,
        metrics=metrics,
        systems=systems,
        rankings=rankings,
        art_config=config,
        created_at=created_at,
    )
    results.validate()
    return results


@pytest.fixture
def fixture_pair():
    return list(FIXTURE_HYPS), list(FIXTURE_REFS)


@pytest.fixture
def benchmark():
    return benchmark_results()


# Scripted docker CLI stand-in. `build` records an image tag, `run` acts as
# an identity MT system (copies /data/source to /data/predictions) or a
# trivial OCR system, and magic tag substrings (badbuild, crash, noout,
# slow) trigger the failure paths. PODIUM_DOCKER points the harness at it.
FAKE_DOCKER_SCRIPT = r"""#!/bin/bash
state="$FAKE_DOCKER_STATE"
echo "$@" >> "$state/calls.log"
cmd="$1"; shift
case "$cmd" in
  info) exit 0 ;;
  ps) exit 0 ;;
  rm) exit 0 ;;
  images) cat "$state/images.txt" 2>/dev/null; exit 0 ;;
  rmi)
    tag="${@: -1}"
    if [[ -f "$state/images.txt" ]]; then
      grep -v "^${tag}:latest$" "$state/images.txt" > "$state/images.tmp" || true
      mv "$state/images.tmp" "$state/images.txt"
    fi
    exit 0 ;;
  build)
    tag="$2"
    if [[ "$tag" == *badbuild* ]]; then
      echo "step 3/5: compiler exploded" >&2
      exit 1
    fi
    echo "${tag}:latest" >> "$state/images.txt"
    exit 0 ;;
  run)
    args=("$@")
    mount=""
    for ((i=0; i<${#args[@]}; i++)); do
      if [[ "${args[i]}" == "-v" ]]; then mount="${args[i+1]}"; fi
    done
    hostdir="${mount%%:*}"
    tag="${args[${#args[@]}-1]}"
    if [[ "$tag" == *crash* ]]; then echo "boom"; exit 3; fi
    if [[ "$tag" == *noout* ]]; then exit 0; fi
    if [[ "$tag" == *slow* ]]; then sleep 5; fi
    if [[ -f "$hostdir/source" ]]; then
      cp "$hostdir/source" "$hostdir/predictions"
    elif [[ -d "$hostdir/images" ]]; then
      mkdir -p "$hostdir/predictions"
      for f in "$hostdir/images"/*; do
        base="$(basename "$f")"
        echo "read from $base" > "$hostdir/predictions/${base%.*}.txt"
      done
    fi
    exit 0 ;;
  *) exit 0 ;;
esac
"""


@pytest.fixture
def fake_docker(tmp_path, monkeypatch):
    state = tmp_path / "docker-state"
    state.mkdir()
    script = tmp_path / "fake-docker"
    script.write_text(FAKE_DOCKER_SCRIPT)
    script.chmod(script.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    monkeypatch.setenv("PODIUM_DOCKER", str(script))
    monkeypatch.setenv("FAKE_DOCKER_STATE", str(state))
    return state
