"""Evaluation harness for dockerized MT and OCR systems.

Runs contestant containers against a test set, scores hypotheses with
BLEU, TER, chrF, WER and bWER at corpus and segment level, clusters systems
by randomization-test significance, and serves the results to a dashboard.
"""

from .corpus import (
    Corpus,
    HypothesisSet,
    Segment,
    aggregate_corpora,
    load_hypotheses,
    load_mt_testset,
    load_ocr_testset,
    load_reference_corpus,
)
from .errors import (
    CorpusError,
    DataError,
    DockerError,
    EnvironmentFailure,
    MetricError,
    PodiumError,
    ResultsError,
)
from .metrics import (
    MetricId,
    MetricReport,
    SegmentStats,
    aggregate_from_stats,
    bleu,
    bwer,
    chrf,
    score,
    ter,
    tokenize,
    wer,
)
from .results import (
    ResultsFile,
    SystemResult,
    build_results,
    export_table,
    read_results,
    write_results,
)
from .runner import RunRecord, SystemEntry, build_image, cleanup, find_systems, run_all, run_system
from .server import ServerConfig, create_server, serve
from .significance import (
    ArtConfig,
    ArtResult,
    ClusterRanking,
    art_test,
    cluster_systems,
    compare_reports,
    exact_art_test,
    sort_systems,
)

__version__ = "0.1.0"

__all__ = [
    "ArtConfig",
    "ArtResult",
    "ClusterRanking",
    "Corpus",
    "CorpusError",
    "DataError",
    "DockerError",
    "EnvironmentFailure",
    "HypothesisSet",
    "MetricError",
    "MetricId",
    "MetricReport",
    "PodiumError",
    "ResultsError",
    "ResultsFile",
    "RunRecord",
    "Segment",
    "SegmentStats",
    "ServerConfig",
    "SystemEntry",
    "SystemResult",
    "aggregate_corpora",
    "aggregate_from_stats",
    "art_test",
    "bleu",
    "build_image",
    "build_results",
    "bwer",
    "chrf",
    "cleanup",
    "cluster_systems",
    "compare_reports",
    "create_server",
    "exact_art_test",
    "export_table",
    "find_systems",
    "load_hypotheses",
    "load_mt_testset",
    "load_ocr_testset",
    "load_reference_corpus",
    "read_results",
    "run_all",
    "run_system",
    "score",
    "serve",
    "sort_systems",
    "ter",
    "tokenize",
    "wer",
    "write_results",
]
