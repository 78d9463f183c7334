"""Write a ready-made results file for trying `podium serve` and `podium export`.

Assembles a results file for a sample leaderboard of eight public MT systems
(scores and wall-clock times entered as fixed values, with precomputed
significance clusters) and saves it in the canonical on-disk format. Useful
as a served fixture for the dashboard and as input for the export command:

    python3 demos/build_sample_results.py [out.json]
    podium serve out.json --port 8501
    podium export out.json --format latex
"""

import sys
from pathlib import Path

from podium import (
    ArtConfig,
    ClusterRanking,
    MetricId,
    ResultsFile,
    SystemResult,
    export_table,
    write_results,
)

# (name, BLEU, TER, chrF, wall-clock seconds)
ROWS = (
    ("Seed-x7b", 38.84, 51.00, 65.45, 236.28),
    ("MADLAD-400", 36.03, 52.43, 63.31, 870.62),
    ("NLLB-200", 33.60, 55.34, 60.17, 774.95),
    ("OPUS-MT", 30.02, 57.81, 58.80, 57.60),
    ("M2M-100", 27.70, 60.68, 55.04, 417.13),
    ("mBART", 27.68, 59.81, 57.15, 228.66),
    ("T5-large", 19.43, 73.65, 43.53, 252.56),
    ("EuroLLM", 0.85, 279.03, 22.11, 865.11),
)
BASELINE = "OPUS-MT"

# Ranked orders per metric. Note the chrF/TER inversion: mBART edges out
# M2M-100 on those metrics despite the lower BLEU. Under TER the top two
# systems are statistically tied; every other difference is significant.
BLEU_ORDER = tuple(row[0] for row in ROWS)
CHRF_ORDER = TER_ORDER = (
    "Seed-x7b",
    "MADLAD-400",
    "NLLB-200",
    "OPUS-MT",
    "mBART",
    "M2M-100",
    "T5-large",
    "EuroLLM",
)


def ranking(metric: MetricId, order: tuple[str, ...], config: ArtConfig) -> ClusterRanking:
    if metric is MetricId.TER:
        clusters = ((order[0], order[1]), *((name,) for name in order[2:]))
        p_values = (0.08, *([0.0001] * (len(order) - 2)))
    else:
        clusters = tuple((name,) for name in order)
        p_values = tuple([0.0001] * (len(order) - 1))
    return ClusterRanking(metric=metric, clusters=clusters, p_values=p_values, config=config)


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("sample-results.json")
    config = ArtConfig(trials=10000, alpha=0.05, seed=42)
    results = ResultsFile(
        task="MT",
        main_metric=MetricId.BLEU,
        metrics=(MetricId.BLEU, MetricId.TER, MetricId.CHRF),
        systems=tuple(
            SystemResult(
                name=name,
                corpus_scores={MetricId.BLEU: b, MetricId.TER: t, MetricId.CHRF: c},
                wall_time_seconds=seconds,
                is_baseline=name == BASELINE,
            )
            for name, b, t, c, seconds in ROWS
        ),
        rankings={
            MetricId.BLEU: ranking(MetricId.BLEU, BLEU_ORDER, config),
            MetricId.TER: ranking(MetricId.TER, TER_ORDER, config),
            MetricId.CHRF: ranking(MetricId.CHRF, CHRF_ORDER, config),
        },
        art_config=config,
        created_at="2026-08-14T00:00:00Z",
    )
    results.validate()
    write_results(results, out)
    print(f"wrote {out}")
    print()
    print(export_table(results, "csv").decode(), end="")


if __name__ == "__main__":
    main()
