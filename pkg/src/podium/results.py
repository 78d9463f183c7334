"""Versioned persistence of evaluation outcomes and table export.

The on-disk format is canonical JSON: keys sorted, floats fixed to six
decimals, trailing newline. Writing the same results twice yields identical
bytes, so results files diff cleanly and can be content-addressed.
"""

from __future__ import annotations

import csv
import html
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ResultsError
from .metrics import MetricId, MetricReport
from .significance import ArtConfig, ClusterRanking

SCHEMA_VERSION = "1"
EXPORT_FORMATS = ("csv", "latex", "json", "html")

_LATEX_SPECIALS = {
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
    "\\": r"\textbackslash{}",
}


@dataclass(frozen=True)
class SystemResult:
    """One system's scores, timing, and baseline flag."""

    name: str
    corpus_scores: Mapping[MetricId, float]
    segment_scores: Mapping[MetricId, tuple[float, ...]] = field(default_factory=dict)
    wall_time_seconds: float | None = None
    is_baseline: bool = False


@dataclass(frozen=True)
class ResultsFile:
    """Everything one evaluation produced, ready to persist or serve."""

    task: str
    main_metric: MetricId
    metrics: tuple[MetricId, ...]
    systems: tuple[SystemResult, ...]
    rankings: Mapping[MetricId, ClusterRanking]
    art_config: ArtConfig
    created_at: str
    schema_version: str = SCHEMA_VERSION

    def validate(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ResultsError(
                f"unsupported schema version {self.schema_version!r}; expected {SCHEMA_VERSION!r}"
            )
        if self.task not in ("MT", "OCR"):
            raise ResultsError(f"unknown task {self.task!r}")
        if not self.metrics:
            raise ResultsError("results must list at least one metric")
        if len(set(self.metrics)) != len(self.metrics):
            raise ResultsError("duplicate metric in metric list")
        if self.main_metric not in self.metrics:
            raise ResultsError(
                f"main metric {self.main_metric.display} missing from metric list"
            )
        names = [s.name for s in self.systems]
        if len(set(names)) != len(names):
            raise ResultsError("duplicate system name")
        for system in self.systems:
            for metric in self.metrics:
                if metric not in system.corpus_scores:
                    raise ResultsError(
                        f"system {system.name!r} has no {metric.display} score"
                    )
            if system.wall_time_seconds is not None and system.wall_time_seconds < 0:
                raise ResultsError(f"system {system.name!r} has a negative wall time")
        lengths = {
            len(scores)
            for system in self.systems
            for scores in system.segment_scores.values()
        }
        if len(lengths) > 1:
            raise ResultsError("segment score lists have inconsistent lengths")
        if self.systems:
            for metric in self.metrics:
                ranking = self.rankings.get(metric)
                if ranking is None:
                    raise ResultsError(f"missing ranking for metric {metric.display}")
                if sorted(ranking.ranked_names) != sorted(names):
                    raise ResultsError(
                        f"ranking for {metric.display} does not cover every system exactly once"
                    )

    def system(self, name: str) -> SystemResult:
        for system in self.systems:
            if system.name == name:
                return system
        raise ResultsError(f"unknown system {name!r}")


def _sorted_systems(results: ResultsFile) -> list[SystemResult]:
    """Row order for exports: best first by main metric, ties by name."""
    metric = results.main_metric

    def key(system: SystemResult):
        score = system.corpus_scores[metric]
        return (-score if metric.higher_is_better else score, system.name)

    return sorted(results.systems, key=key)


# ---------------------------------------------------------------------------
# Serialization


def _canonical_float(value: float) -> float:
    return float(f"{value:.6f}")


def _to_payload(results: ResultsFile) -> dict:
    results.validate()
    payload = {
        "schema_version": results.schema_version,
        "task": results.task,
        "created_at": results.created_at,
        "main_metric": results.main_metric.display,
        "metrics": [m.display for m in results.metrics],
        "art_config": {
            "trials": results.art_config.trials,
            "alpha": _canonical_float(results.art_config.alpha),
            "seed": results.art_config.seed,
        },
        "systems": [
            {
                "name": system.name,
                "is_baseline": system.is_baseline,
                "wall_time_seconds": None
                if system.wall_time_seconds is None
                else _canonical_float(system.wall_time_seconds),
                "corpus_scores": {
                    metric.display: _canonical_float(score)
                    for metric, score in system.corpus_scores.items()
                },
                "segment_scores": {
                    metric.display: [_canonical_float(s) for s in scores]
                    for metric, scores in system.segment_scores.items()
                },
            }
            for system in results.systems
        ],
        "rankings": {
            metric.display: {
                "clusters": [list(cluster) for cluster in ranking.clusters],
                "p_values": [_canonical_float(p) for p in ranking.p_values],
            }
            for metric, ranking in results.rankings.items()
        },
    }
    return payload


def results_to_json(results: ResultsFile) -> bytes:
    """Canonical serialized form: sorted keys, 6-decimal floats."""
    payload = _to_payload(results)
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def write_results(results: ResultsFile, path: Path) -> None:
    """Persist results; identical inputs yield byte-identical files."""
    Path(path).write_bytes(results_to_json(results))


def _require(payload: Mapping, key: str):
    if key not in payload:
        raise ResultsError(f"results file is missing the {key!r} field")
    return payload[key]


def results_from_payload(payload: Mapping) -> ResultsFile:
    version = str(_require(payload, "schema_version"))
    if version != SCHEMA_VERSION:
        raise ResultsError(f"unsupported schema version {version!r}; expected {SCHEMA_VERSION!r}")
    art_raw = _require(payload, "art_config")
    art_config = ArtConfig(
        trials=int(art_raw["trials"]), alpha=float(art_raw["alpha"]), seed=int(art_raw["seed"])
    )
    metrics = tuple(MetricId.parse(name) for name in _require(payload, "metrics"))
    systems = tuple(
        SystemResult(
            name=raw["name"],
            is_baseline=bool(raw.get("is_baseline", False)),
            wall_time_seconds=None
            if raw.get("wall_time_seconds") is None
            else float(raw["wall_time_seconds"]),
            corpus_scores={
                MetricId.parse(name): float(score)
                for name, score in raw.get("corpus_scores", {}).items()
            },
            segment_scores={
                MetricId.parse(name): tuple(float(s) for s in scores)
                for name, scores in raw.get("segment_scores", {}).items()
            },
        )
        for raw in _require(payload, "systems")
    )
    rankings = {
        MetricId.parse(name): ClusterRanking(
            metric=MetricId.parse(name),
            clusters=tuple(tuple(cluster) for cluster in raw["clusters"]),
            p_values=tuple(float(p) for p in raw["p_values"]),
            config=art_config,
        )
        for name, raw in _require(payload, "rankings").items()
    }
    results = ResultsFile(
        task=_require(payload, "task"),
        main_metric=MetricId.parse(_require(payload, "main_metric")),
        metrics=metrics,
        systems=systems,
        rankings=rankings,
        art_config=art_config,
        created_at=str(_require(payload, "created_at")),
        schema_version=version,
    )
    results.validate()
    return results


def read_results(path: Path) -> ResultsFile:
    """Load and fully validate a results file."""
    path = Path(path)
    if not path.is_file():
        raise ResultsError(f"results file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise ResultsError(f"{path}: not a valid results file: {error}") from error
    if not isinstance(payload, dict):
        raise ResultsError(f"{path}: results file must contain an object at top level")
    return results_from_payload(payload)


def build_results(
    task: str,
    metrics: Sequence[MetricId],
    main_metric: MetricId,
    reports: Mapping[str, Mapping[MetricId, MetricReport]],
    rankings: Mapping[MetricId, ClusterRanking],
    art_config: ArtConfig,
    created_at: str,
    wall_times: Mapping[str, float] | None = None,
    baselines: Sequence[str] = (),
    include_segment_scores: bool = True,
) -> ResultsFile:
    """Assemble a validated ResultsFile from per-system metric reports."""
    wall_times = wall_times or {}
    unknown = sorted(set(baselines) - set(reports))
    if unknown:
        raise ResultsError(f"baseline names not among evaluated systems: {', '.join(unknown)}")
    systems = tuple(
        SystemResult(
            name=name,
            corpus_scores={metric: by_metric[metric].corpus_score for metric in metrics},
            segment_scores={
                metric: tuple(by_metric[metric].segment_scores) for metric in metrics
            }
            if include_segment_scores
            else {},
            wall_time_seconds=wall_times.get(name),
            is_baseline=name in set(baselines),
        )
        for name, by_metric in sorted(reports.items())
    )
    results = ResultsFile(
        task=task,
        main_metric=main_metric,
        metrics=tuple(metrics),
        systems=systems,
        rankings=dict(rankings),
        art_config=art_config,
        created_at=created_at,
    )
    results.validate()
    return results


# ---------------------------------------------------------------------------
# Export


def format_number(value: float | None) -> str:
    """The one numeric formatter every export format shares."""
    return "" if value is None else f"{value:.2f}"


def _header(results: ResultsFile, metric_order: Sequence[MetricId]) -> list[str]:
    return ["System", *(m.display for m in metric_order), "Time (s)"]


def _rows(results: ResultsFile, metric_order: Sequence[MetricId]) -> list[list[str]]:
    return [
        [
            system.name,
            *(format_number(system.corpus_scores[m]) for m in metric_order),
            format_number(system.wall_time_seconds),
        ]
        for system in _sorted_systems(results)
    ]


def _check_metric_order(
    results: ResultsFile, metric_order: Sequence[MetricId] | None
) -> list[MetricId]:
    if metric_order is None:
        return list(results.metrics)
    unknown = [m.display for m in metric_order if m not in results.metrics]
    if unknown:
        raise ResultsError(f"metrics not present in results: {', '.join(unknown)}")
    return list(metric_order)


def _export_csv(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def _export_latex(header: list[str], rows: list[list[str]]) -> str:
    spec = "l" + "r" * (len(header) - 1)
    lines = [
        f"\\begin{{tabular}}{{{spec}}}",
        "\\hline",
        " & ".join(_latex_escape(cell) for cell in header) + " \\\\",
        "\\hline",
    ]
    for row in rows:
        cells = [_latex_escape(row[0]), *row[1:]]
        lines.append(" & ".join(cells) + " \\\\")
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines) + "\n"


def _export_json(header: list[str], rows: list[list[str]]) -> str:
    records = []
    for row in rows:
        record: dict[str, object] = {"System": row[0]}
        for name, cell in zip(header[1:], row[1:]):
            record[name] = float(cell) if cell else None
        records.append(record)
    return json.dumps(records, indent=2, ensure_ascii=False) + "\n"


def _export_html(header: list[str], rows: list[list[str]]) -> str:
    def cells(tag: str, values: list[str]) -> str:
        return "".join(f"<{tag}>{html.escape(v)}</{tag}>" for v in values)

    body = "\n".join(f"    <tr>{cells('td', row)}</tr>" for row in rows)
    return (
        "<!DOCTYPE html>\n"
        "<html>\n<head><meta charset=\"utf-8\"><title>Evaluation results</title></head>\n"
        "<body>\n  <table border=\"1\">\n"
        f"    <tr>{cells('th', header)}</tr>\n"
        f"{body}\n"
        "  </table>\n</body>\n</html>\n"
    )


def export_table(
    results: ResultsFile,
    format: str,
    metric_order: Sequence[MetricId] | None = None,
) -> bytes:
    """Render the results as a table: one row per system, best first.

    Formats: csv, latex, json, html. All four share row order and the
    2-decimal numeric formatter, so the same numeric strings appear in each.
    """
    results.validate()
    order = _check_metric_order(results, metric_order)
    header = _header(results, order)
    rows = _rows(results, order)
    name = format.strip().lower()
    if name == "csv":
        rendered = _export_csv(header, rows)
    elif name == "latex":
        rendered = _export_latex(header, rows)
    elif name == "json":
        rendered = _export_json(header, rows)
    elif name == "html":
        rendered = _export_html(header, rows)
    else:
        raise ResultsError(
            f"unknown export format {format!r}; supported: {', '.join(EXPORT_FORMATS)}"
        )
    return rendered.encode("utf-8")


def export_content_type(format: str) -> str:
    """MIME type for an export format."""
    types = {
        "csv": "text/csv; charset=utf-8",
        "latex": "application/x-latex",
        "json": "application/json; charset=utf-8",
        "html": "text/html; charset=utf-8",
    }
    name = format.strip().lower()
    if name not in types:
        raise ResultsError(
            f"unknown export format {format!r}; supported: {', '.join(EXPORT_FORMATS)}"
        )
    return types[name]
