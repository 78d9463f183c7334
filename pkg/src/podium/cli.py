"""Command-line entry point for the three-phase evaluation pipeline.

  podium run     build and execute dockerized systems, collect predictions
  podium eval    score predictions, test significance, write a results file
  podium serve   serve a results file plus the dashboard over HTTP
  podium export  print a results table as csv, latex, json, or html

`run` is optional: `eval` accepts bare hypothesis files when the systems
themselves are not available, in which case wall-clock times are absent.

Exit codes: 0 success, 1 user or data error, 2 environment failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import corpus, metrics, results, runner, server, significance
from .errors import DataError, EnvironmentFailure

TIMES_MANIFEST = "times"


def _split_names(raw: str | None) -> tuple[str, ...]:
    if not raw:
        return ()
    return tuple(name.strip() for name in raw.split(",") if name.strip())


def _parse_metrics(raw: str | None, task: str) -> list[metrics.MetricId]:
    if not raw:
        return metrics.default_metrics(task)
    parsed = [metrics.MetricId.parse(name) for name in _split_names(raw)]
    if not parsed:
        raise DataError("empty metric list")
    if len(set(parsed)) != len(parsed):
        raise DataError("duplicate metric in metric list")
    return parsed


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# ---------------------------------------------------------------------------
# run


def _write_times_manifest(path: Path, records: list[runner.RunRecord], baselines: set[str]) -> None:
    manifest = {
        record.system_name: {
            "wall_time_seconds": record.wall_time_seconds if record.ok else None,
            "is_baseline": record.system_name.lower() in baselines,
            "exit_status": record.exit_status,
            "error": record.error,
        }
        for record in records
    }
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _read_times_manifest(path: Path) -> dict[str, dict]:
    if not path.is_file():
        return {}
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise DataError(f"{path}: invalid times manifest: {error}") from error
    if not isinstance(manifest, dict):
        raise DataError(f"{path}: times manifest must be an object")
    return manifest


def cmd_run(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    baselines = _split_names(args.baselines)
    entries = runner.find_systems(Path(args.systems), baselines)
    records = runner.run_all(
        entries,
        source=Path(args.source),
        task=args.task,
        out_dir=out_dir,
        timeout_seconds=args.timeout,
        network=args.allow_network,
    )
    _write_times_manifest(out_dir / TIMES_MANIFEST, records, {b.lower() for b in baselines})
    if not args.keep_images:
        tags = [runner.image_tag(entry.name) for entry in entries]
        for warning in runner.cleanup(tags, staging_root=out_dir / "staging"):
            print(f"warning: {warning}", file=sys.stderr)
    failed = [r for r in records if not r.ok]
    for record in records:
        if record.ok:
            print(f"ok      {record.system_name}  {record.wall_time_seconds:.2f}s")
        else:
            print(f"failed  {record.system_name}: {record.error}")
    print(f"predictions and times written to {out_dir}")
    if failed:
        print(f"{len(failed)} of {len(records)} systems failed", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# eval


def _hypothesis_sources(args: argparse.Namespace) -> tuple[list[tuple[str, Path]], dict[str, dict]]:
    """Pairs of (system name, predictions path) plus the times manifest."""
    if args.run_dir:
        run_dir = Path(args.run_dir)
        predictions_dir = run_dir / "predictions"
        if not predictions_dir.is_dir():
            raise DataError(f"no predictions directory under {run_dir}")
        pairs = [
            (child.name, child / "predictions")
            for child in sorted(predictions_dir.iterdir(), key=lambda p: p.name)
            if child.is_dir() and (child / "predictions").exists()
        ]
        if not pairs:
            raise DataError(f"{predictions_dir}: no system predictions found")
        return pairs, _read_times_manifest(run_dir / TIMES_MANIFEST)
    if not args.hypotheses:
        raise DataError("give either --run-dir or one hypothesis path per system")
    pairs = []
    for raw in args.hypotheses:
        name, _, path = raw.partition("=")
        if path:
            pairs.append((name, Path(path)))
        else:
            pairs.append((Path(raw).stem if Path(raw).suffix else Path(raw).name, Path(raw)))
    names = [name for name, _ in pairs]
    if len(set(names)) != len(names):
        duplicate = next(n for n in names if names.count(n) > 1)
        raise DataError(f"duplicate system name {duplicate!r}; use name=path to disambiguate")
    return pairs, {}


def cmd_eval(args: argparse.Namespace) -> int:
    task = args.task
    metric_list = _parse_metrics(args.metrics, task)
    main_metric = metrics.MetricId.parse(args.main) if args.main else metric_list[0]
    if main_metric not in metric_list:
        raise DataError(f"main metric {main_metric.display} is not among the selected metrics")
    config = significance.ArtConfig(trials=args.trials, alpha=args.alpha, seed=args.seed)

    references = corpus.load_reference_corpus(Path(args.references), task)
    pairs, manifest = _hypothesis_sources(args)
    baselines = set(_split_names(args.baselines))
    wall_times: dict[str, float] = {}
    reports: dict[str, dict[metrics.MetricId, metrics.MetricReport]] = {}
    for name, path in pairs:
        entry = manifest.get(name, {})
        if entry.get("error"):
            print(f"skipping {name}: recorded run error: {entry['error']}", file=sys.stderr)
            continue
        hypotheses = corpus.load_hypotheses(path, task, references, name)
        reports[name] = {
            metric: metrics.score(metric, hypotheses.texts, references.texts).named(name)
            for metric in metric_list
        }
        if entry.get("wall_time_seconds") is not None:
            wall_times[name] = float(entry["wall_time_seconds"])
        if entry.get("is_baseline"):
            baselines.add(name)
    if not reports:
        raise DataError("no systems left to evaluate")

    rankings = {
        metric: significance.cluster_systems(
            [reports[name][metric] for name in sorted(reports)], metric, config
        )
        for metric in metric_list
    }
    bundle = results.build_results(
        task=task,
        metrics=metric_list,
        main_metric=main_metric,
        reports=reports,
        rankings=rankings,
        art_config=config,
        created_at=_utc_now(),
        wall_times=wall_times,
        baselines=sorted(baselines),
        include_segment_scores=not args.no_segment_scores,
    )
    out = Path(args.out)
    results.write_results(bundle, out)
    ranking = rankings[main_metric]
    for rank, cluster in enumerate(ranking.clusters, start=1):
        for name in cluster:
            score = bundle.system(name).corpus_scores[main_metric]
            print(f"{rank}  {name}  {main_metric.display} {score:.2f}")
    print(f"results written to {out}")
    return 0


# ---------------------------------------------------------------------------
# serve / export


def cmd_serve(args: argparse.Namespace) -> int:
    server.serve(
        server.ServerConfig(
            results_path=Path(args.results), port=args.port, bind_address=args.bind
        )
    )
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    bundle = results.read_results(Path(args.results))
    order = None
    if args.metrics:
        order = [metrics.MetricId.parse(name) for name in _split_names(args.metrics)]
    sys.stdout.buffer.write(results.export_table(bundle, args.format, order))
    sys.stdout.buffer.flush()
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="podium",
        description="Run dockerized MT/OCR systems, score them, and serve the results.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="build and execute dockerized systems")
    run.add_argument("--systems", required=True, help="directory of system subdirectories")
    run.add_argument("--task", choices=("MT", "OCR"), required=True)
    run.add_argument("--source", required=True, help="source file (MT) or image directory (OCR)")
    run.add_argument("--out", required=True, help="output directory for predictions and times")
    run.add_argument(
        "--timeout",
        type=float,
        default=runner.DEFAULT_TIMEOUT_SECONDS,
        help="per-system run timeout in seconds (default %(default)s)",
    )
    run.add_argument("--baselines", help="comma-separated baseline system names")
    run.add_argument(
        "--allow-network",
        action="store_true",
        help="let containers reach the network (disabled by default)",
    )
    run.add_argument(
        "--keep-images", action="store_true", help="skip image/staging cleanup after the run"
    )
    run.set_defaults(handler=cmd_run)

    evaluate = commands.add_parser("eval", help="score predictions and write a results file")
    evaluate.add_argument(
        "hypotheses",
        nargs="*",
        help="hypothesis files (MT) or directories (OCR); optionally name=path",
    )
    evaluate.add_argument("--run-dir", help="output directory of a previous `podium run`")
    evaluate.add_argument(
        "--references", required=True, help="reference file (MT) or transcript directory (OCR)"
    )
    evaluate.add_argument("--task", choices=("MT", "OCR"), required=True)
    evaluate.add_argument("--out", required=True, help="path of the results file to write")
    evaluate.add_argument(
        "--metrics", help="comma-separated metrics (default MT: bleu,ter,chrf; OCR: wer,bwer)"
    )
    evaluate.add_argument("--main", help="main metric for sorting (default: first listed)")
    evaluate.add_argument("--trials", type=int, default=10000, help="randomization trials")
    evaluate.add_argument("--alpha", type=float, default=0.05, help="significance level")
    evaluate.add_argument("--seed", type=int, default=42, help="randomization seed")
    evaluate.add_argument("--baselines", help="comma-separated baseline system names")
    evaluate.add_argument(
        "--no-segment-scores",
        action="store_true",
        help="omit per-segment scores from the results file",
    )
    evaluate.set_defaults(handler=cmd_eval)

    serve_cmd = commands.add_parser("serve", help="serve a results file and the dashboard")
    serve_cmd.add_argument("results", help="results file to serve")
    serve_cmd.add_argument("--port", type=int, default=server.DEFAULT_PORT)
    serve_cmd.add_argument("--bind", default=server.DEFAULT_BIND)
    serve_cmd.set_defaults(handler=cmd_serve)

    export = commands.add_parser("export", help="print a results table")
    export.add_argument("results", help="results file to export")
    export.add_argument(
        "--format", required=True, choices=results.EXPORT_FORMATS, help="output format"
    )
    export.add_argument("--metrics", help="comma-separated metric column order")
    export.set_defaults(handler=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DataError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except EnvironmentFailure as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
