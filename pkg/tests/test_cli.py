"""End-to-end command-line behavior: run, eval, serve, export, exit codes."""

import json
import socket
import subprocess
import sys
import urllib.request
from pathlib import Path

import pytest

from podium.cli import main
from podium.metrics import MetricId
from podium.results import export_table, read_results

from conftest import FIXTURE_HYPS, FIXTURE_REFS, GOLDEN_BLEU, benchmark_results
from podium.results import write_results


def write_mt_inputs(tmp_path: Path):
    refs = tmp_path / "refs.txt"
    refs.write_text("\n".join(FIXTURE_REFS) + "\n", encoding="utf-8")
    hyp_a = tmp_path / "alpha.txt"
    hyp_a.write_text("\n".join(FIXTURE_HYPS) + "\n", encoding="utf-8")
    hyp_b = tmp_path / "bravo.txt"
    hyp_b.write_text("\n".join(FIXTURE_REFS) + "\n", encoding="utf-8")
    return refs, hyp_a, hyp_b


class TestEval:
    def test_bare_hypothesis_files(self, tmp_path, capsys):
        refs, hyp_a, hyp_b = write_mt_inputs(tmp_path)
        out = tmp_path / "results.json"
        code = main(
            [
                "eval",
                str(hyp_a),
                str(hyp_b),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--trials",
                "200",
            ]
        )
        assert code == 0
        results = read_results(out)
        assert [s.name for s in results.systems] == ["alpha", "bravo"]
        assert results.metrics == (MetricId.BLEU, MetricId.TER, MetricId.CHRF)
        assert results.main_metric is MetricId.BLEU
        assert results.system("alpha").corpus_scores[MetricId.BLEU] == pytest.approx(
            GOLDEN_BLEU, abs=1e-6
        )
        assert results.system("bravo").corpus_scores[MetricId.BLEU] == pytest.approx(100.0)
        assert results.system("alpha").wall_time_seconds is None
        assert len(results.system("alpha").segment_scores[MetricId.BLEU]) == len(FIXTURE_REFS)
        stdout = capsys.readouterr().out
        assert "1  bravo  BLEU 100.00" in stdout
        assert f"results written to {out}" in stdout

    def test_named_hypothesis_paths(self, tmp_path):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        out = tmp_path / "results.json"
        code = main(
            [
                "eval",
                f"first={hyp_a}",
                f"second={hyp_a}",
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--trials",
                "100",
            ]
        )
        assert code == 0
        assert [s.name for s in read_results(out).systems] == ["first", "second"]

    def test_duplicate_names_exit_1(self, tmp_path, capsys):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        other = tmp_path / "sub"
        other.mkdir()
        duplicate = other / "alpha.txt"
        duplicate.write_text(hyp_a.read_text())
        code = main(
            [
                "eval",
                str(hyp_a),
                str(duplicate),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(tmp_path / "r.json"),
            ]
        )
        assert code == 1
        assert "duplicate system name" in capsys.readouterr().err

    def test_unknown_metric_exit_1_names_supported(self, tmp_path, capsys):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        code = main(
            [
                "eval",
                str(hyp_a),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(tmp_path / "r.json"),
                "--metrics",
                "bleu,rouge",
            ]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert "rouge" in err
        for name in ("BLEU", "TER", "chrF", "WER", "bWER"):
            assert name in err

    def test_main_metric_must_be_selected(self, tmp_path, capsys):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        code = main(
            [
                "eval",
                str(hyp_a),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(tmp_path / "r.json"),
                "--metrics",
                "bleu,ter",
                "--main",
                "wer",
            ]
        )
        assert code == 1
        assert "WER" in capsys.readouterr().err

    def test_metric_selection_and_main(self, tmp_path):
        refs, hyp_a, hyp_b = write_mt_inputs(tmp_path)
        out = tmp_path / "r.json"
        code = main(
            [
                "eval",
                str(hyp_a),
                str(hyp_b),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--metrics",
                "TER,WER",
                "--main",
                "wer",
                "--trials",
                "100",
            ]
        )
        assert code == 0
        results = read_results(out)
        assert results.metrics == (MetricId.TER, MetricId.WER)
        assert results.main_metric is MetricId.WER

    def test_ocr_defaults(self, tmp_path):
        transcripts = tmp_path / "transcripts"
        transcripts.mkdir()
        (transcripts / "page1.txt").write_text("hello world\n")
        (transcripts / "page2.txt").write_text("second page\n")
        hyp_dir = tmp_path / "reader"
        hyp_dir.mkdir()
        (hyp_dir / "page1.txt").write_text("hello world\n")
        (hyp_dir / "page2.txt").write_text("secondpage\n")
        out = tmp_path / "r.json"
        code = main(
            [
                "eval",
                str(hyp_dir),
                "--references",
                str(transcripts),
                "--task",
                "OCR",
                "--out",
                str(out),
                "--trials",
                "100",
            ]
        )
        assert code == 0
        results = read_results(out)
        assert results.task == "OCR"
        assert results.metrics == (MetricId.WER, MetricId.BWER)
        assert [s.name for s in results.systems] == ["reader"]

    def test_no_segment_scores_flag(self, tmp_path):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        out = tmp_path / "r.json"
        code = main(
            [
                "eval",
                str(hyp_a),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--trials",
                "100",
                "--no-segment-scores",
            ]
        )
        assert code == 0
        assert read_results(out).system("alpha").segment_scores == {}

    def test_baselines_flag(self, tmp_path):
        refs, hyp_a, hyp_b = write_mt_inputs(tmp_path)
        out = tmp_path / "r.json"
        code = main(
            [
                "eval",
                str(hyp_a),
                str(hyp_b),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--trials",
                "100",
                "--baselines",
                "alpha",
            ]
        )
        assert code == 0
        results = read_results(out)
        assert results.system("alpha").is_baseline
        assert not results.system("bravo").is_baseline

    def test_art_config_recorded(self, tmp_path):
        refs, hyp_a, _ = write_mt_inputs(tmp_path)
        out = tmp_path / "r.json"
        main(
            [
                "eval",
                str(hyp_a),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(out),
                "--trials",
                "123",
                "--alpha",
                "0.1",
                "--seed",
                "9",
            ]
        )
        config = read_results(out).art_config
        assert (config.trials, config.alpha, config.seed) == (123, 0.1, 9)

    def test_missing_reference_file_exit_1(self, tmp_path, capsys):
        _, hyp_a, _ = write_mt_inputs(tmp_path)
        code = main(
            [
                "eval",
                str(hyp_a),
                "--references",
                str(tmp_path / "absent.txt"),
                "--task",
                "MT",
                "--out",
                str(tmp_path / "r.json"),
            ]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestRunEvalPipeline:
    def make_systems(self, root: Path, names):
        systems = root / "systems"
        for name in names:
            (systems / name).mkdir(parents=True)
            (systems / name / "Dockerfile").write_text("FROM scratch\n")
        return systems

    def test_run_then_eval(self, fake_docker, tmp_path, capsys):
        systems = self.make_systems(tmp_path, ["echo1", "echo2"])
        source = tmp_path / "source.txt"
        source.write_text("\n".join(FIXTURE_REFS) + "\n", encoding="utf-8")
        out = tmp_path / "run-out"
        code = main(
            [
                "run",
                "--systems",
                str(systems),
                "--task",
                "MT",
                "--source",
                str(source),
                "--out",
                str(out),
                "--baselines",
                "echo2",
            ]
        )
        assert code == 0
        stdout = capsys.readouterr().out
        assert "ok      echo1" in stdout
        assert "ok      echo2" in stdout

        manifest = json.loads((out / "times").read_text())
        assert set(manifest) == {"echo1", "echo2"}
        assert manifest["echo2"]["is_baseline"] is True
        assert manifest["echo1"]["wall_time_seconds"] > 0
        for name in ("echo1", "echo2"):
            assert (out / "predictions" / name / "predictions").is_file()
        assert not (out / "staging").exists()

        refs = tmp_path / "refs.txt"
        refs.write_text("\n".join(FIXTURE_REFS) + "\n", encoding="utf-8")
        results_path = tmp_path / "results.json"
        code = main(
            [
                "eval",
                "--run-dir",
                str(out),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(results_path),
                "--trials",
                "200",
            ]
        )
        assert code == 0
        results = read_results(results_path)
        assert [s.name for s in results.systems] == ["echo1", "echo2"]
        for name in ("echo1", "echo2"):
            assert results.system(name).corpus_scores[MetricId.BLEU] == pytest.approx(100.0)
            assert results.system(name).wall_time_seconds > 0
        assert results.system("echo2").is_baseline
        ranking = results.rankings[MetricId.BLEU]
        assert ranking.clusters == (("echo1", "echo2"),)
        assert ranking.p_values == (1.0,)

    def test_run_reports_failures_with_exit_1(self, fake_docker, tmp_path, capsys):
        systems = self.make_systems(tmp_path, ["crash", "good"])
        source = tmp_path / "source.txt"
        source.write_text("line one\n")
        out = tmp_path / "run-out"
        code = main(
            [
                "run",
                "--systems",
                str(systems),
                "--task",
                "MT",
                "--source",
                str(source),
                "--out",
                str(out),
            ]
        )
        assert code == 1
        captured = capsys.readouterr()
        assert "failed  crash" in captured.out
        assert "1 of 2 systems failed" in captured.err
        manifest = json.loads((out / "times").read_text())
        assert manifest["crash"]["error"]
        assert manifest["crash"]["wall_time_seconds"] is None
        assert manifest["good"]["error"] is None

    def test_eval_skips_systems_with_recorded_errors(self, tmp_path, capsys):
        run_dir = tmp_path / "run-out"
        for name in ("good", "broken"):
            directory = run_dir / "predictions" / name
            directory.mkdir(parents=True)
            (directory / "predictions").write_text("\n".join(FIXTURE_HYPS) + "\n")
        (run_dir / "times").write_text(
            json.dumps(
                {
                    "good": {"wall_time_seconds": 2.5, "is_baseline": False, "error": None},
                    "broken": {
                        "wall_time_seconds": None,
                        "is_baseline": False,
                        "error": "container exited with status 3",
                    },
                }
            )
        )
        refs = tmp_path / "refs.txt"
        refs.write_text("\n".join(FIXTURE_REFS) + "\n")
        results_path = tmp_path / "results.json"
        code = main(
            [
                "eval",
                "--run-dir",
                str(run_dir),
                "--references",
                str(refs),
                "--task",
                "MT",
                "--out",
                str(results_path),
                "--trials",
                "100",
            ]
        )
        assert code == 0
        assert "skipping broken" in capsys.readouterr().err
        assert [s.name for s in read_results(results_path).systems] == ["good"]

    def test_run_missing_docker_exit_2(self, monkeypatch, tmp_path, capsys):
        systems = self.make_systems(tmp_path, ["alpha"])
        source = tmp_path / "source.txt"
        source.write_text("line\n")
        monkeypatch.setenv("PODIUM_DOCKER", str(tmp_path / "no-binary"))
        code = main(
            [
                "run",
                "--systems",
                str(systems),
                "--task",
                "MT",
                "--source",
                str(source),
                "--out",
                str(tmp_path / "out"),
            ]
        )
        assert code == 2
        assert "daemon" in capsys.readouterr().err


class TestExport:
    def test_export_writes_table_to_stdout(self, tmp_path, capsysbinary):
        path = tmp_path / "results.json"
        write_results(benchmark_results(), path)
        code = main(["export", str(path), "--format", "csv"])
        assert code == 0
        assert capsysbinary.readouterr().out == export_table(benchmark_results(), "csv")

    def test_export_metric_order(self, tmp_path, capsysbinary):
        path = tmp_path / "results.json"
        write_results(benchmark_results(), path)
        code = main(["export", str(path), "--format", "csv", "--metrics", "chrf,bleu"])
        assert code == 0
        out = capsysbinary.readouterr().out.decode()
        assert out.splitlines()[0] == "System,chrF,BLEU,Time (s)"

    def test_export_rejects_unknown_format_flag(self, tmp_path):
        path = tmp_path / "results.json"
        write_results(benchmark_results(), path)
        with pytest.raises(SystemExit) as excinfo:
            main(["export", str(path), "--format", "pdf"])
        assert excinfo.value.code == 2

    def test_export_missing_results_exit_1(self, tmp_path, capsys):
        code = main(["export", str(tmp_path / "absent.json"), "--format", "csv"])
        assert code == 1
        assert "not found" in capsys.readouterr().err


class TestServe:
    def test_serve_announces_port_and_answers(self, tmp_path):
        path = tmp_path / "results.json"
        write_results(benchmark_results(), path)
        process = subprocess.Popen(
            [sys.executable, "-m", "podium.cli", "serve", str(path), "--port", "0"],
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            text=True,
        )
        try:
            line = process.stdout.readline().strip()
            assert line.startswith("serving results on http://127.0.0.1:")
            port = int(line.rsplit(":", 1)[1].rstrip("/"))
            with urllib.request.urlopen(
                f"http://127.0.0.1:{port}/api/results", timeout=10
            ) as response:
                payload = json.loads(response.read())
            assert len(payload["systems"]) == 8
        finally:
            process.terminate()
            process.wait(timeout=10)

    def test_serve_busy_port_exit_2(self, tmp_path, capsys):
        path = tmp_path / "results.json"
        write_results(benchmark_results(), path)
        blocker = socket.socket()
        try:
            blocker.bind(("127.0.0.1", 0))
            blocker.listen(1)
            busy_port = blocker.getsockname()[1]
            code = main(["serve", str(path), "--port", str(busy_port)])
        finally:
            blocker.close()
        assert code == 2
        assert str(busy_port) in capsys.readouterr().err

    def test_serve_missing_results_exit_1(self, tmp_path, capsys):
        code = main(["serve", str(tmp_path / "absent.json"), "--port", "0"])
        assert code == 1
        assert "not found" in capsys.readouterr().err
