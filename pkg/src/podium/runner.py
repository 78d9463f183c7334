"""Containerized execution of contestant systems.

Every system is a directory with a dockerfile. The harness builds one image
per system, runs the containers strictly one at a time (wall-clock time is a
reported result, so no contention), and collects hypotheses under the
data/predictions contract: the test-set input is staged read-only into a
fresh host directory mounted at /data (`source` file for MT, `images/`
directory for OCR) and the container must leave `/data/predictions` behind.
Only the source side of the test set is ever staged; references never reach
a container.

Docker is driven through its CLI. The PODIUM_DOCKER environment variable
overrides the binary (the daemon endpoint itself is docker's own
DOCKER_HOST), which is also the hook tests use to substitute a scripted
stand-in.
"""

from __future__ import annotations

import os
import shutil
import subprocess
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

from .corpus import IMAGE_SUFFIXES
from .errors import DockerError

IMAGE_NAMESPACE = "deep"
DEFAULT_TIMEOUT_SECONDS = 3600.0
_LOG_TAIL_CHARS = 2000

DOCKERFILE_NAMES = ("Dockerfile", "dockerfile")


@dataclass(frozen=True)
class SystemEntry:
    """One contestant: a named directory holding a docker build context."""

    name: str
    context_dir: Path
    is_baseline: bool = False

    def dockerfile(self) -> Path:
        for candidate in DOCKERFILE_NAMES:
            path = self.context_dir / candidate
            if path.is_file():
                return path
        raise DockerError(f"no dockerfile in {self.context_dir}")


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one system's container run."""

    system_name: str
    wall_time_seconds: float
    predictions_path: Path | None
    exit_status: int
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def docker_binary() -> str:
    return os.environ.get("PODIUM_DOCKER", "docker")


def _docker(args: list[str], **kwargs) -> subprocess.CompletedProcess:
    binary = docker_binary()
    if shutil.which(binary) is None:
        raise DockerError(f"docker binary not found: {binary}")
    return subprocess.run([binary, *args], **kwargs)


def docker_available() -> bool:
    """True when the docker binary exists and its daemon answers."""
    try:
        probe = _docker(["info"], capture_output=True, text=True, timeout=30)
    except (DockerError, OSError, subprocess.TimeoutExpired):
        return False
    return probe.returncode == 0


def list_images() -> set[str]:
    """Tags known to the daemon, as repository:tag strings."""
    probe = _docker(
        ["images", "--format", "{{.Repository}}:{{.Tag}}"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    if probe.returncode != 0:
        raise DockerError(f"docker images failed: {probe.stderr.strip()}")
    return {line for line in probe.stdout.splitlines() if line}


def image_tag(system_name: str) -> str:
    return f"{IMAGE_NAMESPACE}/{system_name.lower()}"


def find_systems(systems_dir: Path, baselines: tuple[str, ...] = ()) -> list[SystemEntry]:
    """Discover system directories (those holding a dockerfile), name order.

    Image tags are lowercase, so two names differing only in case collide
    and are rejected up front.
    """
    systems_dir = Path(systems_dir)
    if not systems_dir.is_dir():
        raise DockerError(f"systems directory not found: {systems_dir}")
    entries = []
    baseline_set = {b.lower() for b in baselines}
    for child in sorted(systems_dir.iterdir(), key=lambda p: p.name):
        if child.is_dir() and any((child / n).is_file() for n in DOCKERFILE_NAMES):
            entries.append(
                SystemEntry(
                    name=child.name,
                    context_dir=child,
                    is_baseline=child.name.lower() in baseline_set,
                )
            )
    if not entries:
        raise DockerError(f"no dockerized systems found in {systems_dir}")
    lowered = [e.name.lower() for e in entries]
    if len(set(lowered)) != len(lowered):
        clash = next(n for n in lowered if lowered.count(n) > 1)
        raise DockerError(f"system names collide case-insensitively on {clash!r}")
    unknown = baseline_set - set(lowered)
    if unknown:
        raise DockerError(f"baseline names not found among systems: {', '.join(sorted(unknown))}")
    return entries


def build_image(entry: SystemEntry, log_path: Path | None = None) -> str:
    """Build a system's image; the tag is derived from its name."""
    entry.dockerfile()
    tag = image_tag(entry.name)
    build = _docker(
        ["build", "-t", tag, str(entry.context_dir)],
        capture_output=True,
        text=True,
    )
    if log_path is not None:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        with log_path.open("a", encoding="utf-8") as log:
            log.write(f"$ docker build -t {tag} {entry.context_dir}\n")
            log.write(build.stdout or "")
            log.write(build.stderr or "")
    if build.returncode != 0:
        tail = ((build.stderr or "") + (build.stdout or ""))[-_LOG_TAIL_CHARS:]
        raise DockerError(f"image build failed for {entry.name!r}:\n{tail}")
    return tag


def stage_input(staging_dir: Path, task: str, source: Path) -> None:
    """Lay out a fresh /data mount: `source` file (MT) or `images/` (OCR)."""
    staging_dir = Path(staging_dir)
    if staging_dir.exists():
        shutil.rmtree(staging_dir)
    staging_dir.mkdir(parents=True)
    source = Path(source)
    if task.upper() == "OCR":
        if not source.is_dir():
            raise DockerError(f"image directory not found: {source}")
        images_dir = staging_dir / "images"
        images_dir.mkdir()
        for image in sorted(source.iterdir(), key=lambda p: p.name):
            if image.suffix.lower() in IMAGE_SUFFIXES:
                shutil.copy2(image, images_dir / image.name)
    else:
        if not source.is_file():
            raise DockerError(f"source file not found: {source}")
        shutil.copy2(source, staging_dir / "source")
    # containers may run as arbitrary users and must create /data/predictions
    os.chmod(staging_dir, 0o777)


def _collect_predictions(staging_dir: Path, task: str) -> Path:
    predictions = staging_dir / "predictions"
    if task.upper() == "OCR":
        if not predictions.is_dir():
            raise DockerError("container produced no predictions directory")
    else:
        if not predictions.is_file():
            raise DockerError("container produced no predictions file")
    return predictions


def run_system(
    tag: str,
    staging_dir: Path,
    task: str,
    timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS,
    *,
    system_name: str | None = None,
    log_path: Path | None = None,
    network: bool = False,
) -> RunRecord:
    """Run one built image against a staged input directory.

    The clock covers only container start to exit; staging, collection and
    cleanup are outside it. On timeout the container is force-removed.
    """
    name = system_name or tag.split("/")[-1]
    container = f"{IMAGE_NAMESPACE}-{name.lower()}-{uuid.uuid4().hex[:8]}"
    command = ["run", "--name", container, "-v", f"{Path(staging_dir).resolve()}:/data"]
    if not network:
        command += ["--network", "none"]
    command.append(tag)

    log = None
    if log_path is not None:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        log = log_path.open("a", encoding="utf-8")
        log.write(f"$ docker {' '.join(command)}\n")
        log.flush()
    try:
        started = time.monotonic()
        try:
            run = _docker(
                command,
                stdout=log or subprocess.DEVNULL,
                stderr=subprocess.STDOUT if log else subprocess.DEVNULL,
                timeout=timeout_seconds,
            )
            wall_time = time.monotonic() - started
        except subprocess.TimeoutExpired:
            wall_time = time.monotonic() - started
            return RunRecord(
                system_name=name,
                wall_time_seconds=wall_time,
                predictions_path=None,
                exit_status=-1,
                error=f"timed out after {timeout_seconds:g}s",
            )
        if run.returncode != 0:
            return RunRecord(
                system_name=name,
                wall_time_seconds=wall_time,
                predictions_path=None,
                exit_status=run.returncode,
                error=f"container exited with status {run.returncode}",
            )
        try:
            predictions = _collect_predictions(Path(staging_dir), task)
        except DockerError as error:
            return RunRecord(
                system_name=name,
                wall_time_seconds=wall_time,
                predictions_path=None,
                exit_status=run.returncode,
                error=str(error),
            )
        return RunRecord(
            system_name=name,
            wall_time_seconds=wall_time,
            predictions_path=predictions,
            exit_status=run.returncode,
        )
    finally:
        _docker(["rm", "-f", container], capture_output=True, text=True)
        if log is not None:
            log.close()


def _copy_predictions(record: RunRecord, out_dir: Path) -> RunRecord:
    destination = out_dir / "predictions" / record.system_name / "predictions"
    destination.parent.mkdir(parents=True, exist_ok=True)
    if destination.is_dir():
        shutil.rmtree(destination)
    elif destination.exists():
        destination.unlink()
    assert record.predictions_path is not None
    if record.predictions_path.is_dir():
        shutil.copytree(record.predictions_path, destination)
    else:
        shutil.copy2(record.predictions_path, destination)
    return RunRecord(
        system_name=record.system_name,
        wall_time_seconds=record.wall_time_seconds,
        predictions_path=destination,
        exit_status=record.exit_status,
    )


def run_all(
    entries: list[SystemEntry],
    source: Path,
    task: str,
    out_dir: Path,
    timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS,
    network: bool = False,
) -> list[RunRecord]:
    """Build and run every system sequentially in name order.

    Per-system failures (build, run, missing predictions) are recorded and
    the run continues; only an unreachable daemon aborts. Successful
    predictions land under `<out>/predictions/<system>/predictions`, logs
    under `<out>/logs/<system>.log`.
    """
    if not entries:
        raise DockerError("no systems to run")
    lowered = [e.name.lower() for e in entries]
    if len(set(lowered)) != len(lowered):
        clash = next(n for n in lowered if lowered.count(n) > 1)
        raise DockerError(f"system names collide case-insensitively on {clash!r}")
    if not docker_available():
        raise DockerError("docker daemon is not reachable")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for entry in sorted(entries, key=lambda e: e.name):
        log_path = out_dir / "logs" / f"{entry.name}.log"
        staging = out_dir / "staging" / entry.name
        try:
            tag = build_image(entry, log_path=log_path)
            stage_input(staging, task, source)
        except DockerError as error:
            records.append(
                RunRecord(
                    system_name=entry.name,
                    wall_time_seconds=0.0,
                    predictions_path=None,
                    exit_status=-1,
                    error=str(error),
                )
            )
            continue
        record = run_system(
            tag,
            staging,
            task,
            timeout_seconds,
            system_name=entry.name,
            log_path=log_path,
            network=network,
        )
        if record.ok:
            record = _copy_predictions(record, out_dir)
        records.append(record)
    return records


def cleanup(image_tags: list[str], staging_root: Path | None = None) -> list[str]:
    """Remove built images, leftover harness containers, and staging trees.

    Safe to call twice; returns non-fatal warnings for anything that could
    not be removed. Images unrelated to the given tags are never touched.
    """
    warnings = []
    probe = _docker(
        ["ps", "-a", "--format", "{{.Names}}"], capture_output=True, text=True, timeout=60
    )
    if probe.returncode == 0:
        prefix = f"{IMAGE_NAMESPACE}-"
        for container in probe.stdout.splitlines():
            if container.startswith(prefix):
                _docker(["rm", "-f", container], capture_output=True, text=True)
    for tag in image_tags:
        removal = _docker(["rmi", "-f", tag], capture_output=True, text=True)
        if removal.returncode != 0 and tag in list_images():
            warnings.append(f"could not remove image {tag}: {removal.stderr.strip()}")
    if staging_root is not None and Path(staging_root).exists():
        try:
            shutil.rmtree(staging_root)
        except OSError as error:
            warnings.append(f"could not remove staging directory {staging_root}: {error}")
    return warnings
