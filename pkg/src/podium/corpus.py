"""Test-set and hypothesis loading for translation and text-recognition tasks.

A corpus is an ordered list of id-keyed segments for one task. Translation
test sets are a source/target file pair, either WMT-style XML
(`<doc id=...><seg id=...>`, ids "doc#seg") or one segment per line
(ids "line#N"), chosen by file extension. Recognition test sets pair an
image directory with a transcript directory by basename. Hypotheses must
align 1:1 with the reference corpus they are scored against.
"""

from __future__ import annotations

import unicodedata
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".tif", ".tiff")
XML_SUFFIXES = (".xml", ".sgm", ".sgml")
TASKS = ("MT", "OCR")


def _clean(text: str) -> str:
    return unicodedata.normalize("NFC", text).strip()


@dataclass(frozen=True)
class Segment:
    """One scoring unit: a corpus-unique id and its text content."""

    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise CorpusError("segment id must be non-empty")


@dataclass(frozen=True)
class Corpus:
    """An ordered test set. Provenance paths do not affect equality, so a
    corpus written back to disk and reloaded compares equal."""

    task: str
    segments: tuple[Segment, ...]
    source_files: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.task not in TASKS:
            raise CorpusError(f"unknown task {self.task!r}; expected one of {', '.join(TASKS)}")
        if not self.segments:
            raise CorpusError("corpus has no segments")
        ids = [s.id for s in self.segments]
        if len(set(ids)) != len(ids):
            duplicate = next(i for i in ids if ids.count(i) > 1)
            raise CorpusError(f"duplicate segment id {duplicate!r}")
        # hypothesis text may be empty (HypothesisSet), reference text may not
        empty = next((s.id for s in self.segments if not s.text), None)
        if empty is not None:
            raise CorpusError(f"segment {empty!r} has empty text")

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.segments)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(s.text for s in self.segments)


@dataclass(frozen=True)
class HypothesisSet:
    """One system's outputs, segment-aligned to a corpus, plus the wall-clock
    time of the run that produced them when known."""

    system_name: str
    segments: tuple[Segment, ...]
    wall_time_seconds: float | None = None

    def __post_init__(self):
        if not self.system_name:
            raise CorpusError("system name must be non-empty")
        if self.wall_time_seconds is not None and self.wall_time_seconds < 0:
            raise CorpusError(f"negative wall time for system {self.system_name!r}")

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(s.text for s in self.segments)


def _parse_xml_segments(path: Path) -> list[Segment]:
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as error:
        raise CorpusError(f"{path}: not well-formed XML: {error}") from error
    segments: list[Segment] = []
    for doc in root.iter("doc"):
        doc_id = doc.get("id")
        if doc_id is None:
            raise CorpusError(f"{path}: <doc> element without an id attribute")
        for seg in doc.iter("seg"):
            seg_id = seg.get("id")
            if seg_id is None:
                raise CorpusError(f"{path}: <seg> without an id attribute in doc {doc_id!r}")
            segments.append(Segment(id=f"{doc_id}#{seg_id}", text=_clean(seg.text or "")))
    if not segments:
        raise CorpusError(f"{path}: no <seg> elements found")
    return segments


def read_lines(path: Path) -> list[str]:
    """File contents as cleaned lines; a trailing newline adds no segment."""
    text = path.read_text(encoding="utf-8")
    if text.endswith("\n"):
        text = text[:-1]
    return [_clean(line) for line in text.split("\n")] if text else []


def write_lines(path: Path, lines: Iterable[str]) -> None:
    """Inverse of `read_lines`: one line per entry, trailing newline."""
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")


def _parse_segment_file(path: Path) -> list[Segment]:
    """One test-set file as segments, XML or line-per-segment by extension."""
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"test-set file not found: {path}")
    if path.suffix.lower() in XML_SUFFIXES:
        return _parse_xml_segments(path)
    return [Segment(id=f"line#{i}", text=line) for i, line in enumerate(read_lines(path), start=1)]


def load_mt_testset(source_path: Path, target_path: Path) -> tuple[Corpus, Corpus]:
    """Load a translation test set as an aligned (source, references) pair."""
    source_path, target_path = Path(source_path), Path(target_path)
    source_segments = _parse_segment_file(source_path)
    target_segments = _parse_segment_file(target_path)
    source_ids = [s.id for s in source_segments]
    target_ids = [s.id for s in target_segments]
    if source_ids != target_ids:
        detail = f"{len(source_ids)} vs {len(target_ids)} segments"
        diff = next((f"{a!r} vs {b!r}" for a, b in zip(source_ids, target_ids) if a != b), None)
        if diff:
            detail = f"first differing id {diff}"
        raise CorpusError(f"source/target id sequences differ ({detail})")
    source = Corpus(task="MT", segments=tuple(source_segments), source_files=(str(source_path),))
    references = Corpus(task="MT", segments=tuple(target_segments), source_files=(str(target_path),))
    return source, references


def load_ocr_testset(images_dir: Path, transcripts_dir: Path) -> tuple[Corpus, Corpus]:
    """Load a recognition test set as (image manifest, reference transcripts).

    Images and transcripts pair by basename; segments are ordered
    lexicographically. Manifest segment text is the image filename relative
    to the image directory; images themselves are never decoded.
    """
    images_dir, transcripts_dir = Path(images_dir), Path(transcripts_dir)
    if not images_dir.is_dir():
        raise CorpusError(f"image directory not found: {images_dir}")
    if not transcripts_dir.is_dir():
        raise CorpusError(f"transcript directory not found: {transcripts_dir}")
    images = sorted(
        (p for p in images_dir.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES),
        key=lambda p: p.name,
    )
    if not images:
        raise CorpusError(f"{images_dir}: no image files ({', '.join(IMAGE_SUFFIXES)})")
    transcripts = {p.stem: p for p in transcripts_dir.glob("*.txt")}
    manifest_segments = []
    reference_segments = []
    for image in images:
        transcript = transcripts.pop(image.stem, None)
        if transcript is None:
            raise CorpusError(f"missing transcript {image.stem}.txt for image {image.name}")
        manifest_segments.append(Segment(id=image.stem, text=image.name))
        reference_segments.append(
            Segment(id=image.stem, text=_clean(transcript.read_text(encoding="utf-8")))
        )
    if transcripts:
        orphan = sorted(transcripts)[0]
        raise CorpusError(f"transcript {orphan}.txt has no matching image")
    manifest = Corpus(task="OCR", segments=tuple(manifest_segments), source_files=(str(images_dir),))
    references = Corpus(
        task="OCR", segments=tuple(reference_segments), source_files=(str(transcripts_dir),)
    )
    return manifest, references


def load_reference_corpus(path: Path, task: str) -> Corpus:
    """Load references alone: a segment file (MT) or transcript dir (OCR)."""
    path = Path(path)
    if task.upper() == "OCR":
        if not path.is_dir():
            raise CorpusError(f"transcript directory not found: {path}")
        transcripts = sorted(path.glob("*.txt"), key=lambda p: p.name)
        if not transcripts:
            raise CorpusError(f"{path}: no .txt transcripts found")
        segments = tuple(
            Segment(id=p.stem, text=_clean(p.read_text(encoding="utf-8"))) for p in transcripts
        )
        return Corpus(task="OCR", segments=segments, source_files=(str(path),))
    return Corpus(task="MT", segments=tuple(_parse_segment_file(path)), source_files=(str(path),))


def load_hypotheses(path: Path, task: str, reference: Corpus, system_name: str) -> HypothesisSet:
    """Load one system's predictions against a reference corpus.

    Translation predictions are a text file aligned line-by-line with the
    references. Recognition predictions are a directory of `.txt` files
    named after reference segment ids; every segment must be covered.
    """
    path = Path(path)
    if task.upper() != reference.task:
        raise CorpusError(f"task {task!r} does not match reference corpus task {reference.task!r}")
    if reference.task == "MT":
        if not path.is_file():
            raise CorpusError(f"hypothesis file not found: {path}")
        lines = read_lines(path)
        if len(lines) != len(reference):
            raise CorpusError(
                f"{path}: {len(lines)} hypotheses for {len(reference)} reference segments"
            )
        segments = tuple(Segment(id=sid, text=text) for sid, text in zip(reference.ids, lines))
        return HypothesisSet(system_name=system_name, segments=segments)

    if not path.is_dir():
        raise CorpusError(f"hypothesis directory not found: {path}")
    by_id = {p.stem: p for p in path.glob("*.txt")}
    missing = [sid for sid in reference.ids if sid not in by_id]
    if missing:
        raise CorpusError(f"{path}: missing predictions for: {', '.join(missing[:5])}")
    segments = tuple(
        Segment(id=sid, text=_clean(by_id[sid].read_text(encoding="utf-8")))
        for sid in reference.ids
    )
    return HypothesisSet(system_name=system_name, segments=segments)


def aggregate_corpora(parts: Sequence[Corpus]) -> Corpus:
    """Concatenate test sets into one corpus, preserving order and provenance.

    If any segment id repeats across parts, every id gets prefixed with its
    part's source-file stem to restore uniqueness.
    """
    if not parts:
        raise CorpusError("cannot aggregate zero corpora")
    tasks = {part.task for part in parts}
    if len(tasks) != 1:
        raise CorpusError(f"cannot mix tasks in one corpus: {', '.join(sorted(tasks))}")
    all_ids = [sid for part in parts for sid in part.ids]
    collision = len(set(all_ids)) != len(all_ids)

    def prefix(index: int, part: Corpus) -> str:
        return Path(part.source_files[0]).stem if part.source_files else f"part{index + 1}"

    segments: list[Segment] = []
    for index, part in enumerate(parts):
        for segment in part.segments:
            sid = f"{prefix(index, part)}#{segment.id}" if collision else segment.id
            segments.append(Segment(id=sid, text=segment.text))
    source_files = tuple(name for part in parts for name in part.source_files)
    return Corpus(task=parts[0].task, segments=tuple(segments), source_files=source_files)
