"""End-to-end processing of raw dumps into segmented corpora.

One record flows through extract -> segment -> references -> court
normalization. Records are independent, so segmentation fans out over
worker processes; input order is restored before writing (the pool maps
in order), making parallel output byte-identical to sequential.
"""

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .geo import GeoDirectory, load_directory, normalize_court
from .html_lines import extract_texts
from .jsonl import RecordError, dumps_segmented, read_raw_stream
from .records import RawDecision, SegmentedDecision
from .references import extract_references
from .sections import segment

logger = logging.getLogger(__name__)


def process_decision(
    raw: RawDecision,
    directory: GeoDirectory,
    known_codes: frozenset[str] | None = None,
) -> SegmentedDecision:
    """Segment a single decision; blank content yields four empty sections."""
    lines = extract_texts(raw.content)
    seg = segment(lines)
    content_lines = seg.tenor + seg.tatbestand + seg.entscheidungsgruende + seg.rechtsmittelbelehrung
    references = extract_references(content_lines, known_codes)
    return SegmentedDecision(
        id=raw.id,
        file_number=raw.file_number,
        date=raw.date,
        decision_type=raw.decision_type,
        ecli=raw.ecli,
        court=normalize_court(raw.court, directory),
        tenor="\n".join(seg.tenor),
        tatbestand="\n".join(seg.tatbestand),
        entscheidungsgruende="\n".join(seg.entscheidungsgruende),
        rechtsmittelbelehrung="\n".join(seg.rechtsmittelbelehrung),
        references=tuple(references),
    )


@dataclass
class RunManifest:
    """Audit trail of one segmentation run; written even on partial failure."""

    input: str
    output: str
    states_file: str | None
    cities_file: str | None
    jobs: int
    read: int = 0
    segmented: int = 0
    skipped: int = 0
    errors: int = 0
    started: str = ""
    finished: str = ""
    version: str = __version__
    error_samples: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "output": self.output,
            "states_file": self.states_file,
            "cities_file": self.cities_file,
            "jobs": self.jobs,
            "counts": {
                "read": self.read,
                "segmented": self.segmented,
                "skipped": self.skipped,
                "errors": self.errors,
            },
            "started": self.started,
            "finished": self.finished,
            "version": self.version,
            "error_samples": self.error_samples,
        }

    def write(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )


def manifest_path_for(output: str | Path) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


# Worker-process state, set once per worker by _init_worker.
_WORKER_DIRECTORY: GeoDirectory | None = None
_WORKER_CODES: frozenset[str] | None = None


def _init_worker(directory: GeoDirectory, known_codes: frozenset[str] | None) -> None:
    global _WORKER_DIRECTORY, _WORKER_CODES
    _WORKER_DIRECTORY = directory
    _WORKER_CODES = known_codes


def _process_in_worker(raw: RawDecision) -> SegmentedDecision | tuple[int, str]:
    try:
        return process_decision(raw, _WORKER_DIRECTORY, _WORKER_CODES)
    except Exception as exc:  # skip-and-report; never kill the pool
        return (raw.id, f"{type(exc).__name__}: {exc}")


def _default_jobs() -> int:
    return os.cpu_count() or 1


def run_segment(
    input_path: str | Path,
    output_path: str | Path,
    states_file: str | Path | None = None,
    cities_file: str | Path | None = None,
    jobs: int | None = None,
    known_codes: frozenset[str] | None = None,
) -> RunManifest:
    """Segment a raw JSONL dump into a segmented JSONL corpus.

    Per-record failures are logged and counted, not fatal. Returns the run
    manifest, which is also written next to the output file.
    """
    jobs = max(1, jobs or _default_jobs())
    if states_file and cities_file:
        directory = load_directory(states_file, cities_file)
    else:
        directory = GeoDirectory.empty()
    manifest = RunManifest(
        input=str(input_path),
        output=str(output_path),
        states_file=str(states_file) if states_file else None,
        cities_file=str(cities_file) if cities_file else None,
        jobs=jobs,
        started=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )

    def raw_records(stream):
        for item in read_raw_stream(stream):
            if isinstance(item, RecordError):
                manifest.errors += 1
                if len(manifest.error_samples) < 20:
                    manifest.error_samples.append(f"line {item.line_no}: {item.message}")
                logger.warning("skipping input line %d: %s", item.line_no, item.message)
                continue
            manifest.read += 1
            yield item

    try:
        with open(input_path, encoding="utf-8") as fin, open(
            output_path, "w", encoding="utf-8", newline="\n"
        ) as fout:
            raws = raw_records(fin)
            if jobs <= 1:
                results = (_safe_process(raw, directory, known_codes) for raw in raws)
                _write_results(results, fout, manifest)
            else:
                with ProcessPoolExecutor(
                    max_workers=jobs, initializer=_init_worker, initargs=(directory, known_codes)
                ) as pool:
                    _write_results(pool.map(_process_in_worker, raws, chunksize=16), fout, manifest)
    finally:
        manifest.finished = datetime.now(timezone.utc).isoformat(timespec="seconds")
        manifest.write(manifest_path_for(output_path))
    return manifest


def _safe_process(raw, directory, known_codes):
    try:
        return process_decision(raw, directory, known_codes)
    except Exception as exc:
        return (raw.id, f"{type(exc).__name__}: {exc}")


def _write_results(results, fout, manifest: RunManifest) -> None:
    for result in results:
        if isinstance(result, SegmentedDecision):
            fout.write(dumps_segmented(result) + "\n")
            manifest.segmented += 1
        else:
            rec_id, message = result
            manifest.skipped += 1
            manifest.errors += 1
            if len(manifest.error_samples) < 20:
                manifest.error_samples.append(f"id {rec_id}: {message}")
            logger.error("failed to segment decision %s: %s", rec_id, message)
