"""Streaming newline-delimited JSON readers and writers.

Readers follow a skip-and-report policy: malformed lines become RecordError
items in the output stream instead of aborting the run. Memory usage is
bounded by one record, not corpus size.
"""

import json
from collections.abc import Iterable, Iterator
from typing import IO, Any

from .records import CourtRaw, RawDecision, SegmentedDecision, segmented_from_dict, segmented_to_dict


class RecordError:
    """A skipped input line, carrying the 1-based line number."""

    __slots__ = ("line_no", "message")

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        self.message = message

    def __repr__(self):
        return f"RecordError(line {self.line_no}: {self.message})"


class WriteError(OSError):
    """Raised when writing aborts; ``count_written`` records made it out."""

    def __init__(self, count_written: int, message: str):
        super().__init__(f"write aborted after {count_written} records: {message}")
        self.count_written = count_written


def _opt_int(value: Any) -> int | None:
    if value is None or value == "":
        return None
    if isinstance(value, dict):  # tolerate nested {id: ...} objects
        value = value.get("id")
        if value is None:
            return None
    return int(value)


def _parse_court(obj: Any) -> CourtRaw:
    if not isinstance(obj, dict):
        return CourtRaw()
    return CourtRaw(
        court_id=_opt_int(obj.get("id", obj.get("court_id"))),
        name=str(obj.get("name") or ""),
        state_id=_opt_int(obj.get("state_id", obj.get("state"))),
        city_id=_opt_int(obj.get("city_id", obj.get("city"))),
    )


def _parse_raw(obj: dict) -> RawDecision:
    content = obj.get("content")
    return RawDecision(
        id=int(obj["id"]),
        file_number=str(obj.get("file_number") or ""),
        date=obj.get("date") or None,
        decision_type=obj.get("type") or None,
        ecli=obj.get("ecli") or None,
        court=_parse_court(obj.get("court")),
        content=content if isinstance(content, str) else "",
    )


def read_raw_stream(stream: IO) -> Iterator[RawDecision | RecordError]:
    """Yield RawDecision records (or RecordError for bad lines) in file order.

    Blank lines are skipped silently; unknown fields are ignored. Accepts
    text or byte streams.
    """
    for line_no, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8", errors="replace")
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            yield RecordError(line_no, f"invalid JSON: {exc.msg}")
            continue
        if not isinstance(obj, dict):
            yield RecordError(line_no, "record is not a JSON object")
            continue
        if "id" not in obj:
            yield RecordError(line_no, "record lacks 'id'")
            continue
        if "content" not in obj:
            yield RecordError(line_no, "record lacks 'content'")
            continue
        try:
            yield _parse_raw(obj)
        except (TypeError, ValueError) as exc:
            yield RecordError(line_no, f"malformed record: {exc}")


def dumps_segmented(rec: SegmentedDecision) -> str:
    """One output line, fixed field order, UTF-8 text kept verbatim."""
    return json.dumps(segmented_to_dict(rec), ensure_ascii=False, separators=(",", ":"))


def write_segmented_stream(records: Iterable[SegmentedDecision], stream: IO) -> int:
    """Write one JSON record per line; returns the number written.

    Accepts text or byte streams; output is byte-stable for a fixed input.
    An I/O failure raises WriteError carrying the count written so far.
    """
    count = 0
    as_bytes = False
    try:
        for rec in records:
            line = dumps_segmented(rec) + "\n"
            try:
                stream.write(line.encode("utf-8") if as_bytes else line)
            except TypeError:
                as_bytes = True
                stream.write(line.encode("utf-8"))
            count += 1
    except OSError as exc:
        raise WriteError(count, str(exc)) from exc
    return count


def read_segmented_stream(stream: IO) -> Iterator[SegmentedDecision | RecordError]:
    """Yield SegmentedDecision records (or RecordError) from an output file."""
    for line_no, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8", errors="replace")
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            yield segmented_from_dict(obj)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            yield RecordError(line_no, f"malformed record: {exc}")
