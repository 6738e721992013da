import io
import json
import tracemalloc

import pytest

from courtseg.jsonl import (
    RecordError,
    WriteError,
    read_raw_stream,
    read_segmented_stream,
    write_segmented_stream,
)
from courtseg.records import Court, RawDecision, SegmentedDecision


def read_all(text: str):
    return list(read_raw_stream(io.StringIO(text)))


class TestReadRawStream:
    def test_empty_stream(self):
        assert read_all("") == []

    def test_minimal_record(self):
        (rec,) = read_all('{"id":1,"content":"","court":{"id":5,"name":"AG X"}}\n')
        assert isinstance(rec, RawDecision)
        assert rec.id == 1 and rec.content == ""
        assert rec.court.court_id == 5 and rec.court.name == "AG X"

    def test_skip_and_report(self):
        text = '{"id":1,"content":"a"}\nnot json\n{"id":3,"content":"c"}\n'
        items = read_all(text)
        assert [type(i) for i in items] == [RawDecision, RecordError, RawDecision]
        assert items[1].line_no == 2
        assert [i.id for i in items if isinstance(i, RawDecision)] == [1, 3]

    @pytest.mark.parametrize(
        "line,reason",
        [
            ('{"content":"x"}', "id"),
            ('{"id":9}', "content"),
            ("[1,2,3]", "object"),
            ('{"id":"abc","content":""}', "malformed"),
        ],
    )
    def test_bad_records_reported(self, line, reason):
        (err,) = read_all(line + "\n")
        assert isinstance(err, RecordError)
        assert reason in err.message

    def test_blank_lines_skipped(self):
        items = read_all('\n{"id":1,"content":""}\n\n')
        assert len(items) == 1

    def test_unknown_fields_ignored(self):
        (rec,) = read_all('{"id":1,"content":"","slug":"x","nonsense":[1]}\n')
        assert rec.id == 1

    def test_court_key_tolerance(self):
        (rec,) = read_all(
            '{"id":1,"content":"","court":{"court_id":2,"name":"n","state_id":3,"city_id":4}}\n'
        )
        assert (rec.court.court_id, rec.court.state_id, rec.court.city_id) == (2, 3, 4)
        (rec,) = read_all('{"id":1,"content":"","court":{"id":2,"name":"n","state":3,"city":4}}\n')
        assert (rec.court.state_id, rec.court.city_id) == (3, 4)
        (rec,) = read_all('{"id":1,"content":"","court":{"id":2,"name":"n","city":{"id":7}}}\n')
        assert rec.court.city_id == 7

    def test_byte_stream_accepted(self):
        (rec,) = list(read_raw_stream(io.BytesIO(b'{"id":1,"content":"\xc3\xa4"}\n')))
        assert rec.content == "ä"


def test_write_to_byte_stream_matches_text_stream(golden_records):
    text_buf, byte_buf = io.StringIO(), io.BytesIO()
    write_segmented_stream(golden_records, text_buf)
    write_segmented_stream(golden_records, byte_buf)
    assert byte_buf.getvalue() == text_buf.getvalue().encode("utf-8")


def synthetic_record(i: int) -> SegmentedDecision:
    return SegmentedDecision(
        id=i,
        file_number=f"{i} C {i}/20",
        date="2020-01-01" if i % 3 else None,
        decision_type="Urteil" if i % 2 else None,
        ecli=None,
        court=Court(name=f"AG {i}", state="Berlin", city="Berlin"),
        tenor=f"tenor {i}" if i % 5 else "",
        entscheidungsgruende=f"gründe {i}",
    )


class TestWriteSegmentedStream:
    def test_empty_iterator(self):
        buf = io.StringIO()
        assert write_segmented_stream([], buf) == 0
        assert buf.getvalue() == ""

    def test_round_trip_identity(self, golden_records):
        buf = io.StringIO()
        assert write_segmented_stream(golden_records, buf) == len(golden_records)
        buf.seek(0)
        assert list(read_segmented_stream(buf)) == golden_records

    def test_deterministic_bytes(self):
        records = [synthetic_record(i) for i in range(1000)]
        first, second = io.StringIO(), io.StringIO()
        write_segmented_stream(records, first)
        write_segmented_stream(iter(records), second)
        assert first.getvalue() == second.getvalue()

    def test_empty_sections_are_empty_strings(self):
        buf = io.StringIO()
        write_segmented_stream([synthetic_record(10)], buf)
        obj = json.loads(buf.getvalue())
        assert obj["tenor"] == "" and obj["tatbestand"] == ""
        assert obj["type"] is None
        assert list(obj) == [
            "id", "file_number", "date", "type", "ecli", "court",
            "tenor", "tatbestand", "entscheidungsgruende", "rechtsmittelbelehrung", "references",
        ]

    def test_write_error_carries_count(self):
        class Exploding(io.StringIO):
            def __init__(self, after):
                super().__init__()
                self.after = after

            def write(self, s):
                if self.after <= 0:
                    raise OSError("disk full")
                self.after -= 1
                return super().write(s)

        with pytest.raises(WriteError) as excinfo:
            write_segmented_stream([synthetic_record(i) for i in range(10)], Exploding(after=4))
        assert excinfo.value.count_written == 4


def test_read_segmented_reports_bad_lines(golden_records):
    text = '{"id": 1, "court": {}}\nkaputt\n'
    items = list(read_segmented_stream(io.StringIO(text)))
    assert isinstance(items[0], SegmentedDecision)
    assert isinstance(items[1], RecordError) and items[1].line_no == 2


def test_streaming_memory_bounded(tmp_path):
    path = tmp_path / "big.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(200_000):
            fh.write('{"id":%d,"content":""}\n' % i)
    out = tmp_path / "out.jsonl"
    tracemalloc.start()
    count = 0
    with open(path, encoding="utf-8") as fin, open(out, "w", encoding="utf-8") as fout:
        records = (
            SegmentedDecision(id=item.id, court=Court())
            for item in read_raw_stream(fin)
            if isinstance(item, RawDecision)
        )
        count = write_segmented_stream(records, fout)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    assert count == 200_000
    assert peak < 8 * 1024 * 1024, f"peak {peak} bytes suggests the stream is buffered"
