"""Section coverage and structural-composition statistics.

A section counts as present iff its text field is non-empty. Counts are
associative, so partial reports from parallel workers merge by summation.
"""

import json
from collections.abc import Iterable
from dataclasses import dataclass

from .records import SegmentedDecision

_SECTIONS = ("tenor", "tatbestand", "entscheidungsgruende")


def percent_of(count: int, total: int) -> float:
    """Share in percent; one decimal, two decimals below 5% (0 for an empty total)."""
    if total == 0:
        return 0.0
    pct = 100.0 * count / total
    return round(pct, 2) if pct < 5.0 else round(pct, 1)


@dataclass(frozen=True)
class SectionCount:
    count: int
    percent: float


@dataclass(frozen=True)
class CoverageReport:
    total: int
    per_section: dict[str, SectionCount]  # tenor / tatbestand / entscheidungsgruende
    rechtsmittelbelehrung: SectionCount
    all_three: SectionCount
    tenor_and_eg_only: SectionCount
    tenor_only: SectionCount
    all_absent: SectionCount
    other: SectionCount  # composition combinations outside the named categories


class CoverageCounter:
    """Streaming counter; ``merge`` combines partial counts from workers."""

    def __init__(self):
        self.total = 0
        self.section_counts = dict.fromkeys(_SECTIONS, 0)
        self.rechtsmittelbelehrung = 0
        self.all_three = 0
        self.tenor_and_eg_only = 0
        self.tenor_only = 0
        self.all_absent = 0

    def update(self, rec: SegmentedDecision) -> None:
        self.total += 1
        tenor = bool(rec.tenor)
        tatbestand = bool(rec.tatbestand)
        eg = bool(rec.entscheidungsgruende)
        rmb = bool(rec.rechtsmittelbelehrung)
        for name, present in zip(_SECTIONS, (tenor, tatbestand, eg)):
            if present:
                self.section_counts[name] += 1
        if rmb:
            self.rechtsmittelbelehrung += 1
        if tenor and tatbestand and eg:
            self.all_three += 1
        elif tenor and eg and not tatbestand:
            self.tenor_and_eg_only += 1
        elif tenor and not tatbestand and not eg:
            self.tenor_only += 1
        elif not (tenor or tatbestand or eg or rmb):
            self.all_absent += 1

    def merge(self, other: "CoverageCounter") -> "CoverageCounter":
        self.total += other.total
        for name in _SECTIONS:
            self.section_counts[name] += other.section_counts[name]
        self.rechtsmittelbelehrung += other.rechtsmittelbelehrung
        self.all_three += other.all_three
        self.tenor_and_eg_only += other.tenor_and_eg_only
        self.tenor_only += other.tenor_only
        self.all_absent += other.all_absent
        return self

    def report(self) -> CoverageReport:
        def sc(count: int) -> SectionCount:
            return SectionCount(count, percent_of(count, self.total))

        named = self.all_three + self.tenor_and_eg_only + self.tenor_only + self.all_absent
        return CoverageReport(
            total=self.total,
            per_section={name: sc(self.section_counts[name]) for name in _SECTIONS},
            rechtsmittelbelehrung=sc(self.rechtsmittelbelehrung),
            all_three=sc(self.all_three),
            tenor_and_eg_only=sc(self.tenor_and_eg_only),
            tenor_only=sc(self.tenor_only),
            all_absent=sc(self.all_absent),
            other=sc(self.total - named),
        )


def coverage(records: Iterable[SegmentedDecision]) -> CoverageReport:
    """Single-pass coverage report over a segmented corpus."""
    counter = CoverageCounter()
    for rec in records:
        counter.update(rec)
    return counter.report()


def report_to_dict(report: CoverageReport) -> dict:
    def pair(sc: SectionCount) -> dict:
        return {"count": sc.count, "percent": sc.percent}

    return {
        "total": report.total,
        "sections": {name: pair(sc) for name, sc in report.per_section.items()},
        "rechtsmittelbelehrung": pair(report.rechtsmittelbelehrung),
        "composition": {
            "all_three": pair(report.all_three),
            "tenor_and_eg_only": pair(report.tenor_and_eg_only),
            "tenor_only": pair(report.tenor_only),
            "all_absent": pair(report.all_absent),
            "other": pair(report.other),
        },
    }


def report_to_json(report: CoverageReport) -> str:
    return json.dumps(report_to_dict(report), ensure_ascii=False, indent=2)


def render_report(report: CoverageReport) -> str:
    """Aligned plain-text table."""
    rows = [
        ("Decisions", report.total, None),
        ("Tenor", report.per_section["tenor"].count, report.per_section["tenor"].percent),
        ("Tatbestand", report.per_section["tatbestand"].count, report.per_section["tatbestand"].percent),
        (
            "Entscheidungsgründe",
            report.per_section["entscheidungsgruende"].count,
            report.per_section["entscheidungsgruende"].percent,
        ),
        ("Rechtsmittelbelehrung", report.rechtsmittelbelehrung.count, report.rechtsmittelbelehrung.percent),
        ("All three sections", report.all_three.count, report.all_three.percent),
        ("Only Tenor + Entscheidungsgründe", report.tenor_and_eg_only.count, report.tenor_and_eg_only.percent),
        ("Only Tenor", report.tenor_only.count, report.tenor_only.percent),
        ("All sections absent", report.all_absent.count, report.all_absent.percent),
        ("Other combinations", report.other.count, report.other.percent),
    ]
    label_width = max(len(label) for label, _, _ in rows)
    count_width = max(len(f"{count:,}") for _, count, _ in rows)
    lines = []
    for label, count, pct in rows:
        suffix = "" if pct is None else f"  ({pct}%)"
        lines.append(f"{label:<{label_width}}  {count:>{count_width},}{suffix}")
    return "\n".join(lines)
