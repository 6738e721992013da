"""Section boundary detection and line assignment.

Headers are recognized by exact full-line patterns over a fixed vocabulary,
in a compact and a spaced-letter form (``tenor`` vs ``t e n o r``), case-
insensitively and with optional trailing colons. A running cursor starts in
Tenor; every header line switches it and is consumed. A combined "Gründe"
section is afterwards divided at its Roman-numeral markers: part I holds the
facts, part II the reasoning; without that subdivision the whole section is
reasoning.
"""

import re
from dataclasses import dataclass, field
from enum import Enum


class SectionMarker(Enum):
    TENOR = "tenor"
    TATBESTAND = "tatbestand"
    ENTSCHEIDUNGSGRUENDE = "entscheidungsgründe"
    GRUENDE = "gründe"
    RECHTSMITTELBELEHRUNG = "rechtsmittelbelehrung"


def _header_patterns() -> list[tuple[re.Pattern, SectionMarker]]:
    patterns = []
    for marker in SectionMarker:
        word = marker.value
        compact = re.escape(word)
        spaced = r"\s+".join(re.escape(ch) for ch in word)
        for body in (compact, spaced):
            patterns.append((re.compile(rf"^\s*{body}\s*:*$", re.IGNORECASE), marker))
    return patterns


_HEADER_PATTERNS = _header_patterns()

# Full-line match only, uppercase only: avoids sentence-internal "I." hits.
_ROMAN_MARKER = re.compile(r"^\s*(I|II|III|IV|V|VI|VII|VIII|IX|X)\s*\.?\s*$")


def match_header(line: str) -> SectionMarker | None:
    """Return the marker iff the whole line is a header in either form."""
    for pattern, marker in _HEADER_PATTERNS:
        if pattern.match(line):
            return marker
    return None


def roman_marker(line: str) -> str | None:
    """Return the numeral ("I", "II", ...) iff the whole line is a Roman marker."""
    m = _ROMAN_MARKER.match(line)
    return m.group(1) if m else None


@dataclass
class Segments:
    """Lines assigned to the four output sections, pairwise disjoint by position."""

    tenor: list[str] = field(default_factory=list)
    tatbestand: list[str] = field(default_factory=list)
    entscheidungsgruende: list[str] = field(default_factory=list)
    rechtsmittelbelehrung: list[str] = field(default_factory=list)


def split_gruende(gruende_lines: list[str]) -> tuple[list[str], list[str]]:
    """Divide lines collected under a Gründe header into (facts, reasoning).

    Requires a full-line "I." and a later full-line "II.": lines strictly
    between them (plus any preamble before "I.") become the facts; lines from
    "II." onward become the reasoning, with the numeral markers consumed.
    Otherwise the entire list is reasoning and nothing is consumed.
    """
    start = None
    for i, line in enumerate(gruende_lines):
        if roman_marker(line) == "I":
            start = i
            break
    if start is not None:
        for j in range(start + 1, len(gruende_lines)):
            if roman_marker(gruende_lines[j]) == "II":
                facts = gruende_lines[:start] + gruende_lines[start + 1 : j]
                reasoning = [l for l in gruende_lines[j + 1 :] if roman_marker(l) is None]
                return facts, reasoning
    return [], list(gruende_lines)


def segment(lines: list[str]) -> Segments:
    """Assign every line to exactly one section; header lines are consumed.

    The cursor defaults to Tenor until the first header. A repeated header
    switches the cursor again and its section keeps accruing in order.
    """
    seg = Segments()
    gruende: list[str] = []
    buckets = {
        SectionMarker.TENOR: seg.tenor,
        SectionMarker.TATBESTAND: seg.tatbestand,
        SectionMarker.ENTSCHEIDUNGSGRUENDE: seg.entscheidungsgruende,
        SectionMarker.GRUENDE: gruende,
        SectionMarker.RECHTSMITTELBELEHRUNG: seg.rechtsmittelbelehrung,
    }
    current = seg.tenor
    for line in lines:
        marker = match_header(line)
        if marker is not None:
            current = buckets[marker]
        else:
            current.append(line)
    if gruende:
        facts, reasoning = split_gruende(gruende)
        seg.tatbestand.extend(facts)
        seg.entscheidungsgruende.extend(reasoning)
    return seg
