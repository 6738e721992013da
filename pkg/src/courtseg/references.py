"""Statute and case citation extraction.

The statute grammar covers the standard German citation style: a sigil
(§, §§, Art., Artikel), one or more section numbers with optional
Abs./Satz/Nr./lit. qualifiers and comma/"und" enumerations, and a trailing
code token. Known codes are seeded with the common federal codes; unknown
uppercase tokens still match, flagged low-confidence. Case citations cover
docket numbers (Aktenzeichen) and ECLI strings.
"""

import re
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from .records import LegalReference, ParsedReference

DEFAULT_KNOWN_CODES = frozenset(
    {"AO", "BGB", "GG", "HGB", "SGB", "StGB", "StPO", "UrhG", "VwGO", "ZPO"}
)

_SIGIL = r"§§?|Art(?:ikel|\.)?"
_NUM = r"\d{1,4}[a-z]{0,2}"
# A qualifier value may itself enumerate ("Abs. 1 und 2"), which binds to the
# qualifier, not to the section enumeration.
_QUAL_VALUE = r"\d{1,3}[a-z]?(?:(?:\s*,\s*|\s+und\s+)\d{1,3}[a-z]?)*|[a-z]\b"
_QUALIFIER = rf"(?:Abs\.?|Satz|Nr\.?|lit\.?)\s*(?:{_QUAL_VALUE})"
_NUM_GROUP = rf"{_NUM}(?:\s+ff?\.)?(?:\s+(?:{_QUALIFIER}))*"
_ENUM_SEP = r"\s*,\s*|\s+und\s+"
# Qualifier keywords start uppercase too; they must never be read as a code.
_CODE_BLOCKLIST = r"Abs|Absatz|Satz|Nr|Nummer|Art|Artikel|Und|UND"
_CODE = rf"(?!(?:{_CODE_BLOCKLIST})\b)[A-ZÄÖÜ][A-Za-zÄÖÜäöüß]{{1,9}}"

_LAW = re.compile(
    rf"(?:{_SIGIL})\s*(?P<body>{_NUM_GROUP}(?:(?:{_ENUM_SEP}){_NUM_GROUP})*)\s+(?P<code>{_CODE})\b"
)
_NUM_GROUP_RE = re.compile(_NUM_GROUP)
_NUM_RE = re.compile(_NUM)
_ENUM_SEP_RE = re.compile(_ENUM_SEP)

# Court abbreviations precede many quoted dockets; they are not registers.
_COURT_ABBREVS = (
    "AG|ArbG|BAG|BFH|BGH|BPatG|BSG|BVerfG|BVerwG|EuG|EuGH|FG|KG|LAG|LG|LSG|OLG|OVG|SG|VG|VGH"
)
_SENATE = r"[IVX]{1,5}|\d{1,3}"
_REG = rf"(?!(?:{_COURT_ABBREVS})\b)[A-Z][A-Za-z]{{0,3}}"
_DOCKET = re.compile(
    rf"\b(?:(?:{_SENATE})\s+)?{_REG}(?:\s+{_REG})?\s+\d{{1,5}}/\d{{2}}\b"
)
_ECLI = re.compile(r"\bECLI:[A-Z]{2}:[A-Za-z0-9]+:\d{4}:[A-Za-z0-9.]*[A-Za-z0-9]")


@dataclass(frozen=True)
class ReferenceMatch:
    """One citation occurrence with its span in the source line."""

    reference: LegalReference
    line_index: int
    start: int
    end: int


def load_known_codes(path: str | Path) -> frozenset[str]:
    """Read extra statute codes (one per line, # comments); extends the defaults."""
    codes = set(DEFAULT_KNOWN_CODES)
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        token = line.strip()
        if token and not token.startswith("#"):
            codes.add(token)
    return frozenset(codes)


def _split_sections(body: str) -> list[str]:
    """Leading section number of every enumerated number group in ``body``."""
    sections = []
    pos = 0
    while pos < len(body):
        group = _NUM_GROUP_RE.match(body, pos)
        if group is None:
            break
        sections.append(_NUM_RE.match(body, pos).group(0))
        pos = group.end()
        sep = _ENUM_SEP_RE.match(body, pos)
        if sep is None:
            break
        pos = sep.end()
    return sections


def _candidates(line: str, known_codes: frozenset[str]) -> list[tuple[int, int, list[LegalReference]]]:
    found = []
    for m in _LAW.finditer(line):
        code = m.group("code")
        raw = m.group(0)
        refs = [
            LegalReference(
                "law",
                raw,
                ParsedReference(code=code, section=section),
                known_code=code in known_codes,
            )
            for section in _split_sections(m.group("body"))
        ]
        if refs:
            found.append((m.start(), m.end(), refs))
    for pattern in (_ECLI, _DOCKET):
        for m in pattern.finditer(line):
            raw = m.group(0)
            ref = LegalReference("case", raw, ParsedReference(docket=raw))
            found.append((m.start(), m.end(), [ref]))
    return found


def _resolve_overlaps(found: list[tuple[int, int, list[LegalReference]]]):
    """Longest match wins; survivors come back in position order."""
    kept: list[tuple[int, int, list[LegalReference]]] = []
    for cand in sorted(found, key=lambda c: (-(c[1] - c[0]), c[0])):
        if all(cand[1] <= k[0] or cand[0] >= k[1] for k in kept):
            kept.append(cand)
    return sorted(kept, key=lambda c: c[0])


def find_references(
    lines: Iterable[str], known_codes: frozenset[str] | None = None
) -> list[ReferenceMatch]:
    """Every citation occurrence in ``lines``, in order of appearance."""
    if known_codes is None:
        known_codes = DEFAULT_KNOWN_CODES
    matches = []
    for line_index, line in enumerate(lines):
        for start, end, refs in _resolve_overlaps(_candidates(line, known_codes)):
            for ref in refs:
                matches.append(ReferenceMatch(ref, line_index, start, end))
    return matches


def extract_references(
    lines: Iterable[str], known_codes: frozenset[str] | None = None
) -> list[LegalReference]:
    """Unique references in order of first occurrence (exact duplicates collapse)."""
    seen: dict[LegalReference, None] = {}
    for match in find_references(lines, known_codes):
        seen.setdefault(match.reference, None)
    return list(seen)


def reference_counts(
    lines: Iterable[str], known_codes: frozenset[str] | None = None
) -> list[tuple[LegalReference, int]]:
    """Unique references with occurrence counts, first-occurrence order."""
    counts: Counter[LegalReference] = Counter()
    order: list[LegalReference] = []
    for match in find_references(lines, known_codes):
        if match.reference not in counts:
            order.append(match.reference)
        counts[match.reference] += 1
    return [(ref, counts[ref]) for ref in order]
