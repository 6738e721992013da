"""Record types shared across the corpus pipeline.

All records are immutable values, safe to hand to parallel workers.
"""

from dataclasses import dataclass, field

UNSPECIFIED = "Unspecified"

SECTION_FIELDS = ("tenor", "tatbestand", "entscheidungsgruende", "rechtsmittelbelehrung")


@dataclass(frozen=True)
class CourtRaw:
    """Court metadata as found in the raw dump."""

    court_id: int | None = None
    name: str = ""
    state_id: int | None = None
    city_id: int | None = None


@dataclass(frozen=True)
class RawDecision:
    """One record of the input dump; ``content`` holds the decision HTML (may be blank)."""

    id: int
    file_number: str = ""
    date: str | None = None  # ISO-8601, e.g. "2020-01-12"
    decision_type: str | None = None  # "Urteil", "Beschluss", ...
    ecli: str | None = None
    court: CourtRaw = field(default_factory=CourtRaw)
    content: str = ""


@dataclass(frozen=True)
class Court:
    """Normalized court metadata; unresolved parts are the literal "Unspecified"."""

    name: str = UNSPECIFIED
    state: str = UNSPECIFIED
    city: str = UNSPECIFIED


@dataclass(frozen=True)
class ParsedReference:
    code: str | None = None  # statute code, e.g. "BGB"
    section: str | None = None  # section number, e.g. "543" or "17a"
    docket: str | None = None  # case docket or ECLI, e.g. "VIII ZR 21/19"


@dataclass(frozen=True)
class LegalReference:
    """A typed citation found in the decision text."""

    ref_type: str  # "law" | "case"
    raw_text: str
    parsed: ParsedReference = field(default_factory=ParsedReference)
    # Unknown statute codes still match, flagged low-confidence. Not part of the
    # wire format, so excluded from equality to keep round-trips exact.
    known_code: bool = field(default=True, compare=False)


@dataclass(frozen=True)
class SegmentedDecision:
    """Output record: normalized metadata, four section texts, extracted references.

    Section texts are either empty or newline-joined sequences of non-empty
    normalized lines. Empty sections are empty strings, never None.
    """

    id: int
    file_number: str = ""
    date: str | None = None
    decision_type: str | None = None
    ecli: str | None = None
    court: Court = field(default_factory=Court)
    tenor: str = ""
    tatbestand: str = ""
    entscheidungsgruende: str = ""
    rechtsmittelbelehrung: str = ""
    references: tuple[LegalReference, ...] = ()


def reference_to_dict(ref: LegalReference) -> dict:
    return {
        "ref_type": ref.ref_type,
        "raw_text": ref.raw_text,
        "parsed": {
            "code": ref.parsed.code,
            "section": ref.parsed.section,
            "docket": ref.parsed.docket,
        },
    }


def reference_from_dict(obj: dict) -> LegalReference:
    parsed = obj.get("parsed") or {}
    return LegalReference(
        ref_type=obj["ref_type"],
        raw_text=obj["raw_text"],
        parsed=ParsedReference(
            code=parsed.get("code"),
            section=parsed.get("section"),
            docket=parsed.get("docket"),
        ),
    )


def segmented_to_dict(rec: SegmentedDecision) -> dict:
    """Wire representation with a fixed top-level key order (diffable output)."""
    return {
        "id": rec.id,
        "file_number": rec.file_number,
        "date": rec.date,
        "type": rec.decision_type,
        "ecli": rec.ecli,
        "court": {"name": rec.court.name, "state": rec.court.state, "city": rec.court.city},
        "tenor": rec.tenor,
        "tatbestand": rec.tatbestand,
        "entscheidungsgruende": rec.entscheidungsgruende,
        "rechtsmittelbelehrung": rec.rechtsmittelbelehrung,
        "references": [reference_to_dict(r) for r in rec.references],
    }


def segmented_from_dict(obj: dict) -> SegmentedDecision:
    court = obj.get("court") or {}
    return SegmentedDecision(
        id=int(obj["id"]),
        file_number=obj.get("file_number") or "",
        date=obj.get("date"),
        decision_type=obj.get("type"),
        ecli=obj.get("ecli"),
        court=Court(
            name=court.get("name") or UNSPECIFIED,
            state=court.get("state") or UNSPECIFIED,
            city=court.get("city") or UNSPECIFIED,
        ),
        tenor=obj.get("tenor") or "",
        tatbestand=obj.get("tatbestand") or "",
        entscheidungsgruende=obj.get("entscheidungsgruende") or "",
        rechtsmittelbelehrung=obj.get("rechtsmittelbelehrung") or "",
        references=tuple(reference_from_dict(r) for r in obj.get("references") or ()),
    )


def _is_normalized(line: str) -> bool:
    return bool(line) and line == " ".join(line.split())


def validate_segmented(rec: SegmentedDecision) -> None:
    """Raise ValueError if ``rec`` violates the output-record invariants."""
    for name in ("name", "state", "city"):
        if not getattr(rec.court, name):
            raise ValueError(f"court.{name} must not be empty (use {UNSPECIFIED!r})")
    seen: dict[str, str] = {}
    for fname in SECTION_FIELDS:
        text = getattr(rec, fname)
        if text == "":
            continue
        for line in text.split("\n"):
            if not _is_normalized(line):
                raise ValueError(f"{fname} contains an empty or unnormalized line: {line!r}")
            if line in seen and seen[line] != fname:
                raise ValueError(f"line {line!r} appears in both {seen[line]} and {fname}")
            seen.setdefault(line, fname)
    for ref in rec.references:
        if not ref.raw_text:
            raise ValueError("reference with empty raw_text")
        if ref.ref_type == "law":
            if ref.parsed.code is None and ref.parsed.section is None:
                raise ValueError(f"law reference {ref.raw_text!r} lacks code and section")
        elif ref.ref_type == "case":
            if ref.parsed.docket is None:
                raise ValueError(f"case reference {ref.raw_text!r} lacks a docket")
        else:
            raise ValueError(f"unknown ref_type {ref.ref_type!r}")
