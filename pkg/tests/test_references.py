import json

import pytest

from courtseg.records import LegalReference
from courtseg.references import (
    DEFAULT_KNOWN_CODES,
    extract_references,
    find_references,
    load_known_codes,
    reference_counts,
)


def simplify(ref: LegalReference) -> dict:
    out = {"ref_type": ref.ref_type, "raw_text": ref.raw_text}
    if ref.parsed.code:
        out["code"] = ref.parsed.code
    if ref.parsed.section:
        out["section"] = ref.parsed.section
    if ref.parsed.docket:
        out["docket"] = ref.parsed.docket
    return out


def test_oracle_entries_exact(citations_oracle):
    failures = []
    for entry in citations_oracle:
        got = [simplify(r) for r in extract_references([entry["text"]])]
        if got != entry["expected"]:
            failures.append((entry["text"], entry["expected"], got))
    assert not failures, "\n".join(f"{t}\n  want {w}\n  got  {g}" for t, w, g in failures)


def test_oracle_span_validity(citations_oracle):
    for entry in citations_oracle:
        for match in find_references([entry["text"]]):
            ref = match.reference
            assert ref.raw_text in entry["text"]
            assert entry["text"][match.start : match.end] == ref.raw_text


def test_law_prefix_invariant(citations_oracle):
    for entry in citations_oracle:
        for ref in extract_references([entry["text"]]):
            starts_like_law = ref.raw_text.startswith(("§", "Art.", "Artikel", "Art "))
            assert (ref.ref_type == "law") == starts_like_law


def test_punctuation_wrapping_keeps_parsed_fields(citations_oracle):
    for entry in citations_oracle:
        bare = sorted(
            (r.ref_type, r.parsed.code, r.parsed.section, r.parsed.docket)
            for r in extract_references([entry["text"]])
        )
        wrapped = sorted(
            (r.ref_type, r.parsed.code, r.parsed.section, r.parsed.docket)
            for r in extract_references([f"Vgl. hierzu {entry['text']} insoweit."])
        )
        assert bare == wrapped


def test_no_citation_line():
    assert extract_references(["Dieser Satz enthält keine Referenz."]) == []


def test_enumeration_expands_per_section():
    refs = extract_references(["§§ 242, 826 BGB"])
    assert [(r.parsed.section, r.parsed.code) for r in refs] == [("242", "BGB"), ("826", "BGB")]
    assert all(r.raw_text == "§§ 242, 826 BGB" for r in refs)


def test_exact_duplicates_collapse_with_counts():
    lines = [
        "Der Anspruch folgt aus § 242 BGB.",
        "Nochmals: § 242 BGB bleibt maßgeblich.",
        "Daneben gilt § 826 BGB.",
    ]
    refs = extract_references(lines)
    assert [r.parsed.section for r in refs] == ["242", "826"]
    counts = dict(
        ((r.parsed.section, c) for r, c in reference_counts(lines))
    )
    assert counts == {"242": 2, "826": 1}


def test_order_of_first_occurrence():
    refs = extract_references(["Aus § 985 BGB und § 242 BGB.", "Auch § 985 BGB."])
    assert [r.parsed.section for r in refs] == ["985", "242"]


def test_unknown_code_still_matches_with_flag():
    (ref,) = extract_references(["Die Haftung folgt aus § 43 Abs. 2 GmbHG."])
    assert ref.parsed.code == "GmbHG"
    assert ref.known_code is False
    (known,) = extract_references(["Der Anspruch folgt aus § 242 BGB."])
    assert known.known_code is True


def test_known_codes_file_extends_defaults(tmp_path):
    path = tmp_path / "codes.txt"
    path.write_text("GmbHG\n# comment\nAEUV\n\n", encoding="utf-8")
    codes = load_known_codes(path)
    assert DEFAULT_KNOWN_CODES <= codes
    assert {"GmbHG", "AEUV"} <= codes
    (ref,) = extract_references(["Die Haftung folgt aus § 43 Abs. 2 GmbHG."], codes)
    assert ref.known_code is True


def test_qualifier_keyword_never_read_as_code():
    # without a code token the citation does not match at all
    assert extract_references(["Der Anspruch folgt aus § 543 Abs. 2."]) == []


def test_ecli_and_docket_in_one_line():
    refs = extract_references(
        ["BGH, Beschluss vom 23.04.2024 – II ZB 7/23, ECLI:DE:BGH:2024:230424BIIZB7.23.0"]
    )
    assert [r.parsed.docket for r in refs] == ["II ZB 7/23", "ECLI:DE:BGH:2024:230424BIIZB7.23.0"]


def test_mini_corpus_span_validity(golden_records):
    for rec in golden_records:
        lines = []
        for field in (rec.tenor, rec.tatbestand, rec.entscheidungsgruende, rec.rechtsmittelbelehrung):
            if field:
                lines.extend(field.split("\n"))
        for ref in rec.references:
            assert any(ref.raw_text in line for line in lines), (rec.id, ref.raw_text)
