"""courtseg: segment German court decision dumps into Tenor, Tatbestand,
Entscheidungsgründe and Rechtsmittelbelehrung, extract citations, normalize
court metadata, and audit segmentation quality with a sampled manual review.
"""

__version__ = "0.1.0"

from .html_lines import ExtractedLine, extract_lines, extract_texts, normalize_line
from .jsonl import (
    RecordError,
    WriteError,
    read_raw_stream,
    read_segmented_stream,
    write_segmented_stream,
)
from .geo import GeoDirectory, fetch_directory, load_directory, normalize_court
from .pipeline import RunManifest, process_decision, run_segment
from .records import (
    Court,
    CourtRaw,
    LegalReference,
    ParsedReference,
    RawDecision,
    SegmentedDecision,
    validate_segmented,
)
from .references import extract_references, find_references, reference_counts
from .sections import SectionMarker, Segments, match_header, segment, split_gruende
from .stats import CoverageReport, coverage
from .transform import (
    CourtResolver,
    DecisionSegmenter,
    HtmlLineExtractor,
    ReferenceExtractor,
    SectionSplitter,
)
from .verification import (
    SamplingPlan,
    VerificationReport,
    VerificationSession,
    cochran_n0,
    critical_value,
    draw_sample,
    fpc_sample_size,
    plan,
    proportion_ci,
    report,
)

__all__ = [
    "Court",
    "CourtRaw",
    "CourtResolver",
    "CoverageReport",
    "DecisionSegmenter",
    "ExtractedLine",
    "GeoDirectory",
    "HtmlLineExtractor",
    "LegalReference",
    "ParsedReference",
    "RawDecision",
    "RecordError",
    "ReferenceExtractor",
    "RunManifest",
    "SamplingPlan",
    "SectionMarker",
    "SectionSplitter",
    "SegmentedDecision",
    "Segments",
    "VerificationReport",
    "VerificationSession",
    "WriteError",
    "cochran_n0",
    "coverage",
    "critical_value",
    "draw_sample",
    "extract_lines",
    "extract_references",
    "extract_texts",
    "fetch_directory",
    "find_references",
    "fpc_sample_size",
    "load_directory",
    "match_header",
    "normalize_court",
    "normalize_line",
    "plan",
    "process_decision",
    "proportion_ci",
    "read_raw_stream",
    "read_segmented_stream",
    "reference_counts",
    "report",
    "run_segment",
    "segment",
    "split_gruende",
    "validate_segmented",
    "write_segmented_stream",
]
