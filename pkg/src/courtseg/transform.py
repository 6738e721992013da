"""Scikit-learn style transformers wrapping the segmentation pipeline.

All transformers are stateless (fit returns self) and operate on lists of
per-document values, so they compose with sklearn Pipelines and clone()
cleanly via get_params/set_params.
"""

from sklearn.base import BaseEstimator, TransformerMixin

from .geo import GeoDirectory, normalize_court
from .html_lines import extract_texts
from .pipeline import process_decision
from .records import CourtRaw, RawDecision
from .references import extract_references
from .sections import Segments, segment


def check_documents(X, item_type, what: str):
    """Validate a list-like of per-document items; returns it as a list."""
    if isinstance(X, (str, bytes)):
        raise TypeError(f"expected an iterable of {what}, got a single {type(X).__name__}")
    items = list(X)
    for i, item in enumerate(items):
        if not isinstance(item, item_type):
            raise TypeError(f"item {i}: expected {what}, got {type(item).__name__}")
    return items


def check_line_lists(X):
    """Validate a list of per-document line lists."""
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of line lists, got a single string")
    docs = []
    for i, doc in enumerate(X):
        if isinstance(doc, str):
            raise TypeError(f"item {i}: expected a list of lines, got a bare string")
        docs.append([str(line) for line in doc])
    return docs


class HtmlLineExtractor(BaseEstimator, TransformerMixin):
    """HTML string per document -> list of normalized text lines per document."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        docs = check_documents(X, str, "HTML strings")
        return [extract_texts(doc) for doc in docs]


class SectionSplitter(BaseEstimator, TransformerMixin):
    """Line list per document -> Segments per document."""

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> list[Segments]:
        return [segment(doc) for doc in check_line_lists(X)]


class ReferenceExtractor(BaseEstimator, TransformerMixin):
    """Line list per document -> unique LegalReference list per document."""

    def __init__(self, known_codes=None):
        self.known_codes = known_codes

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [extract_references(doc, self.known_codes) for doc in check_line_lists(X)]


class CourtResolver(BaseEstimator, TransformerMixin):
    """Raw court record per document -> normalized Court per document."""

    def __init__(self, directory=None):
        self.directory = directory

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        directory = self.directory if self.directory is not None else GeoDirectory.empty()
        docs = check_documents(X, CourtRaw, "CourtRaw records")
        return [normalize_court(court, directory) for court in docs]


class DecisionSegmenter(BaseEstimator, TransformerMixin):
    """RawDecision per document -> SegmentedDecision per document.

    The composite transformer: HTML extraction, section assignment,
    reference extraction and court normalization in one step.
    """

    def __init__(self, directory=None, known_codes=None):
        self.directory = directory
        self.known_codes = known_codes

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        directory = self.directory if self.directory is not None else GeoDirectory.empty()
        docs = check_documents(X, RawDecision, "RawDecision records")
        return [process_decision(raw, directory, self.known_codes) for raw in docs]
