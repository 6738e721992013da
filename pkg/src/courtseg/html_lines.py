"""HTML-to-text extraction over a fixed tag whitelist.

The decision body arrives as heterogeneous HTML. Only the text of p, h1-h4,
td and the dump's custom rd tag is kept, one line per element, normalized
and with consecutive duplicates dropped. For nested whitelisted elements
(p inside td) only the innermost element emits, so no passage appears twice.
"""

import logging
from dataclasses import dataclass
from html.parser import HTMLParser

logger = logging.getLogger(__name__)

ALLOWED_TAGS = frozenset({"p", "h1", "h2", "h3", "h4", "td", "rd"})

# Raw text inside these elements is never decision text.
_SUPPRESSED_TAGS = frozenset({"script", "style"})


def normalize_line(raw: str) -> str:
    """Collapse every whitespace run (including NBSP) to one space and trim."""
    return " ".join(raw.split())


@dataclass(frozen=True)
class ExtractedLine:
    text: str
    source_tag: str


class _LineParser(HTMLParser):
    """Collects the text of whitelisted elements in document order.

    A stack of open whitelisted elements routes character data to the
    innermost one; an element emits its line when it closes.
    """

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.lines: list[ExtractedLine] = []
        self._stack: list[tuple[str, list[str]]] = []
        self._suppress = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SUPPRESSED_TAGS:
            if self._stack:
                self._stack[-1][1].append(" ")
            self._suppress += 1
        elif tag in ALLOWED_TAGS:
            if self._stack:  # element boundary separates the parent's direct text
                self._stack[-1][1].append(" ")
            self._stack.append((tag, []))
        elif tag == "br" and self._stack:
            # br inside an allowed element separates words, not lines
            self._stack[-1][1].append(" ")

    def handle_startendtag(self, tag, attrs):
        if tag == "br" and self._stack:
            self._stack[-1][1].append(" ")

    def handle_endtag(self, tag):
        if tag in _SUPPRESSED_TAGS:
            self._suppress = max(0, self._suppress - 1)
            return
        if tag not in ALLOWED_TAGS:
            return
        # close the innermost matching element, tolerating stray end tags
        for i in range(len(self._stack) - 1, -1, -1):
            if self._stack[i][0] == tag:
                open_tag, parts = self._stack.pop(i)
                self._emit(open_tag, "".join(parts))
                if self._stack:
                    self._stack[-1][1].append(" ")
                break

    def handle_data(self, data):
        if self._suppress or not self._stack:
            return
        self._stack[-1][1].append(data)

    def finish(self) -> None:
        self.close()
        # unterminated elements still emit, in document order of their start tags
        while self._stack:
            tag, parts = self._stack.pop(0)
            self._emit(tag, "".join(parts))

    def _emit(self, tag: str, raw: str) -> None:
        text = normalize_line(raw)
        if not text:
            return
        if self.lines and self.lines[-1].text == text:
            return
        self.lines.append(ExtractedLine(text, tag))


def extract_lines(html: str) -> list[ExtractedLine]:
    """Extract the normalized, de-duplicated text lines of ``html``.

    Malformed markup is recovered leniently; an unparseable string yields an
    empty list plus a warning. Blank content yields no lines.
    """
    if not html:
        return []
    parser = _LineParser()
    try:
        parser.feed(html)
        parser.finish()
    except Exception:  # html.parser almost never raises; give up cleanly if it does
        logger.warning("unparseable HTML content, no lines extracted")
        return []
    return parser.lines


def extract_texts(html: str) -> list[str]:
    """Like extract_lines, but returns just the line texts."""
    return [line.text for line in extract_lines(html)]
