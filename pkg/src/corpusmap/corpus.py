"""Corpus loading, sentence segmentation, and tokenization.

Everything here is deterministic: the same bytes always produce the same
spans, so downstream co-occurrence counts are reproducible and auditable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError, ValidationError

# Honorifics and corporate suffixes common in financial text; a period
# after one of these never ends a sentence.
DEFAULT_ABBREVIATIONS = frozenset(
    {"Mr", "Mrs", "Ms", "Dr", "Inc", "Corp", "Co", "U.S", "St", "No"}
)

SENTENCE_TERMINATORS = ".!?"
OPENING_QUOTES = "\"'“‘"

# Characters peeled off token edges into single-character tokens.
STRIP_CHARS = frozenset(".,;:!?\"'()[]")


@dataclass(frozen=True)
class ManifestEntry:
    doc_id: str
    path: Path
    year: int | None = None
    source: str | None = None


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple[ManifestEntry, ...]


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    year: int | None = None
    source: str | None = None
    empty: bool = False


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    index: int
    span: tuple[int, int]


@dataclass(frozen=True)
class Token:
    doc_id: str
    sentence_index: int
    span: tuple[int, int]
    surface: str


def load_manifest(path: str | Path) -> CorpusManifest:
    """Parse the JSON manifest; paths resolve relative to its directory."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"manifest not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"manifest is not valid UTF-8: {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"manifest is not valid JSON: {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ValidationError("manifest must be a JSON array of objects")

    base = path.parent
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for i, row in enumerate(raw):
        if not isinstance(row, dict) or "doc_id" not in row or "path" not in row:
            raise ValidationError(
                f"manifest row {i}: expected object with doc_id and path"
            )
        doc_id = row["doc_id"]
        if not isinstance(doc_id, str) or not doc_id:
            raise ValidationError(f"manifest row {i}: doc_id must be a non-empty string")
        if doc_id in seen:
            raise ValidationError(f"duplicate doc_id in manifest: {doc_id!r}")
        seen.add(doc_id)
        year = row.get("year")
        if year is not None and not isinstance(year, int):
            raise ValidationError(f"manifest row {i}: year must be an integer or null")
        source = row.get("source")
        if source is not None and not isinstance(source, str):
            raise ValidationError(f"manifest row {i}: source must be a string or null")
        doc_path = (base / row["path"]).resolve()
        if not doc_path.is_file():
            raise InputError(f"document file missing for {doc_id!r}: {doc_path}")
        entries.append(ManifestEntry(doc_id=doc_id, path=doc_path, year=year, source=source))
    return CorpusManifest(entries=tuple(entries))


def load_document(entry: ManifestEntry) -> Document:
    """Read a document verbatim; only a leading BOM is stripped."""
    try:
        data = entry.path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {entry.path}: {exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(
            f"invalid UTF-8 in {entry.path} at byte {exc.start}"
        ) from exc
    if text.startswith("\ufeff"):
        text = text[1:]
    return Document(
        doc_id=entry.doc_id,
        text=text,
        year=entry.year,
        source=entry.source,
        empty=not text.strip(),
    )


def _word_before(text: str, period_idx: int) -> str:
    """The maximal non-whitespace run ending just before text[period_idx]."""
    j = period_idx
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j:period_idx]


def _is_boundary(text: str, i: int, abbreviations: frozenset[str]) -> bool:
    """True when a terminator at position i ends a sentence."""
    ch = text[i]
    if ch not in SENTENCE_TERMINATORS:
        return False
    # Must be followed by whitespace, then uppercase / digit / opening quote.
    j = i + 1
    if j >= len(text) or not text[j].isspace():
        return False
    while j < len(text) and text[j].isspace():
        j += 1
    if j >= len(text):
        return True  # terminator at end of trailing whitespace
    nxt = text[j]
    if not (nxt.isupper() or nxt.isdigit() or nxt in OPENING_QUOTES):
        return False
    if ch == ".":
        word = _word_before(text, i)
        if word in abbreviations or word.rstrip(".") in abbreviations:
            return False
    return True


def segment_sentences(
    doc: Document, abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
) -> list[Sentence]:
    """Split on terminator + whitespace + capital/digit/quote boundaries.

    Spans start at the first non-whitespace character after the previous
    boundary and end just past the terminator; a final unterminated
    fragment becomes its own sentence.
    """
    if doc.empty:
        raise ValidationError(f"document {doc.doc_id!r} is empty")
    text = doc.text
    sentences: list[Sentence] = []
    n = len(text)
    pos = 0
    while pos < n:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        end = None
        for i in range(pos, n):
            if _is_boundary(text, i, abbreviations):
                end = i + 1
                break
        if end is None:
            end = n
            while end > pos and text[end - 1].isspace():
                end -= 1
        sentences.append(Sentence(doc_id=doc.doc_id, index=len(sentences), span=(pos, end)))
        pos = end
    return sentences


def tokenize(sentence: Sentence, doc: Document) -> list[Token]:
    """Whitespace split, then peel edge punctuation into 1-char tokens.

    '$', '&', '%', '-', and internal apostrophes stay attached.
    """
    start, end = sentence.span
    tokens: list[Token] = []

    def emit(s: int, e: int) -> None:
        tokens.append(
            Token(
                doc_id=sentence.doc_id,
                sentence_index=sentence.index,
                span=(s, e),
                surface=doc.text[s:e],
            )
        )

    i = start
    while i < end:
        while i < end and doc.text[i].isspace():
            i += 1
        if i >= end:
            break
        j = i
        while j < end and not doc.text[j].isspace():
            j += 1
        # Word is doc.text[i:j]; peel edges.
        lo, hi = i, j
        leading: list[int] = []
        trailing: list[int] = []
        while lo < hi and doc.text[lo] in STRIP_CHARS:
            leading.append(lo)
            lo += 1
        while hi > lo and doc.text[hi - 1] in STRIP_CHARS:
            trailing.append(hi - 1)
            hi -= 1
        for p in leading:
            emit(p, p + 1)
        if lo < hi:
            emit(lo, hi)
        for p in reversed(trailing):
            emit(p, p + 1)
        i = j
    return tokens


@dataclass
class LoadedCorpus:
    """All per-document artifacts keyed by doc_id, in manifest order."""

    documents: dict[str, Document] = field(default_factory=dict)
    sentences: dict[str, list[Sentence]] = field(default_factory=dict)
    tokens: dict[str, list[list[Token]]] = field(default_factory=dict)
    skipped_empty: list[str] = field(default_factory=list)

    def all_sentences(self) -> list[Sentence]:
        return [s for doc_id in self.sentences for s in self.sentences[doc_id]]


def load_corpus(
    manifest: CorpusManifest,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
    workers: int = 1,
) -> LoadedCorpus:
    """Load, segment, and tokenize every manifest entry.

    Per-document work is pure, so any parallelism degree yields the same
    result; outputs are keyed and ordered by manifest order.
    """

    def process(entry: ManifestEntry):
        doc = load_document(entry)
        if doc.empty:
            return entry.doc_id, doc, None, None
        sents = segment_sentences(doc, abbreviations)
        toks = [tokenize(s, doc) for s in sents]
        return entry.doc_id, doc, sents, toks

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(process, manifest.entries))
    else:
        results = [process(e) for e in manifest.entries]

    corpus = LoadedCorpus()
    for doc_id, doc, sents, toks in results:
        if sents is None:
            corpus.skipped_empty.append(doc_id)
            continue
        corpus.documents[doc_id] = doc
        corpus.sentences[doc_id] = sents
        corpus.tokens[doc_id] = toks
    return corpus
