"""Shared helpers: corpus builders and independent brute-force oracles."""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

import pytest

from corpusmap.corpus import Document, LoadedCorpus, segment_sentences, tokenize

FIXTURES = Path(__file__).parent / "fixtures"


def make_corpus(texts: dict[str, str | tuple[str, int | None]]) -> LoadedCorpus:
    """Build a LoadedCorpus from raw strings (optionally with a year)."""
    corpus = LoadedCorpus()
    for doc_id, value in texts.items():
        text, year = value if isinstance(value, tuple) else (value, None)
        doc = Document(doc_id=doc_id, text=text, year=year, empty=not text.strip())
        if doc.empty:
            corpus.skipped_empty.append(doc_id)
            continue
        sents = segment_sentences(doc)
        corpus.documents[doc_id] = doc
        corpus.sentences[doc_id] = sents
        corpus.tokens[doc_id] = [tokenize(s, doc) for s in sents]
    return corpus


def brute_force_lcs(a: str, b: str) -> int:
    """Exhaustive subsequence enumeration over the shorter string."""
    if len(a) > len(b):
        a, b = b, a

    def is_subseq(s: str, t: str) -> bool:
        it = iter(t)
        return all(ch in it for ch in s)

    for length in range(len(a), -1, -1):
        for idxs in combinations(range(len(a)), length):
            if is_subseq("".join(a[i] for i in idxs), b):
                return length
    return 0


def brute_force_cooc(cluster_ids: list[int], presence: list[set[int]]) -> dict:
    """Double loop over sentences and unordered cluster pairs."""
    weights: dict[tuple[int, int], int] = {}
    for a in cluster_ids:
        for b in cluster_ids:
            if a >= b:
                continue
            w = sum(1 for cell in presence if a in cell and b in cell)
            if w:
                weights[(a, b)] = w
    return weights


@pytest.fixture
def crisis5_dir(tmp_path: Path) -> Path:
    """Writable copy of the committed 5-doc fixture."""
    import shutil

    dest = tmp_path / "crisis5"
    shutil.copytree(FIXTURES / "crisis5", dest)
    return dest
