"""Entity mentions and their normalization into clusters.

Mentions come either from pre-annotated CoNLL files (BIO scheme) or from
a small heuristic recognizer. Distinct surface forms are then merged by
single-linkage clustering over a longest-common-subsequence similarity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, TextIO

from .corpus import Document, Sentence, Token
from .errors import InputError, ValidationError


class EntityTag(str, Enum):
    PERSON = "PERSON"
    ORGANIZATION = "ORGANIZATION"
    LOCATION = "LOCATION"
    DATE = "DATE"
    TIME = "TIME"
    MONEY = "MONEY"
    PERCENT = "PERCENT"


@dataclass(frozen=True)
class EntityMention:
    surface: str
    tag: EntityTag
    doc_id: str
    sentence_index: int
    span: tuple[int, int]


@dataclass(frozen=True)
class EntityCluster:
    cluster_id: int
    canonical: str
    tags: frozenset[EntityTag]
    members: tuple[tuple[str, int], ...]  # (surface, count), sorted by surface

    @property
    def mention_count(self) -> int:
        return sum(c for _, c in self.members)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.members)


def parse_conll(
    stream: TextIO | Iterable[str],
    doc: Document,
    sentences: list[Sentence],
    tokens_per_sentence: list[list[Token]],
    warnings: list[str] | None = None,
) -> list[EntityMention]:
    """Read "surface<TAB>tag" lines; blank lines end sentences.

    Contiguous B-/I- runs of one tag become a single mention spanning
    first to last token. A dangling I- is repaired to B- and logged.
    """
    if warnings is None:
        warnings = []
    conll_sentences: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            if current:
                conll_sentences.append(current)
                current = []
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise InputError(
                f"{doc.doc_id}.conll line {lineno}: expected 'surface<TAB>tag'"
            )
        current.append((parts[0], parts[1]))
    if current:
        conll_sentences.append(current)

    if len(conll_sentences) != len(sentences):
        raise InputError(
            f"{doc.doc_id}: annotation has {len(conll_sentences)} sentences, "
            f"corpus has {len(sentences)}"
        )

    mentions: list[EntityMention] = []
    for sent, toks, rows in zip(sentences, tokens_per_sentence, conll_sentences):
        if len(rows) != len(toks):
            raise InputError(
                f"{doc.doc_id} sentence {sent.index}: annotation has "
                f"{len(rows)} tokens, corpus tokenization has {len(toks)}"
            )
        run_tag: EntityTag | None = None
        run_start: int | None = None
        run_end: int | None = None

        def flush() -> None:
            nonlocal run_tag, run_start, run_end
            if run_tag is not None:
                surface = doc.text[run_start:run_end]
                mentions.append(
                    EntityMention(
                        surface=surface,
                        tag=run_tag,
                        doc_id=doc.doc_id,
                        sentence_index=sent.index,
                        span=(run_start, run_end),
                    )
                )
            run_tag = run_start = run_end = None

        for tok, (_, tag_str) in zip(toks, rows):
            if tag_str == "O":
                flush()
                continue
            if len(tag_str) < 3 or tag_str[1] != "-" or tag_str[0] not in "BI":
                raise ValidationError(
                    f"{doc.doc_id} sentence {sent.index}: unknown tag {tag_str!r}"
                )
            prefix, name = tag_str[0], tag_str[2:]
            try:
                tag = EntityTag(name)
            except ValueError:
                raise ValidationError(
                    f"{doc.doc_id} sentence {sent.index}: unknown tag {tag_str!r}"
                ) from None
            if prefix == "I" and tag is not run_tag:
                warnings.append(
                    f"{doc.doc_id} sentence {sent.index}: I-{name} without "
                    f"matching B-, treated as B-"
                )
                prefix = "B"
            if prefix == "B":
                flush()
                run_tag = tag
                run_start, run_end = tok.span
            else:
                run_end = tok.span[1]
        flush()
    return mentions


def _is_capitalized(surface: str) -> bool:
    return bool(surface) and surface[0].isupper()


def recognize_heuristic(
    doc: Document,
    sentences: list[Sentence],
    tokens_per_sentence: list[list[Token]],
    gazetteer: dict[str, EntityTag] | None = None,
) -> list[EntityMention]:
    """Gazetteer matches first (longest wins, left to right), then
    capitalized token runs not at sentence start.

    A run of at most 3 purely alphabetic capitalized words is PERSON;
    anything else qualifying is ORGANIZATION.
    """
    gazetteer = gazetteer or {}
    for key in gazetteer:
        if not key:
            raise ValidationError("gazetteer contains an empty surface")
    gaz_token_seqs = {tuple(k.split()): v for k, v in gazetteer.items()}
    max_gaz_len = max((len(seq) for seq in gaz_token_seqs), default=0)

    mentions: list[EntityMention] = []
    for sent, toks in zip(sentences, tokens_per_sentence):
        taken = [False] * len(toks)
        # (a) longest gazetteer match wins, scanning left to right
        i = 0
        while i < len(toks):
            matched = 0
            for length in range(min(max_gaz_len, len(toks) - i), 0, -1):
                seq = tuple(t.surface for t in toks[i : i + length])
                if seq in gaz_token_seqs:
                    start = toks[i].span[0]
                    end = toks[i + length - 1].span[1]
                    mentions.append(
                        EntityMention(
                            surface=doc.text[start:end],
                            tag=gaz_token_seqs[seq],
                            doc_id=doc.doc_id,
                            sentence_index=sent.index,
                            span=(start, end),
                        )
                    )
                    for k in range(i, i + length):
                        taken[k] = True
                    matched = length
                    break
            i += matched or 1
        # (b) capitalized runs; the sentence-initial token never starts one
        i = 1
        while i < len(toks):
            if taken[i] or not _is_capitalized(toks[i].surface):
                i += 1
                continue
            j = i
            while j < len(toks) and not taken[j] and _is_capitalized(toks[j].surface):
                j += 1
            run = toks[i:j]
            start = run[0].span[0]
            end = run[-1].span[1]
            person_like = len(run) <= 3 and all(t.surface.isalpha() for t in run)
            mentions.append(
                EntityMention(
                    surface=doc.text[start:end],
                    tag=EntityTag.PERSON if person_like else EntityTag.ORGANIZATION,
                    doc_id=doc.doc_id,
                    sentence_index=sent.index,
                    span=(start, end),
                )
            )
            i = j
    mentions.sort(key=lambda m: (m.sentence_index, m.span))
    return mentions


def lcs_length(a: str, b: str) -> int:
    """Longest common subsequence length, case-sensitive, O(len(a)*len(b))."""
    if not a or not b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for ch_a in a:
        curr = [0] * (len(b) + 1)
        for j, ch_b in enumerate(b):
            if ch_a == ch_b:
                curr[j + 1] = prev[j] + 1
            else:
                curr[j + 1] = max(prev[j + 1], curr[j])
        prev = curr
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """LCS length normalized by the shorter string; 0 for empty inputs.

    Short-normalization lets substrings and acronym-like subsequences
    ("S&P" inside "Standard & Poor") score 1.0.
    """
    if not a or not b:
        return 0.0
    return lcs_length(a, b) / min(len(a), len(b))


# Surfaces this short only merge with exact duplicates; prevents "A"
# from absorbing arbitrary names.
SHORT_SURFACE_LIMIT = 2


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic: smaller index wins as root
            if rx > ry:
                rx, ry = ry, rx
            self.parent[ry] = rx


def canonical_name(members: Counter[str] | dict[str, int]) -> str:
    """Most frequent surface; ties to the longer, then lexicographically
    smallest."""
    if not members:
        raise ValidationError("cannot name an empty cluster")
    return min(members, key=lambda s: (-members[s], -len(s), s))


def cluster_mentions(
    mentions: list[EntityMention],
    threshold: float = 0.8,
    policy: str = "per_type",
    warnings: list[str] | None = None,
) -> list[EntityCluster]:
    """Single-linkage clustering of distinct surface forms.

    Two surfaces link when similarity >= threshold and, under per_type,
    they share the same tag. Clusters are the connected components;
    cluster_id follows ascending canonical-name order.
    """
    if threshold <= 0:
        raise ValidationError("threshold must be positive")
    if policy not in ("per_type", "cross_type"):
        raise ValidationError(f"unknown clustering policy: {policy!r}")
    if warnings is None:
        warnings = []
    if not mentions:
        return []

    # Clustering units: (surface, tag) under per_type, surface under cross_type.
    counts: Counter = Counter()
    tags_by_unit: dict = {}
    for m in mentions:
        unit = (m.surface, m.tag) if policy == "per_type" else m.surface
        counts[unit] += 1
        tags_by_unit.setdefault(unit, set()).add(m.tag)

    units = sorted(
        counts,
        key=(lambda u: (u[0], u[1].value)) if policy == "per_type" else (lambda u: u),
    )
    uf = _UnionFind(len(units))
    for i in range(len(units)):
        for j in range(i + 1, len(units)):
            u, v = units[i], units[j]
            su = u[0] if policy == "per_type" else u
            sv = v[0] if policy == "per_type" else v
            if policy == "per_type" and u[1] is not v[1]:
                continue
            if su == sv:
                uf.union(i, j)
                continue
            if similarity(su, sv) < threshold:
                continue
            if min(len(su), len(sv)) <= SHORT_SURFACE_LIMIT:
                warnings.append(
                    f"short-surface guard: refusing to merge {su!r} and {sv!r}"
                )
                continue
            uf.union(i, j)

    groups: dict[int, list] = {}
    for i, unit in enumerate(units):
        groups.setdefault(uf.find(i), []).append(unit)

    clusters: list[tuple[str, frozenset[EntityTag], tuple[tuple[str, int], ...]]] = []
    for group in groups.values():
        member_counts: Counter[str] = Counter()
        tags: set[EntityTag] = set()
        for unit in group:
            surface = unit[0] if policy == "per_type" else unit
            member_counts[surface] += counts[unit]
            tags.update(tags_by_unit[unit])
        clusters.append(
            (
                canonical_name(member_counts),
                frozenset(tags),
                tuple(sorted(member_counts.items())),
            )
        )

    clusters.sort(key=lambda c: (c[0], c[2]))
    return [
        EntityCluster(cluster_id=i, canonical=canon, tags=tags, members=members)
        for i, (canon, tags, members) in enumerate(clusters)
    ]
