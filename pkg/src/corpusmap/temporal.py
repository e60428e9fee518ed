"""Temporal binning, entity-term associations, and Sankey flow data.

Documents fall into year periods; association weights count sentences
where a cluster and a term co-occur; flows connect each entity's
strongest term in one period to its strongest term in the next.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass

from .corpus import LoadedCorpus
from .entities import EntityCluster, EntityMention
from .errors import ValidationError


@dataclass(frozen=True)
class Period:
    period_id: str
    start_year: int
    end_year: int
    label: str


@dataclass(frozen=True)
class Term:
    text: str
    score: float


@dataclass(frozen=True)
class Association:
    cluster_id: int
    term: str
    period_id: str
    weight: int


@dataclass(frozen=True)
class SankeyNode:
    node_id: str
    period_id: str
    term: str


@dataclass(frozen=True)
class SankeyLink:
    source: str
    target: str
    value: int
    entities: tuple[str, ...]


@dataclass(frozen=True)
class SankeySpec:
    periods: tuple[Period, ...]
    nodes: tuple[SankeyNode, ...]
    links: tuple[SankeyLink, ...]


def _has_word_char(text: str) -> bool:
    return any(ch.isalnum() for ch in text)


def extract_terms(
    corpus: LoadedCorpus,
    k: int,
    stoplist: frozenset[str] = frozenset(),
    exclude_surfaces: frozenset[str] = frozenset(),
) -> list[Term]:
    """Top-k unigrams/bigrams by tf-idf, score = sum_d tf(t,d) * ln(N/df).

    Candidates are lowercased; stopwords, punctuation-only tokens, and
    entity surfaces (case-folded) are excluded so the term vocabulary
    stays disjoint from the entity vocabulary.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not corpus.documents:
        raise ValidationError("corpus is empty")
    excluded = {s.casefold() for s in exclude_surfaces}

    tf: dict[str, Counter[str]] = {}
    for doc_id, sent_tokens in corpus.tokens.items():
        counts: Counter[str] = Counter()
        for toks in sent_tokens:
            words = [t.surface.lower() for t in toks]
            for idx, w in enumerate(words):
                if _has_word_char(w) and w not in stoplist and w not in excluded:
                    counts[w] += 1
                if idx + 1 < len(words):
                    w2 = words[idx + 1]
                    if (
                        _has_word_char(w)
                        and _has_word_char(w2)
                        and w not in stoplist
                        and w2 not in stoplist
                    ):
                        bigram = f"{w} {w2}"
                        if bigram not in excluded:
                            counts[bigram] += 1
        tf[doc_id] = counts

    n_docs = len(corpus.documents)
    df: Counter[str] = Counter()
    for counts in tf.values():
        df.update(counts.keys())

    scores: dict[str, float] = {}
    for counts in tf.values():
        for term, count in counts.items():
            scores[term] = scores.get(term, 0.0) + count * math.log(n_docs / df[term])

    ranked = sorted(scores, key=lambda t: (-scores[t], t))
    return [Term(text=t, score=scores[t]) for t in ranked[:k]]


def bin_documents(
    corpus: LoadedCorpus, boundaries: list[int]
) -> tuple[dict[str, str], list[Period]]:
    """Assign docs to year periods cut at the given boundary years.

    Boundaries [b1..bn] induce up to n+1 periods; a boundary year starts
    a new period. Labels come from observed min/max years; empty periods
    are dropped and the rest numbered P1..Pk in time order. Docs without
    a year stay unassigned.
    """
    if not boundaries:
        raise ValidationError("at least one boundary year required")
    if any(b2 <= b1 for b1, b2 in zip(boundaries, boundaries[1:])):
        raise ValidationError("boundaries must be strictly ascending")

    def slot(year: int) -> int:
        s = 0
        for b in boundaries:
            if year >= b:
                s += 1
        return s

    years_by_slot: dict[int, list[int]] = defaultdict(list)
    slot_by_doc: dict[str, int] = {}
    for doc_id, doc in corpus.documents.items():
        if doc.year is None:
            continue
        s = slot(doc.year)
        slot_by_doc[doc_id] = s
        years_by_slot[s].append(doc.year)

    periods: list[Period] = []
    period_id_by_slot: dict[int, str] = {}
    for s in sorted(years_by_slot):
        lo, hi = min(years_by_slot[s]), max(years_by_slot[s])
        pid = f"P{len(periods) + 1}"
        period_id_by_slot[s] = pid
        periods.append(
            Period(period_id=pid, start_year=lo, end_year=hi, label=f"{lo}-{hi}")
        )

    assignment = {
        doc_id: period_id_by_slot[s] for doc_id, s in sorted(slot_by_doc.items())
    }
    return assignment, periods


def _term_in_sentence(term: str, words: list[str]) -> bool:
    parts = term.split()
    if len(parts) == 1:
        return term in words
    return any(
        words[i : i + len(parts)] == parts for i in range(len(words) - len(parts) + 1)
    )


def associate(
    mentions: list[EntityMention],
    clusters: list[EntityCluster],
    terms: list[Term],
    corpus: LoadedCorpus,
    binning: dict[str, str],
) -> list[Association]:
    """weight(e, t, p) = sentences in period-p docs holding a mention of
    cluster e and an occurrence of term t (case-folded token match)."""
    if not terms:
        raise ValidationError("no terms to associate")
    surface_to_cluster: dict[str, int] = {}
    for c in clusters:
        for surface in c.surfaces:
            surface_to_cluster[surface] = c.cluster_id

    clusters_by_cell: dict[tuple[str, int], set[int]] = defaultdict(set)
    for m in mentions:
        cid = surface_to_cluster.get(m.surface)
        if cid is not None:
            clusters_by_cell[(m.doc_id, m.sentence_index)].add(cid)

    weights: Counter[tuple[int, str, str]] = Counter()
    for doc_id, period_id in binning.items():
        for sent_idx, toks in enumerate(corpus.tokens.get(doc_id, [])):
            cell = clusters_by_cell.get((doc_id, sent_idx))
            if not cell:
                continue
            words = [t.surface.casefold() for t in toks]
            for term in terms:
                if _term_in_sentence(term.text, words):
                    for cid in cell:
                        weights[(cid, term.text, period_id)] += 1

    return [
        Association(cluster_id=cid, term=t, period_id=pid, weight=w)
        for (cid, t, pid), w in sorted(weights.items())
    ]


def build_sankey(
    associations: list[Association],
    periods: list[Period],
    clusters: list[EntityCluster],
    top_terms_per_period: int = 10,
) -> SankeySpec:
    """Connect each entity's strongest kept term across adjacent periods
    with a flow of min(source weight, target weight); parallel flows on
    the same node pair sum."""
    if len(periods) < 2:
        raise ValidationError("sankey needs at least 2 periods")
    canonical_by_id = {c.cluster_id: c.canonical for c in clusters}

    # Keep top terms per period by summed weight, ties lexicographic.
    totals: dict[str, Counter[str]] = defaultdict(Counter)
    for a in associations:
        totals[a.period_id][a.term] += a.weight
    kept: dict[str, set[str]] = {}
    for pid, counts in totals.items():
        ranked = sorted(counts, key=lambda t: (-counts[t], t))
        kept[pid] = set(ranked[:top_terms_per_period])

    # weight lookup restricted to kept terms
    by_entity_period: dict[tuple[int, str], dict[str, int]] = defaultdict(dict)
    for a in associations:
        if a.term in kept.get(a.period_id, ()):
            by_entity_period[(a.cluster_id, a.period_id)][a.term] = a.weight

    flows: dict[tuple[str, str], int] = {}
    flow_entities: dict[tuple[str, str], set[str]] = defaultdict(set)
    entity_ids = sorted({cid for cid, _ in by_entity_period})
    for p, q in zip(periods, periods[1:]):
        for cid in entity_ids:
            src = by_entity_period.get((cid, p.period_id))
            dst = by_entity_period.get((cid, q.period_id))
            if not src or not dst:
                continue
            t_star = min(src, key=lambda t: (-src[t], t))
            u_star = min(dst, key=lambda t: (-dst[t], t))
            value = min(src[t_star], dst[u_star])
            key = (f"{p.period_id}:{t_star}", f"{q.period_id}:{u_star}")
            flows[key] = flows.get(key, 0) + value
            flow_entities[key].add(canonical_by_id.get(cid, str(cid)))

    node_ids = sorted({nid for pair in flows for nid in pair})
    period_order = {p.period_id: i for i, p in enumerate(periods)}
    nodes = tuple(
        SankeyNode(node_id=nid, period_id=nid.split(":", 1)[0], term=nid.split(":", 1)[1])
        for nid in sorted(node_ids, key=lambda n: (period_order[n.split(":", 1)[0]], n))
    )
    links = tuple(
        SankeyLink(
            source=src,
            target=dst,
            value=flows[(src, dst)],
            entities=tuple(sorted(flow_entities[(src, dst)])),
        )
        for src, dst in sorted(flows)
    )
    return SankeySpec(periods=tuple(periods), nodes=nodes, links=links)
