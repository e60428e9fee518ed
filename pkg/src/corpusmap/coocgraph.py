"""Sentence-level co-occurrence network over entity clusters.

Each sentence contributes at most weight 1 to a cluster pair, however
many mentions of either cluster it holds; this keeps entity-dense
sentences from inflating edges quadratically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import LoadedCorpus
from .entities import EntityCluster, EntityMention, EntityTag
from .errors import InternalConsistencyError

DEFAULT_NODE_TYPES = frozenset({EntityTag.PERSON, EntityTag.ORGANIZATION})


@dataclass(frozen=True)
class GraphNode:
    cluster_id: int
    canonical: str
    tags: frozenset[EntityTag]
    freq: int


@dataclass(frozen=True)
class CoocGraph:
    nodes: tuple[GraphNode, ...]  # ascending cluster_id
    edges: tuple[tuple[int, int, int], ...]  # (a, b, weight), a < b, sorted

    def weight(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        for ea, eb, w in self.edges:
            if (ea, eb) == (a, b):
                return w
        return 0

    def degree(self, cluster_id: int) -> int:
        return sum(1 for a, b, _ in self.edges if cluster_id in (a, b))


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    isolated_count: int
    component_count: int
    max_degree: int
    total_weight: int


@dataclass
class GraphOptions:
    types: frozenset[EntityTag] = DEFAULT_NODE_TYPES
    coref: str = "none"  # none | alias


def _cluster_presence(
    clusters: list[EntityCluster],
    mentions: list[EntityMention],
    corpus: LoadedCorpus,
    opts: GraphOptions,
) -> tuple[dict[tuple[str, int], set[int]], dict[int, int]]:
    """Which clusters occur in which (doc_id, sentence) cell, plus
    per-cluster mention counts (alias hits included when coref=alias)."""
    surface_to_cluster: dict[tuple[str, EntityTag], int] = {}
    surface_any: dict[str, list[int]] = {}
    for c in clusters:
        for surface in c.surfaces:
            for tag in c.tags:
                surface_to_cluster[(surface, tag)] = c.cluster_id
            surface_any.setdefault(surface, []).append(c.cluster_id)

    permitted = {c.cluster_id for c in clusters if c.tags & opts.types}

    presence: dict[tuple[str, int], set[int]] = {}
    freq: dict[int, int] = {}
    first_seen: dict[tuple[str, int], int] = {}  # (doc, cluster) -> sentence idx
    for m in mentions:
        cid = surface_to_cluster.get((m.surface, m.tag))
        if cid is None:
            candidates = surface_any.get(m.surface)
            if not candidates:
                raise InternalConsistencyError(
                    f"mention surface {m.surface!r} belongs to no cluster"
                )
            cid = candidates[0]
        if cid not in permitted:
            continue
        presence.setdefault((m.doc_id, m.sentence_index), set()).add(cid)
        freq[cid] = freq.get(cid, 0) + 1
        key = (m.doc_id, cid)
        if key not in first_seen or m.sentence_index < first_seen[key]:
            first_seen[key] = m.sentence_index

    if opts.coref == "alias":
        by_id = {c.cluster_id: c for c in clusters}
        for (doc_id, cid), first_idx in sorted(first_seen.items()):
            cluster = by_id[cid]
            alias = min(cluster.surfaces, key=lambda s: (len(s), s))
            alias_seq = tuple(alias.split())
            for sent_idx, toks in enumerate(corpus.tokens.get(doc_id, [])):
                if sent_idx <= first_idx:
                    continue
                cell = presence.setdefault((doc_id, sent_idx), set())
                if cid in cell:
                    continue
                surfaces = tuple(t.surface for t in toks)
                hit = any(
                    surfaces[i : i + len(alias_seq)] == alias_seq
                    for i in range(len(surfaces) - len(alias_seq) + 1)
                )
                if hit:
                    cell.add(cid)
                    freq[cid] = freq.get(cid, 0) + 1
    return presence, freq


def build_graph(
    clusters: list[EntityCluster],
    mentions: list[EntityMention],
    corpus: LoadedCorpus,
    opts: GraphOptions | None = None,
) -> CoocGraph:
    """Count, per sentence, one co-occurrence for every unordered pair of
    distinct permitted clusters present in it."""
    opts = opts or GraphOptions()
    presence, freq = _cluster_presence(clusters, mentions, corpus, opts)

    weights: dict[tuple[int, int], int] = {}
    for cell in presence.values():
        ids = sorted(cell)
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                pair = (ids[i], ids[j])
                weights[pair] = weights.get(pair, 0) + 1

    nodes = tuple(
        GraphNode(
            cluster_id=c.cluster_id,
            canonical=c.canonical,
            tags=c.tags,
            freq=freq.get(c.cluster_id, 0),
        )
        for c in sorted(clusters, key=lambda c: c.cluster_id)
        if freq.get(c.cluster_id, 0) > 0
    )
    edges = tuple((a, b, w) for (a, b), w in sorted(weights.items()))
    return CoocGraph(nodes=nodes, edges=edges)


def filter_graph(
    g: CoocGraph,
    min_node_freq: int = 0,
    min_edge_weight: int = 0,
    drop_isolated: bool = False,
) -> CoocGraph:
    """Threshold nodes and edges; optionally drop nodes left isolated."""
    kept_nodes = [n for n in g.nodes if n.freq >= min_node_freq]
    kept_ids = {n.cluster_id for n in kept_nodes}
    edges = tuple(
        (a, b, w)
        for a, b, w in g.edges
        if w >= min_edge_weight and a in kept_ids and b in kept_ids
    )
    if drop_isolated:
        connected = {a for a, _, _ in edges} | {b for _, b, _ in edges}
        kept_nodes = [n for n in kept_nodes if n.cluster_id in connected]
    return CoocGraph(nodes=tuple(kept_nodes), edges=edges)


def graph_stats(g: CoocGraph) -> GraphStats:
    degree: dict[int, int] = {n.cluster_id: 0 for n in g.nodes}
    for a, b, _ in g.edges:
        degree[a] += 1
        degree[b] += 1

    # components via union-find over node ids
    parent = {n.cluster_id: n.cluster_id for n in g.nodes}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    return GraphStats(
        node_count=len(g.nodes),
        edge_count=len(g.edges),
        isolated_count=sum(1 for d in degree.values() if d == 0),
        component_count=len({find(n.cluster_id) for n in g.nodes}),
        max_degree=max(degree.values(), default=0),
        total_weight=sum(w for _, _, w in g.edges),
    )
