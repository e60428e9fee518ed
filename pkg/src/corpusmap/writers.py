"""Byte-deterministic serializers for graphs and Sankey specs.

Every writer emits "\n" line endings and fixed orderings so exported
artifacts diff cleanly between runs.
"""

from __future__ import annotations

import io
import json
from xml.sax.saxutils import quoteattr

from .coocgraph import CoocGraph
from .temporal import SankeySpec


def _type_label(tags) -> str:
    return "|".join(sorted(t.value for t in tags))


def write_gexf(g: CoocGraph) -> str:
    """GEXF 1.2 (Gephi-native), two-space indent, nodes by cluster_id,
    edges by (source, target), weights with one fractional digit."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">',
        '  <graph defaultedgetype="undirected">',
        '    <attributes class="node">',
        '      <attribute id="0" title="type" type="string"/>',
        '      <attribute id="1" title="freq" type="integer"/>',
        "    </attributes>",
        "    <nodes>",
    ]
    for n in g.nodes:
        out.append(f"      <node id=\"{n.cluster_id}\" label={quoteattr(n.canonical)}>")
        out.append("        <attvalues>")
        out.append(f'          <attvalue for="0" value={quoteattr(_type_label(n.tags))}/>')
        out.append(f'          <attvalue for="1" value="{n.freq}"/>')
        out.append("        </attvalues>")
        out.append("      </node>")
    out.append("    </nodes>")
    out.append("    <edges>")
    for i, (a, b, w) in enumerate(g.edges):
        out.append(f'      <edge id="{i}" source="{a}" target="{b}" weight="{w:.1f}"/>')
    out.append("    </edges>")
    out.append("  </graph>")
    out.append("</gexf>")
    return "\n".join(out) + "\n"


def write_graph_json(g: CoocGraph) -> str:
    doc = {
        "nodes": [
            {
                "id": n.cluster_id,
                "label": n.canonical,
                "type": _type_label(n.tags),
                "freq": n.freq,
            }
            for n in g.nodes
        ],
        "edges": [
            {"source": a, "target": b, "weight": w} for a, b, w in g.edges
        ],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_sankey_json(s: SankeySpec) -> str:
    doc = {
        "periods": [{"id": p.period_id, "label": p.label} for p in s.periods],
        "nodes": [
            {"id": n.node_id, "period": n.period_id, "term": n.term} for n in s.nodes
        ],
        "links": [
            {
                "source": link.source,
                "target": link.target,
                "value": link.value,
                "entities": list(link.entities),
            }
            for link in s.links
        ],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_edges_csv(g: CoocGraph) -> str:
    """Rows in (source, target) order; labels quoted only when they
    contain commas or quotes, with doubled-quote escaping."""
    import csv

    labels = {n.cluster_id: n.canonical for n in g.nodes}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "weight", "source_label", "target_label"])
    for a, b, w in g.edges:
        writer.writerow([a, b, w, labels.get(a, ""), labels.get(b, "")])
    return buf.getvalue()


def parse_graph_json(text: str) -> CoocGraph:
    """Inverse of write_graph_json, for round-trip checks and the viewer
    fixtures."""
    from .coocgraph import GraphNode
    from .entities import EntityTag

    doc = json.loads(text)
    nodes = tuple(
        GraphNode(
            cluster_id=n["id"],
            canonical=n["label"],
            tags=frozenset(EntityTag(t) for t in n["type"].split("|") if t),
            freq=n["freq"],
        )
        for n in doc["nodes"]
    )
    edges = tuple((e["source"], e["target"], e["weight"]) for e in doc["edges"])
    return CoocGraph(nodes=nodes, edges=edges)


def parse_sankey_json(text: str) -> SankeySpec:
    from .temporal import Period, SankeyLink, SankeyNode

    doc = json.loads(text)
    periods = []
    for p in doc["periods"]:
        lo, _, hi = p["label"].partition("-")
        periods.append(
            Period(
                period_id=p["id"],
                start_year=int(lo),
                end_year=int(hi) if hi else int(lo),
                label=p["label"],
            )
        )
    nodes = tuple(
        SankeyNode(node_id=n["id"], period_id=n["period"], term=n["term"])
        for n in doc["nodes"]
    )
    links = tuple(
        SankeyLink(
            source=link["source"],
            target=link["target"],
            value=link["value"],
            entities=tuple(link["entities"]),
        )
        for link in doc["links"]
    )
    return SankeySpec(periods=tuple(periods), nodes=nodes, links=links)
