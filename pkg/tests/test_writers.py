"""Serializer byte-determinism, escaping, and round-trips."""

import csv
import io
import json
import random
import xml.etree.ElementTree as ET

from corpusmap.coocgraph import CoocGraph, GraphNode
from corpusmap.entities import EntityTag
from corpusmap.temporal import Period, SankeyLink, SankeyNode, SankeySpec
from corpusmap.writers import (
    parse_graph_json,
    parse_sankey_json,
    write_edges_csv,
    write_gexf,
    write_graph_json,
    write_sankey_json,
)

EMPTY = CoocGraph(nodes=(), edges=())

EMPTY_GEXF = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">\n'
    '  <graph defaultedgetype="undirected">\n'
    '    <attributes class="node">\n'
    '      <attribute id="0" title="type" type="string"/>\n'
    '      <attribute id="1" title="freq" type="integer"/>\n'
    "    </attributes>\n"
    "    <nodes>\n"
    "    </nodes>\n"
    "    <edges>\n"
    "    </edges>\n"
    "  </graph>\n"
    "</gexf>\n"
)


def node(cid, label, freq=1, tags=frozenset({EntityTag.PERSON})):
    return GraphNode(cluster_id=cid, canonical=label, tags=tags, freq=freq)


def two_node_graph():
    return CoocGraph(nodes=(node(0, "A", 3), node(1, "B", 2)), edges=((0, 1, 2),))


def random_graph(rng):
    n = rng.randint(0, 10)
    tags = list(EntityTag)
    nodes = tuple(
        node(i, f"Entity {i}", rng.randint(1, 9), frozenset({rng.choice(tags)}))
        for i in range(n)
    )
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    edges = tuple(
        sorted((a, b, rng.randint(1, 5)) for a, b in pairs[: rng.randint(0, len(pairs))])
    )
    return CoocGraph(nodes=nodes, edges=edges)


class TestGexf:
    def test_empty_skeleton_exact(self):
        assert write_gexf(EMPTY) == EMPTY_GEXF

    def test_edge_line_format(self):
        assert '<edge id="0" source="0" target="1" weight="2.0"/>' in write_gexf(
            two_node_graph()
        )

    def test_ampersand_escaped(self):
        g = CoocGraph(nodes=(node(0, "Standard & Poor"),), edges=())
        assert 'label="Standard &amp; Poor"' in write_gexf(g)

    def test_well_formed_and_structured(self):
        rng = random.Random(1)
        for _ in range(20):
            text = write_gexf(random_graph(rng))
            root = ET.fromstring(text)
            ns = "{http://www.gexf.net/1.2draft}"
            assert root.tag == f"{ns}gexf"
            assert root.attrib["version"] == "1.2"
            graph = root.find(f"{ns}graph")
            assert graph.attrib["defaultedgetype"] == "undirected"

    def test_byte_identical_across_runs(self):
        g = random_graph(random.Random(2))
        assert write_gexf(g) == write_gexf(g)
        assert "\r" not in write_gexf(g)


class TestGraphJson:
    def test_empty(self):
        assert write_graph_json(EMPTY) == '{"nodes":[],"edges":[]}\n'

    def test_edge_array(self):
        doc = json.loads(write_graph_json(two_node_graph()))
        assert doc["edges"] == [{"source": 0, "target": 1, "weight": 2}]

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_graph(rng)
            assert parse_graph_json(write_graph_json(g)) == g


def sankey_fixture():
    return SankeySpec(
        periods=(
            Period("P1", 2006, 2007, "2006-2007"),
            Period("P2", 2008, 2010, "2008-2010"),
        ),
        nodes=(
            SankeyNode("P1:subprime loans", "P1", "subprime loans"),
            SankeyNode("P2:bank regulators", "P2", "bank regulators"),
        ),
        links=(
            SankeyLink(
                "P1:subprime loans", "P2:bank regulators", 2, ("Fannie Mae",)
            ),
        ),
    )


class TestSankeyJson:
    def test_empty_spec(self):
        spec = SankeySpec(periods=sankey_fixture().periods, nodes=(), links=())
        doc = json.loads(write_sankey_json(spec))
        assert doc["nodes"] == []
        assert doc["links"] == []
        assert len(doc["periods"]) == 2

    def test_drift_fixture(self):
        doc = json.loads(write_sankey_json(sankey_fixture()))
        assert doc["links"] == [
            {
                "source": "P1:subprime loans",
                "target": "P2:bank regulators",
                "value": 2,
                "entities": ["Fannie Mae"],
            }
        ]

    def test_round_trip(self):
        spec = sankey_fixture()
        assert parse_sankey_json(write_sankey_json(spec)) == spec


class TestEdgesCsv:
    def test_empty_graph_header_only(self):
        assert write_edges_csv(EMPTY) == "source,target,weight,source_label,target_label\n"

    def test_ampersand_label_unquoted(self):
        g = CoocGraph(
            nodes=(node(0, "Standard & Poor"), node(1, "B")), edges=((0, 1, 1),)
        )
        assert "Standard & Poor" in write_edges_csv(g)
        assert '"Standard & Poor"' not in write_edges_csv(g)

    def test_comma_label_quoted(self):
        g = CoocGraph(nodes=(node(0, "Acme, Inc"), node(1, "B")), edges=((0, 1, 1),))
        assert '"Acme, Inc"' in write_edges_csv(g)

    def test_quote_label_doubled(self):
        g = CoocGraph(nodes=(node(0, 'The "Fed"'), node(1, "B")), edges=((0, 1, 1),))
        assert '"The ""Fed"""' in write_edges_csv(g)

    def test_parses_back(self):
        rng = random.Random(4)
        for _ in range(10):
            g = random_graph(rng)
            rows = list(csv.reader(io.StringIO(write_edges_csv(g))))
            assert rows[0] == ["source", "target", "weight", "source_label", "target_label"]
            labels = {n.cluster_id: n.canonical for n in g.nodes}
            parsed = [(int(r[0]), int(r[1]), int(r[2])) for r in rows[1:]]
            assert tuple(parsed) == g.edges
            for r in rows[1:]:
                assert r[3] == labels[int(r[0])]
                assert r[4] == labels[int(r[1])]
