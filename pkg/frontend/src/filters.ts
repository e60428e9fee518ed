// Pure view filtering: the rendered edge set is exactly
// { e : weight >= minEdgeWeight and both endpoints type-enabled }.

import { GraphEdge, GraphNode, ViewState } from "./types.js";
import { Model } from "./model.js";

export interface VisibleSubgraph {
  nodes: GraphNode[];
  edges: GraphEdge[];
  highlighted: Set<number>; // node ids matching the search query
}

export function nodeTypeEnabled(node: GraphNode, enabledTypes: Set<string>): boolean {
  return node.type.split("|").some((t) => enabledTypes.has(t));
}

export function applyFilters(model: Model, state: ViewState): VisibleSubgraph {
  const byId = new Map(model.graph.nodes.map((n) => [n.id, n]));
  const enabled = (id: number): boolean => {
    const node = byId.get(id);
    return node !== undefined && nodeTypeEnabled(node, state.enabledTypes);
  };

  const edges = model.graph.edges.filter(
    (e) => e.weight >= state.minEdgeWeight && enabled(e.source) && enabled(e.target),
  );

  const endpointIds = new Set<number>();
  for (const e of edges) {
    endpointIds.add(e.source);
    endpointIds.add(e.target);
  }

  const nodes = model.graph.nodes.filter((n) => {
    if (endpointIds.has(n.id)) return true;
    return state.showIsolated && nodeTypeEnabled(n, state.enabledTypes);
  });

  const query = state.searchQuery.trim().toLowerCase();
  const highlighted = new Set<number>();
  if (query) {
    for (const n of nodes) {
      if (n.label.toLowerCase().includes(query)) highlighted.add(n.id);
    }
  }
  return { nodes, edges, highlighted };
}
