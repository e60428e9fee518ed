// Data contracts for the exported bundle (graph.json / sankey.json).

export interface GraphNode {
  id: number;
  label: string;
  type: string; // "PERSON", "ORGANIZATION", or "A|B" for merged clusters
  freq: number;
}

export interface GraphEdge {
  source: number;
  target: number;
  weight: number;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface SankeyPeriod {
  id: string;
  label: string;
}

export interface SankeyNode {
  id: string;
  period: string;
  term: string;
}

export interface SankeyLink {
  source: string;
  target: string;
  value: number;
  entities: string[];
}

export interface SankeyDoc {
  periods: SankeyPeriod[];
  nodes: SankeyNode[];
  links: SankeyLink[];
}

export type LayoutChoice = "force" | "circular";

export interface ViewState {
  minEdgeWeight: number;
  enabledTypes: Set<string>;
  showIsolated: boolean;
  searchQuery: string;
  layout: LayoutChoice;
  activePeriodPair: number;
}

export class SchemaError extends Error {
  constructor(public readonly path: string, detail: string) {
    super(`${path}: ${detail}`);
    this.name = "SchemaError";
  }
}

function check(cond: boolean, path: string, detail: string): void {
  if (!cond) throw new SchemaError(path, detail);
}

export function validateGraphDoc(raw: unknown): GraphDoc {
  check(typeof raw === "object" && raw !== null, "$", "expected an object");
  const doc = raw as Record<string, unknown>;
  check(Array.isArray(doc.nodes), "$.nodes", "expected an array");
  check(Array.isArray(doc.edges), "$.edges", "expected an array");
  (doc.nodes as unknown[]).forEach((n, i) => {
    const node = n as Record<string, unknown>;
    check(typeof node === "object" && node !== null, `$.nodes[${i}]`, "expected an object");
    check(typeof node.id === "number", `$.nodes[${i}].id`, "expected a number");
    check(typeof node.label === "string", `$.nodes[${i}].label`, "expected a string");
    check(typeof node.type === "string", `$.nodes[${i}].type`, "expected a string");
    check(typeof node.freq === "number", `$.nodes[${i}].freq`, "expected a number");
  });
  const ids = new Set((doc.nodes as GraphNode[]).map((n) => n.id));
  (doc.edges as unknown[]).forEach((e, i) => {
    const edge = e as Record<string, unknown>;
    check(typeof edge.source === "number", `$.edges[${i}].source`, "expected a number");
    check(typeof edge.target === "number", `$.edges[${i}].target`, "expected a number");
    check(typeof edge.weight === "number", `$.edges[${i}].weight`, "expected a number");
    check(ids.has(edge.source as number), `$.edges[${i}].source`, "unknown node id");
    check(ids.has(edge.target as number), `$.edges[${i}].target`, "unknown node id");
  });
  return doc as unknown as GraphDoc;
}

export function validateSankeyDoc(raw: unknown): SankeyDoc {
  check(typeof raw === "object" && raw !== null, "$", "expected an object");
  const doc = raw as Record<string, unknown>;
  check(Array.isArray(doc.periods), "$.periods", "expected an array");
  check(Array.isArray(doc.nodes), "$.nodes", "expected an array");
  check(Array.isArray(doc.links), "$.links", "expected an array");
  (doc.periods as unknown[]).forEach((p, i) => {
    const period = p as Record<string, unknown>;
    check(typeof period.id === "string", `$.periods[${i}].id`, "expected a string");
    check(typeof period.label === "string", `$.periods[${i}].label`, "expected a string");
  });
  const nodeIds = new Set<string>();
  (doc.nodes as unknown[]).forEach((n, i) => {
    const node = n as Record<string, unknown>;
    check(typeof node.id === "string", `$.nodes[${i}].id`, "expected a string");
    check(typeof node.period === "string", `$.nodes[${i}].period`, "expected a string");
    check(typeof node.term === "string", `$.nodes[${i}].term`, "expected a string");
    nodeIds.add(node.id as string);
  });
  (doc.links as unknown[]).forEach((l, i) => {
    const link = l as Record<string, unknown>;
    check(typeof link.source === "string", `$.links[${i}].source`, "expected a string");
    check(typeof link.target === "string", `$.links[${i}].target`, "expected a string");
    check(typeof link.value === "number", `$.links[${i}].value`, "expected a number");
    check(Array.isArray(link.entities), `$.links[${i}].entities`, "expected an array");
    check(nodeIds.has(link.source as string), `$.links[${i}].source`, "unknown node id");
    check(nodeIds.has(link.target as string), `$.links[${i}].target`, "unknown node id");
  });
  return doc as unknown as SankeyDoc;
}
