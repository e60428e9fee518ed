// Bundle loading: fetch, parse, validate. Errors surface as messages
// for the banner, never as a blank screen.

import {
  GraphDoc,
  SankeyDoc,
  SchemaError,
  validateGraphDoc,
  validateSankeyDoc,
} from "./types.js";

export interface Model {
  graph: GraphDoc;
  sankey: SankeyDoc | null; // missing sankey disables the flows tab
}

export class LoadError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "LoadError";
  }
}

function parseJson(text: string, url: string): unknown {
  try {
    return JSON.parse(text);
  } catch (err) {
    throw new LoadError(`${url}: invalid JSON (${(err as Error).message})`);
  }
}

export function modelFromText(graphText: string, sankeyText: string | null): Model {
  let graph: GraphDoc;
  try {
    graph = validateGraphDoc(parseJson(graphText, "graph.json"));
  } catch (err) {
    if (err instanceof SchemaError) throw new LoadError(`graph.json ${err.message}`);
    throw err;
  }
  let sankey: SankeyDoc | null = null;
  if (sankeyText !== null) {
    try {
      sankey = validateSankeyDoc(parseJson(sankeyText, "sankey.json"));
    } catch (err) {
      if (err instanceof SchemaError) throw new LoadError(`sankey.json ${err.message}`);
      throw err;
    }
  }
  return { graph, sankey };
}

export async function loadBundle(
  graphUrl: string,
  sankeyUrl: string,
  fetchFn: typeof fetch = fetch,
): Promise<Model> {
  const graphResp = await fetchFn(graphUrl).catch((err) => {
    throw new LoadError(`cannot fetch ${graphUrl}: ${(err as Error).message}`);
  });
  if (!graphResp.ok) throw new LoadError(`cannot fetch ${graphUrl}: HTTP ${graphResp.status}`);
  const graphText = await graphResp.text();

  let sankeyText: string | null = null;
  try {
    const sankeyResp = await fetchFn(sankeyUrl);
    if (sankeyResp.ok) sankeyText = await sankeyResp.text();
  } catch {
    // sankey is optional; the flows tab is simply disabled
  }
  return modelFromText(graphText, sankeyText);
}

export function maxEdgeWeight(model: Model): number {
  return model.graph.edges.reduce((m, e) => Math.max(m, e.weight), 0);
}
