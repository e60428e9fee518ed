import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Model, modelFromText } from "../src/model.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

export function fixtureModel(): Model {
  return modelFromText(fixtureText("graph.json"), fixtureText("sankey.json"));
}

/** A fetch stand-in serving fixed text bodies keyed by URL. */
export function fakeFetch(bodies: Record<string, string>): typeof fetch {
  return (async (input: RequestInfo | URL) => {
    const url = String(input);
    const body = bodies[url];
    if (body === undefined) {
      return new Response("not found", { status: 404 });
    }
    return new Response(body, { status: 200 });
  }) as typeof fetch;
}
