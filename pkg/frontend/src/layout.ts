// Two deterministic layouts. Circular places nodes evenly on a circle
// in label order; force runs a fixed number of spring iterations from a
// seeded initial state so repeated renders match exactly.

import { GraphEdge, GraphNode } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export type Positions = Map<number, Point>;

export function circularLayout(
  nodes: GraphNode[],
  width: number,
  height: number,
): Positions {
  const positions: Positions = new Map();
  if (nodes.length === 0) return positions;
  const cx = width / 2;
  const cy = height / 2;
  if (nodes.length === 1) {
    positions.set(nodes[0].id, { x: cx, y: cy });
    return positions;
  }
  const radius = 0.4 * Math.min(width, height);
  const ordered = [...nodes].sort((a, b) =>
    a.label < b.label ? -1 : a.label > b.label ? 1 : a.id - b.id,
  );
  ordered.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / ordered.length;
    positions.set(node.id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  return positions;
}

// mulberry32: small deterministic PRNG, seeded per layout call.
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const FORCE_ITERATIONS = 150;
const SPRING_LENGTH = 120;

export function forceLayout(
  nodes: GraphNode[],
  edges: GraphEdge[],
  width: number,
  height: number,
  seed = 42,
): Positions {
  const positions: Positions = new Map();
  if (nodes.length === 0) return positions;
  const rand = mulberry32(seed);
  const ordered = [...nodes].sort((a, b) => a.id - b.id);
  const pts = ordered.map(() => ({
    x: width * (0.25 + 0.5 * rand()),
    y: height * (0.25 + 0.5 * rand()),
  }));
  const index = new Map(ordered.map((n, i) => [n.id, i]));

  for (let iter = 0; iter < FORCE_ITERATIONS; iter++) {
    const temp = 0.1 * (1 - iter / FORCE_ITERATIONS) + 0.01;
    const fx = new Array(pts.length).fill(0);
    const fy = new Array(pts.length).fill(0);
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        const dx = pts[i].x - pts[j].x;
        const dy = pts[i].y - pts[j].y;
        const d2 = dx * dx + dy * dy + 0.01;
        const rep = (SPRING_LENGTH * SPRING_LENGTH) / d2;
        fx[i] += dx * rep * 0.05;
        fy[i] += dy * rep * 0.05;
        fx[j] -= dx * rep * 0.05;
        fy[j] -= dy * rep * 0.05;
      }
    }
    for (const e of edges) {
      const i = index.get(e.source);
      const j = index.get(e.target);
      if (i === undefined || j === undefined) continue;
      const dx = pts[j].x - pts[i].x;
      const dy = pts[j].y - pts[i].y;
      const dist = Math.sqrt(dx * dx + dy * dy) + 0.01;
      const pull = (dist - SPRING_LENGTH) / dist;
      fx[i] += dx * pull * 0.1;
      fy[i] += dy * pull * 0.1;
      fx[j] -= dx * pull * 0.1;
      fy[j] -= dy * pull * 0.1;
    }
    for (let i = 0; i < pts.length; i++) {
      pts[i].x = Math.min(width - 20, Math.max(20, pts[i].x + fx[i] * temp));
      pts[i].y = Math.min(height - 20, Math.max(20, pts[i].y + fy[i] * temp));
    }
  }
  ordered.forEach((node, i) => positions.set(node.id, pts[i]));
  return positions;
}

export function computeLayout(
  nodes: GraphNode[],
  edges: GraphEdge[],
  choice: "force" | "circular",
  width: number,
  height: number,
): Positions {
  return choice === "circular"
    ? circularLayout(nodes, width, height)
    : forceLayout(nodes, edges, width, height);
}
