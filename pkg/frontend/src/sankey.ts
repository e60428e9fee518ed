// Flow view geometry for one adjacent period pair: left column holds
// the source period's term nodes, right column the target period's,
// ribbon heights proportional to link value.

import { SankeyDoc, SankeyLink } from "./types.js";

export interface FlowBox {
  nodeId: string;
  term: string;
  y0: number;
  y1: number;
}

export interface FlowRibbon {
  link: SankeyLink;
  sourceY0: number;
  sourceY1: number;
  targetY0: number;
  targetY1: number;
}

export interface FlowView {
  sourcePeriod: string;
  targetPeriod: string;
  left: FlowBox[];
  right: FlowBox[];
  ribbons: FlowRibbon[];
}

const NODE_GAP = 12;

export function periodPairCount(doc: SankeyDoc): number {
  return Math.max(0, doc.periods.length - 1);
}

export function flowView(doc: SankeyDoc, pairIndex: number, height: number): FlowView {
  if (pairIndex < 0 || pairIndex >= periodPairCount(doc)) {
    throw new RangeError(`period pair ${pairIndex} out of range`);
  }
  const source = doc.periods[pairIndex].id;
  const target = doc.periods[pairIndex + 1].id;
  const links = doc.links.filter(
    (l) => l.source.startsWith(`${source}:`) && l.target.startsWith(`${target}:`),
  );

  const outflow = new Map<string, number>();
  const inflow = new Map<string, number>();
  for (const l of links) {
    outflow.set(l.source, (outflow.get(l.source) ?? 0) + l.value);
    inflow.set(l.target, (inflow.get(l.target) ?? 0) + l.value);
  }

  const termOf = new Map(doc.nodes.map((n) => [n.id, n.term]));
  const stack = (flows: Map<string, number>): FlowBox[] => {
    const ids = [...flows.keys()].sort();
    const total = ids.reduce((s, id) => s + (flows.get(id) ?? 0), 0);
    const usable = height - NODE_GAP * Math.max(0, ids.length - 1);
    const scale = total > 0 ? usable / total : 0;
    const boxes: FlowBox[] = [];
    let y = 0;
    for (const id of ids) {
      const h = (flows.get(id) ?? 0) * scale;
      boxes.push({ nodeId: id, term: termOf.get(id) ?? id, y0: y, y1: y + h });
      y += h + NODE_GAP;
    }
    return boxes;
  };

  const left = stack(outflow);
  const right = stack(inflow);

  // ribbons stack inside their boxes in link order, so two links into
  // the same target never overlap
  const leftOffset = new Map(left.map((b) => [b.nodeId, b.y0]));
  const rightOffset = new Map(right.map((b) => [b.nodeId, b.y0]));
  const leftScale = new Map(
    left.map((b) => [b.nodeId, (b.y1 - b.y0) / (outflow.get(b.nodeId) ?? 1)]),
  );
  const rightScale = new Map(
    right.map((b) => [b.nodeId, (b.y1 - b.y0) / (inflow.get(b.nodeId) ?? 1)]),
  );

  const ribbons: FlowRibbon[] = [];
  const ordered = [...links].sort((a, b) =>
    a.source === b.source
      ? a.target < b.target
        ? -1
        : 1
      : a.source < b.source
        ? -1
        : 1,
  );
  for (const link of ordered) {
    const sy = leftOffset.get(link.source) ?? 0;
    const ty = rightOffset.get(link.target) ?? 0;
    const sh = link.value * (leftScale.get(link.source) ?? 0);
    const th = link.value * (rightScale.get(link.target) ?? 0);
    ribbons.push({
      link,
      sourceY0: sy,
      sourceY1: sy + sh,
      targetY0: ty,
      targetY1: ty + th,
    });
    leftOffset.set(link.source, sy + sh);
    rightOffset.set(link.target, ty + th);
  }
  return { sourcePeriod: source, targetPeriod: target, left, right, ribbons };
}
