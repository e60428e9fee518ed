import { describe, expect, it } from "vitest";

import { flowView, periodPairCount } from "../src/sankey.js";
import { SankeyDoc } from "../src/types.js";
import { fixtureModel } from "./helpers.js";

describe("periodPairCount", () => {
  it("counts adjacent pairs", () => {
    expect(periodPairCount(fixtureModel().sankey!)).toBe(1);
    expect(periodPairCount({ periods: [], nodes: [], links: [] })).toBe(0);
  });
});

describe("flowView", () => {
  it("renders the fixture's single flow with its value and entities", () => {
    const view = flowView(fixtureModel().sankey!, 0, 360);
    expect(view.sourcePeriod).toBe("P1");
    expect(view.targetPeriod).toBe("P2");
    expect(view.ribbons).toHaveLength(1);
    const ribbon = view.ribbons[0];
    expect(ribbon.link.value).toBe(2);
    expect(ribbon.link.entities).toEqual(["Fannie Mae"]);
    // a lone flow fills its boxes completely
    expect(view.left[0].term).toBe("subprime loans");
    expect(view.right[0].term).toBe("bank regulators");
    expect(ribbon.sourceY1 - ribbon.sourceY0).toBeCloseTo(360);
  });

  it("rejects an out-of-range pair index", () => {
    expect(() => flowView(fixtureModel().sankey!, 1, 360)).toThrowError(RangeError);
    expect(() => flowView(fixtureModel().sankey!, -1, 360)).toThrowError(RangeError);
  });

  it("stacks ribbons inside a shared target without overlap", () => {
    const doc: SankeyDoc = {
      periods: [
        { id: "P1", label: "early" },
        { id: "P2", label: "late" },
      ],
      nodes: [
        { id: "P1:alpha", period: "P1", term: "alpha" },
        { id: "P1:beta", period: "P1", term: "beta" },
        { id: "P2:gamma", period: "P2", term: "gamma" },
      ],
      links: [
        { source: "P1:alpha", target: "P2:gamma", value: 3, entities: ["A"] },
        { source: "P1:beta", target: "P2:gamma", value: 1, entities: ["B"] },
      ],
    };
    const view = flowView(doc, 0, 360);
    expect(view.ribbons).toHaveLength(2);
    const [r1, r2] = view.ribbons;
    // ribbons into gamma occupy disjoint vertical bands
    expect(r1.targetY1).toBeLessThanOrEqual(r2.targetY0 + 1e-9);
    // band heights proportional to flow value (3:1)
    expect((r1.targetY1 - r1.targetY0) / (r2.targetY1 - r2.targetY0)).toBeCloseTo(3);
  });

  it("heights on both sides are proportional to the same total", () => {
    const doc = fixtureModel().sankey!;
    const view = flowView(doc, 0, 200);
    expect(view.left[0].y1 - view.left[0].y0).toBeCloseTo(view.right[0].y1 - view.right[0].y0);
  });
});
