import { describe, expect, it } from "vitest";

import { forceLayout, mulberry32 } from "../src/layout/force.js";
import { networkFixture } from "./fixtures.js";

describe("force layout", () => {
  const opts = { width: 400, height: 300, iterations: 60, seed: 7 };

  it("is deterministic for the same graph and seed", () => {
    const a = forceLayout(networkFixture.nodes, networkFixture.edges, opts);
    const b = forceLayout(networkFixture.nodes, networkFixture.edges, opts);
    for (const node of networkFixture.nodes) {
      expect(a.get(node.id)).toEqual(b.get(node.id));
    }
  });

  it("keeps every node inside the viewport", () => {
    const positions = forceLayout(networkFixture.nodes, networkFixture.edges, opts);
    for (const { x, y } of positions.values()) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(opts.width);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(opts.height);
    }
  });

  it("places linked nodes closer than unlinked ones", () => {
    const positions = forceLayout(networkFixture.nodes, networkFixture.edges, opts);
    const dist = (a: number, b: number) => {
      const pa = positions.get(a)!;
      const pb = positions.get(b)!;
      return Math.hypot(pa.x - pb.x, pa.y - pb.y);
    };
    // 0-1 and 1-2 are edges; 0-2 is not.
    expect(dist(0, 1)).toBeLessThan(dist(0, 2));
    expect(dist(1, 2)).toBeLessThan(dist(0, 2));
  });

  it("mulberry32 streams are reproducible and in [0, 1)", () => {
    const a = mulberry32(99);
    const b = mulberry32(99);
    for (let i = 0; i < 100; i++) {
      const value = a();
      expect(value).toBe(b());
      expect(value).toBeGreaterThanOrEqual(0);
      expect(value).toBeLessThan(1);
    }
  });
});
