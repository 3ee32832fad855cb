/** Deterministic client-side force layout for the network map.
 *
 * Plain spring-electric model: edges pull, all pairs push, positions
 * integrate with decaying step size. Seeded initial placement plus a
 * fixed iteration count makes the layout reproducible for a given graph,
 * so the map doesn't jump between polls.
 */

import type { NetworkEdge, NetworkNode } from "../api/types.js";

export interface Point {
  x: number;
  y: number;
}

/** Small deterministic PRNG (mulberry32) for initial placement. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
}

export function forceLayout(
  nodes: NetworkNode[],
  edges: NetworkEdge[],
  opts: LayoutOptions,
): Map<number, Point> {
  const { width, height } = opts;
  const iterations = opts.iterations ?? 150;
  const rand = mulberry32(opts.seed ?? 1);

  const index = new Map<number, number>();
  nodes.forEach((node, i) => index.set(node.id, i));
  const n = nodes.length;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    xs[i] = rand() * width;
    ys[i] = rand() * height;
  }

  // Deduplicate the directed edge list down to undirected springs.
  const springs: [number, number][] = [];
  const seen = new Set<string>();
  for (const edge of edges) {
    const a = index.get(edge.source);
    const b = index.get(edge.target);
    if (a === undefined || b === undefined || a === b) continue;
    const key = a < b ? `${a}-${b}` : `${b}-${a}`;
    if (seen.has(key)) continue;
    seen.add(key);
    springs.push([a, b]);
  }

  const k = Math.sqrt((width * height) / Math.max(n, 1));
  const fx = new Float64Array(n);
  const fy = new Float64Array(n);
  for (let iter = 0; iter < iterations; iter++) {
    fx.fill(0);
    fy.fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 0.01 * ((i % 7) - 3);
          dy = 0.01 * ((j % 5) - 2);
          d2 = dx * dx + dy * dy + 1e-6;
        }
        const repulse = (k * k) / d2;
        fx[i]! += dx * repulse;
        fy[i]! += dy * repulse;
        fx[j]! -= dx * repulse;
        fy[j]! -= dy * repulse;
      }
    }
    for (const [a, b] of springs) {
      const dx = xs[a]! - xs[b]!;
      const dy = ys[a]! - ys[b]!;
      const dist = Math.sqrt(dx * dx + dy * dy) + 1e-9;
      const attract = dist / k;
      fx[a]! -= dx * attract;
      fy[a]! -= dy * attract;
      fx[b]! += dx * attract;
      fy[b]! += dy * attract;
    }
    const step = (0.1 * k * (iterations - iter)) / iterations;
    for (let i = 0; i < n; i++) {
      const mag = Math.sqrt(fx[i]! * fx[i]! + fy[i]! * fy[i]!) + 1e-9;
      const scale = Math.min(step, mag) / mag;
      xs[i] = Math.max(0, Math.min(width, xs[i]! + fx[i]! * scale));
      ys[i] = Math.max(0, Math.min(height, ys[i]! + fy[i]! * scale));
    }
  }

  const out = new Map<number, Point>();
  nodes.forEach((node, i) => out.set(node.id, { x: xs[i]!, y: ys[i]! }));
  return out;
}
