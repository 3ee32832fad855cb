/** Network map: segments as circles colored by condition, links as lines,
 * with a click handler for drilling into a segment's history. */

import type { NetworkResponse } from "../api/types.js";
import { el, svgEl } from "../dom.js";
import { forceLayout } from "../layout/force.js";
import { conditionColor, conditionLabel } from "../render/color.js";

export interface NetworkViewOptions {
  width?: number;
  height?: number;
  onSelect?: (segmentId: number) => void;
}

export function renderNetwork(
  data: NetworkResponse,
  opts: NetworkViewOptions = {},
): HTMLElement {
  const width = opts.width ?? 900;
  const height = opts.height ?? 600;
  const positions = forceLayout(data.nodes, data.edges, { width, height });

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: "network-map",
  });

  const drawn = new Set<string>();
  for (const edge of data.edges) {
    const key =
      edge.source < edge.target
        ? `${edge.source}-${edge.target}`
        : `${edge.target}-${edge.source}`;
    if (drawn.has(key)) continue;
    drawn.add(key);
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (!a || !b) continue;
    svg.append(
      svgEl("line", {
        x1: a.x.toFixed(1),
        y1: a.y.toFixed(1),
        x2: b.x.toFixed(1),
        y2: b.y.toFixed(1),
        stroke: "#ccc",
        "stroke-width": (0.5 + edge.weight).toFixed(2),
      }),
    );
  }

  for (const node of data.nodes) {
    const pos = positions.get(node.id);
    if (!pos) continue;
    const circle = svgEl("circle", {
      cx: pos.x.toFixed(1),
      cy: pos.y.toFixed(1),
      r: "6",
      fill: conditionColor(node.condition),
      "data-segment-id": String(node.id),
      class: "network-node",
    });
    circle.append(
      svgEl("title", {}, [
        document.createTextNode(
          `segment ${node.id}: ${node.condition.toFixed(1)} ` +
            `(${conditionLabel(node.condition)}), ${node.features.material}, ` +
            `${node.features.age} yr`,
        ),
      ]),
    );
    if (opts.onSelect) {
      circle.addEventListener("click", () => opts.onSelect!(node.id));
    }
    svg.append(circle);
  }

  return el("div", { class: "network-view" }, [svg]);
}
