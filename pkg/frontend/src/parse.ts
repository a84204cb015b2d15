/** Uploaded instance files: JSON (optionally with pinned coordinates) or
 * whitespace edge lists with # comments. */

import type { Coords, GraphDoc, LabelPair } from "./types.js";

export interface ParsedUpload {
  graph: GraphDoc;
  coords?: Coords;
}

export function parseUpload(text: string): ParsedUpload {
  if (text.trimStart().startsWith("{")) {
    return parseJsonUpload(text);
  }
  const edges: LabelPair[] = [];
  const seen = new Set<string>();
  const vertices = new Set<string>();
  text.split("\n").forEach((raw, i) => {
    const line = raw.trim();
    if (!line || line.startsWith("#")) return;
    const parts = line.split(/\s+/);
    if (parts.length !== 2) {
      throw new Error(`line ${i + 1}: expected two labels`);
    }
    const [a, b] = parts;
    if (a === b) throw new Error(`line ${i + 1}: self-loop at ${a}`);
    const key = a < b ? `${a}|${b}` : `${b}|${a}`;
    if (seen.has(key)) throw new Error(`line ${i + 1}: duplicate edge`);
    seen.add(key);
    vertices.add(a);
    vertices.add(b);
    edges.push([a, b]);
  });
  return { graph: { vertices: [...vertices].sort(), edges } };
}

function parseJsonUpload(text: string): ParsedUpload {
  const doc = JSON.parse(text) as {
    vertices?: unknown;
    edges?: unknown;
    coords?: unknown;
  };
  if (!Array.isArray(doc.edges)) {
    throw new Error('JSON upload needs an "edges" array');
  }
  const edges = doc.edges.map((e): LabelPair => {
    if (!Array.isArray(e) || e.length !== 2) throw new Error(`bad edge ${JSON.stringify(e)}`);
    return [String(e[0]), String(e[1])];
  });
  const vertices = Array.isArray(doc.vertices)
    ? doc.vertices.map(String)
    : [...new Set(edges.flat())].sort();
  let coords: Coords | undefined;
  if (doc.coords && typeof doc.coords === "object") {
    coords = {};
    for (const [label, xy] of Object.entries(doc.coords as Record<string, unknown>)) {
      if (Array.isArray(xy) && xy.length === 2) {
        coords[label] = [Number(xy[0]), Number(xy[1])];
      }
    }
  }
  return { graph: { vertices, edges }, coords };
}
