/** Deterministic force-directed layout.
 *
 * Small graphs only, so a fixed-iteration spring simulation is plenty.
 * Uploaded coordinates are honored verbatim and never moved.
 */

import type { Coords, LabelPair } from "./types.js";

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  fixed?: Coords;
}

/** Deterministic pseudo-random stream (mulberry32). */
export function rngStream(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function computeLayout(
  vertices: string[],
  edges: LabelPair[],
  options: LayoutOptions,
): Coords {
  const { width, height } = options;
  const iterations = options.iterations ?? 300;
  const fixed = options.fixed ?? {};
  const n = vertices.length;
  const index = new Map(vertices.map((v, i) => [v, i]));
  const rand = rngStream(0x5eed + n * 97 + edges.length);

  const pos = vertices.map((v, i): [number, number] => {
    const pinned = fixed[v];
    if (pinned) return [pinned[0], pinned[1]];
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    const radius = Math.min(width, height) * 0.34;
    return [
      width / 2 + radius * Math.cos(angle) + (rand() - 0.5) * 8,
      height / 2 + radius * Math.sin(angle) + (rand() - 0.5) * 8,
    ];
  });
  const pinned = vertices.map((v) => v in fixed);
  const pairs = edges.map(([a, b]): [number, number] =>
    [index.get(a)!, index.get(b)!]);

  const area = width * height;
  const k = Math.sqrt(area / Math.max(n, 1)) * 0.55;
  for (let step = 0; step < iterations; step++) {
    const temp = 0.1 * Math.min(width, height) * (1 - step / iterations) + 1;
    const disp = pos.map((): [number, number] => [0, 0]);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i][0] - pos[j][0];
        let dy = pos[i][1] - pos[j][1];
        let d = Math.hypot(dx, dy);
        if (d < 0.01) { dx = rand() - 0.5; dy = rand() - 0.5; d = Math.hypot(dx, dy); }
        const force = (k * k) / d;
        disp[i][0] += (dx / d) * force;
        disp[i][1] += (dy / d) * force;
        disp[j][0] -= (dx / d) * force;
        disp[j][1] -= (dy / d) * force;
      }
    }
    for (const [i, j] of pairs) {
      const dx = pos[i][0] - pos[j][0];
      const dy = pos[i][1] - pos[j][1];
      const d = Math.max(Math.hypot(dx, dy), 0.01);
      const force = (d * d) / k;
      disp[i][0] -= (dx / d) * force;
      disp[i][1] -= (dy / d) * force;
      disp[j][0] += (dx / d) * force;
      disp[j][1] += (dy / d) * force;
    }
    for (let i = 0; i < n; i++) {
      if (pinned[i]) continue;
      const d = Math.max(Math.hypot(disp[i][0], disp[i][1]), 0.01);
      const scale = Math.min(d, temp) / d;
      pos[i][0] += disp[i][0] * scale;
      pos[i][1] += disp[i][1] * scale;
      pos[i][0] = Math.min(width - 28, Math.max(28, pos[i][0]));
      pos[i][1] = Math.min(height - 28, Math.max(28, pos[i][1]));
    }
  }

  const out: Coords = {};
  vertices.forEach((v, i) => { out[v] = [pos[i][0], pos[i][1]]; });
  return out;
}
