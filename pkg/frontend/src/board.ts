/** SVG board: vertices, clickable edges, guard tokens, parallel animation. */

import type { Coords, LabelPair } from "./types.js";

const SVG = "http://www.w3.org/2000/svg";
const ANIMATION_MS = 450;

export interface BoardCallbacks {
  onEdgeClick: (edge: LabelPair) => void;
}

export class Board {
  private svg: SVGSVGElement;
  private coords: Coords = {};
  private guardNodes = new Map<string, SVGCircleElement>();
  private edgeNodes = new Map<string, SVGLineElement>();
  private clickable = false;

  constructor(private host: HTMLElement, private callbacks: BoardCallbacks) {
    this.svg = document.createElementNS(SVG, "svg");
    this.svg.setAttribute("class", "board");
    this.host.replaceChildren(this.svg);
  }

  get size(): [number, number] {
    const rect = this.host.getBoundingClientRect();
    return [Math.max(rect.width, 320), Math.max(rect.height, 320)];
  }

  setClickable(on: boolean): void {
    this.clickable = on;
    this.svg.classList.toggle("clickable", on);
  }

  render(vertices: string[], edges: LabelPair[], coords: Coords,
         guards: string[], lastAttack?: LabelPair): void {
    this.coords = coords;
    const [w, h] = this.size;
    this.svg.setAttribute("viewBox", `0 0 ${w} ${h}`);
    this.svg.replaceChildren();
    this.edgeNodes.clear();
    this.guardNodes.clear();

    for (const [a, b] of edges) {
      const line = document.createElementNS(SVG, "line");
      const [x1, y1] = coords[a];
      const [x2, y2] = coords[b];
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.setAttribute("class", "edge");
      if (lastAttack && sameEdge([a, b], lastAttack)) {
        line.classList.add("attacked");
      }
      line.addEventListener("click", () => {
        if (this.clickable) this.callbacks.onEdgeClick([a, b]);
      });
      this.svg.appendChild(line);
      this.edgeNodes.set(edgeId(a, b), line);
    }

    for (const v of vertices) {
      const [x, y] = coords[v];
      const dot = document.createElementNS(SVG, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "7");
      dot.setAttribute("class", "vertex");
      this.svg.appendChild(dot);
      const text = document.createElementNS(SVG, "text");
      text.setAttribute("x", String(x + 10));
      text.setAttribute("y", String(y - 10));
      text.setAttribute("class", "vertex-label");
      text.textContent = v;
      this.svg.appendChild(text);
    }

    for (const v of guards) {
      const [x, y] = coords[v];
      const token = document.createElementNS(SVG, "circle");
      token.setAttribute("cx", String(x));
      token.setAttribute("cy", String(y));
      token.setAttribute("r", "11");
      token.setAttribute("class", "guard");
      this.svg.appendChild(token);
      this.guardNodes.set(v, token);
    }
  }

  /** Slide every moving guard concurrently; resolves when all arrive. */
  animate(moves: LabelPair[]): Promise<void> {
    const movers = moves.filter(([from, to]) => from !== to);
    if (movers.length === 0) return Promise.resolve();
    const steps = movers.map(([from, to]) => {
      const token = this.guardNodes.get(from);
      const [x1, y1] = this.coords[from];
      const [x2, y2] = this.coords[to];
      return { token, x1, y1, x2, y2 };
    });
    const start = performance.now();
    return new Promise((resolve) => {
      const tick = (now: number) => {
        const t = Math.min((now - start) / ANIMATION_MS, 1);
        const ease = t * (2 - t);
        for (const s of steps) {
          if (!s.token) continue;
          s.token.setAttribute("cx", String(s.x1 + (s.x2 - s.x1) * ease));
          s.token.setAttribute("cy", String(s.y1 + (s.y2 - s.y1) * ease));
        }
        if (t < 1) requestAnimationFrame(tick);
        else resolve();
      };
      requestAnimationFrame(tick);
    });
  }

  flashAttack(edge: LabelPair): void {
    const line = this.edgeNodes.get(edgeId(edge[0], edge[1]));
    line?.classList.add("attacked");
  }
}

function edgeId(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

function sameEdge(e1: LabelPair, e2: LabelPair): boolean {
  return edgeId(e1[0], e1[1]) === edgeId(e2[0], e2[1]);
}
