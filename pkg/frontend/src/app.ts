/** Wiring: instance picker, the board, the round log, and the phase machine.
 * The human attacks by clicking edges; the server's engine defends. */

import { ApiRefusal, attackEdge, createSession, listBuiltins, unplayableNotice } from "./api.js";
import { Board } from "./board.js";
import { computeLayout } from "./layout.js";
import { parseUpload } from "./parse.js";
import { edgesClickable, transition, type Phase } from "./state.js";
import type { Coords, LabelPair, SessionInfo } from "./types.js";
import { edgeSet, revalidateMoves } from "./validate.js";

interface Ui {
  picker: HTMLSelectElement;
  upload: HTMLInputElement;
  banner: HTMLElement;
  notice: HTMLElement;
  log: HTMLElement;
  boardHost: HTMLElement;
}

class App {
  private board: Board;
  private phase: Phase = "idle";
  private session: SessionInfo | null = null;
  private config: string[] = [];
  private coords: Coords = {};
  private pinned?: Coords;

  constructor(private ui: Ui) {
    this.board = new Board(ui.boardHost, {
      onEdgeClick: (edge) => void this.attack(edge),
    });
  }

  private step(event: Parameters<typeof transition>[1]): void {
    const next = transition(this.phase, event);
    if (next === null) return;
    this.phase = next;
    this.board.setClickable(this.session !== null && edgesClickable(this.phase)
                            && !this.session.over);
  }

  async start(): Promise<void> {
    const { builtins } = await listBuiltins();
    this.ui.picker.replaceChildren(
      new Option("choose an instance...", ""),
      ...builtins.map((name) => new Option(name, name)));
    this.ui.picker.addEventListener("change", () => {
      if (this.ui.picker.value) void this.load({ builtin: this.ui.picker.value });
    });
    this.ui.upload.addEventListener("change", () => void this.uploadFile());
  }

  private async uploadFile(): Promise<void> {
    const file = this.ui.upload.files?.[0];
    if (!file) return;
    try {
      const parsed = parseUpload(await file.text());
      this.pinned = parsed.coords;
      await this.load({ graph: parsed.graph });
    } catch (err) {
      this.showNotice(String(err instanceof Error ? err.message : err));
    }
  }

  private async load(source: Parameters<typeof createSession>[0]): Promise<void> {
    this.showNotice("");
    this.ui.log.replaceChildren();
    try {
      this.session = await createSession(source);
    } catch (err) {
      this.session = null;
      this.board.setClickable(false);
      this.showNotice(err instanceof ApiRefusal
        ? unplayableNotice(err)
        : String(err));
      return;
    }
    const { graph } = this.session;
    this.config = this.session.config;
    const [w, h] = this.board.size;
    this.coords = computeLayout(graph.vertices, graph.edges,
                                { width: w, height: h, fixed: this.pinned });
    this.pinned = undefined;
    this.phase = "idle";
    this.redraw();
    this.board.setClickable(true);
    const [lo, hi] = this.session.evc_bound;
    const bracket = lo === hi ? `${lo}` : `${lo}..${hi}`;
    this.ui.banner.textContent =
      `mode ${this.session.mode} · mvc ${this.session.mvc} · evc ${bracket} · ` +
      `round ${this.session.round} — click an edge to attack`;
  }

  private redraw(lastAttack?: LabelPair): void {
    if (!this.session) return;
    this.board.render(this.session.graph.vertices, this.session.graph.edges,
                      this.coords, this.config, lastAttack);
  }

  private async attack(edge: LabelPair): Promise<void> {
    if (!this.session || !edgesClickable(this.phase)) return;
    this.step("attack-sent");
    this.board.flashAttack(edge);
    let response;
    try {
      response = await attackEdge(this.session.id, edge);
    } catch (err) {
      this.step("validation-failed");
      this.showNotice(String(err instanceof Error ? err.message : err));
      return;
    }

    if (!response.defended) {
      this.step("defense-failed");
      this.session.over = true;
      this.board.setClickable(false);
      this.showNotice(`game over — attack on ${response.attack.join("–")} ` +
                      `cannot be defended (round ${response.round}): ${response.error}`);
      this.appendLog(`round ${response.round}: ${response.attack.join("–")} — undefended`);
      return;
    }

    const defect = revalidateMoves(edgeSet(this.session.graph.edges), {
      before: this.config,
      moves: response.moves,
      attack: response.attack,
      clickedEdge: edge,
      resultConfig: response.config,
    });
    if (defect !== null) {
      this.step("validation-failed");
      this.board.setClickable(false);
      this.showNotice(`server move plan rejected: ${defect}`);
      return;
    }

    this.step("response-ok");
    await this.board.animate(response.moves);
    this.config = response.config;
    this.step("animation-done");
    this.redraw(edge);
    this.appendLog(
      `round ${response.round}: attack ${response.attack.join("→")}, ` +
      `moves ${response.moves.filter(([a, b]) => a !== b)
        .map(([a, b]) => `${a}→${b}`).join(" ") || "(swap held)"}`);
    this.ui.banner.textContent = this.ui.banner.textContent!
      .replace(/round \d+/, `round ${response.round}`);
  }

  private appendLog(text: string): void {
    const row = document.createElement("div");
    row.textContent = text;
    this.ui.log.prepend(row);
  }

  private showNotice(text: string): void {
    this.ui.notice.textContent = text;
    this.ui.notice.classList.toggle("visible", text !== "");
  }
}

export function boot(): void {
  const app = new App({
    picker: document.querySelector("#picker")!,
    upload: document.querySelector("#upload")!,
    banner: document.querySelector("#banner")!,
    notice: document.querySelector("#notice")!,
    log: document.querySelector("#log")!,
    boardHost: document.querySelector("#board")!,
  });
  void app.start();
}

boot();
