/** Session phase machine: one in-flight request, no clicks mid-animation. */

export type Phase = "idle" | "awaiting" | "animating" | "gameover";

export type Event =
  | "attack-sent"
  | "response-ok"
  | "animation-done"
  | "defense-failed"
  | "validation-failed"
  | "reset";

const TRANSITIONS: Record<Phase, Partial<Record<Event, Phase>>> = {
  idle: { "attack-sent": "awaiting", reset: "idle" },
  awaiting: {
    "response-ok": "animating",
    "defense-failed": "gameover",
    "validation-failed": "gameover",
    reset: "idle",
  },
  animating: { "animation-done": "idle", reset: "idle" },
  gameover: { reset: "idle" },
};

/** Next phase, or null when the event is not legal in the current phase. */
export function transition(phase: Phase, event: Event): Phase | null {
  return TRANSITIONS[phase][event] ?? null;
}

export function edgesClickable(phase: Phase): boolean {
  return phase === "idle";
}
