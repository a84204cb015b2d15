/** Thin fetch client for the play server. */

import type { AttackResponse, GraphDoc, SessionInfo } from "./types.js";

export class ApiRefusal extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(base + path, init);
  const body = await resp.json().catch(() => ({ error: "malformed response" }));
  if (!resp.ok) {
    throw new ApiRefusal(resp.status, (body as { error?: string }).error ?? resp.statusText);
  }
  return body as T;
}

export function listBuiltins(base = ""): Promise<{ builtins: string[] }> {
  return request(base, "/api/builtins");
}

export function createSession(
  source: { builtin: string } | { graph: GraphDoc },
  base = "",
): Promise<SessionInfo> {
  return request(base, "/api/session", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(source),
  });
}

export function attackEdge(
  id: string,
  edge: [string, string],
  base = "",
): Promise<AttackResponse> {
  return request(base, `/api/session/${id}/attack`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ edge }),
  });
}

export function getSession(id: string, base = ""): Promise<SessionInfo> {
  return request(base, `/api/session/${id}`);
}

export function deleteSession(id: string, base = ""): Promise<void> {
  return request(base, `/api/session/${id}`, { method: "DELETE" });
}

/** Human text for an instance the server refuses to play. */
export function unplayableNotice(refusal: ApiRefusal): string {
  if (refusal.status === 422) {
    return `unplayable: no certified strategy (${refusal.message})`;
  }
  return refusal.message;
}
