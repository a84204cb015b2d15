/** Wire types for the play server's JSON API. */

export type LabelPair = [string, string];

export interface GraphDoc {
  vertices: string[];
  edges: LabelPair[];
}

export interface SessionInfo {
  id: string;
  mode: "hall-equal" | "connected-plus-one";
  verdict: string;
  mvc: number;
  evc_bound: [number, number];
  cut_vertices: string[];
  config: string[];
  round: number;
  over: boolean;
  graph: GraphDoc;
  server_ms?: number;
}

export interface RoundDoc {
  round: number;
  attack: LabelPair;
  moves: LabelPair[];
  config: string[];
  defended: true;
  mode?: string;
  server_ms?: number;
}

export interface DefeatDoc {
  defended: false;
  round: number;
  attack: string[];
  error: string;
  server_ms?: number;
}

export type AttackResponse = RoundDoc | DefeatDoc;

export interface ApiError {
  error: string;
}

/** Uploaded files may pin vertex positions; they are honored verbatim. */
export type Coords = Record<string, [number, number]>;
