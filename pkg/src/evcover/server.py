"""HTTP/JSON service hosting interactive defense sessions.

Sessions are certified at creation (sufficient tests, then the exhaustive
check when the instance is small enough); instances with no certified
strategy mode are refused with 422 rather than played best-effort. Attacks on
one session are serialized behind a per-session lock, and every emitted move
plan is re-validated before the response leaves the server.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import gadgets
from .characterize import CharReport, class_membership, decide_evc_equals_mvc
from .cover import DEFAULT_LIMITS, Limits
from .defense import DefenseSession, defend, init_session, verify_moveset
from .errors import (DefenseImpossibleError, EvcError, SizeLimitError,
                     VerdictMismatchError)
from .graph import Graph, parse_json, serialize_json


class UncertifiableError(EvcError):
    """No strategy mode could be certified for the instance."""


@dataclass
class SessionEntry:
    session: DefenseSession
    report: CharReport
    lock: threading.Lock
    created: float


class SessionStore:
    """Thread-safe session map; per-session operations are strictly ordered."""

    def __init__(self, limits: Limits = DEFAULT_LIMITS):
        self.limits = limits
        self._lock = threading.Lock()
        self._entries: dict[str, SessionEntry] = {}

    def certify(self, g: Graph) -> CharReport:
        evidence = class_membership(g, "sufficient", self.limits)
        if not evidence.established and g.n <= self.limits.enumeration_n:
            evidence = class_membership(g, "exhaustive", self.limits)
        report = decide_evc_equals_mvc(g, evidence, self.limits)
        return report

    def create(self, g: Graph, start=None) -> tuple[str, SessionEntry]:
        report = self.certify(g)
        try:
            session = init_session(g, report, start=start, limits=self.limits)
        except VerdictMismatchError as exc:
            raise UncertifiableError(
                f"no certified strategy mode (verdict: {report.verdict})") from exc
        entry = SessionEntry(session=session, report=report,
                             lock=threading.Lock(), created=time.time())
        sid = uuid.uuid4().hex[:12]
        with self._lock:
            self._entries[sid] = entry
        return sid, entry

    def get(self, sid: str) -> SessionEntry | None:
        with self._lock:
            return self._entries.get(sid)

    def delete(self, sid: str) -> bool:
        with self._lock:
            return self._entries.pop(sid, None) is not None


def _graph_doc(g: Graph) -> dict:
    return {"vertices": list(g.labels),
            "edges": [[g.labels[u], g.labels[v]] for u, v in g.edges]}


def _session_summary(sid: str, entry: SessionEntry) -> dict:
    s = entry.session
    g = s.graph
    value = entry.report.evc_value()
    return {
        "id": sid,
        "mode": s.mode,
        "verdict": entry.report.verdict,
        "mvc": s.mvc,
        "evc_bound": [value, value],
        "cut_vertices": g.labels_of(s.cut_vertices),
        "config": g.labels_of(s.config),
        "round": s.round,
        "over": s.over,
        "graph": _graph_doc(g),
    }


class WorkbenchServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, limits: Limits, static_dir: Path | None):
        super().__init__(address, RequestHandler)
        self.store = SessionStore(limits)
        self.static_dir = static_dir


class RequestHandler(BaseHTTPRequestHandler):
    server: WorkbenchServer

    # -- helpers ------------------------------------------------------------

    def _send_json(self, code: int, doc: dict) -> None:
        body = json.dumps(doc).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError:
            return None
        return doc if isinstance(doc, dict) else None

    def log_message(self, fmt, *args):  # quieter default logging, stderr only
        import sys
        print(f"[serve] {self.address_string()} {fmt % args}", file=sys.stderr)

    # -- routing ------------------------------------------------------------

    def do_GET(self):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if parts[:2] == ["api", "builtins"]:
            self._send_json(200, {"builtins": sorted(gadgets.BUILTINS)})
            return
        if parts[:2] == ["api", "session"] and len(parts) == 3:
            entry = self.server.store.get(parts[2])
            if entry is None:
                self._send_json(404, {"error": "unknown session"})
                return
            doc = _session_summary(parts[2], entry)
            doc["log"] = [r.to_json_dict(entry.session.graph)
                          for r in entry.session.log]
            self._send_json(200, doc)
            return
        if parts[:1] == ["api"]:
            self._send_json(404, {"error": "unknown endpoint"})
            return
        self._serve_static(parts)

    def do_DELETE(self):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if parts[:2] == ["api", "session"] and len(parts) == 3:
            if self.server.store.delete(parts[2]):
                self._send_json(200, {"deleted": True})
            else:
                self._send_json(404, {"error": "unknown session"})
            return
        self._send_json(404, {"error": "unknown endpoint"})

    def do_POST(self):
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        if parts[:2] == ["api", "session"] and len(parts) == 2:
            self._create_session()
            return
        if (parts[:2] == ["api", "session"] and len(parts) == 4
                and parts[3] == "attack"):
            self._attack(parts[2])
            return
        self._send_json(404, {"error": "unknown endpoint"})

    # -- handlers -----------------------------------------------------------

    def _create_session(self):
        started = time.perf_counter()
        body = self._read_body()
        if body is None:
            self._send_json(400, {"error": "malformed JSON body"})
            return
        try:
            if "builtin" in body:
                name = body["builtin"]
                if name not in gadgets.BUILTINS:
                    self._send_json(400, {"error": f"unknown builtin {name!r}"})
                    return
                g = gadgets.BUILTINS[name]()
            elif "graph" in body or "edges" in body:
                doc = body.get("graph", body)
                g, _ = parse_json(json.dumps(doc))
            else:
                self._send_json(400, {"error": 'body needs "graph" or "builtin"'})
                return
            if not g.is_connected() or g.n < 2:
                self._send_json(422, {"error": "instance must be connected "
                                               "with at least two vertices"})
                return
            start = None
            if "start" in body:
                start = frozenset(g.id_of(lab) for lab in body["start"])
            sid, entry = self.server.store.create(g, start=start)
        except UncertifiableError as exc:
            self._send_json(422, {"error": str(exc)})
            return
        except SizeLimitError as exc:
            self._send_json(422, {"error": f"instance too large: {exc}"})
            return
        except (EvcError, KeyError, ValueError) as exc:
            self._send_json(400, {"error": str(exc)})
            return
        doc = _session_summary(sid, entry)
        doc["server_ms"] = round((time.perf_counter() - started) * 1000, 3)
        self._send_json(200, doc)

    def _attack(self, sid: str):
        started = time.perf_counter()
        entry = self.server.store.get(sid)
        if entry is None:
            self._send_json(404, {"error": "unknown session"})
            return
        body = self._read_body()
        if body is None or "edge" not in body or len(body["edge"]) != 2:
            self._send_json(400, {"error": 'body needs "edge": [u, v]'})
            return
        session = entry.session
        g = session.graph
        try:
            u, v = (g.id_of(lab) for lab in body["edge"])
        except KeyError as exc:
            self._send_json(400, {"error": str(exc)})
            return
        if not g.has_edge(u, v):
            self._send_json(409, {"error": f"{body['edge']} is not an edge"})
            return
        with entry.lock:
            if session.over:
                self._send_json(409, {"error": "session is over"})
                return
            before = session.config
            try:
                moves, config = defend(session, (u, v))
            except DefenseImpossibleError as exc:
                self._send_json(200, {
                    "defended": False,
                    "round": exc.round_number,
                    "attack": list(exc.attack or ()),
                    "error": exc.message,
                    "server_ms": round((time.perf_counter() - started) * 1000, 3),
                })
                return
            record = session.log[-1]
            if not verify_moveset(g, before, config, moves, record.attack):
                self._send_json(500, {"error": "move validation failed"})
                return
            doc = record.to_json_dict(g)
        doc["defended"] = True
        doc["mode"] = session.mode
        doc["server_ms"] = round((time.perf_counter() - started) * 1000, 3)
        self._send_json(200, doc)

    # -- static assets --------------------------------------------------------

    def _serve_static(self, parts: list[str]):
        root = self.server.static_dir
        if root is None:
            self._send_json(404, {"error": "no static assets configured"})
            return
        name = "/".join(parts) or "index.html"
        target = (root / name).resolve()
        if not str(target).startswith(str(root.resolve())) or not target.is_file():
            self._send_json(404, {"error": "not found"})
            return
        content_types = {".html": "text/html", ".js": "text/javascript",
                         ".mjs": "text/javascript", ".css": "text/css",
                         ".json": "application/json", ".svg": "image/svg+xml",
                         ".map": "application/json"}
        ctype = content_types.get(target.suffix, "application/octet-stream")
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(host: str, port: int, limits: Limits = DEFAULT_LIMITS,
                static_dir: str | None = None) -> WorkbenchServer:
    root = Path(static_dir) if static_dir else _default_static_dir()
    return WorkbenchServer((host, port), limits, root)


def _default_static_dir() -> Path | None:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def run_server(host: str, port: int, static_dir: str | None,
               limits: Limits = DEFAULT_LIMITS) -> None:
    import sys
    server = make_server(host, port, limits, static_dir)
    where = server.static_dir or "(none)"
    print(f"listening on http://{host}:{server.server_address[1]} "
          f"static={where}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
