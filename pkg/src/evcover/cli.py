"""Command-line interface: batch solvers, defense transcripts, gadget
emission, and the HTTP serve mode.

Exit codes: 0 success, 2 parse error, 3 solver size limit, 4 undetermined
verdict / uncertifiable instance, 5 defense impossible (round reported).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import gadgets
from .characterize import CharReport, class_membership, decide_evc_equals_mvc
from .cover import DEFAULT_LIMITS, Limits, mvc_chordal, mvc_exact, mvc_forced
from .defense import DefenseSession, defend, init_session
from .errors import (DefenseImpossibleError, EvcError, GraphParseError,
                     SizeLimitError, VerdictMismatchError)
from .game import evc_exact
from .graph import (Graph, PlanarEmbedding, cut_vertices_and_blocks, is_chordal,
                    parse_graph, parse_json, serialize_json)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_LIMIT = 3
EXIT_UNDETERMINED = 4
EXIT_DEFENSE_IMPOSSIBLE = 5


def load_limits(env: str | None = None) -> Limits:
    """Limits from the EVC_LIMITS variable, e.g. "exact=28,enum=18"."""
    spec = env if env is not None else os.environ.get("EVC_LIMITS", "")
    limits = DEFAULT_LIMITS
    if not spec:
        return limits
    exact_n, enum_n = limits.exact_n, limits.enumeration_n
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        if key == "exact":
            exact_n = int(value)
        elif key == "enum":
            enum_n = int(value)
        else:
            raise ValueError(f"unknown EVC_LIMITS key {key!r}")
    return Limits(exact_n=exact_n, enumeration_n=enum_n)


def read_graph(source: str) -> tuple[Graph, PlanarEmbedding | None]:
    """Read a graph from a file path, '-' for stdin, or 'builtin:<name>'."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        try:
            return gadgets.BUILTINS[name](), None
        except KeyError:
            raise GraphParseError(
                f"unknown builtin {name!r}; available: {', '.join(sorted(gadgets.BUILTINS))}")
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_graph(text), None


def _labels(g: Graph, ids) -> list[str]:
    return g.labels_of(ids)


def _emit(doc: dict) -> None:
    print(json.dumps(doc))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_mvc(args: argparse.Namespace, limits: Limits) -> int:
    g, _ = read_graph(args.input)
    if args.forced:
        forced = frozenset(g.id_of(lab) for lab in args.forced.split(","))
        method = "chordal" if args.chordal else "exact"
        result = mvc_forced(g, forced, method=method, limits=limits)
    elif args.chordal:
        result = mvc_chordal(g)
    else:
        result = mvc_exact(g, limits)
    _emit({"size": result.size, "cover": _labels(g, result.cover),
           "forced": _labels(g, result.forced)})
    return EXIT_OK


def _certify(g: Graph, args: argparse.Namespace, limits: Limits) -> CharReport:
    if getattr(args, "assume_class_f", False):
        evidence = class_membership(g, "assume", limits)
    else:
        evidence = class_membership(g, "sufficient", limits)
        if not evidence.established and getattr(args, "exhaustive_class_check", False):
            evidence = class_membership(g, "exhaustive", limits)
    return decide_evc_equals_mvc(g, evidence, limits)


def cmd_evc(args: argparse.Namespace, limits: Limits) -> int:
    g, _ = read_graph(args.input)
    mode = "exact" if args.exact else "char" if args.char else None
    if mode is None:
        biconnected_chordal = (is_chordal(g)[0] and g.is_connected()
                               and not cut_vertices_and_blocks(g).cut_vertices)
        mode = "char" if biconnected_chordal else "exact"
    if mode == "exact":
        result = evc_exact(g, limits)
        _emit({"evc": result.evc, "mvc": result.mvc,
               "iterations": {str(k): v for k, v in sorted(result.iterations.items())},
               "safe_family": [_labels(g, c) for c in result.safe_family]})
        return EXIT_OK
    report = _certify(g, args, limits)
    doc = report.to_json_dict(g)
    doc["evc"] = report.evc_value()
    _emit(doc)
    if report.verdict == "undetermined":
        print("verdict undetermined: no class membership evidence; "
              "rerun with --exhaustive-class-check, --assume-class-f, or --exact",
              file=sys.stderr)
        return EXIT_UNDETERMINED
    return EXIT_OK


def _parse_script(text: str, g: Graph) -> tuple[frozenset[int] | None,
                                                list[tuple[int, int]]]:
    start = None
    attacks: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "start":
            if attacks or start is not None:
                raise GraphParseError("start line must come first", lineno)
            start = frozenset(g.id_of(lab) for lab in parts[1:])
            continue
        if parts[0] == "attack":
            parts = parts[1:]
        if len(parts) != 2:
            raise GraphParseError("expected: attack <u> <v>", lineno)
        attacks.append((g.id_of(parts[0]), g.id_of(parts[1])))
    return start, attacks


def _play(session: DefenseSession, edge: tuple[int, int]) -> int:
    g = session.graph
    try:
        defend(session, edge)
    except DefenseImpossibleError as exc:
        _emit({"round": exc.round_number, "attack": list(exc.attack or ()),
               "defended": False, "error": exc.message})
        print(f"defense impossible at round {exc.round_number}", file=sys.stderr)
        return EXIT_DEFENSE_IMPOSSIBLE
    record = session.log[-1]
    _emit(record.to_json_dict(g) | {"defended": True})
    return EXIT_OK


def cmd_defend(args: argparse.Namespace, limits: Limits) -> int:
    g, _ = read_graph(args.input)
    report = _certify(g, args, limits)
    start, attacks = None, None
    if args.script:
        text = (sys.stdin.read() if args.script == "-"
                else Path(args.script).read_text())
        start, attacks = _parse_script(text, g)
    try:
        session = init_session(g, report, start=start, limits=limits)
    except VerdictMismatchError as exc:
        print(f"no certified strategy mode: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    print(f"mode={session.mode} mvc={session.mvc} "
          f"config={' '.join(_labels(g, session.config))}", file=sys.stderr)

    if attacks is not None:
        for edge in attacks:
            code = _play(session, edge)
            if code != EXIT_OK:
                return code
        return EXIT_OK

    if args.random_rounds is not None:
        rng = random.Random(args.seed)
        for _ in range(args.random_rounds):
            edge = g.edges[rng.randrange(len(g.edges))]
            code = _play(session, edge)
            if code != EXIT_OK:
                return code
        return EXIT_OK

    # interactive REPL
    print("enter attacks as: attack <u> <v> (or just '<u> <v>'; 'quit' ends)",
          file=sys.stderr)
    for raw in sys.stdin:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        parts = line.split()
        if parts and parts[0] == "attack":
            parts = parts[1:]
        if len(parts) != 2:
            print("expected: attack <u> <v>", file=sys.stderr)
            continue
        try:
            edge = (g.id_of(parts[0]), g.id_of(parts[1]))
        except KeyError as exc:
            print(str(exc), file=sys.stderr)
            continue
        if not g.has_edge(*edge):
            print(f"{parts[0]} {parts[1]} is not an edge", file=sys.stderr)
            continue
        code = _play(session, edge)
        if code != EXIT_OK:
            return code
    return EXIT_OK


def cmd_gadget(args: argparse.Namespace, limits: Limits) -> int:
    kind = args.kind
    if kind == "list":
        _emit({"builtins": sorted(gadgets.BUILTINS),
               "constructions": ["universal", "triangulate", "double"],
               "generators": ["path", "cycle", "complete", "random-chordal"]})
        return EXIT_OK
    if kind in gadgets.BUILTINS:
        print(serialize_json(gadgets.BUILTINS[kind]()), end="")
        return EXIT_OK
    if kind in ("path", "cycle", "complete"):
        g = getattr(gadgets, kind)(args.n)
        print(serialize_json(g), end="")
        return EXIT_OK
    if kind == "random-chordal":
        maker = (gadgets.random_biconnected_chordal if args.biconnected
                 else gadgets.random_connected_chordal)
        print(serialize_json(maker(args.n, args.density, args.seed)), end="")
        return EXIT_OK
    if kind == "universal":
        g, _ = read_graph(args.input)
        print(serialize_json(gadgets.add_universal_vertex(g).graph), end="")
        return EXIT_OK
    if kind == "triangulate":
        g, embedding = read_graph(args.input)
        if embedding is None:
            raise GraphParseError("triangulate needs a JSON input with faces")
        print(serialize_json(gadgets.triangulate_faces(g, embedding).graph), end="")
        return EXIT_OK
    if kind == "double":
        g, _ = read_graph(args.input)
        if not args.edge:
            raise GraphParseError("double needs --edge u,v")
        u, v = (g.id_of(x) for x in args.edge.split(","))
        print(serialize_json(gadgets.double_and_join(g, (u, v)).graph), end="")
        return EXIT_OK
    print(f"unknown gadget kind {kind!r}; try 'evc gadget list'", file=sys.stderr)
    return EXIT_PARSE


def cmd_serve(args: argparse.Namespace, limits: Limits) -> int:
    from .server import run_server
    run_server(args.host, args.port, args.static_dir, limits)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evc",
        description="Eternal vertex cover workbench: solvers, defense "
                    "strategies, gadgets, and an interactive play server.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mvc = sub.add_parser("mvc", help="minimum vertex cover")
    p_mvc.add_argument("input", help="edge-list/JSON file, '-', or builtin:<name>")
    p_mvc.add_argument("--chordal", action="store_true",
                       help="use the polynomial chordal solver")
    p_mvc.add_argument("--forced", default="",
                       help="comma-separated labels that must be covered")
    p_mvc.set_defaults(func=cmd_mvc)

    p_evc = sub.add_parser("evc", help="eternal vertex cover number")
    p_evc.add_argument("input")
    group = p_evc.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true",
                       help="exact game solver (desk scale)")
    group.add_argument("--char", action="store_true",
                       help="characterization decision procedure")
    p_evc.add_argument("--assume-class-f", action="store_true",
                       help="assert cover-connectivity membership")
    p_evc.add_argument("--exhaustive-class-check", action="store_true",
                       help="verify membership by exhaustive enumeration")
    p_evc.set_defaults(func=cmd_evc)

    p_def = sub.add_parser("defend", help="run the guard-movement engine")
    p_def.add_argument("input")
    mode = p_def.add_mutually_exclusive_group()
    mode.add_argument("--interactive", action="store_true")
    mode.add_argument("--random-rounds", type=int, default=None, metavar="R")
    mode.add_argument("--script", default=None, metavar="FILE",
                      help="optional 'start ...' line, then 'attack u v' lines")
    p_def.add_argument("--seed", type=int, default=0)
    p_def.add_argument("--assume-class-f", action="store_true")
    p_def.add_argument("--exhaustive-class-check", action="store_true")
    p_def.set_defaults(func=cmd_defend)

    p_gad = sub.add_parser("gadget", help="emit instances and constructions")
    p_gad.add_argument("kind", help="builtin name, generator, construction, or 'list'")
    p_gad.add_argument("input", nargs="?", default="-",
                       help="input graph for constructions")
    p_gad.add_argument("--n", type=int, default=5)
    p_gad.add_argument("--density", type=float, default=0.4)
    p_gad.add_argument("--seed", type=int, default=0)
    p_gad.add_argument("--biconnected", action="store_true")
    p_gad.add_argument("--edge", default="", help="u,v outer edge for 'double'")
    p_gad.set_defaults(func=cmd_gadget)

    p_srv = sub.add_parser("serve", help="HTTP/JSON play service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8350)
    p_srv.add_argument("--static-dir", default=None,
                       help="directory of built web client assets")
    p_srv.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limits = load_limits()
    except ValueError as exc:
        print(f"bad EVC_LIMITS: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, limits)
    except (GraphParseError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"size limit: {exc} (override with EVC_LIMITS)", file=sys.stderr)
        return EXIT_LIMIT
    except DefenseImpossibleError as exc:
        print(f"defense impossible: {exc}", file=sys.stderr)
        return EXIT_DEFENSE_IMPOSSIBLE
    except EvcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
