"""Per-round guard movement strategies.

Two certified modes:

* ``hall-equal`` keeps a minimum cover containing all cut vertices, repairing
  candidate configurations through Hall-violator surgery until every guarded
  vertex slated to move has a perfect matching to its replacement, then emits
  either a direct matching step or a path shift feeding the attacked endpoint.
* ``connected-plus-one`` pins a connected minimum cover and walks one spare
  guard along it, so the cover itself is never vacated.

Both emit parallel stay-or-move bijections that an independent validator
re-checks before a round commits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .characterize import CharReport
from .cover import DEFAULT_LIMITS, Limits, mvc_exact, mvc_forced
from .errors import (ContractViolationError, DefenseImpossibleError,
                     VerdictMismatchError)
from .game import Configuration, MoveSet
from .graph import Graph, connected_within, is_vertex_cover
from .matching import deficiency_set, maximum_matching

Mode = Literal["hall-equal", "connected-plus-one"]


@dataclass(frozen=True)
class RefinementTrace:
    """Record of candidate repairs: (candidate, violator, deficient set)."""

    iterations: tuple[tuple[Configuration, int, frozenset[int]], ...]
    final: Configuration


@dataclass(frozen=True)
class RoundRecord:
    round_number: int
    attack: tuple[int, int]
    moves: MoveSet
    config: Configuration

    def to_json_dict(self, g: Graph) -> dict:
        return {
            "round": self.round_number,
            "attack": [g.labels[self.attack[0]], g.labels[self.attack[1]]],
            "moves": [[g.labels[a], g.labels[b]] for a, b in self.moves.moves],
            "config": g.labels_of(self.config),
        }


@dataclass
class DefenseSession:
    """Live game state for one defended instance."""

    graph: Graph
    mode: Mode
    cut_vertices: frozenset[int]
    config: Configuration
    mvc: int
    limits: Limits = DEFAULT_LIMITS
    base_cover: frozenset[int] | None = None
    extra_vertex: int | None = None
    round: int = 0
    log: list[RoundRecord] = field(default_factory=list)
    max_refinement_iterations: int = 0
    over: bool = False


def init_session(g: Graph, report: CharReport,
                 start: Iterable[int] | None = None,
                 limits: Limits = DEFAULT_LIMITS) -> DefenseSession:
    """Open a session in the mode matching the characterization verdict.

    `start` optionally overrides the deterministic opening configuration; the
    defender may pick any legal one.
    """
    if report.verdict == "evc-equals-mvc":
        cut = report.cut_vertices
        if start is not None:
            config = frozenset(start)
            if (len(config) != report.mvc or not cut <= config
                    or not is_vertex_cover(g, config)):
                raise ValueError(
                    "start must be a minimum cover containing every cut vertex")
        else:
            config = mvc_forced(g, cut, limits=limits).cover
        return DefenseSession(graph=g, mode="hall-equal", cut_vertices=cut,
                              config=config, mvc=report.mvc, limits=limits)

    if report.verdict == "evc-equals-mvc-plus-1":
        if report.cut_vertices:
            raise VerdictMismatchError(
                "plus-one mode requires a biconnected instance")
        if start is not None:
            config = frozenset(start)
            base, extra = _split_plus_one_start(g, config, report.mvc)
        else:
            base = mvc_exact(g, limits).cover
            if not connected_within(g, base):
                raise ContractViolationError(
                    "certified instance produced a disconnected minimum cover")
            extra = min(v for v in range(g.n) if v not in base)
            config = base | {extra}
        return DefenseSession(graph=g, mode="connected-plus-one",
                              cut_vertices=frozenset(), config=config,
                              mvc=report.mvc, limits=limits,
                              base_cover=base, extra_vertex=extra)

    raise VerdictMismatchError(
        f"no defense strategy for verdict {report.verdict!r}")


def _split_plus_one_start(g: Graph, config: Configuration,
                          mvc: int) -> tuple[frozenset[int], int]:
    if len(config) != mvc + 1:
        raise ValueError("start must have exactly one guard beyond a minimum cover")
    for z in sorted(config):
        base = config - {z}
        if is_vertex_cover(g, base) and connected_within(g, base):
            return base, z
    raise ValueError("start minus one vertex is never a connected minimum cover")


# ---------------------------------------------------------------------------
# Candidate refinement (Hall-violator surgery)
# ---------------------------------------------------------------------------

def _departure_matching(g: Graph, incoming: list[int], outgoing: list[int]
                        ) -> tuple[dict[int, int], dict[int, tuple[int, ...]]]:
    """Maximum matching from incoming (new cover side) to outgoing guards."""
    adjacency = {b: tuple(a for a in outgoing if g.has_edge(b, a)) for b in incoming}
    return maximum_matching(adjacency), adjacency


def refine_candidate(g: Graph, s_i: Configuration, s_prime: Configuration,
                     v: int, forced_set: frozenset[int]) -> RefinementTrace:
    """Repair a candidate next cover until every departing guard is matchable.

    Ends with a candidate S_j such that for every x in s_i \\ S_j the bipartite
    graph between the incoming side (minus v) and the outgoing side (minus x)
    has a perfect matching; each repair strictly shrinks the symmetric
    difference with s_i, so the loop finishes in fewer than n iterations.
    """
    if v not in s_prime or v in s_i:
        raise ContractViolationError("v must lie in the candidate but not the source")
    if not forced_set <= s_i or not forced_set <= s_prime:
        raise ContractViolationError("forced set must sit inside both covers")
    k = len(s_i)
    iterations: list[tuple[Configuration, int, frozenset[int]]] = []
    current = s_prime
    while True:
        out_side = sorted(s_i - current)
        in_side = sorted(current - s_i)
        common = s_i & current
        violator = None
        viol_matching: dict[int, int] = {}
        viol_adjacency: dict[int, tuple[int, ...]] = {}
        for x in out_side:
            incoming = [b for b in in_side if b != v]
            outgoing = [a for a in out_side if a != x]
            matching, adjacency = _departure_matching(g, incoming, outgoing)
            if len(matching) < len(incoming):
                violator = x
                viol_matching = matching
                viol_adjacency = adjacency
                break
        if violator is None:
            return RefinementTrace(tuple(iterations), current)

        unmatched = min(b for b in viol_adjacency if b not in viol_matching)
        deficient, neighborhood = deficiency_set(viol_adjacency, viol_matching,
                                                 unmatched)
        repaired = (frozenset(common) | {violator}
                    | (frozenset(in_side) - deficient) | frozenset(neighborhood))
        if (len(repaired) != k or not is_vertex_cover(g, repaired)
                or not (forced_set | {v}) <= repaired):
            raise ContractViolationError("refinement produced an invalid cover")
        if len(s_i ^ repaired) >= len(s_i ^ current):
            raise ContractViolationError(
                "refinement symmetric difference failed to decrease")
        iterations.append((current, violator, frozenset(deficient)))
        if len(iterations) >= g.n:
            raise ContractViolationError("refinement exceeded its iteration bound")
        current = repaired


# ---------------------------------------------------------------------------
# Move generation
# ---------------------------------------------------------------------------

def _swap_moves(s: Configuration, u: int, v: int) -> MoveSet:
    moves = [(u, v), (v, u)] + [(w, w) for w in s if w not in (u, v)]
    return MoveSet(tuple(sorted(moves)))


def _shortest_path_into(g: Graph, target: int, interior: frozenset[int],
                        sources: frozenset[int]) -> list[int] | None:
    """Shortest path from some source vertex to `target` through `interior`.

    Returns [source, ..., target]; BFS runs backwards from the target and
    expands neighbors in ascending id order.
    """
    parent: dict[int, int] = {target: -1}
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for x in g.adjacency[w]:
            if x in parent:
                continue
            if x in sources:
                path = [x, w]
                while parent[w] != -1:
                    w = parent[w]
                    path.append(w)
                return path
            if x in interior:
                parent[x] = w
                queue.append(x)
    return None


def moves_hall_equal(g: Graph, s_i: Configuration, s_j: Configuration,
                     attack: tuple[int, int]) -> MoveSet:
    """Moves realizing s_i -> s_j while crossing the attacked edge.

    The guard on the attacked endpoint either departs with the rest of the
    outgoing side along a perfect matching, or sits in the retained part and
    is replaced through a shortest shift path from the outgoing side.
    """
    u, v = attack
    if u not in s_i or v in s_i or v not in s_j:
        raise ContractViolationError("attack endpoints do not fit the transition")
    out_side = s_i - s_j
    in_side = s_j - s_i
    retained = s_i & s_j

    if u in out_side:
        matching, adjacency = _departure_matching(
            g, sorted(in_side - {v}), sorted(out_side - {u}))
        if len(matching) < len(adjacency):
            raise ContractViolationError(
                "refined candidate lost its matching guarantee")
        moves = [(u, v)] + [(a, b) for b, a in matching.items()]
        moves += [(w, w) for w in retained]
        return MoveSet(tuple(sorted(moves)))

    # u is retained: replace its guard along a path from the outgoing side
    path = _shortest_path_into(g, u, retained, out_side)
    if path is None:
        raise DefenseImpossibleError(
            "attacked endpoint cannot be refilled from the departing side "
            "within the current cover")
    x = path[0]
    matching, adjacency = _departure_matching(
        g, sorted(in_side - {v}), sorted(out_side - {x}))
    if len(matching) < len(adjacency):
        raise ContractViolationError(
            "refined candidate lost its matching guarantee")
    moves = [(u, v)]
    moves += [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    moves += [(a, b) for b, a in matching.items()]
    on_path = set(path)
    moves += [(w, w) for w in retained if w not in on_path]
    return MoveSet(tuple(sorted(moves)))


def moves_plus_one(session: DefenseSession, attack: tuple[int, int]) -> MoveSet:
    """Moves for the pinned-cover strategy; the spare guard feeds the attack."""
    g = session.graph
    base = session.base_cover
    assert base is not None and session.extra_vertex is not None
    config = session.config
    u, v = attack
    if u in config and v in config:
        return _swap_moves(config, u, v)
    if u not in config:
        raise ContractViolationError("attack must start on a guarded endpoint")
    if u == session.extra_vertex:
        moves = [(u, v)] + [(w, w) for w in config if w != u]
        return MoveSet(tuple(sorted(moves)))
    if not connected_within(g, base):
        raise ContractViolationError("pinned cover is not connected")
    path = _shortest_path_into(g, u, base - {u},
                               frozenset({session.extra_vertex}))
    if path is None:
        raise ContractViolationError("spare guard cannot reach the attacked endpoint")
    moves = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    moves.append((u, v))
    on_path = set(path)
    moves += [(w, w) for w in config if w not in on_path]
    return MoveSet(tuple(sorted(moves)))


# ---------------------------------------------------------------------------
# Independent validation
# ---------------------------------------------------------------------------

def verify_moveset(g: Graph, s: Iterable[int], t: Iterable[int],
                   moves: MoveSet, attack: tuple[int, int] | None = None) -> bool:
    """Validate a move plan from first principles; shares no generator code.

    Checks the plan is a bijection from s onto t, each step stays or crosses
    one edge, the attacked edge is traversed in the attacked direction, and
    the destination is a vertex cover.
    """
    s_set, t_set = set(s), set(t)
    pairs = list(moves.moves)
    sources = [a for a, _ in pairs]
    dests = [b for _, b in pairs]
    if len(sources) != len(set(sources)) or set(sources) != s_set:
        return False
    if len(dests) != len(set(dests)) or set(dests) != t_set:
        return False
    for a, b in pairs:
        if a != b and not g.has_edge(a, b):
            return False
    if attack is not None and tuple(attack) not in pairs:
        return False
    return is_vertex_cover(g, t_set)


# ---------------------------------------------------------------------------
# Round driver
# ---------------------------------------------------------------------------

def defend(session: DefenseSession, edge: tuple[int, int]
           ) -> tuple[MoveSet, Configuration]:
    """Defend one attack, committing the round to the session log."""
    a, b = edge
    if not session.graph.has_edge(a, b):
        raise ValueError(f"attack ({a}, {b}) is not an edge")
    if session.over:
        raise DefenseImpossibleError("session already lost",
                                     round_number=session.round)
    failing_round = session.round + 1
    try:
        moves = _plan_round(session, a, b)
    except DefenseImpossibleError as exc:
        session.over = True
        raise DefenseImpossibleError(
            exc.message, round_number=failing_round,
            attack=(session.graph.labels[a], session.graph.labels[b])) from exc

    new_config = moves.destination()
    crossing = _crossing_direction(session.graph, moves, (a, b))
    if crossing is None or not verify_moveset(session.graph, session.config,
                                              new_config, moves, crossing):
        raise ContractViolationError("generated moves failed validation")
    _check_round_invariants(session, new_config)
    session.round = failing_round
    session.config = new_config
    if session.mode == "connected-plus-one":
        extras = new_config - (session.base_cover or frozenset())
        session.extra_vertex = next(iter(extras))
    session.log.append(RoundRecord(session.round, crossing, moves, new_config))
    return moves, new_config


def _crossing_direction(g: Graph, moves: MoveSet,
                        edge: tuple[int, int]) -> tuple[int, int] | None:
    a, b = edge
    if (a, b) in moves.moves:
        return (a, b)
    if (b, a) in moves.moves:
        return (b, a)
    return None


def _plan_round(session: DefenseSession, a: int, b: int) -> MoveSet:
    g = session.graph
    s = session.config
    if a in s and b in s:
        return _swap_moves(s, a, b)
    if a in s:
        u, v = a, b
    elif b in s:
        u, v = b, a
    else:
        raise ContractViolationError("current configuration is not a cover")

    if session.mode == "connected-plus-one":
        return moves_plus_one(session, (u, v))

    candidate = mvc_forced(g, session.cut_vertices | {v}, limits=session.limits)
    if candidate.size != session.mvc:
        raise DefenseImpossibleError(
            "no minimum cover keeps the cut vertices and the entered endpoint")
    trace = refine_candidate(g, s, candidate.cover, v, session.cut_vertices)
    session.max_refinement_iterations = max(session.max_refinement_iterations,
                                            len(trace.iterations))
    return moves_hall_equal(g, s, trace.final, (u, v))


def _check_round_invariants(session: DefenseSession,
                            config: Configuration) -> None:
    g = session.graph
    if session.mode == "hall-equal":
        ok = (len(config) == session.mvc and is_vertex_cover(g, config)
              and session.cut_vertices <= config)
    else:
        base = session.base_cover or frozenset()
        extras = config - base
        ok = (len(config) == session.mvc + 1 and base <= config
              and len(extras) == 1 and is_vertex_cover(g, config))
    if not ok:
        raise ContractViolationError("round invariant violated by new configuration")
