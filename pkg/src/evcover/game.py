"""Exact eternal vertex cover via a greatest fixed point over configurations.

A configuration is the set of guarded vertices (one guard per vertex) and must
be a vertex cover at round boundaries. A round transition is legal when a
stay-or-move bijection exists between consecutive configurations, with at
least one guard crossing the attacked edge into its entered endpoint; legality
reduces to bipartite perfect matching.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .cover import DEFAULT_LIMITS, Limits, enumerate_covers, mvc_exact, mvc_forced
from .errors import ContractViolationError, SizeLimitError
from .graph import Graph
from .matching import is_perfect, maximum_matching

Configuration = frozenset[int]


@dataclass(frozen=True)
class MoveSet:
    """Per-guard movement plan for one round: (source, destination) pairs."""

    moves: tuple[tuple[int, int], ...]

    def mapping(self) -> dict[int, int]:
        return dict(self.moves)

    def destination(self) -> frozenset[int]:
        return frozenset(dst for _, dst in self.moves)


@dataclass(frozen=True)
class EvcResult:
    evc: int
    mvc: int
    safe_family: tuple[Configuration, ...]
    iterations: Mapping[int, int]


# ---------------------------------------------------------------------------
# Transition legality
# ---------------------------------------------------------------------------

def legal_transition(g: Graph, s: Iterable[int], t: Iterable[int],
                     attack: tuple[int, int] | None = None) -> MoveSet | None:
    """Witness move plan from configuration s to t, or None if illegal.

    `attack=(u, v)` requires the guard on u to cross to v (v is the entered
    endpoint). Legality is transition-only; whether t is a vertex cover is the
    caller's concern.
    """
    s_set = frozenset(s)
    t_set = frozenset(t)
    if len(s_set) != len(t_set):
        raise ValueError("configurations must have equal cardinality")
    forced: tuple[int, int] | None = None
    if attack is not None:
        u, v = attack
        if not g.has_edge(u, v):
            raise ValueError(f"attack ({u}, {v}) is not an edge")
        if u not in s_set or v not in t_set:
            return None
        forced = (u, v)

    # Every target vertex must be reachable from the sources and vice versa.
    s_mask = sum(1 << x for x in s_set)
    t_mask = sum(1 << x for x in t_set)
    reach_s = s_mask
    for x in s_set:
        reach_s |= g.adj_masks[x]
    if t_mask & ~reach_s:
        return None
    reach_t = t_mask
    for x in t_set:
        reach_t |= g.adj_masks[x]
    if s_mask & ~reach_t:
        return None

    lefts = sorted(s_set - {forced[0]}) if forced else sorted(s_set)
    rights = sorted(t_set - {forced[1]}) if forced else sorted(t_set)
    right_set = set(rights)
    adjacency = {
        x: tuple(y for y in rights if y == x or (y in right_set and g.has_edge(x, y)))
        for x in lefts
    }
    matching = maximum_matching(adjacency)
    if not is_perfect(adjacency, matching):
        return None
    moves = list(matching.items())
    if forced:
        moves.append(forced)
    return MoveSet(tuple(sorted(moves)))


def _defense_directions(s: Configuration, edge: tuple[int, int]) -> list[tuple[int, int]]:
    """Directed crossings that could defend an attack on `edge` from s."""
    a, b = edge
    dirs = []
    if a in s:
        dirs.append((a, b))
    if b in s:
        dirs.append((b, a))
    return dirs


# ---------------------------------------------------------------------------
# Greatest fixed point
# ---------------------------------------------------------------------------

def _fixed_point(g: Graph, k: int, containing: Configuration,
                 limits: Limits) -> tuple[list[Configuration], int]:
    if k < 0 or k > g.n:
        return [], 0  # one guard per vertex: no configurations of this size
    covers = [c for c in enumerate_covers(g, k, limits) if containing <= c]
    edges = g.edges
    options: dict[tuple[int, int, int], tuple[int, ...]] = {}

    def legal_targets(i: int, a: int, b: int) -> tuple[int, ...]:
        key = (i, a, b)
        cached = options.get(key)
        if cached is not None:
            return cached
        s = covers[i]
        found = []
        for j, t in enumerate(covers):
            for d in _defense_directions(s, (a, b)):
                if legal_transition(g, s, t, attack=d) is not None:
                    found.append(j)
                    break
        result = tuple(found)
        options[key] = result
        return result

    survivors = set(range(len(covers)))
    sweeps = 0
    while True:
        sweeps += 1
        doomed = []
        for i in sorted(survivors):
            for a, b in edges:
                if not any(j in survivors for j in legal_targets(i, a, b)):
                    doomed.append(i)
                    break
        if not doomed:
            break
        survivors.difference_update(doomed)
        if not survivors:
            break
    # covers are generated in lexicographic order, so index order is lex order
    family = [covers[i] for i in sorted(survivors)]
    return family, sweeps


def safe_family(g: Graph, k: int, containing: Iterable[int] = (),
                limits: Limits = DEFAULT_LIMITS) -> list[Configuration]:
    """Largest family of size-k covers closed under defending every attack."""
    family, _ = _fixed_point(g, k, frozenset(containing), limits)
    return family


def evc_exact(g: Graph, limits: Limits = DEFAULT_LIMITS) -> EvcResult:
    """Smallest k with a nonempty safe family, scanned from mvc upward."""
    mvc = mvc_exact(g, limits).size
    hi = min(2 * mvc, g.n - 1) if g.n > 1 else 0
    iterations: dict[int, int] = {}
    for k in range(mvc, hi + 1):
        family, sweeps = _fixed_point(g, k, frozenset(), limits)
        iterations[k] = sweeps
        if family:
            return EvcResult(evc=k, mvc=mvc, safe_family=tuple(family),
                             iterations=iterations)
    raise ContractViolationError(
        "no safe family found within the guaranteed search range")


def evc_forced_exact(g: Graph, forced: Iterable[int],
                     limits: Limits = DEFAULT_LIMITS) -> int:
    """Minimum guards keeping the forced set occupied in every configuration."""
    forced_set = frozenset(forced)
    lo = mvc_forced(g, forced_set, limits=limits).size
    for k in range(lo, g.n + 1):
        family, _ = _fixed_point(g, k, forced_set, limits)
        if family:
            return k
    raise ContractViolationError("forced fixed point empty even at k = n")


# ---------------------------------------------------------------------------
# Independent oracle
# ---------------------------------------------------------------------------

def minimax_oracle(g: Graph, k: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Depth-bounded alternating-turn search: can k guards defend forever?

    Enumerates covers by brute force and searches defender survival for as
    many rounds as there are covers; by pigeonhole that bounds the infinite
    game. Shares no fixed-point machinery with `safe_family`.
    """
    n = g.n
    if n > limits.enumeration_n:
        raise SizeLimitError(
            f"minimax oracle capped at n={limits.enumeration_n}, got n={n}")
    if k < 0 or k > n:
        return False
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    covers: list[Configuration] = []
    for combo in combinations(range(n), k):
        mask = sum(1 << x for x in combo)
        if all(mask & em for em in edge_masks):
            covers.append(frozenset(combo))
    if not covers:
        return False

    edges = g.edges
    responses: dict[tuple[int, int], tuple[int, ...]] = {}
    for i, s in enumerate(covers):
        for e_idx, edge in enumerate(edges):
            found = []
            for j, t in enumerate(covers):
                for d in _defense_directions(s, edge):
                    if legal_transition(g, s, t, attack=d) is not None:
                        found.append(j)
                        break
            responses[(i, e_idx)] = tuple(found)

    horizon = len(covers)
    if sys.getrecursionlimit() < 3 * horizon + 100:
        sys.setrecursionlimit(3 * horizon + 100)
    memo: dict[tuple[int, int], bool] = {}

    def survives(i: int, depth: int) -> bool:
        if depth == 0:
            return True
        key = (i, depth)
        cached = memo.get(key)
        if cached is not None:
            return cached
        ok = all(
            any(survives(j, depth - 1) for j in responses[(i, e_idx)])
            for e_idx in range(len(edges))
        )
        memo[key] = ok
        return ok

    return any(survives(i, horizon) for i in range(len(covers)))
