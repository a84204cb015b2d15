"""Minimum vertex cover computation: exact branch-and-bound, the polynomial
chordal path, forced-subset variants, and exhaustive cover enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from .errors import NonChordalError, SizeLimitError
from .graph import Graph, VertexSet, connected_within, is_chordal

SolveMethod = Literal["exact", "chordal", "auto"]


@dataclass(frozen=True)
class Limits:
    """Solver caps; exact algorithms refuse larger instances."""

    exact_n: int = 24
    enumeration_n: int = 16


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class CoverResult:
    size: int
    cover: VertexSet
    forced: VertexSet = frozenset()


# ---------------------------------------------------------------------------
# Exact solver
# ---------------------------------------------------------------------------

def _greedy_matching_bound(edges: tuple[tuple[int, int], ...], cover_mask: int) -> int:
    """Size of a greedy maximal matching among edges not touched by the cover."""
    used = 0
    count = 0
    for u, v in edges:
        bu, bv = 1 << u, 1 << v
        if cover_mask & (bu | bv):
            continue
        if used & (bu | bv):
            continue
        used |= bu | bv
        count += 1
    return count


def _mvc_size(g: Graph) -> int:
    """Optimal cover size by branching on the first uncovered edge."""
    edges = g.edges
    best = g.n

    def rec(cover_mask: int, count: int) -> None:
        nonlocal best
        first = None
        for u, v in edges:
            if not cover_mask & ((1 << u) | (1 << v)):
                first = (u, v)
                break
        if first is None:
            if count < best:
                best = count
            return
        bound = count + _greedy_matching_bound(edges, cover_mask)
        if bound >= best:
            return
        u, v = first
        rec(cover_mask | (1 << u), count + 1)
        rec(cover_mask | (1 << v), count + 1)

    rec(0, 0)
    return best


def _iter_covers(g: Graph, k: int) -> Iterator[frozenset[int]]:
    """Yield all vertex covers of size exactly k in lexicographic id order.

    Vertices are decided in ascending id order, include-branch first, which
    emits the sorted-tuple covers in lexicographic order directly.
    """
    n = g.n
    masks = g.adj_masks
    if k < 0 or k > n:
        return
    chosen: list[int] = []

    def rec(i: int, excluded: int, need: int) -> Iterator[frozenset[int]]:
        if need > n - i:
            return
        forced = sum(1 for j in range(i, n) if masks[j] & excluded)
        if forced > need:
            return
        if i == n:
            if need == 0:
                yield frozenset(chosen)
            return
        if need > 0:
            chosen.append(i)
            yield from rec(i + 1, excluded, need - 1)
            chosen.pop()
        if not masks[i] & excluded:
            yield from rec(i + 1, excluded | (1 << i), need)

    yield from rec(0, 0, k)


def mvc_exact(g: Graph, limits: Limits = DEFAULT_LIMITS) -> CoverResult:
    """Optimal vertex cover; witness is the lexicographically least optimum."""
    if g.n > limits.exact_n:
        raise SizeLimitError(f"exact solver capped at n={limits.exact_n}, got n={g.n}")
    size = _mvc_size(g)
    witness = next(_iter_covers(g, size))
    return CoverResult(size=size, cover=witness)


# ---------------------------------------------------------------------------
# Chordal solver
# ---------------------------------------------------------------------------

def mvc_chordal(g: Graph) -> CoverResult:
    """Minimum cover of a chordal graph: complement of the elimination-order
    greedy maximum independent set."""
    ok, peo = is_chordal(g)
    if not ok:
        raise NonChordalError("input graph is not chordal")
    marked: set[int] = set()
    independent: set[int] = set()
    for v in peo:
        if v in marked:
            continue
        independent.add(v)
        marked.update(g.adjacency[v])
    cover = frozenset(range(g.n)) - independent
    return CoverResult(size=len(cover), cover=cover)


# ---------------------------------------------------------------------------
# Forced subsets
# ---------------------------------------------------------------------------

def mvc_forced(g: Graph, forced: Iterable[int], method: SolveMethod = "exact",
               limits: Limits = DEFAULT_LIMITS) -> CoverResult:
    """Minimum cover containing `forced`: delete the forced set, solve the rest.

    `method="auto"` takes the chordal path when the remainder is chordal,
    otherwise exact; "chordal" insists and errors on non-chordal remainders.
    """
    forced_set = frozenset(forced)
    if not forced_set <= frozenset(range(g.n)):
        raise ValueError("forced set contains unknown vertex ids")
    rest_ids = [v for v in range(g.n) if v not in forced_set]
    sub = g.induced(rest_ids)
    if method == "auto":
        method = "chordal" if is_chordal(sub)[0] else "exact"
    if method == "chordal":
        sub_result = mvc_chordal(sub)
    else:
        sub_result = mvc_exact(sub, limits)
    back = {new: old for new, old in enumerate(rest_ids)}
    cover = forced_set | {back[v] for v in sub_result.cover}
    return CoverResult(size=len(forced_set) + sub_result.size, cover=cover,
                       forced=forced_set)


def has_min_cover_containing(g: Graph, forced: Iterable[int],
                             limits: Limits = DEFAULT_LIMITS,
                             mvc_size: int | None = None) -> bool:
    """True iff some minimum vertex cover contains the whole forced set."""
    if mvc_size is None:
        mvc_size = mvc_exact(g, limits).size
    return mvc_forced(g, forced, limits=limits).size == mvc_size


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_covers(g: Graph, k: int,
                     limits: Limits = DEFAULT_LIMITS) -> Iterator[frozenset[int]]:
    """Stream every vertex cover of size exactly k, lexicographically."""
    if g.n > limits.enumeration_n:
        raise SizeLimitError(
            f"cover enumeration capped at n={limits.enumeration_n}, got n={g.n}")
    if k > g.n:
        raise ValueError(f"cover size {k} exceeds vertex count {g.n}")
    return _iter_covers(g, k)


def all_forced_min_covers_connected(g: Graph, forced: Iterable[int],
                                    limits: Limits = DEFAULT_LIMITS) -> bool:
    """Exhaustively check that every minimum cover containing `forced` induces
    a connected subgraph."""
    forced_set = frozenset(forced)
    k = mvc_forced(g, forced_set, limits=limits).size
    for cover in enumerate_covers(g, k, limits):
        if forced_set <= cover and not connected_within(g, cover):
            return False
    return True
