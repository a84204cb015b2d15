"""Bipartite maximum matching and deficiency-set extraction.

Small augmenting-path matcher; instances here never exceed a few dozen
vertices per side, so asymptotics are irrelevant next to determinism.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence

Left = Hashable
Right = Hashable


def maximum_matching(adjacency: Mapping[Left, Sequence[Right]]) -> dict[Left, Right]:
    """Maximum matching of a bipartite graph given as left -> right adjacency.

    Left vertices are processed in sorted order and neighbor lists in given
    order, so the result is deterministic.
    """
    match_left: dict[Left, Right] = {}
    match_right: dict[Right, Left] = {}

    def try_augment(u: Left, visited: set[Right]) -> bool:
        for r in adjacency[u]:
            if r in visited:
                continue
            visited.add(r)
            owner = match_right.get(r)
            if owner is None or try_augment(owner, visited):
                match_left[u] = r
                match_right[r] = u
                return True
        return False

    for u in sorted(adjacency):
        if u not in match_left:
            try_augment(u, set())
    return match_left


def is_perfect(adjacency: Mapping[Left, Sequence[Right]],
               matching: dict[Left, Right]) -> bool:
    """True iff the matching saturates every left vertex."""
    return len(matching) == len(adjacency)


def deficiency_set(adjacency: Mapping[Left, Sequence[Right]],
                   matching: dict[Left, Right],
                   start: Left) -> tuple[set[Left], set[Right]]:
    """Left vertices reachable from an unmatched `start` by alternating paths.

    Returns (reached_left, reached_right); for a maximum matching the reached
    left set B' satisfies |B'| = |N(B')| + 1, witnessing the Hall violation.
    """
    match_right = {r: l for l, r in matching.items()}
    reached_left: set[Left] = {start}
    reached_right: set[Right] = set()
    queue: deque[Left] = deque([start])
    while queue:
        u = queue.popleft()
        for r in adjacency[u]:
            if r in reached_right:
                continue
            reached_right.add(r)
            owner = match_right.get(r)
            if owner is not None and owner not in reached_left:
                reached_left.add(owner)
                queue.append(owner)
    return reached_left, reached_right
