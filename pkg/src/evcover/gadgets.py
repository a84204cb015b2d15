"""Constructive gadgets, builtin instances, and seeded test-pool generators.

Each gadget reports how the minimum cover size of its output relates to the
input's, so the identities can be re-checked exactly at desk scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .errors import GadgetInputError, RejectionBudgetError
from .graph import (Graph, PlanarEmbedding, cut_vertices_and_blocks, is_chordal)


@dataclass(frozen=True)
class GadgetOutput:
    """Gadget result: the graph, its added vertices, and the size identity
    mvc(output) = mvc_coefficient * mvc(input) + mvc_offset."""

    graph: Graph
    new_vertices: frozenset[int]
    mvc_coefficient: int
    mvc_offset: int

    def expected_mvc(self, input_mvc: int) -> int:
        return self.mvc_coefficient * input_mvc + self.mvc_offset


def _fresh(base: str, used: set[str]) -> str:
    label = base
    while label in used:
        label += "'"
    used.add(label)
    return label


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def add_universal_vertex(g: Graph) -> GadgetOutput:
    """Join one new vertex to every existing vertex; output is locally
    connected and its minimum cover grows by exactly one."""
    if g.n < 1:
        raise GadgetInputError("need at least one vertex")
    used = set(g.labels)
    hub = _fresh("hub", used)
    edges = [(g.labels[u], g.labels[v]) for u, v in g.edges]
    edges += [(hub, lab) for lab in g.labels]
    out = Graph.build(used, edges)
    return GadgetOutput(out, frozenset({out.id_of(hub)}),
                        mvc_coefficient=1, mvc_offset=1)


def _fan_indices(t: int) -> tuple[int, int]:
    """Arc split points (1-based, in [2, t]) for the four-vertex face gadget."""
    i = max(2, math.ceil(t / 3))
    j = max(i + 1, math.ceil(2 * t / 3))
    return i, j


def _face_gadget_edges(boundary: list[str], names: tuple[str, str, str, str]
                       ) -> list[tuple[str, str]]:
    """Fan three new vertices over the boundary arcs; they form a triangle
    with the fourth as its apex, so the gadget itself is a K4 and every face
    it creates is a triangle."""
    t = len(boundary)
    f1, f2, f3, f4 = names
    i, j = _fan_indices(t)
    edges = [(f1, boundary[p]) for p in range(0, i)]            # u_1 .. u_i
    edges += [(f2, boundary[p]) for p in range(i - 1, j)]       # u_i .. u_j
    edges += [(f3, boundary[p]) for p in range(j - 1, t)]       # u_j .. u_t
    edges.append((f3, boundary[0]))
    edges += [(f1, f2), (f2, f3), (f1, f3)]
    edges += [(f4, f1), (f4, f2), (f4, f3)]
    return edges


def triangulate_faces(g: Graph, embedding: PlanarEmbedding) -> GadgetOutput:
    """Triangulate each internal face of more than three vertices with the
    four-vertex fan gadget; adds three to the minimum cover per face."""
    if cut_vertices_and_blocks(g).cut_vertices:
        raise GadgetInputError("face triangulation requires a biconnected graph")
    used = set(g.labels)
    edges = [(g.labels[u], g.labels[v]) for u, v in g.edges]
    new_labels: list[str] = []
    processed = 0
    for cycle in embedding.internal_faces:
        t = len(cycle)
        if len(set(cycle)) != t:
            raise GadgetInputError("face boundary must be a simple cycle")
        for p in range(t):
            if not g.has_edge(cycle[p], cycle[(p + 1) % t]):
                raise GadgetInputError("face boundary walk leaves the graph")
        if t <= 3:
            continue
        names = tuple(_fresh(f"f{processed}{c}", used) for c in "abcd")
        new_labels.extend(names)
        edges += _face_gadget_edges([g.labels[v] for v in cycle], names)
        processed += 1
    out = Graph.build(used, edges)
    return GadgetOutput(out, frozenset(out.id_of(lab) for lab in new_labels),
                        mvc_coefficient=1, mvc_offset=3 * processed)


def double_and_join(g: Graph, outer_edge: tuple[int, int]) -> GadgetOutput:
    """Two copies cross-linked along an outer edge, the resulting quadrilateral
    filled with the four-vertex gadget; doubles the cover size plus three."""
    u, v = outer_edge
    if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
        raise GadgetInputError("chosen outer edge is not an edge of the graph")
    copy1 = {lab: f"{lab}.1" for lab in g.labels}
    copy2 = {lab: f"{lab}.2" for lab in g.labels}
    used = set(copy1.values()) | set(copy2.values())
    edges: list[tuple[str, str]] = []
    for a, b in g.edges:
        edges.append((copy1[g.labels[a]], copy1[g.labels[b]]))
        edges.append((copy2[g.labels[a]], copy2[g.labels[b]]))
    u1, v1 = copy1[g.labels[u]], copy1[g.labels[v]]
    u2, v2 = copy2[g.labels[u]], copy2[g.labels[v]]
    edges += [(u1, v2), (v1, u2)]
    names = tuple(_fresh(c, used) for c in ("p", "q", "r", "s"))
    edges += _face_gadget_edges([u1, v1, u2, v2], names)
    out = Graph.build(used, edges)
    return GadgetOutput(out, frozenset(out.id_of(lab) for lab in names),
                        mvc_coefficient=2, mvc_offset=3)


def twin_k23_instance() -> Graph:
    """Biconnected bipartite planar graph on which the per-vertex minimum-cover
    condition holds yet the eternal cover number still exceeds the plain one.

    Two complete bipartite K_{2,3} pieces tied together by the edges x1-y1,
    x4-y4 and x5-y5.
    """
    edges = [(f"x{i}", f"y{j}") for i in (1, 2, 3) for j in (4, 5)]
    edges += [(f"x{i}", f"y{j}") for i in (4, 5) for j in (1, 2, 3)]
    edges += [("x1", "y1"), ("x4", "y4"), ("x5", "y5")]
    labels = [f"x{i}" for i in range(1, 6)] + [f"y{i}" for i in range(1, 6)]
    return Graph.build(labels, edges)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _vertex_labels(n: int) -> list[str]:
    width = len(str(n - 1)) if n > 1 else 1
    return [f"v{i:0{width}d}" for i in range(n)]


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    labels = _vertex_labels(n)
    return Graph.build(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    labels = _vertex_labels(n)
    return Graph.build(labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    labels = _vertex_labels(n)
    return Graph.build(labels, [(labels[i], labels[j])
                                for i in range(n) for j in range(i + 1, n)])


def _grow_chordal(n: int, density: float, rng: random.Random,
                  min_anchors: int) -> Graph:
    """Clique-growth chordal generator: each new vertex attaches to a random
    sub-clique of an existing clique."""
    start = min(n, max(min_anchors, 1) + 1)
    cliques: list[list[int]] = [list(range(start))]
    edges = [(i, j) for i in range(start) for j in range(i + 1, start)]
    for i in range(start, n):
        clique = cliques[rng.randrange(len(cliques))]
        picks = sum(1 for _ in clique if rng.random() < density)
        m = min(len(clique), max(min_anchors, picks, 1))
        anchors = sorted(rng.sample(sorted(clique), m))
        edges += [(a, i) for a in anchors]
        cliques.append(anchors + [i])
    labels = _vertex_labels(n)
    return Graph.build(labels, [(labels[a], labels[b]) for a, b in edges])


def random_connected_chordal(n: int, density: float, seed: int) -> Graph:
    """Seed-deterministic connected chordal graph, certified after the fact."""
    if n < 1:
        raise ValueError("need n >= 1")
    g = _grow_chordal(n, density, random.Random(seed), min_anchors=1)
    if not is_chordal(g)[0] or not g.is_connected():
        raise RejectionBudgetError("chordal growth produced an invalid graph")
    return g


def random_biconnected_chordal(n: int, density: float, seed: int,
                               budget: int = 200) -> Graph:
    """Seed-deterministic biconnected chordal graph (rejection sampled)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        return path(2)
    for attempt in range(budget):
        rng = random.Random(seed * 1_000_003 + attempt)
        g = _grow_chordal(n, density, rng, min_anchors=2)
        if is_chordal(g)[0] and not cut_vertices_and_blocks(g).cut_vertices:
            return g
    raise RejectionBudgetError(
        f"no biconnected chordal graph within {budget} attempts")


# ---------------------------------------------------------------------------
# Builtin instances
# ---------------------------------------------------------------------------

def two_triangles_shared_edge() -> Graph:
    return Graph.build("abcd", [("a", "b"), ("a", "c"), ("b", "c"),
                                ("a", "d"), ("b", "d")])


def two_triangles_shared_vertex() -> Graph:
    return Graph.build("abcde", [("a", "b"), ("a", "c"), ("b", "c"),
                                 ("c", "d"), ("c", "e"), ("d", "e")])


BUILTINS: dict[str, Callable[[], Graph]] = {
    "k3": lambda: complete(3),
    "k4": lambda: complete(4),
    "k5": lambda: complete(5),
    "p3": lambda: path(3),
    "p4": lambda: path(4),
    "p5": lambda: path(5),
    "c4": lambda: cycle(4),
    "c5": lambda: cycle(5),
    "c6": lambda: cycle(6),
    "c7": lambda: cycle(7),
    "two-triangles": two_triangles_shared_edge,
    "two-triangles-vertex": two_triangles_shared_vertex,
    "twin-k23": twin_k23_instance,
}
