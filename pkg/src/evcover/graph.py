"""Labeled undirected simple graphs and the structural predicates the solvers rely on.

Vertices carry string labels; internal ids are the ranks of the labels under
lexicographic order, so identical inputs always produce identical ids and all
set-valued outputs can be emitted sorted.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Literal

from .errors import DisconnectedGraphError, GraphParseError

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with label-rank vertex ids."""

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(labels: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        """Construct a canonical graph from labels and label-pair edges."""
        label_list = sorted(set(labels))
        index = {lab: i for i, lab in enumerate(label_list)}
        nbrs: list[set[int]] = [set() for _ in label_list]
        for a, b in edges:
            if a == b:
                raise GraphParseError(f"self-loop at {a!r}")
            try:
                u, v = index[a], index[b]
            except KeyError as exc:
                raise GraphParseError(f"edge endpoint {exc.args[0]!r} is not a declared vertex")
            if v in nbrs[u]:
                raise GraphParseError(f"duplicate edge {a!r} {b!r}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(tuple(label_list), tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in row) for row in self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def id_of(self, label: str) -> int:
        i = self._label_index.get(label)
        if i is None:
            raise KeyError(f"unknown vertex label {label!r}")
        return i

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def labels_of(self, ids: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(ids)]

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph; kept labels preserve their relative id order."""
        kept = sorted(set(keep))
        remap = {old: new for new, old in enumerate(kept)}
        labels = tuple(self.labels[i] for i in kept)
        adjacency = tuple(
            tuple(remap[w] for w in self.adjacency[v] if w in remap) for v in kept
        )
        return Graph(labels, adjacency)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_component_of(self, 0, set(range(self.n)))) == self.n


def _component_of(g: Graph, start: int, allowed: set[int]) -> set[int]:
    """Vertices of `allowed` reachable from `start` inside g[allowed]."""
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def connected_within(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff the induced subgraph on `vertices` is connected and nonempty."""
    verts = set(vertices)
    if not verts:
        return False
    start = next(iter(verts))
    return len(_component_of(g, start, verts)) == len(verts)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

GraphFormat = Literal["edge-list", "json"]


@dataclass(frozen=True)
class PlanarEmbedding:
    """Face structure of a plane drawing: boundary cycles by vertex id.

    Cycles are given without repeating the first vertex at the end.
    """

    internal_faces: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...]


def parse_graph(text: str, fmt: GraphFormat = "edge-list") -> Graph:
    """Parse a graph from edge-list or JSON text."""
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "json":
        graph, _ = parse_json(text)
        return graph
    raise ValueError(f"unknown graph format {fmt!r}")


def _parse_edge_list(text: str) -> Graph:
    edges: list[tuple[str, str]] = []
    labels: set[str] = set()
    seen: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(
                f"expected two whitespace-separated labels, got {len(parts)}", lineno)
        a, b = parts
        if a == b:
            raise GraphParseError(f"self-loop at {a!r}", lineno)
        key = frozenset((a, b))
        if key in seen:
            raise GraphParseError(f"duplicate edge {a!r} {b!r}", lineno)
        seen.add(key)
        labels.update((a, b))
        edges.append((a, b))
    return Graph.build(labels, edges)


def parse_json(text: str) -> tuple[Graph, PlanarEmbedding | None]:
    """Parse the JSON graph format; returns the graph and optional face data."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphParseError("JSON graph must be an object")
    vertices = doc.get("vertices")
    edges = doc.get("edges", [])
    if vertices is None:
        vertices = sorted({str(x) for pair in edges for x in pair})
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphParseError('"vertices" must be a list of strings')
    if len(set(vertices)) != len(vertices):
        raise GraphParseError("duplicate vertex label")
    if not isinstance(edges, list):
        raise GraphParseError('"edges" must be a list of pairs')
    pairs: list[tuple[str, str]] = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphParseError(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    graph = Graph.build(vertices, pairs)

    faces = doc.get("faces")
    if faces is None:
        return graph, None
    if not isinstance(faces, dict) or "internal" not in faces or "outer" not in faces:
        raise GraphParseError('"faces" must carry "internal" and "outer" cycles')

    def cycle_ids(cycle: list[str]) -> tuple[int, ...]:
        ids = tuple(graph.id_of(lab) for lab in cycle)
        for i, u in enumerate(ids):
            v = ids[(i + 1) % len(ids)]
            if not graph.has_edge(u, v):
                raise GraphParseError(
                    f"face boundary step {graph.labels[u]!r}-{graph.labels[v]!r} is not an edge")
        return ids

    embedding = PlanarEmbedding(
        internal_faces=tuple(cycle_ids(c) for c in faces["internal"]),
        outer_face=cycle_ids(faces["outer"]),
    )
    return graph, embedding


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_json(g: Graph, embedding: PlanarEmbedding | None = None) -> str:
    doc: dict = {
        "vertices": list(g.labels),
        "edges": [[g.labels[u], g.labels[v]] for u, v in g.edges],
    }
    if embedding is not None:
        doc["faces"] = {
            "internal": [[g.labels[v] for v in cyc] for cyc in embedding.internal_faces],
            "outer": [g.labels[v] for v in embedding.outer_face],
        }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Cut vertices and blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    """Articulation points plus blocks (maximal biconnected pieces or bridges)."""

    cut_vertices: VertexSet
    blocks: tuple[VertexSet, ...] = field(default=())


def cut_vertices_and_blocks(g: Graph) -> BlockDecomposition:
    """DFS low-link decomposition into blocks; requires a connected graph."""
    if not g.is_connected():
        raise DisconnectedGraphError("block decomposition requires a connected graph")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        # iterative DFS: (vertex, parent, iterator index into adjacency)
        stack = [(root, -1, 0)]
        root_children = 0
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, idx = stack[-1]
            if idx < len(g.adjacency[v]):
                stack[-1] = (v, parent, idx + 1)
                w = g.adjacency[v][idx]
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, 0))
                    if v == root:
                        root_children += 1
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    # u separates the subtree through v: pop one block
                    members: set[int] = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        members.update((a, b))
                        if (a, b) == (u, v):
                            break
                    if members:
                        blocks.append(frozenset(members))
                    if u != root or root_children > 1:
                        cut.add(u)
    blocks.sort(key=lambda b: tuple(sorted(b)))
    return BlockDecomposition(frozenset(cut), tuple(blocks))


# ---------------------------------------------------------------------------
# Local connectivity
# ---------------------------------------------------------------------------

def is_locally_connected(g: Graph) -> tuple[bool, int | None]:
    """Check that every open neighborhood induces a connected, nonempty subgraph.

    Returns (True, None) or (False, least failing vertex id). A single-vertex
    neighborhood counts as connected.
    """
    for v in range(g.n):
        if not connected_within(g, g.adjacency[v]):
            return False, v
    return True, None


def every_block_locally_connected(g: Graph) -> bool:
    """True iff each block's induced subgraph is locally connected."""
    decomposition = cut_vertices_and_blocks(g)
    for block in decomposition.blocks:
        ok, _ = is_locally_connected(g.induced(block))
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Chordality (lexicographic BFS + elimination-order verification)
# ---------------------------------------------------------------------------

def lex_bfs_order(g: Graph) -> list[int]:
    """Lexicographic BFS visit order, breaking ties toward the smallest id."""
    order: list[int] = []
    buckets: list[list[int]] = [list(range(g.n))]
    while buckets:
        bucket = buckets[0]
        v = bucket.pop(0)
        if not bucket:
            buckets.pop(0)
        order.append(v)
        nbrs = set(g.adjacency[v])
        refined: list[list[int]] = []
        for b in buckets:
            hits = [x for x in b if x in nbrs]
            misses = [x for x in b if x not in nbrs]
            if hits:
                refined.append(hits)
            if misses:
                refined.append(misses)
        buckets = refined
    return order


def is_chordal(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Chordality test; on success returns a perfect elimination ordering."""
    order = lex_bfs_order(g)
    peo = tuple(reversed(order))
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adjacency[v] if pos[w] > pos[v]]
        if not later:
            continue
        anchor = min(later, key=lambda w: pos[w])
        rest = set(later) - {anchor}
        if not rest <= set(g.adjacency[anchor]):
            return False, None
    return True, peo


# ---------------------------------------------------------------------------
# Cover predicates
# ---------------------------------------------------------------------------

def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    mask = _mask(s)
    return all(mask & (1 << u) or mask & (1 << v) for u, v in g.edges)


def is_connected_cover(g: Graph, s: Iterable[int]) -> bool:
    verts = set(s)
    return bool(verts) and is_vertex_cover(g, verts) and connected_within(g, verts)


def _mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def mask_of(ids: Iterable[int]) -> int:
    """Bitmask over vertex ids."""
    return _mask(ids)


def ids_of_mask(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
