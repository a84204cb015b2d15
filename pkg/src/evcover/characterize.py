"""Decision machinery for when the eternal and plain cover numbers coincide.

The central structural premise is cover-connectivity: every minimum vertex
cover containing all cut vertices induces a connected subgraph. Membership
evidence for that class is threaded explicitly through the API because the
exact test is exponential; the cheap sufficient tests are block-level local
connectivity and chordality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .cover import (DEFAULT_LIMITS, CoverResult, Limits,
                    all_forced_min_covers_connected, has_min_cover_containing,
                    mvc_exact, mvc_forced)
from .errors import DisconnectedGraphError, EvidenceError, InfeasibleKError
from .graph import (Graph, VertexSet, cut_vertices_and_blocks,
                    every_block_locally_connected, is_chordal)

EvidenceKind = Literal["every-block-locally-connected", "chordal", "exhaustive",
                       "assumed", "unknown"]
EvidenceMode = Literal["sufficient", "exhaustive", "assume"]
Verdict = Literal["evc-equals-mvc", "evc-equals-mvc-plus-1", "evc-exceeds-mvc",
                  "undetermined"]


@dataclass(frozen=True)
class ClassEvidence:
    """How cover-connectivity membership was established (or not)."""

    kind: EvidenceKind
    member: bool | None

    @property
    def established(self) -> bool:
        return self.member is True


UNKNOWN_EVIDENCE = ClassEvidence("unknown", None)


def class_membership(g: Graph, mode: EvidenceMode = "sufficient",
                     limits: Limits = DEFAULT_LIMITS) -> ClassEvidence:
    """Evidence that every minimum cover containing all cut vertices is connected.

    Sufficient mode applies the block-local-connectivity test (which also
    certifies chordal inputs, every block of a chordal graph being a
    biconnected chordal graph or an edge); exhaustive mode enumerates the
    relevant covers outright; assume mode records the caller's assertion.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("class membership is defined for connected graphs")
    if mode == "assume":
        return ClassEvidence("assumed", True)
    if mode == "exhaustive":
        cut = cut_vertices_and_blocks(g).cut_vertices
        member = all_forced_min_covers_connected(g, cut, limits)
        return ClassEvidence("exhaustive", member)
    if mode == "sufficient":
        if every_block_locally_connected(g):
            kind = "chordal" if is_chordal(g)[0] else "every-block-locally-connected"
            return ClassEvidence(kind, True)
        return UNKNOWN_EVIDENCE
    raise ValueError(f"unknown evidence mode {mode!r}")


def necessary_condition(g: Graph, limits: Limits = DEFAULT_LIMITS) -> tuple[bool, int | None]:
    """Per-vertex forced-cover condition required whenever evc equals mvc.

    Holds iff for every non-cut vertex v some minimum cover contains all cut
    vertices plus v. Returns (holds, least failing vertex). A degree-one
    vertex on three or more vertices fails immediately: a pendant vertex and
    its neighbor never share a minimum cover.
    """
    if g.n < 2:
        raise ValueError("condition is defined for graphs with at least two vertices")
    if not g.is_connected():
        raise DisconnectedGraphError("condition is defined for connected graphs")
    if g.n >= 3:
        leaves = [v for v in range(g.n) if g.degree(v) == 1]
        if leaves:
            return False, leaves[0]
    cut = cut_vertices_and_blocks(g).cut_vertices
    mvc = mvc_exact(g, limits).size
    for v in range(g.n):
        if v in cut:
            continue
        if not has_min_cover_containing(g, cut | {v}, limits, mvc_size=mvc):
            return False, v
    return True, None


@dataclass(frozen=True)
class CharReport:
    """Outcome of the characterization decision procedure."""

    mvc: int
    cut_vertices: VertexSet
    necessary_condition: bool
    failing_vertex: int | None
    evidence: ClassEvidence
    verdict: Verdict

    def evc_value(self) -> int | None:
        if self.verdict == "evc-equals-mvc":
            return self.mvc
        if self.verdict == "evc-equals-mvc-plus-1":
            return self.mvc + 1
        return None

    def to_json_dict(self, g: Graph) -> dict:
        return {
            "mvc": self.mvc,
            "cut_vertices": g.labels_of(self.cut_vertices),
            "necessary_condition": self.necessary_condition,
            "failing_vertex": (None if self.failing_vertex is None
                               else g.labels[self.failing_vertex]),
            "class_f_evidence": self.evidence.kind if self.evidence.established
                                else "unknown",
            "verdict": self.verdict,
        }


def decide_evc_equals_mvc(g: Graph, evidence: ClassEvidence,
                          limits: Limits = DEFAULT_LIMITS) -> CharReport:
    """Decide the eternal cover number from membership evidence.

    With membership established, the per-vertex condition settles equality;
    when it fails on a biconnected instance the answer is exactly one more.
    Without established evidence the verdict is undetermined.
    """
    cut = cut_vertices_and_blocks(g).cut_vertices
    mvc = mvc_exact(g, limits).size
    holds, failing = necessary_condition(g, limits)
    if not evidence.established:
        verdict: Verdict = "undetermined"
    elif holds:
        verdict = "evc-equals-mvc"
    elif not cut:
        verdict = "evc-equals-mvc-plus-1"
    else:
        verdict = "evc-exceeds-mvc"
    return CharReport(mvc=mvc, cut_vertices=cut, necessary_condition=holds,
                      failing_vertex=failing, evidence=evidence, verdict=verdict)


def _require_all_min_covers_connected(g: Graph, evidence: ClassEvidence) -> None:
    if not evidence.established:
        raise EvidenceError("cover-connectivity evidence is required")
    if cut_vertices_and_blocks(g).cut_vertices:
        raise EvidenceError(
            "every-minimum-cover-connected reasoning needs a biconnected graph")


def evc_min_k_all_vertices(g: Graph, evidence: ClassEvidence,
                           limits: Limits = DEFAULT_LIMITS) -> int:
    """Least k such that every vertex lies in some size-k cover.

    Valid as the eternal cover number only when every minimum cover is
    connected, which the caller certifies via evidence on a biconnected graph.
    """
    _require_all_min_covers_connected(g, evidence)
    mvc = mvc_exact(g, limits).size
    if all(has_min_cover_containing(g, {v}, limits, mvc_size=mvc)
           for v in range(g.n)):
        return mvc
    return mvc + 1


def np_certificate(g: Graph, k: int, evidence: ClassEvidence,
                   limits: Limits = DEFAULT_LIMITS) -> list[CoverResult]:
    """One size-k cover per vertex, each containing its designated vertex.

    The list is an independently checkable witness that k guards suffice on a
    graph whose minimum covers are all connected.
    """
    _require_all_min_covers_connected(g, evidence)
    needed = evc_min_k_all_vertices(g, evidence, limits)
    if k < needed:
        raise InfeasibleKError(f"k={k} is below the feasible minimum {needed}")
    certificates = []
    for v in range(g.n):
        base = mvc_forced(g, {v}, limits=limits)
        cover = set(base.cover)
        for w in range(g.n):
            if len(cover) >= k:
                break
            cover.add(w)
        certificates.append(CoverResult(size=k, cover=frozenset(cover),
                                        forced=frozenset({v})))
    return certificates
