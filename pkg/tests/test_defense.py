"""Defense engine: candidate refinement, move generation, session rounds."""

import random

import pytest

import evcover as ev
from evcover.game import MoveSet

from pools import random_pool


def _report(g, mode="sufficient"):
    return ev.decide_evc_equals_mvc(g, ev.class_membership(g, mode))


def _session(g, mode="sufficient", start=None):
    return ev.init_session(g, _report(g, mode), start=start)


# ---------------------------------------------------------------------------
# init_session
# ---------------------------------------------------------------------------

def test_init_k4_hall_equal():
    s = _session(ev.complete(4))
    assert s.mode == "hall-equal"
    assert s.config == frozenset({0, 1, 2})


def test_init_single_edge():
    s = _session(ev.path(2))
    assert s.mode == "hall-equal"
    assert s.config == frozenset({0})


def test_init_two_triangles_plus_one():
    g = ev.two_triangles_shared_edge()
    s = _session(g)
    assert s.mode == "connected-plus-one"
    assert s.base_cover == frozenset({g.id_of("a"), g.id_of("b")})
    assert s.extra_vertex == g.id_of("c")
    assert s.config == s.base_cover | {s.extra_vertex}


def test_init_rejects_undetermined_verdict():
    with pytest.raises(ev.VerdictMismatchError):
        _session(ev.cycle(6))


def test_init_start_override_validated():
    g = ev.complete(4)
    s = _session(g, start={1, 2, 3})
    assert s.config == frozenset({1, 2, 3})
    with pytest.raises(ValueError):
        _session(g, start={0, 1})  # wrong size
    with pytest.raises(ValueError):
        _session(ev.twin_k23_instance(), mode="assume", start=set(range(4)))


# ---------------------------------------------------------------------------
# refine_candidate / moves_hall_equal
# ---------------------------------------------------------------------------

def test_refine_zero_iterations_when_compatible():
    c4 = ev.cycle(4)
    trace = ev.refine_candidate(c4, frozenset({0, 2}), frozenset({1, 3}), 1,
                                frozenset())
    assert trace.iterations == ()
    assert trace.final == frozenset({1, 3})


def test_refine_rejects_bad_candidate_shape():
    c4 = ev.cycle(4)
    with pytest.raises(ev.ContractViolationError):
        ev.refine_candidate(c4, frozenset({0, 2}), frozenset({0, 2}), 0,
                            frozenset())


def test_moves_rotation_on_cycle():
    c4 = ev.cycle(4)
    moves = ev.moves_hall_equal(c4, frozenset({0, 2}), frozenset({1, 3}), (0, 1))
    assert moves.moves == ((0, 1), (2, 3))


def test_moves_direct_replacement_on_k4():
    k4 = ev.complete(4)
    moves = ev.moves_hall_equal(k4, frozenset({0, 1, 2}), frozenset({0, 1, 3}),
                                (2, 3))
    assert moves.moves == ((0, 0), (1, 1), (2, 3))


def test_moves_path_shift_case():
    # two triangles glued at c: defending (c, e)-style attacks from {a, c, d}
    # forces the retained-endpoint path shift
    g = ev.two_triangles_shared_vertex()
    s = _session(g)
    assert s.config == frozenset({g.id_of("a"), g.id_of("c"), g.id_of("d")})
    moves, config = ev.defend(s, (g.id_of("d"), g.id_of("e")))
    assert ev.verify_moveset(g, frozenset({0, 2, 3}), config, moves,
                             (g.id_of("d"), g.id_of("e")))


def test_defend_swap_on_fully_guarded_edge():
    g = ev.complete(4)
    s = _session(g)
    moves, config = ev.defend(s, (0, 1))
    assert config == frozenset({0, 1, 2})
    assert (0, 1) in moves.moves and (1, 0) in moves.moves


# ---------------------------------------------------------------------------
# verify_moveset (independent validator)
# ---------------------------------------------------------------------------

def test_verify_rejects_collisions():
    p3 = ev.path(3)
    collide = MoveSet(((0, 1), (2, 1)))
    assert not ev.verify_moveset(p3, {0, 2}, {1}, collide, (0, 1))


def test_verify_rejects_missing_crossing():
    c4 = ev.cycle(4)
    stay = MoveSet(((0, 0), (2, 2)))
    assert not ev.verify_moveset(c4, {0, 2}, {0, 2}, stay, (0, 1))


def test_verify_rejects_non_cover_destination():
    p3 = ev.path(3)
    moves = MoveSet(((1, 0),))
    assert not ev.verify_moveset(p3, {1}, {0}, moves, (1, 0))


def test_verify_rejects_teleport():
    p4 = ev.path(4)
    moves = MoveSet(((0, 3), (1, 1), (2, 2)))
    assert not ev.verify_moveset(p4, {0, 1, 2}, {1, 2, 3}, moves, None)


# ---------------------------------------------------------------------------
# defend: random rounds and invariants
# ---------------------------------------------------------------------------

def _random_rounds(session, rounds, seed):
    g = session.graph
    rng = random.Random(seed)
    for _ in range(rounds):
        edge = g.edges[rng.randrange(len(g.edges))]
        before = session.config
        moves, config = ev.defend(session, edge)
        crossing = session.log[-1].attack
        assert ev.verify_moveset(g, before, config, moves, crossing)


def test_k5_thousand_rounds():
    g = ev.complete(5)
    s = _session(g)
    _random_rounds(s, 1000, seed=1)
    assert s.round == 1000
    assert len(s.config) == 4


def test_hall_equal_round_invariants_on_chordal_pool():
    defended = 0
    for i in range(25):
        g = ev.random_biconnected_chordal(4 + i % 6, 0.3 + 0.2 * (i % 3),
                                          seed=3000 + i)
        report = _report(g)
        if report.verdict != "evc-equals-mvc":
            continue
        s = _session(g)
        for r in range(120):
            rng = random.Random(i * 1000 + r)
            edge = g.edges[rng.randrange(len(g.edges))]
            ev.defend(s, edge)
            assert len(s.config) == s.mvc
            assert ev.is_vertex_cover(g, s.config)
            assert s.cut_vertices <= s.config
        assert s.max_refinement_iterations < g.n
        defended += 1
    assert defended >= 3


def test_plus_one_round_invariants():
    g = ev.two_triangles_shared_edge()
    s = _session(g)
    base = s.base_cover
    rng = random.Random(13)
    for _ in range(500):
        edge = g.edges[rng.randrange(len(g.edges))]
        moves, config = ev.defend(s, edge)
        assert s.base_cover == base  # the pinned cover never moves
        assert config == base | {s.extra_vertex}
        assert s.extra_vertex not in base
    assert s.round == 500


def test_plus_one_specific_attacks():
    g = ev.two_triangles_shared_edge()
    a, b, c, d = (g.id_of(x) for x in "abcd")
    s = _session(g)
    assert s.config == {a, b, c}
    # unguarded endpoint: spare guard walks through the pinned cover
    moves, config = ev.defend(s, (b, d))
    assert config == {a, b, d}
    # attack inside the pinned cover: swap, configuration unchanged
    moves, config = ev.defend(s, (a, b))
    assert config == {a, b, d}
    # attack between cover and spare guard: swap
    moves, config = ev.defend(s, (a, d))
    assert config == {a, b, d}


def test_non_biconnected_hall_equal_keeps_cut_vertices():
    g = ev.two_triangles_shared_vertex()
    s = _session(g)
    assert s.mode == "hall-equal"
    c = g.id_of("c")
    rng = random.Random(99)
    for _ in range(300):
        edge = g.edges[rng.randrange(len(g.edges))]
        ev.defend(s, edge)
        assert c in s.config
    assert s.max_refinement_iterations < g.n


# ---------------------------------------------------------------------------
# the counterexample script
# ---------------------------------------------------------------------------

def test_twin_k23_scripted_defense_fails_at_round_two():
    g = ev.twin_k23_instance()
    report = _report(g, mode="assume")
    ids = lambda *labs: [g.id_of(x) for x in labs]
    s = ev.init_session(g, report, start=frozenset(ids("x1", "x4", "x5", "y4", "y5")))
    moves, config = ev.defend(s, tuple(ids("x2", "y4")))
    assert config == frozenset(ids("x1", "x2", "x3", "x4", "x5"))
    with pytest.raises(ev.DefenseImpossibleError) as exc:
        ev.defend(s, tuple(ids("x5", "y5")))
    assert exc.value.round_number == 2
    assert s.over
    # a lost session refuses further rounds
    with pytest.raises(ev.DefenseImpossibleError):
        ev.defend(s, tuple(ids("x1", "y1")))


def test_session_log_serialization():
    g = ev.complete(4)
    s = _session(g)
    ev.defend(s, (0, 3))
    entry = s.log[-1].to_json_dict(g)
    assert entry["round"] == 1
    assert set(entry) == {"round", "attack", "moves", "config"}
    assert all(isinstance(x, str) for pair in entry["moves"] for x in pair)
