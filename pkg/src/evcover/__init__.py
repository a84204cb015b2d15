"""Eternal vertex cover workbench.

Exact game-theoretic computation of the eternal vertex cover number at desk
scale, polynomial characterization for cover-connected graph classes, a
per-round guard-movement defense engine, gadget constructions, and an
interactive attacker-vs-defender HTTP service.
"""

from .characterize import (CharReport, ClassEvidence, class_membership,
                           decide_evc_equals_mvc, evc_min_k_all_vertices,
                           necessary_condition, np_certificate)
from .cover import (DEFAULT_LIMITS, CoverResult, Limits,
                    all_forced_min_covers_connected, enumerate_covers,
                    has_min_cover_containing, mvc_chordal, mvc_exact,
                    mvc_forced)
from .defense import (DefenseSession, RefinementTrace, defend, init_session,
                      moves_hall_equal, moves_plus_one, refine_candidate,
                      verify_moveset)
from .errors import (ContractViolationError, DefenseImpossibleError,
                     DisconnectedGraphError, EvcError, EvidenceError,
                     GadgetInputError, GraphParseError, InfeasibleKError,
                     NonChordalError, RejectionBudgetError, SizeLimitError,
                     VerdictMismatchError)
from .game import (Configuration, EvcResult, MoveSet, evc_exact,
                   evc_forced_exact, legal_transition, minimax_oracle,
                   safe_family)
from .gadgets import (BUILTINS, GadgetOutput, add_universal_vertex, complete,
                      cycle, double_and_join, path, random_biconnected_chordal,
                      random_connected_chordal, triangulate_faces,
                      twin_k23_instance, two_triangles_shared_edge,
                      two_triangles_shared_vertex)
from .graph import (BlockDecomposition, Graph, PlanarEmbedding, VertexSet,
                    connected_within, cut_vertices_and_blocks,
                    every_block_locally_connected, is_chordal,
                    is_connected_cover, is_locally_connected, is_vertex_cover,
                    parse_graph, parse_json, serialize_edge_list,
                    serialize_json)

__version__ = "0.1.0"
