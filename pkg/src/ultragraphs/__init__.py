"""Combinatorial and symbolic analysis of finitely presented ultragraphs."""

from .errors import (CapExceeded, ContextMismatch, DocumentError,
                     NotAdmissible, UltragraphError, ValidationError)
from .presentation import (EdgeClass, UltragraphPresentation,
                           canonical_subsets, enumerate_paths,
                           parse_ultragraph, reachable_ranges)
from .setalgebra import SetAlgebra, brute_force_closure, generate_algebra
from .ideals import (AdmissiblePair, breaking_vertices,
                     enumerate_admissible_pairs,
                     enumerate_saturated_hereditary, gap_projection_support,
                     hereditary_saturated_closure, ideal_lattice,
                     is_saturated_hereditary, make_pair)
from .quotient import (ExtendedUltragraph, QuotientUltragraph, build_quotient,
                       extend, singular_vertices)
from .analysis import (KWitness, LoopWitness, check_condition_K,
                       check_condition_K_via_quotients, check_condition_L,
                       classify_primitive_ideals, ge, is_downward_directed,
                       is_purely_infinite, kill_loop_ideal,
                       loops_have_exits_outside)
from .gf import GFGraph, build_GF, export_dot, graph_condition_L
from .scalars import Scalar
from .symbolic import (SymbolicElement, base_context, ck_equal, edge_gen,
                       embed_extended, expand_regular, extended_context,
                       gap_projection, grade, path_isometry,
                       path_space_representation, projection, quotient_context,
                       quotient_map, verify_ck_family)
from .exprparse import parse_expression

__version__ = "0.1.0"
