"""Structural decomposition toolkit for hole- and wheel-constrained graph
classes: pattern detectors, separator and potential-maximal-clique
machinery, lean refinement of tree decompositions, a recursive
decomposition pipeline, and DP solvers over the results."""

from .graph import (Graph, complete_bipartite, complete_graph, cycle_graph,
                    from_graph6, path_graph, to_graph6)
from .errors import ClassViolation, GuardExceeded, InputError
from .patterns import (MembershipReport, PatternWitness, WheelWitness,
                       class_membership, find_c4, find_clique,
                       find_even_wheel, find_generalized_k_pyramid,
                       find_hole, find_prism, find_theta, find_wheels, hubs)
from .separators import (balanced_separator, canonical_star, clique_cutset,
                         full_components, is_minimal_separator,
                         minimal_separators, star_cutset)
from .pmc import (clique_tree, is_chordal, is_pmc, minimal_completion,
                  perfect_elimination_order, to_structured)
from .treedec import (TreeDecomposition, adhesion, compose_with_separator,
                      exact_treewidth, fatness, find_center, is_k_lean,
                      is_tight, torso, validate, width)
from .lean import refine_to_lean
from .connectify import (Alignment, Connectifier, classify_alignment,
                         classify_shape, erdos_szekeres, find_connectifier,
                         stable_in_bounded_outdegree, two_sided_classify,
                         verify_connectifier)
from .decomposer import Params, decompose, desk_params, small_params
from .bounds import NonHubReport, check_nonhub_bounds, cover_by_components
from .dp import PROBLEMS, Solution, make_nice, solve
from .corpus import FAMILIES, CorpusEntry, generate_corpus
from .suite import run_suite

__version__ = "0.1.0"
