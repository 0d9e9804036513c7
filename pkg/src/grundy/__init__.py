"""Grundy (First-Fit) chromatic number toolkit."""

from .cobipartite import (MatchingSolution, NotBipartite, bipartition, check_alpha_leq_delta,
                          grundy_cobipartite, maximum_matching, min_edge_dominating)
from .coloring import (Coloring, GrundyResult, PeelCertificate, SolverTimeout, coloring_from_certificate,
                       exact_grundy, greedy_color, grundy_oracle_orderings, is_grundy_coloring,
                       is_partial_grundy, maximal_independent_sets, peel_certificate)
from .detect import (contains_induced, has_induced_c4, is_2k2_free, is_chordal, is_k2m_free, is_kll_free,
                     simplicial_vertices)
from .generators import (GenSpec, SplitMix64, chain_graph, complete, complete_bipartite, cycle,
                         incidence_projective_plane, path, petersen, random_gnp, random_ktree, tree_tk)
from .graph import Graph, GraphFormatError, complement, from_graph6, induced_subgraph, to_graph6

__version__ = "0.1.0"
