"""Walk-based vertex centralities and their interlacing on small graphs."""
from __future__ import annotations

from .canon import canonical_form, canonical_graph6, count_graphs, enumerate_graphs
from .centrality import (CentralityProfile, ec, functional_centrality, katz, rc, sc, sc_profile, tc,
                         walk_entropy)
from .graph import (GENERAL, SIMPLE, WEIGHTED, Graph, GraphError, GraphFormatError, degree, degrees,
                    is_connected, parse_edge_list, parse_graph6, read_graph, to_edge_list, to_graph6)
from .interlacing import (CospectralPairError, InterlacingError, InterlacingReport, find_interlacings,
                          interlacing_bounds, sc_difference, sign_changes)
from .search import SearchFinding, SearchSpec, scan
from .spectral import SpectralData, eig_sym, group_eigenvalues, spectral_data, spectral_radius
from .walks import WalkTable, are_cospectral, cospectral_classes, is_walk_regular, walk_table

__version__ = "0.1.0"

__all__ = [
    "CentralityProfile", "CospectralPairError", "GENERAL", "Graph", "GraphError", "GraphFormatError",
    "InterlacingError", "InterlacingReport", "SIMPLE", "SearchFinding", "SearchSpec", "SpectralData",
    "WEIGHTED", "WalkTable", "are_cospectral", "canonical_form", "canonical_graph6", "count_graphs",
    "cospectral_classes", "degree", "degrees", "ec", "eig_sym", "enumerate_graphs", "find_interlacings",
    "functional_centrality", "group_eigenvalues", "interlacing_bounds", "is_connected", "is_walk_regular",
    "katz", "parse_edge_list", "parse_graph6", "rc", "read_graph", "sc", "sc_difference", "sc_profile",
    "scan", "sign_changes", "spectral_data", "spectral_radius", "tc", "to_edge_list", "to_graph6",
    "walk_entropy", "walk_table",
]
