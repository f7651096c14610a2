"""Odd clique and odd complete bipartite minor models in graphs with independence number at most two."""

from __future__ import annotations

from .construct import (
    anti_components,
    compose_join_models,
    critical_reduction,
    odd_clique_from_cut,
    odd_clique_via_clique_and_paths,
    special_bipartite_model,
    special_model_half_order,
)
from .errors import PreconditionError, TheoremContradiction, VerificationError
from .graph import Graph, GraphFormatError, parse_edge_list, parse_graph6, read_graph, to_graph6
from .invariants import (
    CutCertificate,
    chromatic_number,
    clique_number,
    independence_at_most_two,
    independence_number,
    max_clique,
    minimum_vertex_cut,
    vertex_connectivity,
)
from .model import BranchSet, OddModel, Pattern, Violation, verify_odd_model
from .oracle import brute_force_odd_model, enumerate_alpha2_graphs, random_alpha2_graph

__all__ = [
    "BranchSet",
    "CutCertificate",
    "Graph",
    "GraphFormatError",
    "OddModel",
    "Pattern",
    "PreconditionError",
    "TheoremContradiction",
    "VerificationError",
    "Violation",
    "anti_components",
    "brute_force_odd_model",
    "chromatic_number",
    "clique_number",
    "compose_join_models",
    "critical_reduction",
    "enumerate_alpha2_graphs",
    "independence_at_most_two",
    "independence_number",
    "max_clique",
    "minimum_vertex_cut",
    "odd_clique_from_cut",
    "odd_clique_via_clique_and_paths",
    "parse_edge_list",
    "parse_graph6",
    "random_alpha2_graph",
    "read_graph",
    "special_bipartite_model",
    "special_model_half_order",
    "to_graph6",
    "verify_odd_model",
    "vertex_connectivity",
]
