"""Exact long-scale Ollivier Ricci curvature and diameter bounds for distance-regular graphs."""

__version__ = "0.1.0"

from .bounds import (BoundResult, amply_bounds, best_bound, chain_bound, generic_diameter_bound,
                     matching_gain, np_bound, residue_bound, scak_bounds)
from .catalog import generate, load_edge_list, save_edge_list
from .errors import DomainError, InputError, TheoremContradiction
from .graph import Graph, build_graph, girth, local_profile
from .matching import a_bijection, build_gadget, c_bijection, constructive_plan, konig_decompose
from .regularity import (ArrayPrefix, IntersectionArray, amply_parameters, intersection_array,
                         scak_parameters, validate_intersection_array)
from .transport import (Measure, certify, lazy_measure, ollivier_curvature, verify_jump_estimate,
                        verify_scale_estimate, wasserstein)

__all__ = [
    "ArrayPrefix", "BoundResult", "DomainError", "Graph", "InputError", "IntersectionArray", "Measure",
    "TheoremContradiction", "a_bijection", "amply_bounds", "amply_parameters", "best_bound",
    "build_gadget", "build_graph", "c_bijection", "certify", "chain_bound", "constructive_plan",
    "generate", "generic_diameter_bound", "girth", "intersection_array", "konig_decompose",
    "lazy_measure", "load_edge_list", "local_profile", "matching_gain", "np_bound",
    "ollivier_curvature", "residue_bound", "save_edge_list", "scak_bounds", "scak_parameters",
    "validate_intersection_array", "verify_jump_estimate", "verify_scale_estimate", "wasserstein",
]
