"""Internally disjoint pendant (S, r)-trees in Cartesian product digraphs.

Exact tau_3 oracle for small hosts, a polynomial construction of ``l + h``
trees in ``D x H`` from factor certificates, and the max-flow machinery
(Dinic, fans, disjoint paths) both rely on.
"""

from ._accel import BACKEND, NUMBA_ENABLED
from .constructor import (
    ConstructionTrace,
    FactorCertificates,
    certify,
    complete_symmetric_trees,
    construct,
    factor_specs,
    factor_tau3,
)
from .digraph import (
    Digraph,
    bidirected_path,
    complete_symmetric,
    directed_cycle,
    directed_path,
    is_l_strong,
    is_strong,
    local_connectivity,
    min_semi_degree,
    min_vertex_separator,
    random_strong,
    read_digraph,
    vertex_connectivity,
    write_digraph,
)
from .errors import (
    InstanceTooLarge,
    InternalContractViolation,
    PendantPackError,
    PreconditionViolated,
)
from .maxflow import DirectedPath, Fan, dinic_max_flow, find_fan, find_iddp
from .oracle import (
    PackingInstance,
    check_necessary_conditions,
    enumerate_minimal_pendant_trees,
    tau3,
    tau_S_r,
)
from .product import ProductDigraph, cartesian_product, layer_D, layer_H, project
from .trees import OutTree, TerminalSpec, TreeFamily, assemble_tree, is_pendant_tree, verify_family

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConstructionTrace",
    "Digraph",
    "DirectedPath",
    "FactorCertificates",
    "Fan",
    "InstanceTooLarge",
    "InternalContractViolation",
    "NUMBA_ENABLED",
    "OutTree",
    "PackingInstance",
    "PendantPackError",
    "PreconditionViolated",
    "ProductDigraph",
    "TerminalSpec",
    "TreeFamily",
    "assemble_tree",
    "bidirected_path",
    "cartesian_product",
    "certify",
    "check_necessary_conditions",
    "complete_symmetric",
    "complete_symmetric_trees",
    "construct",
    "dinic_max_flow",
    "directed_cycle",
    "directed_path",
    "enumerate_minimal_pendant_trees",
    "factor_specs",
    "factor_tau3",
    "find_fan",
    "find_iddp",
    "is_l_strong",
    "is_pendant_tree",
    "is_strong",
    "layer_D",
    "layer_H",
    "local_connectivity",
    "min_semi_degree",
    "min_vertex_separator",
    "project",
    "random_strong",
    "read_digraph",
    "tau3",
    "tau_S_r",
    "verify_family",
    "vertex_connectivity",
    "write_digraph",
]
