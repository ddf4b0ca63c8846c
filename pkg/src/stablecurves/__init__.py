"""Exact combinatorics of the boundary of genus-zero moduli of labeled curves.

The package models boundary strata through stable dual trees, pairs
boundary divisors against one-dimensional boundary classes, and runs a
complete census of boundary curves, all in exact integer and rational
arithmetic.
"""

from .partitions import (
    DEFAULT_MAX_N,
    DistinguishedPartition,
    InvariantError,
    LabelSet,
    TwoPartition,
    c_weight,
    compatible,
    enumerate_distinguished,
    enumerate_stable_two_partitions,
    n_set,
    p_set,
    reconstruct_from_p,
)
from .trees import (
    PartitionSetSignature,
    StableTree,
    contract_edge,
    edge_cut,
    enumerate_curve_trees,
    enumerate_trees,
    exceptional_vertex,
    forget_and_stabilize,
    make_tree,
    pi_of_tree,
    signature,
    tree_from_signature,
    tree_violations,
    unlabeled_type_key,
)
from .intersect import (
    IntersectionMatrix,
    intersection_matrix,
    k_plus_b_pairing,
    matrix_rank,
    minus_k_closed,
    minus_k_divisor_coefficients,
    minus_k_expanded,
    pair_divisor_curve,
    picard_rank,
    virtual_dimension,
)
from .census import (
    CensusReport,
    ClassShapeRecord,
    TypeRecord,
    class_size_oracle,
    classes_by_shape,
    render_table,
    run_census,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_N",
    "InvariantError",
    "LabelSet",
    "TwoPartition",
    "DistinguishedPartition",
    "c_weight",
    "compatible",
    "enumerate_distinguished",
    "enumerate_stable_two_partitions",
    "n_set",
    "p_set",
    "reconstruct_from_p",
    "PartitionSetSignature",
    "StableTree",
    "contract_edge",
    "edge_cut",
    "enumerate_curve_trees",
    "enumerate_trees",
    "exceptional_vertex",
    "forget_and_stabilize",
    "make_tree",
    "pi_of_tree",
    "signature",
    "tree_from_signature",
    "tree_violations",
    "unlabeled_type_key",
    "IntersectionMatrix",
    "intersection_matrix",
    "k_plus_b_pairing",
    "matrix_rank",
    "minus_k_closed",
    "minus_k_divisor_coefficients",
    "minus_k_expanded",
    "pair_divisor_curve",
    "picard_rank",
    "virtual_dimension",
    "CensusReport",
    "ClassShapeRecord",
    "TypeRecord",
    "class_size_oracle",
    "classes_by_shape",
    "render_table",
    "run_census",
    "__version__",
]
