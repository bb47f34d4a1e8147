"""Instance generators and witness translators for the three hardness
constructions: 4-Partition, 3-SAT and 3-Set Splitting."""

from .four_partition import (
    FourPartitionInstance,
    MultipartiteInstance,
    Part,
    flip_a1_copies,
    grouping_assignment,
    normalize_four_partition,
    part_deficiencies,
    reduce_fp_to_multipartite,
    verify_multipartite_coloring,
    window_bounds,
    witness_fp_backward,
    witness_fp_forward,
)
from .sat import CnfFormula, parse_cnf, reduce_3sat, witness_sat_backward, witness_sat_forward
from .set_splitting import (
    SetSplittingInstance,
    reduce_set_splitting,
    witness_ss_backward,
    witness_ss_forward,
)
from .split import SplitReduction

__all__ = [
    "CnfFormula",
    "FourPartitionInstance",
    "MultipartiteInstance",
    "Part",
    "SetSplittingInstance",
    "SplitReduction",
    "flip_a1_copies",
    "grouping_assignment",
    "normalize_four_partition",
    "parse_cnf",
    "part_deficiencies",
    "reduce_3sat",
    "reduce_fp_to_multipartite",
    "reduce_set_splitting",
    "verify_multipartite_coloring",
    "window_bounds",
    "witness_fp_backward",
    "witness_fp_forward",
    "witness_sat_backward",
    "witness_sat_forward",
    "witness_ss_backward",
    "witness_ss_forward",
]
