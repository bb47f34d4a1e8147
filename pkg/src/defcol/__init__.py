"""Exact solvers for Defective Coloring on cographs, trivially perfect,
chordal and split graphs, with verified certificates.

A ``(chi, delta)``-coloring assigns one of ``chi`` colors to every vertex so
that each vertex has at most ``delta`` neighbors of its own color.
"""

from .chordal import (
    build_nice_decomposition,
    is_chordal,
    peo_lexbfs,
    recognize_split,
    solve_chordal,
    treewidth_dp,
    validate_decomposition,
)
from .cograph import (
    Cotree,
    build_cotree,
    eval_cotree,
    omega_cotree,
    parse_cotree,
    solve_cograph,
    solve_few_colors,
    solve_small_deficiency,
)
from .errors import (
    BudgetExceeded,
    ClassMismatch,
    ContractError,
    DataError,
    DefcolError,
    ExtractionError,
    NotChordal,
    NotCograph,
    NotTriviallyPerfect,
    ParseError,
)
from .graph import (
    Graph,
    Instance,
    VerifyReport,
    brute_force_decide,
    deficiency,
    format_dimacs,
    induced_subgraph,
    parse_graph,
    trivial_shortcut,
    verify_coloring,
)
from .solve import solve
from .trivially_perfect import build_rooted_forest, greedy_tp_color, sort_coloring

__version__ = "0.1.0"
