"""Continued fractions attached to the subgraph F_N of the Farey graph
(N = p**l a prime power), their maximum-+1 expansions, and best rational
approximations whose denominators are multiples of N."""

from .best import (
    ApproxRecord,
    BestApproxReport,
    basis_decompose,
    best_via_convergents,
    brute_force_best,
    default_v_max,
    verify_equivalence,
)
from .exact import (
    INF,
    BigRational,
    DecimalInterval,
    QuadraticSurd,
    ext_gcd,
    farey_diff,
    farey_sum,
    iterated_mediant,
    mod_inverse,
    parse_real,
    reduce,
)
from .expansion import (
    CFExpansion,
    Tail,
    Term,
    convergents,
    enumerate_all_expansions,
    evaluate,
    expand_max_plus_one,
    fins,
    parse_expansion,
    select_max_plus_one,
    to_path,
    validate,
)
from .graph import (
    BSet,
    GeneralRational,
    Irrational,
    MediantPoint,
    Modulus,
    Vertex,
    are_adjacent,
    classify,
    decompose,
    is_vertex,
    min_mediant_exit,
    vertex_neighbors,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxRecord",
    "BSet",
    "BestApproxReport",
    "BigRational",
    "CFExpansion",
    "DecimalInterval",
    "GeneralRational",
    "INF",
    "Irrational",
    "MediantPoint",
    "Modulus",
    "QuadraticSurd",
    "Tail",
    "Term",
    "Vertex",
    "are_adjacent",
    "basis_decompose",
    "best_via_convergents",
    "brute_force_best",
    "classify",
    "convergents",
    "decompose",
    "default_v_max",
    "enumerate_all_expansions",
    "evaluate",
    "expand_max_plus_one",
    "ext_gcd",
    "farey_diff",
    "farey_sum",
    "fins",
    "is_vertex",
    "iterated_mediant",
    "min_mediant_exit",
    "mod_inverse",
    "parse_expansion",
    "parse_real",
    "reduce",
    "select_max_plus_one",
    "to_path",
    "validate",
    "verify_equivalence",
    "vertex_neighbors",
]
