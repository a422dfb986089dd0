"""Exact solvers, reductions, and verification tools for Network-Caching."""

from .errors import (
    BadDistribution,
    DanglingId,
    InvalidCase,
    InvalidFormula,
    InvalidInstance,
    NetcacheError,
    NoFeasibleAlgorithm,
    NonPositive,
    NotHomogeneous,
    ParseError,
    SolverDisagreement,
    TooLarge,
    UnknownUser,
)
from .model import (
    Allocation,
    Instance,
    ParameterProfile,
    User,
    cache_hit_rate,
    check_allocation,
    classify_variant,
    hit_set,
    is_feasible,
    maximal_matching,
    parameter_profile,
    validate,
    vertex_cover_2approx,
)
from .solvers import (
    SOLVERS,
    SolveResult,
    SolveStats,
    amalgamate_caches_homnc,
    auto_solve,
    brute_force,
    cache_type_dp,
    capacity_vector_dp,
    decide,
    dedup_same_neighborhood_caches,
    lift_amalgamated_witness,
    rescale_homogeneous,
    solve,
    solve_homnc_by_users,
)
from .reductions import (
    ReductionOutput,
    from_knapsack,
    from_max_k_vertex_cover,
    from_monotone_nae3sat,
    from_planar_3sat_e3,
    from_unary_bin_packing,
    interreduce,
)
from .problems import (
    BinPackingInstance,
    CnfFormula,
    KnapsackInstance,
    MaxKVcInstance,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "BadDistribution",
    "BinPackingInstance",
    "CnfFormula",
    "DanglingId",
    "Instance",
    "InvalidCase",
    "InvalidFormula",
    "InvalidInstance",
    "KnapsackInstance",
    "MaxKVcInstance",
    "NetcacheError",
    "NoFeasibleAlgorithm",
    "NonPositive",
    "NotHomogeneous",
    "ParameterProfile",
    "ParseError",
    "ReductionOutput",
    "SOLVERS",
    "SolveResult",
    "SolveStats",
    "SolverDisagreement",
    "TooLarge",
    "UnknownUser",
    "User",
    "amalgamate_caches_homnc",
    "auto_solve",
    "brute_force",
    "cache_hit_rate",
    "cache_type_dp",
    "capacity_vector_dp",
    "check_allocation",
    "classify_variant",
    "decide",
    "dedup_same_neighborhood_caches",
    "from_knapsack",
    "from_max_k_vertex_cover",
    "from_monotone_nae3sat",
    "from_planar_3sat_e3",
    "from_unary_bin_packing",
    "hit_set",
    "interreduce",
    "is_feasible",
    "lift_amalgamated_witness",
    "maximal_matching",
    "parameter_profile",
    "rescale_homogeneous",
    "solve",
    "solve_homnc_by_users",
    "validate",
    "vertex_cover_2approx",
]
