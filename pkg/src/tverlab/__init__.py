"""Configuration spaces of the colored Tverberg problem at desk scale:
chessboard and rainbow complexes, deleted joins and products, homology over
Z_p, index-bound arithmetic, and exact search for disjoint rainbow faces
with intersecting hulls."""

__version__ = "0.1.0"

from .bounds import (
    FaceCountUpgrade,
    IndexBound,
    InapplicableError,
    SizeThresholdError,
    TheoremInstance,
    Verdict,
    conn_lower_bound_join,
    evaluate_bundle,
    index_lower_bound_deleted_join,
    index_lower_bound_deleted_product,
    strict_inequality_note,
    volovikov_condition,
)
from .complexes import (
    Coloring,
    DecompositionError,
    DecompositionWitness,
    FaceBudgetError,
    ProductCellComplex,
    SimplicialComplex,
    apply_symmetry,
    boundary_simplex,
    chessboard,
    decomposition_isomorphism,
    deleted_join,
    deleted_product,
    discrete_points,
    full_simplex,
    join,
    join_many,
    rainbow_complex,
    regular_embedding,
)
from .geometry import (
    ColoredConfiguration,
    ExperimentReport,
    RainbowFace,
    SearchResult,
    Witness,
    enumerate_rainbow_faces,
    find_disjoint_intersecting_family,
    hulls_intersect,
    random_configuration,
    verify_theorem_empirically,
)
from .homology import (
    BettiProfile,
    ChainComplexModP,
    HConn,
    betti,
    betti_numbers,
    cellular_chain_complex,
    chain_complex,
    hconn,
)

__all__ = [
    "__version__",
    # complexes
    "SimplicialComplex", "ProductCellComplex", "Coloring",
    "DecompositionWitness", "DecompositionError", "FaceBudgetError",
    "chessboard", "rainbow_complex", "join", "join_many",
    "deleted_join", "deleted_product", "decomposition_isomorphism",
    "apply_symmetry", "regular_embedding",
    "discrete_points", "full_simplex", "boundary_simplex",
    # homology
    "ChainComplexModP", "BettiProfile", "HConn",
    "chain_complex", "cellular_chain_complex", "betti", "betti_numbers", "hconn",
    # bounds
    "TheoremInstance", "IndexBound", "Verdict", "FaceCountUpgrade",
    "SizeThresholdError", "InapplicableError",
    "conn_lower_bound_join", "index_lower_bound_deleted_join",
    "index_lower_bound_deleted_product", "volovikov_condition",
    "strict_inequality_note", "evaluate_bundle",
    # geometry
    "ColoredConfiguration", "RainbowFace", "Witness", "SearchResult",
    "ExperimentReport", "enumerate_rainbow_faces", "hulls_intersect",
    "find_disjoint_intersecting_family", "random_configuration",
    "verify_theorem_empirically",
]
