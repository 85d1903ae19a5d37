"""Crossing families, non-crossing families and convex bundles in planar
point sets, with exact verifiers and brute-force oracles."""

from .bundle import (
    BundleRunConfig,
    DichotomyResult,
    extract_caratheodory_noncrossing,
    find_bundle_or_noncrossing,
    pi_permutation,
)
from .crossing import (
    AvoidingPairReport,
    ClusterDecomposition,
    PartialOrderReport,
    PRTParameters,
    avoiding_bound,
    before,
    bipartite_crossing_family,
    cluster_decompose,
    epsilon_avoiding,
    find_avoiding_pair,
    find_crossing_or_noncrossing,
    incomparable_count,
)
from .errors import (
    CrossfamError,
    DegenerateInput,
    InsufficientPoints,
    InvariantViolation,
    OracleTimeout,
    ReductionExhausted,
    SchemaError,
    SnapTooCoarse,
)
from .families import (
    ConvexBundle,
    CrossingFamily,
    NonCrossingFamily,
    SpokeSet,
    bundle_to_crossing_family,
    fast_noncrossing_check,
    spoke_set_from_crossing_family,
    verify_convex_bundle,
    verify_crossing_family,
    verify_noncrossing_family,
    verify_spoke_set,
)
from .geometry import (
    OrientedLine,
    Point,
    PointSet,
    Segment,
    convex_hull,
    convex_position,
    ham_sandwich,
    in_general_position,
    is_cap,
    is_cup,
    orientation,
    point_in_triangle,
    segments_cross,
    separated,
    vertical_split,
)
from .oracles import (
    OracleBudget,
    bipartite_family_exact,
    exists_noncrossing_of_size_one,
    max_crossing_family_exact,
)
from .sametype import (
    OrderType,
    SameTypeCertificate,
    SameTypeConfig,
    order_type,
    same_type_reduce,
    verify_same_type,
    well_separated,
)
from .spokes import Prop7Instance, build_prop7, check_prop7_crossing_bound

__version__ = "0.1.0"

__all__ = [
    "AvoidingPairReport",
    "BundleRunConfig",
    "ClusterDecomposition",
    "ConvexBundle",
    "CrossfamError",
    "CrossingFamily",
    "DegenerateInput",
    "DichotomyResult",
    "InsufficientPoints",
    "InvariantViolation",
    "NonCrossingFamily",
    "OracleBudget",
    "OracleTimeout",
    "OrderType",
    "OrientedLine",
    "PRTParameters",
    "PartialOrderReport",
    "Point",
    "PointSet",
    "Prop7Instance",
    "ReductionExhausted",
    "SameTypeCertificate",
    "SameTypeConfig",
    "SchemaError",
    "Segment",
    "SnapTooCoarse",
    "SpokeSet",
    "avoiding_bound",
    "before",
    "bipartite_crossing_family",
    "bipartite_family_exact",
    "build_prop7",
    "bundle_to_crossing_family",
    "check_prop7_crossing_bound",
    "cluster_decompose",
    "convex_hull",
    "convex_position",
    "epsilon_avoiding",
    "exists_noncrossing_of_size_one",
    "extract_caratheodory_noncrossing",
    "fast_noncrossing_check",
    "find_avoiding_pair",
    "find_bundle_or_noncrossing",
    "find_crossing_or_noncrossing",
    "ham_sandwich",
    "in_general_position",
    "incomparable_count",
    "is_cap",
    "is_cup",
    "max_crossing_family_exact",
    "order_type",
    "orientation",
    "pi_permutation",
    "point_in_triangle",
    "same_type_reduce",
    "segments_cross",
    "separated",
    "spoke_set_from_crossing_family",
    "verify_convex_bundle",
    "verify_crossing_family",
    "verify_noncrossing_family",
    "verify_same_type",
    "verify_spoke_set",
    "vertical_split",
    "well_separated",
]
