"""Interval-decomposable persistence modules over Z^n with the diagonal flow."""

from .errors import (
    CoordinateOverflow,
    DimensionError,
    InvalidIntervalError,
    MultiComponentError,
    OracleBudgetExceeded,
    PmodError,
)
from .grid import box, flow, leq
from .intervals import (
    Barcode,
    ConvexSubset,
    GridSet,
    IntervalSet,
    components,
    diag_extent,
    intersect,
    is_flow_intersection_closed,
    is_intersection_closed,
    is_poset_connected,
    is_poset_convex,
    make_downset_in_window,
    make_rect,
    make_upperset_in_window,
    rasterize_convex_polygon,
    shift,
)
from .morphisms import (
    MorphismMatrix,
    ScalarMorphism,
    compose,
    count_valid_components,
    hom_dimension_bruteforce,
    hom_exists,
    is_valid_component,
    matrix_compose,
)
from .interleaving import (
    InterleavingPair,
    is_trivial,
    left_interleaved,
    oracle_interleaving_exists,
    oracle_module_distance,
    pair_distance,
    pair_interleaved,
    transition_scalar_matrix,
)
from .distances import (
    Correspondence,
    Matching,
    Status,
    StabilityReport,
    bottleneck,
    check_hausdorff_le_bottleneck,
    hausdorff,
    verify_stability,
)

__version__ = "0.1.0"
