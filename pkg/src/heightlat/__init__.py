"""Uniform homomorphism height functions on finite pieces of Z^d.

Configurations change by exactly one across every lattice edge and match the
vertex parity. The package provides exact enumeration on small domains,
exact sampling by monotone coupling from the past, the cluster swap and
equalizing transforms on pairs of configurations, conversions to proper
3-colorings and six-vertex arrow fields, and the statistical checks built
on top: positive association of |f|, stochastic domination across nested
domains, log-concavity of site marginals, and variance growth across
domain sizes.
"""

__version__ = "0.1.0"

from .errors import (
    BoundaryNotEven,
    ConfigError,
    DimensionError,
    DomainTooLarge,
    HeightLatError,
    InfeasibleBoundary,
    InvalidHeightFunction,
    InvalidSwap,
    NoCoalescence,
    NotInterior,
    NotNested,
    ParityMixedSupport,
    PreconditionViolation,
    WindowTooSmall,
)
from .lattice import (
    LatticeDomain,
    ball_domain,
    box_domain,
    l1_norm,
    neighbors,
    outer_boundary_of,
    vertex_parity,
)
from .heights import (
    BoundaryCondition,
    GradientViolation,
    HeightFunction,
    ParityViolation,
    boundary_of,
    diagonal_disagreements,
    envelope,
    extend_max,
    extend_min,
    find_violations,
    is_proper_coloring,
    is_valid,
    to_six_vertex,
    to_three_coloring,
    validate,
    zero_boundary,
)
from .contours import Contour, level_set_edges
from .oracle import (
    ExactDistribution,
    conditional_site_law,
    count_extensions,
    count_pairs,
    enumerate_all,
    enumerate_matrix,
    enumerate_pairs,
    marginal_at,
)
from .rng import RandomSource, derive_seed, mix64
from .sampling import (
    ChainState,
    cftp_sample,
    glauber_chain,
    heat_bath_update,
    sample_batch,
    sweep,
)
from .pairs import (
    Cluster,
    ClusterLabeling,
    HomPair,
    comb_window,
    components,
    equalize,
    is_trifurcation_ball,
    lc_inject,
    lc_recover_region,
    swap_anchored,
    swap_finite,
)
from .stats import (
    DelocalizationSummary,
    EmpiricalDistribution,
    FkgReport,
    MonotoneIndicatorMax,
    VarianceCurve,
    VarianceRow,
    delocalization_quantities,
    domination_check_abs,
    fit_log_growth,
    fkg_check_abs,
    log_concavity_check,
    random_monotone_pairs,
    value_frequencies,
    variance_growth,
    variance_se,
)
