"""Superimposed PAM signaling and TIN decoding for the two-user Gaussian
broadcast channel: constellations, exact and closed-form rates, achievable
rate regions with time sharing, and numerical constant-gap certification."""

from .capacity import (
    CapacityPoint,
    c1,
    c2,
    capacity_boundary,
    inside_capacity_region,
    relative_gain,
)
from .constellation import (
    ChannelParams,
    OutOfRegimeError,
    PamSpec,
    SuperConstellation,
    alpha_star,
    dmin_bruteforce,
    dmin_formula,
    make_pam,
    superimpose,
)
from .entropy_mi import (
    GAUSSIAN_ENTROPY_BITS,
    SHAPING_LOSS_BITS,
    EffectiveChannel,
    MiEstimate,
    effective_tin_channel,
    mi_exact_tin,
    mi_lb_user1,
    mi_lb_user2,
    mixture_entropy,
    ow_bound,
    rate_lower_bound,
)
from .gap import (
    REFERENCE_VALUES,
    GapReport,
    CoverageSummary,
    TsGapReport,
    certify_case1,
    certify_case2,
    certify_coverage,
    certify_ts,
    gap_at,
    reference_constants,
)
from .region import (
    RatePoint,
    RateRegion,
    adjacent_ts_pairs,
    admissible_orders,
    alpha_grid_geometric,
    case1_orders,
    pareto_frontier,
    sweep_alpha_region,
    ts_region,
    ts_segment_points,
)

__version__ = "0.1.0"
