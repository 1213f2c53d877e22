"""Exact cross-ratio, Moebius-energy and sum-product experiments.

Everything is computed in exact arithmetic over Q or Q(i); every derived
quantity has a brute-force oracle alongside the fast path.
"""

__version__ = "0.1.0"

from .crossratio import (
    cross_ratio,
    cross_ratio_count,
    cross_ratio_histogram,
    cross_ratio_set,
    identity_check_pentuple,
    is_orbit_closed,
    orbit,
    ordered_cross_ratio_set,
    pinned_cross_ratio_set,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    CrlabError,
    DegenerateTuple,
    IdentityViolation,
    InvalidThreshold,
    LineThroughOrigin,
    NotCongruent,
    OriginInSet,
    SetTooSmall,
)
from .moebius import (
    IDENTITY,
    GStatistics,
    MoebiusMap,
    RichnessHistogram,
    congruent_pentuple_pairs,
    from_three_points,
    g_partition,
    pentuple_energy,
    quadruple_energy,
    recover_congruence,
    rich_maps,
    richness,
)
from .scalar import GAUSSIAN, INF, RATIONAL, Fraction, GaussianRational, ScalarSet, get_field, proj_invert

__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "CrlabError",
    "DegenerateTuple",
    "Fraction",
    "GAUSSIAN",
    "GStatistics",
    "GaussianRational",
    "IDENTITY",
    "INF",
    "IdentityViolation",
    "InvalidThreshold",
    "LineThroughOrigin",
    "MoebiusMap",
    "NotCongruent",
    "OriginInSet",
    "RATIONAL",
    "RichnessHistogram",
    "ScalarSet",
    "SetTooSmall",
    "congruent_pentuple_pairs",
    "cross_ratio",
    "cross_ratio_count",
    "cross_ratio_histogram",
    "cross_ratio_set",
    "from_three_points",
    "g_partition",
    "get_field",
    "identity_check_pentuple",
    "is_orbit_closed",
    "orbit",
    "ordered_cross_ratio_set",
    "pentuple_energy",
    "pinned_cross_ratio_set",
    "proj_invert",
    "quadruple_energy",
    "recover_congruence",
    "rich_maps",
    "richness",
]
