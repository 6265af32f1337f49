"""
Distribution functions and random samplers for crossdep.
"""

__all__ = [
    "Innovation",
    "RngStream",
    "chi2_cdf",
    "chi2_df4_cdf",
    "chi2_df4_sf",
    "chi2_quantile",
    "chi2_sf",
    "sample_chi2",
    "sample_normal",
    "sample_t",
    "standardized_innovations",
    "std_normal_cdf",
    "std_normal_quantile",
    "std_normal_sf",
]

from .sampling import (
    Innovation,
    RngStream,
    sample_chi2,
    sample_normal,
    sample_t,
    standardized_innovations,
)
from .special import (
    chi2_cdf,
    chi2_df4_cdf,
    chi2_df4_sf,
    chi2_quantile,
    chi2_sf,
    std_normal_cdf,
    std_normal_quantile,
    std_normal_sf,
)
