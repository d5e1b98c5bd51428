"""Outage analysis of HARQ-IR over exponentially time-correlated Rayleigh fading."""

from .exceptions import (
    ConvergenceError,
    DegenerateCorrelationError,
    DomainError,
    GridError,
    InfeasibleTargetError,
    ResourceError,
)
from .channel import ChannelSpec, PowerProfile, SnrSample, sample_snr, sample_snr_batch
from .negmult import MultiIndex, WeightTable, build_table, nm_params, weight
from .product_dist import (
    LogGrid,
    ProductDistSpec,
    cdf_product_asymptotic,
    cdf_product_fft,
    cdf_product_mc,
    cdf_product_mellin,
)
from .outage import (
    OutageQuery,
    OutageResult,
    accumulated_info,
    diversity_slope,
    ell,
    outage_asymptotic,
    outage_conditional,
    outage_exact,
    outage_mc,
)
from .design import DesignTarget, allocate_equal_powers, max_rate, required_power_product

__version__ = "0.1.0"
