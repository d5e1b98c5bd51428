"""Power and rate design against the asymptotic outage formula.

The asymptotic outage depends on the powers only through their product, and
on the rate only through G_K(2^R), which is increasing and convex in R.  Both
inverse problems therefore have closed-form or one-dimensional solutions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .channel import ChannelSpec, PowerProfile
from .exceptions import DomainError, InfeasibleTargetError
from .outage import OutageQuery, OutageResult, ell, outage_exact
from .special_fn import g_k, g_k_deriv

# below this per-round power (20 dB) the high-SNR approximation is doubtful
ASYMPTOTIC_MIN_POWER = 100.0
MAX_RATE = 512.0


class AsymptoticRegimeWarning(UserWarning):
    """A design lands where the asymptotic outage formula is not yet accurate."""


@dataclass(frozen=True)
class DesignTarget:
    epsilon: float
    channel: ChannelSpec
    rate: Optional[float] = None
    budget: Optional[PowerProfile] = None

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"target outage must lie in (0, 1), got {self.epsilon}")
        if self.rate is not None and not self.rate > 0:
            raise DomainError(f"rate must be positive, got {self.rate}")


def required_power_product(target: DesignTarget) -> float:
    """Smallest prod_k P_k whose asymptotic outage equals ``target.epsilon``."""
    if target.rate is None:
        raise DomainError("power design needs a fixed rate")
    ch = target.channel
    p_prod = g_k(ch.K, 2.0**target.rate) / (ell(ch) * target.epsilon * math.prod(ch.sigma2))
    if p_prod ** (1.0 / ch.K) < ASYMPTOTIC_MIN_POWER:
        warnings.warn(
            f"equal per-round power {10 * math.log10(p_prod ** (1.0 / ch.K)):.1f} dB is below 20 dB; "
            "the asymptotic formula may be inaccurate",
            AsymptoticRegimeWarning, stacklevel=2,
        )
    return p_prod


def allocate_equal_powers(p_product: float, K: int) -> PowerProfile:
    """P_k = p_product^(1/K): by AM-GM the cheapest split with the given product."""
    if not p_product > 0:
        raise DomainError(f"power product must be positive, got {p_product}")
    if int(K) != K or K < 1:
        raise DomainError(f"K must be a positive integer, got {K}")
    return PowerProfile.constant(int(K), p_product ** (1.0 / K))


def _rate_target(budget: PowerProfile, spec: ChannelSpec, epsilon: float) -> float:
    if budget.K != spec.K:
        raise DomainError(f"budget has {budget.K} powers for a K={spec.K} channel")
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"target outage must lie in (0, 1), got {epsilon}")
    return epsilon * ell(spec) * budget.product * math.prod(spec.sigma2)


def _bracket(K, target):
    # G_K(2^0) = 0 < target; grow the upper end until the sign changes
    hi = 1.0
    while g_k(K, 2.0**hi) < target:
        hi *= 2.0
        if hi > MAX_RATE:
            raise InfeasibleTargetError(f"no rate below {MAX_RATE} bits meets the target")
    return 0.0, hi


def _bisect(K, target, lo, hi, rtol):
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if g_k(K, 2.0**mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def max_rate(budget: PowerProfile, spec: ChannelSpec, epsilon: float, *,
             method: str = "newton", rtol: float = 1e-12) -> float:
    """Largest rate whose asymptotic outage under ``budget`` does not exceed ``epsilon``.

    Solves G_K(2^R) = epsilon * ell * prod P_k * prod sigma_k^2.  The left side
    is increasing and convex in R, so the root is unique; ``method="newton"``
    iterates Newton steps kept inside a shrinking sign-change bracket and
    falls back to bisection when a step leaves it.
    """
    target = _rate_target(budget, spec, epsilon)
    if not (target > 0 and math.isfinite(target)):
        raise InfeasibleTargetError(f"rate equation has no positive root (target={target})")
    K = spec.K
    lo, hi = _bracket(K, target)
    if method == "bisect":
        return _bisect(K, target, lo, hi, rtol)
    if method != "newton":
        raise ValueError(f"unknown method {method!r}")

    # convexity: starting right of the root, Newton decreases monotonically onto it
    R = hi
    for _ in range(200):
        f = g_k(K, 2.0**R) - target
        if abs(f) <= rtol * target:
            return R
        if f > 0:
            hi = R
        else:
            lo = R
        d = g_k_deriv(K, R, 1)
        step = R - f / d if d > 0 else None
        R = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
    raise InfeasibleTargetError("rate iteration did not converge")


def verify_design(spec: ChannelSpec, power: PowerProfile, rate: float, N: int = 3) -> OutageResult:
    """Outage of a design under the exact mixture evaluator."""
    return outage_exact(OutageQuery(spec, power, rate, method="exact", truncation=N))
