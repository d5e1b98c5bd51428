"""Exponentially time-correlated Rayleigh fading.

Round ``k`` (1-based) sees

    h_k = sigma_k * (sqrt(1 - r_k) * alpha_k + rho^(k + delta - 1) * alpha_0),
    r_k = rho^(2(k + delta - 1)),

with a common ``alpha_0`` and independent ``alpha_1..alpha_K``, all CN(0, 1).
The received SNR is ``gamma_k = P_k |h_k|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DegenerateCorrelationError, DomainError
from .special_fn import log_hyp0f1


@dataclass(frozen=True)
class ChannelSpec:
    rho: float
    delta: float
    sigma2: tuple

    def __post_init__(self):
        object.__setattr__(self, "sigma2", tuple(float(s) for s in self.sigma2))
        if not math.isfinite(self.rho):
            raise DomainError(f"rho must be finite, got {self.rho}")
        if abs(self.rho) >= 1.0:
            raise DegenerateCorrelationError(f"|rho| must be < 1, got rho={self.rho}")
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise DomainError(f"delta must be a nonnegative real, got {self.delta}")
        if len(self.sigma2) < 1:
            raise DomainError("need at least one round (K >= 1)")
        if any(not (s > 0 and math.isfinite(s)) for s in self.sigma2):
            raise DomainError(f"sigma2 entries must be positive, got {self.sigma2}")
        if self.delta == 0 and self.rho != 0:
            # r_1 = rho^0 = 1: round 1 carries only alpha_0 and its conditional law is a point mass
            raise DegenerateCorrelationError("delta = 0 makes round 1 fully correlated; need delta > 0")
        if self.rho < 0 and float(self.delta) != int(self.delta):
            raise DomainError("negative rho needs an integer delta (rho^(k+delta-1) must be real)")

    @classmethod
    def uniform(cls, K: int, rho: float, delta: float = 1.0, sigma2: float = 1.0) -> "ChannelSpec":
        if int(K) != K or K < 1:
            raise DomainError(f"K must be a positive integer, got {K}")
        return cls(rho=rho, delta=delta, sigma2=(sigma2,) * int(K))

    @property
    def K(self) -> int:
        return len(self.sigma2)

    def exponents(self) -> np.ndarray:
        """k + delta - 1 for k = 1..K."""
        return np.arange(1, self.K + 1, dtype=float) + self.delta - 1.0

    def corr_sq(self) -> np.ndarray:
        """r_k = rho^(2(k+delta-1)), the fraction of round-k power carried by alpha_0."""
        if self.rho == 0:
            return np.zeros(self.K)
        return np.abs(self.rho) ** (2.0 * self.exponents())

    def corr_amp(self) -> np.ndarray:
        """rho^(k+delta-1) (signed)."""
        # integer exponents are enforced for negative rho, so this stays real
        if self.rho == 0:
            return np.zeros(self.K)
        return float(self.rho) ** self.exponents()


@dataclass(frozen=True)
class PowerProfile:
    """Per-round transmit powers, optionally tagged with their (gamma, theta) split."""

    powers: tuple
    gamma: Optional[float] = field(default=None, compare=False)
    theta: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(float(p) for p in self.powers))
        if not self.powers:
            raise DomainError("power profile is empty")
        if any(not (p > 0 and math.isfinite(p)) for p in self.powers):
            raise DomainError(f"powers must be positive and finite, got {self.powers}")

    @classmethod
    def split(cls, gamma: float, theta: Sequence[float]) -> "PowerProfile":
        if not gamma > 0:
            raise DomainError(f"gamma must be positive, got {gamma}")
        theta = tuple(float(t) for t in theta)
        if any(not t > 0 for t in theta):
            raise DomainError(f"theta entries must be positive, got {theta}")
        return cls(tuple(gamma * t for t in theta), gamma=float(gamma), theta=theta)

    @classmethod
    def constant(cls, K: int, power: float) -> "PowerProfile":
        return cls((float(power),) * int(K))

    @classmethod
    def from_db(cls, K: int, power_db: float) -> "PowerProfile":
        return cls.constant(K, db_to_linear(power_db))

    @property
    def K(self) -> int:
        return len(self.powers)

    @property
    def product(self) -> float:
        return math.prod(self.powers)


@dataclass(frozen=True)
class SnrSample:
    snr: tuple

    def __post_init__(self):
        object.__setattr__(self, "snr", tuple(float(g) for g in self.snr))
        if any(not g >= 0 for g in self.snr):
            raise DomainError(f"SNR entries must be nonnegative, got {self.snr}")


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0) if np.ndim(db) else 10.0 ** (db / 10.0)


def linear_to_db(lin):
    return 10.0 * np.log10(lin)


def _check_pair(spec: ChannelSpec, power: PowerProfile):
    if spec.K != power.K:
        raise DomainError(f"channel has K={spec.K} rounds but power profile has {power.K}")


def mean_snr(spec: ChannelSpec, power: PowerProfile) -> np.ndarray:
    """Marginal mean P_k sigma_k^2 of each round's SNR."""
    _check_pair(spec, power)
    return np.asarray(power.powers) * np.asarray(spec.sigma2)


def omegas(spec: ChannelSpec, power: PowerProfile) -> np.ndarray:
    """Conditional scale Omega_k = P_k sigma_k^2 (1 - r_k)."""
    return mean_snr(spec, power) * (1.0 - spec.corr_sq())


# -- random streams ----------------------------------------------------------

def make_stream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based (Philox) generator for substream ``key`` under ``seed``.

    Distinct keys give statistically independent streams, so work split into
    keyed blocks is reproducible whatever the number of workers.
    """
    ss = np.random.SeedSequence([int(seed), *(int(k) for k in key)])
    return np.random.Generator(np.random.Philox(ss))


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    # CN(0, 1): independent real/imag parts with variance 1/2 each
    z = rng.standard_normal((*shape, 2))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(0.5)


def sample_snr_batch(
    spec: ChannelSpec, power: PowerProfile, rng: np.random.Generator, n: int,
    *, return_t: bool = False,
):
    """Draw ``n`` SNR vectors; returns an ``(n, K)`` array.

    With ``return_t`` also returns ``T = |alpha_0|^2`` per draw.
    """
    _check_pair(spec, power)
    a0 = _complex_normal(rng, (n,))
    ak = _complex_normal(rng, (n, spec.K))
    amp = spec.corr_amp()
    h = np.sqrt(1.0 - spec.corr_sq()) * ak + amp * a0[:, None]
    snr = mean_snr(spec, power) * np.abs(h) ** 2
    if return_t:
        return snr, np.abs(a0) ** 2
    return snr


def sample_snr(spec: ChannelSpec, power: PowerProfile, rng: np.random.Generator) -> SnrSample:
    """One SNR vector (gamma_1, ..., gamma_K)."""
    return SnrSample(tuple(sample_snr_batch(spec, power, rng, 1)[0]))


def cond_snr_pdf(spec: ChannelSpec, power: PowerProfile, k: int, t: float, x: float) -> float:
    """Density of gamma_k at ``x`` given |alpha_0|^2 = ``t`` (noncentral exponential)."""
    _check_pair(spec, power)
    if not 1 <= k <= spec.K:
        raise DomainError(f"round index must be in 1..{spec.K}, got {k}")
    if t < 0 or x < 0:
        raise DomainError("t and x must be nonnegative")
    r = spec.corr_sq()[k - 1]
    mean = power.powers[k - 1] * spec.sigma2[k - 1]
    om = mean * (1.0 - r)
    arg = r * t * x / ((1.0 - r) * om)
    return math.exp(-(x + mean * r * t) / om + log_hyp0f1(1.0, arg)) / om
