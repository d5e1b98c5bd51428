"""Outage probability of HARQ-IR after K rounds: P(prod_k (1 + gamma_k) < 2^R).

Evaluators:

* ``outage_exact`` -- truncated negative-multinomial mixture of
  independent-channel CDFs, with the discarded mass as a certified bound.
* ``outage_mc`` -- Monte Carlo over keyed substreams (worker-count invariant).
* ``outage_asymptotic`` -- high-SNR form G_K(2^R) / (ell * prod P_k * prod sigma_k^2).
* ``outage_conditional`` -- untruncated reference that averages the
  conditionally independent law over |alpha_0|^2 by Gauss-Laguerre quadrature.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
from scipy import special, stats

from .channel import ChannelSpec, PowerProfile, SnrSample, make_stream, omegas, sample_snr_batch
from .exceptions import DomainError
from .negmult import build_table, correlation_ratios, order_for_deficit
from .product_dist import (
    DEFAULT_GRID_SIZE,
    FFT_ATOL,
    FFT_RTOL,
    LogGrid,
    _Lattice,
    _richardson,
    gamma_log_cdf,
    mixture_cdf_fft,
)
from .special_fn import g_k

METHODS = ("exact", "mc", "asymptotic")

# Monte Carlo draws are generated in blocks of this size, block i from substream (seed, i)
MC_BLOCK = 2**16
WILSON_Z = 1.959963984540054


class UnreliableEstimateWarning(UserWarning):
    """A Monte Carlo estimate rests on too few outage events to be trusted."""


@dataclass(frozen=True)
class OutageQuery:
    channel: ChannelSpec
    power: PowerProfile
    rate: float
    method: str = "exact"
    truncation: int = 3
    deficit_tol: Optional[float] = None
    samples: int = 10**6
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DomainError(f"rate must be positive, got {self.rate}")
        if self.method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.channel.K != self.power.K:
            raise DomainError(f"channel has K={self.channel.K} but {self.power.K} powers were given")
        if int(self.truncation) != self.truncation or self.truncation < 0:
            raise DomainError(f"truncation order must be a nonnegative integer, got {self.truncation}")
        if self.samples < 1:
            raise DomainError(f"samples must be positive, got {self.samples}")
        if self.workers < 1:
            raise DomainError(f"workers must be positive, got {self.workers}")

    @property
    def threshold(self) -> float:
        return 2.0**self.rate


@dataclass(frozen=True)
class OutageResult:
    p: float
    method: str
    error: Optional[float]
    metadata: dict = field(default_factory=dict)


def _meta(q: OutageQuery, **extra) -> dict:
    return {
        "K": q.channel.K,
        "rho": q.channel.rho,
        "delta": q.channel.delta,
        "R": q.rate,
        "powers": q.power.powers,
        **extra,
    }


def accumulated_info(snr: SnrSample) -> float:
    """Mutual information accumulated over all rounds, in bits per channel use."""
    return math.fsum(math.log2(1.0 + g) for g in snr.snr)


# -- exact ---------------------------------------------------------------------

def outage_exact(q: OutageQuery, *, grid_size: int = DEFAULT_GRID_SIZE) -> OutageResult:
    """sum over sum(l) <= N of W_l F_{A_l}(2^R).

    N is ``q.truncation`` unless ``q.deficit_tol`` is given, in which case the
    smallest N with deficit below it is used.  ``error`` is the deficit
    1 - sum W_l, an upper bound on what the dropped terms could add.
    """
    N = q.truncation if q.deficit_tol is None else order_for_deficit(q.channel, q.deficit_tol)
    table = build_table(q.channel, N)
    x = q.threshold
    grid = LogGrid.covering(x, grid_size)
    p, disc = mixture_cdf_fft(table.indices, table.weights, omegas(q.channel, q.power), x, grid)
    return OutageResult(
        p=p, method="exact", error=table.deficit,
        metadata=_meta(q, N=N, mass=table.mass, terms=len(table), discretization_error=disc),
    )


# -- Monte Carlo ---------------------------------------------------------------

def _block_hits(spec, power, log_x, seed, index, size):
    rng = make_stream(seed, index)
    snr = sample_snr_batch(spec, power, rng, size)
    return int(np.count_nonzero(np.sum(np.log1p(snr), axis=1) < log_x))


def wilson_interval(hits: int, n: int, z: float = WILSON_Z):
    """Wilson score interval; returns (low, high)."""
    p = hits / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    # the bounds are exactly 0 and 1 at the extremes; avoid rounding residue there
    low = 0.0 if hits == 0 else max(0.0, center - half)
    high = 1.0 if hits == n else min(1.0, center + half)
    return low, high


def mc_hits(spec: ChannelSpec, power: PowerProfile, rate: float, n: int, seed: int,
            workers: int = 1) -> int:
    """Number of outage events among ``n`` draws; independent of ``workers``."""
    log_x = rate * math.log(2.0)
    sizes = [min(MC_BLOCK, n - start) for start in range(0, n, MC_BLOCK)]
    jobs = [(spec, power, log_x, seed, i, size) for i, size in enumerate(sizes)]
    if workers == 1:
        return sum(_block_hits(*job) for job in jobs)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda job: _block_hits(*job), jobs))


def outage_mc(q: OutageQuery) -> OutageResult:
    """Fraction of seeded draws with prod(1 + gamma_k) < 2^R, with a Wilson 95% interval.

    ``error`` is the half-width of the interval.  Draws are i.i.d.; see
    ``mc_hits`` for the block/substream layout.
    """
    n = int(q.samples)
    hits = mc_hits(q.channel, q.power, q.rate, n, q.seed, q.workers)
    low, high = wilson_interval(hits, n)
    return OutageResult(
        p=hits / n, method="mc", error=0.5 * (high - low),
        metadata=_meta(q, samples=n, hits=hits, ci_low=low, ci_high=high, seed=q.seed),
    )


def outage_mc_escalating(q: OutageQuery, target_rel: float = 0.1, max_samples: int = 10**8) -> OutageResult:
    """Double the sample count until the CI half-width is below ``target_rel * p``."""
    n = q.samples
    while True:
        res = outage_mc(replace(q, samples=n))
        if (res.p > 0 and res.error < target_rel * res.p) or 2 * n > max_samples:
            return res
        n *= 2


# -- asymptotic ----------------------------------------------------------------

def ell(spec: ChannelSpec) -> float:
    """Correlation penalty (1 + sum u_k) * prod_k (1 - r_k); equals 1 at rho = 0."""
    u = correlation_ratios(spec)
    return float((1.0 + np.sum(u)) * np.prod(1.0 - spec.corr_sq()))


def asymptotic_terms(q: OutageQuery):
    """The three factors (rate, correlation, power) whose product is the asymptotic outage."""
    rate_term = g_k(q.channel.K, q.threshold)
    corr_term = 1.0 / ell(q.channel)
    power_term = 1.0 / (q.power.product * math.prod(q.channel.sigma2))
    return rate_term, corr_term, power_term


def outage_asymptotic(q: OutageQuery) -> OutageResult:
    a, b, c = asymptotic_terms(q)
    p = a * b * c
    clamped = p > 1.0
    return OutageResult(
        p=min(p, 1.0), method="asymptotic", error=None,
        metadata=_meta(q, clamped=clamped, unclamped=p),
    )


def evaluate(q: OutageQuery) -> OutageResult:
    """Dispatch on ``q.method``."""
    return {"exact": outage_exact, "mc": outage_mc, "asymptotic": outage_asymptotic}[q.method](q)


# -- untruncated reference -----------------------------------------------------

def _noncentral_log_cdf(omega: float, nc: float):
    # gamma_k | T=t equals (omega/2) * chi'^2(2 dof, noncentrality 2 u_k t)
    if nc == 0.0:
        return gamma_log_cdf(1, omega)

    def cdf(y):
        return stats.ncx2.cdf(2.0 * np.expm1(np.maximum(y, 0.0)) / omega, 2, nc)
    cdf.sf = lambda y: stats.ncx2.sf(2.0 * np.expm1(np.maximum(y, 0.0)) / omega, 2, nc)
    return cdf


def outage_conditional(spec: ChannelSpec, power: PowerProfile, rate: float, *,
                       nodes: int = 64, grid_size: int = 2**12):
    """Outage without series truncation; returns ``(p, discretization_error)``.

    Given T = |alpha_0|^2 the rounds are independent noncentral exponentials,
    so P(outage) = int_0^inf e^-t P(outage | t) dt, done by Gauss-Laguerre.
    Meant as a cross-check for ``outage_exact`` at strong correlation where
    the mixture needs many terms.
    """
    t_nodes, t_weights = special.roots_laguerre(nodes)
    om = omegas(spec, power)
    u = correlation_ratios(spec)
    K = spec.K
    L = rate * math.log(2.0)

    def evaluate_lattice(n):
        lat = _Lattice(L, n, K)
        total = 0.0
        for t, wt in zip(t_nodes, t_weights):
            cdfs = [_noncentral_log_cdf(om[k], 2.0 * u[k] * t) for k in range(K)]
            if K == 1:
                val = float(cdfs[0](L))
            else:
                s = lat.spectrum(cdfs[0])
                for cdf in cdfs[1:-1]:
                    s = s * lat.spectrum(cdf)
                val = float(lat.combine(s[None, :], lat.tail_weights(cdfs[-1])[None, :])[0])
            total += wt * val
        return total

    if K == 1:
        return evaluate_lattice(2), 0.0
    return _richardson(evaluate_lattice, grid_size, FFT_ATOL, FFT_RTOL)


# -- diversity -----------------------------------------------------------------

def diversity_slope(
    spec: ChannelSpec, theta: Sequence[float], gammas: Sequence[float], rate: float,
    method: str = "exact", **query_kw,
) -> float:
    """Negative least-squares slope of log10 p against log10 gamma, powers = gamma * theta."""
    gammas = np.asarray(gammas, dtype=float)
    if gammas.size < 2:
        raise DomainError("need at least two gamma points")
    ps = []
    for g in gammas:
        q = OutageQuery(spec, PowerProfile.split(g, theta), rate, method=method, **query_kw)
        res = evaluate(q)
        if method == "mc" and res.metadata["hits"] < 10:
            warnings.warn(
                f"only {res.metadata['hits']} outage events at gamma={g:.4g}; slope is unreliable",
                UnreliableEstimateWarning, stacklevel=2,
            )
        ps.append(res.p)
    ps = np.asarray(ps)
    if np.any(ps <= 0):
        raise DomainError("outage estimate is zero at some gamma; cannot take logs")
    slope = np.polyfit(np.log10(gammas), np.log10(ps), 1)[0]
    return float(-slope)


__all__ = [
    "METHODS",
    "OutageQuery",
    "OutageResult",
    "UnreliableEstimateWarning",
    "accumulated_info",
    "asymptotic_terms",
    "diversity_slope",
    "ell",
    "evaluate",
    "mc_hits",
    "outage_asymptotic",
    "outage_conditional",
    "outage_exact",
    "outage_mc",
    "outage_mc_escalating",
    "wilson_interval",
]
