"""Negative-multinomial mixture weights.

Given |alpha_0|^2 = t the round-k SNR is a Poisson(u_k t) mixture of
Gamma(1 + l_k, Omega_k) laws, with u_k = r_k / (1 - r_k).  Averaging over
t ~ Exp(1) makes l = (l_1..l_K) negative multinomial NM(1, w):

    W_l = W_0 * (sum l)! * prod_k w_k^l_k / l_k!,
    W_0 = 1 / (1 + sum u),   w_k = u_k W_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .channel import ChannelSpec
from .exceptions import DomainError, ResourceError

MultiIndex = Tuple[int, ...]

# default cap on C(N+K, K) enumerated indices
MAX_TABLE_ENTRIES = 2_000_000


def correlation_ratios(spec: ChannelSpec) -> np.ndarray:
    """u_k = r_k / (1 - r_k)."""
    r = spec.corr_sq()
    return r / (1.0 - r)


def nm_params(spec: ChannelSpec):
    """Return ``(W0, w)`` of the negative multinomial NM(1, w)."""
    u = correlation_ratios(spec)
    W0 = 1.0 / (1.0 + float(np.sum(u)))
    return W0, u * W0


def _log_weight(l, log_W0, log_w):
    lw = log_W0 + math.lgamma(sum(l) + 1)
    for lk, lwk in zip(l, log_w):
        if lk:
            lw += lk * lwk - math.lgamma(lk + 1)
    return lw


def weight(spec: ChannelSpec, l: MultiIndex) -> float:
    """Mixture probability W_l, evaluated in log space."""
    l = tuple(int(v) for v in l)
    if len(l) != spec.K or any(v < 0 for v in l):
        raise DomainError(f"multi-index must have {spec.K} nonnegative entries, got {l}")
    W0, w = nm_params(spec)
    if any(lk > 0 and wk == 0.0 for lk, wk in zip(l, w)):
        return 0.0
    with np.errstate(divide="ignore"):
        log_w = np.log(w)
    return math.exp(_log_weight(l, math.log(W0), log_w))


def iter_indices(K: int, N: int) -> Iterator[MultiIndex]:
    """All l in N_0^K with sum(l) <= N, grouped by total then lexicographic."""
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for total in range(N + 1):
        yield from compositions(total, K)


@dataclass(frozen=True)
class WeightTable:
    """Truncated mixture weights: every l with sum(l) <= N."""

    indices: tuple
    weights: np.ndarray
    N: int
    mass: float

    @property
    def deficit(self) -> float:
        """Discarded probability mass 1 - mass; bounds the truncation error of any mixture of CDFs."""
        return max(0.0, 1.0 - self.mass)

    def __len__(self):
        return len(self.indices)

    def items(self):
        return zip(self.indices, self.weights)

    def as_dict(self) -> dict:
        return {l: float(w) for l, w in self.items()}


def build_table(spec: ChannelSpec, N: int, *, max_entries: int = MAX_TABLE_ENTRIES) -> WeightTable:
    """Enumerate the C(N+K, K) indices with sum(l) <= N and their weights."""
    if int(N) != N or N < 0:
        raise DomainError(f"truncation order must be a nonnegative integer, got {N}")
    N = int(N)
    count = math.comb(N + spec.K, spec.K)
    if count > max_entries:
        raise ResourceError(
            f"N={N}, K={spec.K} needs {count} indices, above the cap of {max_entries}"
        )
    W0, w = nm_params(spec)
    log_W0 = math.log(W0)
    with np.errstate(divide="ignore"):
        log_w = np.log(w)
    # indices loading a round with w_k = 0 (rho = 0) have zero weight and are left out
    active = w > 0.0
    indices = tuple(
        l for l in iter_indices(spec.K, N)
        if all(active[k] or lk == 0 for k, lk in enumerate(l))
    )
    weights = np.array([math.exp(_log_weight(l, log_W0, log_w)) for l in indices])
    # each weight carries ~1 ulp of rounding; the true sum never exceeds 1
    mass = min(math.fsum(weights), 1.0)
    return WeightTable(indices=indices, weights=weights, N=N, mass=mass)


def order_for_deficit(spec: ChannelSpec, tol: float) -> int:
    """Smallest N whose truncation deficit is below ``tol``.

    The total sum(l) is geometric with success probability W_0, so the deficit
    after order N is (1 - W_0)^(N+1).
    """
    W0, _ = nm_params(spec)
    if W0 >= 1.0:
        return 0
    q = 1.0 - W0
    n = math.ceil(math.log(tol) / math.log(q)) - 1
    return max(0, n)
