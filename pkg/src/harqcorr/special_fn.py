"""Scalar numerical kernels: log-gamma, 0F1, Tricomi's Psi and the G_K function.

Everything here is a pure function of its arguments.
"""

import math
import warnings

import numpy as np
from scipy import integrate, special

from .exceptions import ConvergenceError, DomainError

LN2 = math.log(2.0)

# Above this argument 0F1 switches from the power series to the Bessel form.
_HYP0F1_SERIES_MAX = 400.0


def loggamma(z):
    """Principal branch of log Gamma(z) for real or complex ``z``."""
    return special.loggamma(z)


def as_complex_point(value) -> complex:
    """Coerce ``value`` to a finite complex number."""
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise DomainError(f"complex point must be finite, got {c!r}")
    return c


def _hyp0f1_series(b, z):
    term = 1.0
    total = 1.0
    n = 0
    while True:
        term *= z / ((b + n) * (n + 1))
        total += term
        n += 1
        # terms are positive; once they shrink the tail is bounded by a geometric series
        if term <= 1e-16 * total and z / ((b + n) * (n + 1)) < 0.5:
            return total
        if n > 10_000:
            raise ConvergenceError("0F1 series did not converge", term / total)


def log_hyp0f1(b: float, z: float) -> float:
    """Natural log of 0F1(;b;z); stays finite where 0F1 itself overflows."""
    if b <= 0:
        raise DomainError(f"0F1 requires b > 0, got b={b}")
    if z < 0:
        raise DomainError(f"0F1 is only provided for z >= 0, got z={z}")
    if z <= _HYP0F1_SERIES_MAX:
        return math.log(_hyp0f1_series(b, z))
    # 0F1(;b;z) = Gamma(b) z^((1-b)/2) I_{b-1}(2 sqrt z); ive removes the exp(2 sqrt z) factor
    r = 2.0 * math.sqrt(z)
    return (
        math.lgamma(b)
        + 0.5 * (1.0 - b) * math.log(z)
        + math.log(special.ive(b - 1.0, r))
        + r
    )


def hyp0f1(b: float, z: float) -> float:
    """Confluent hypergeometric limit function 0F1(;b;z) for b > 0, z >= 0."""
    return math.exp(log_hyp0f1(b, z))


def _psi_log_weight(v, a, beta_r, z):
    w = np.expm1(v)
    with np.errstate(divide="ignore"):
        return -z * w + (a - 1.0) * np.log(w) + beta_r * v


def tricomi_psi(a: float, b, z: float, *, rtol: float = 1e-11) -> complex:
    """Tricomi's confluent hypergeometric function Psi(a, b; z).

    Real ``a > 0``, complex ``b`` and real ``z > 0``.  Uses the integral
    representation

        Psi(a, b; z) = 1/Gamma(a) * int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt

    after the substitution ``v = log(1 + t)``, which turns the oscillation
    ``(1+t)^(i Im b)`` into a pure Fourier factor ``exp(i Im(b) v)`` that
    QUADPACK's oscillatory rules integrate directly.
    """
    if a <= 0:
        raise DomainError(f"Psi requires a > 0, got a={a}")
    if z <= 0:
        raise DomainError(f"Psi requires z > 0, got z={z}")
    b = as_complex_point(b)
    beta_r = b.real - a
    beta_i = b.imag

    # upper limit: move right until the integrand is ~e^-45 below its peak
    vmax = math.log1p((a + abs(beta_r) + 60.0) / z)
    grid = np.linspace(vmax * 1e-6, vmax, 400)
    peak = float(np.max(_psi_log_weight(grid, a, beta_r, z)))
    while _psi_log_weight(vmax, a, beta_r, z) > peak - 45.0:
        vmax += 1.0

    def g(v):
        return math.exp(_psi_log_weight(v, a, beta_r, z) - peak) if v > 0 else (
            math.exp(-peak) if a == 1.0 else 0.0
        )

    # oscillatory cancellation makes |Psi| << int |integrand|; tolerances are set against the latter
    norm, _ = integrate.quad(g, 0.0, vmax, epsabs=0.0, epsrel=1e-8, limit=500)
    opts = dict(epsabs=rtol * norm, epsrel=rtol, limit=1000)
    v_split = min(1.0, vmax) if a < 1.0 else 0.0
    re = im = 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if v_split > 0.0:
            # integrable endpoint singularity (a < 1): non-oscillatory adaptive rule
            r1, e1 = integrate.quad(lambda v: g(v) * math.cos(beta_i * v), 0.0, v_split, **opts)
            i1, e2 = integrate.quad(lambda v: g(v) * math.sin(beta_i * v), 0.0, v_split, **opts)
            re, im, err = r1, i1, e1 + e2
        if beta_i == 0.0:
            r2, e3 = integrate.quad(g, v_split, vmax, **opts)
            re += r2
            err += e3
        else:
            r2, e3 = integrate.quad(g, v_split, vmax, weight="cos", wvar=beta_i, **opts)
            i2, e4 = integrate.quad(g, v_split, vmax, weight="sin", wvar=beta_i, **opts)
            re += r2
            im += i2
            err += e3 + e4

    if not (math.isfinite(re) and math.isfinite(im)) or err > 1e3 * rtol * norm:
        raise ConvergenceError(f"Psi({a}, {b}; {z}) quadrature failed", err / norm)
    scale = math.exp(peak - math.lgamma(a))
    return complex(re * scale, im * scale)


def _g_k_series(K, L):
    # G_K(e^L) = int_0^L e^s s^(K-1)/(K-1)! ds, expanded in powers of L
    total = 0.0
    i = 0
    log_lead = K * math.log(L) - math.lgamma(K)
    while True:
        term = math.exp(log_lead + i * math.log(L) - math.lgamma(i + 1)) / (K + i)
        total += term
        if term < 1e-17 * total:
            return total
        i += 1


def g_k(K: int, x):
    """Rate function G_K(x) of the asymptotic outage probability.

    Closed form ``(-1)^K + x * sum_{k=0}^{K-1} (-1)^k (ln x)^(K-k-1) / (K-k-1)!``.
    Near ``x = 1`` that sum cancels catastrophically, so for ``ln x < 1`` the
    equivalent power series in ``ln x`` is used instead.  ``x`` may be an array.
    """
    if int(K) != K or K < 1:
        raise DomainError(f"K must be a positive integer, got {K}")
    K = int(K)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 1.0) or np.any(~np.isfinite(xs)):
        raise DomainError("G_K(x) is defined for finite x >= 1")
    out = np.empty_like(xs)
    for idx, xv in np.ndenumerate(xs):
        L = math.log(xv)
        if L == 0.0:
            out[idx] = 0.0
        elif L < 1.0:
            out[idx] = _g_k_series(K, L)
        else:
            s = sum((-1) ** k * L ** (K - k - 1) / math.factorial(K - k - 1) for k in range(K))
            out[idx] = (-1) ** K + xv * s
    return float(out) if out.ndim == 0 else out


def g_k_deriv(K: int, R, order: int = 1):
    """First or second derivative of R -> G_K(2^R)."""
    if int(K) != K or K < 1:
        raise DomainError(f"K must be a positive integer, got {K}")
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    K = int(K)
    Rs = np.asarray(R, dtype=float)
    if np.any(Rs < 0):
        raise DomainError("derivatives of G_K(2^R) need R >= 0")
    u = Rs * LN2
    two_r = np.exp2(Rs)
    inv_fact = 1.0 / math.factorial(K - 1)
    if order == 1:
        out = LN2 * u ** (K - 1) * two_r * inv_fact
    else:
        lower = (K - 1) * u ** (K - 2) if K >= 2 else np.zeros_like(u)
        out = LN2**2 * inv_fact * (two_r * u ** (K - 1) + two_r * lower)
    return float(out) if np.ndim(out) == 0 else out
