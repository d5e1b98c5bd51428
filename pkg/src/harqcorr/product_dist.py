"""CDF of A = prod_k (1 + R_k) with independent R_k ~ Gamma(m_k, Omega_k).

Three routes are provided:

* ``cdf_product_fft`` -- primary.  Works with Y_k = ln(1 + R_k) >= 0, so
  P(A <= x) = P(sum Y_k <= ln x).  Because every Y_k is nonnegative only the
  window [0, ln x] matters and no tail truncation is needed.  All factors but
  the last are discretized to a lattice (mass of each rounding cell),
  convolved by FFT, and the result is integrated against the exact CDF of the
  last factor.  The lattice error is O(h^2) and is removed by Richardson
  extrapolation between the n and 2n lattices.
* ``cdf_product_mellin`` -- inverse Mellin transform along a vertical line,
  using the factor transforms E[(1+R)^-s] = Omega^-m Psi(m, m+1-s; 1/Omega).
* ``cdf_product_mc`` -- plain Monte Carlo.

``cdf_product_asymptotic`` gives the high-SNR leading term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np
from scipy import integrate
from scipy.fft import irfft, next_fast_len, rfft
from scipy.special import gammainc, gammaincc

from .exceptions import ConvergenceError, DomainError, GridError
from .special_fn import tricomi_psi

DEFAULT_GRID_SIZE = 2**14
MAX_GRID_SIZE = 2**20
FFT_ATOL = 1e-10
FFT_RTOL = 1e-7

# mixture terms are pushed through the inverse FFT in blocks of this many rows
_FFT_BATCH = 64


@dataclass(frozen=True)
class ProductDistSpec:
    shapes: tuple
    scales: tuple

    def __post_init__(self):
        shapes = tuple(self.shapes)
        scales = tuple(float(s) for s in self.scales)
        if len(shapes) != len(scales) or not shapes:
            raise DomainError("shapes and scales must be nonempty and of equal length")
        if any(int(m) != m or m < 1 for m in shapes):
            raise DomainError(f"shapes must be integers >= 1, got {shapes}")
        if any(not (s > 0 and math.isfinite(s)) for s in scales):
            raise DomainError(f"scales must be positive and finite, got {scales}")
        object.__setattr__(self, "shapes", tuple(int(m) for m in shapes))
        object.__setattr__(self, "scales", scales)

    @property
    def K(self) -> int:
        return len(self.shapes)

    @classmethod
    def for_index(cls, l: Sequence[int], scales: Sequence[float]) -> "ProductDistSpec":
        """Mixture component for multi-index ``l``: shapes 1 + l_k."""
        return cls(tuple(1 + int(v) for v in l), tuple(scales))


@dataclass(frozen=True)
class LogGrid:
    """Uniform lattice on [0, y_max] in the log domain, ``n`` cells of width ``step``."""

    y_max: float
    n: int = DEFAULT_GRID_SIZE

    def __post_init__(self):
        if not self.y_max > 0:
            raise GridError(f"y_max must be positive, got {self.y_max}")
        if int(self.n) != self.n or self.n < 2:
            raise GridError(f"grid size must be an integer >= 2, got {self.n}")

    @property
    def step(self) -> float:
        return self.y_max / self.n

    @classmethod
    def covering(cls, x: float, n: int = DEFAULT_GRID_SIZE) -> "LogGrid":
        return cls(math.log(x), n)

    def cells_for(self, L: float) -> int:
        """Cells needed to reach ``L`` at (at least) this grid's resolution."""
        if L > self.y_max * (1 + 1e-12):
            raise GridError(f"grid reaches y={self.y_max:.6g} but ln x = {L:.6g}")
        return max(2, math.ceil(L / self.step - 1e-9))


# -- log-domain factor laws ----------------------------------------------------

def log_factor_pdf(m: int, omega: float, y):
    """Density of Y = ln(1 + R), R ~ Gamma(m, omega), at ``y >= 0``."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("log-factor density is supported on y >= 0")
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        w = np.expm1(y)
        log_f = y - w / omega - math.lgamma(m) - m * math.log(omega)
        if m > 1:
            log_f = log_f + (m - 1) * np.log(w)
        out = np.exp(log_f)
    # far tail: exp(-w/omega) underflows before (m-1) log w overflows
    out = np.where(np.isnan(out), 0.0, out)
    return float(out) if out.ndim == 0 else out


def gamma_log_cdf(m: int, omega: float) -> Callable:
    """y -> P(ln(1+R) <= y) for R ~ Gamma(m, omega)."""
    def cdf(y):
        return gammainc(m, np.expm1(np.maximum(y, 0.0)) / omega)
    cdf.sf = lambda y: gammaincc(m, np.expm1(np.maximum(y, 0.0)) / omega)
    return cdf


def _cell_masses(cdf, h: float, count: int) -> np.ndarray:
    """Mass of Y in the rounding cells of lattice points 0, h, ..., (count-1) h."""
    edges = np.concatenate(([0.0], (np.arange(count) + 0.5) * h))
    lower = cdf(edges)
    masses = np.diff(lower)
    sf = getattr(cdf, "sf", None)
    if sf is not None and lower[-1] > 0.5:
        # upper-tail differences avoid cancellation once the CDF is near 1
        upper = sf(edges)
        masses = np.where(lower[1:] > 0.5, upper[:-1] - upper[1:], masses)
    return np.maximum(masses, 0.0)


class _Lattice:
    """n-cell lattice on [0, L] plus the FFT length for (K-1)-fold convolutions."""

    def __init__(self, L: float, n: int, K: int):
        self.L = L
        self.n = n
        self.h = L / n
        self.K = K
        self.nfft = next_fast_len(max(K - 1, 1) * (n + 1))
        self.y = np.arange(n + 1) * self.h

    def spectrum(self, cdf) -> np.ndarray:
        return rfft(_cell_masses(cdf, self.h, self.n + 1), self.nfft)

    def tail_weights(self, cdf) -> np.ndarray:
        # exact CDF of the last factor at L - y_j
        return cdf(self.L - self.y)

    def combine(self, spectra: np.ndarray, tails: np.ndarray) -> np.ndarray:
        """Rows of spectra (product over the first K-1 factors) against rows of tails."""
        conv = irfft(spectra, self.nfft, axis=-1)[..., : self.n + 1]
        return np.einsum("ij,ij->i", conv, tails)


def _richardson(evaluate: Callable[[int], float], n0: int, atol: float, rtol: float):
    """Extrapolate an O(h^2) lattice result; returns (value, |F_2n - F_n|)."""
    n = n0
    coarse = evaluate(n)
    while True:
        fine = evaluate(2 * n)
        diff = abs(fine - coarse)
        value = (4.0 * fine - coarse) / 3.0
        if diff <= max(atol, rtol * abs(value)) or 4 * n > MAX_GRID_SIZE:
            return value, diff
        n *= 2
        coarse = fine


def lattice_cdf_sum(
    factor_cdfs: Sequence[Callable], L: float, n: int,
) -> float:
    """P(sum Y_k <= L) on an n-cell lattice (single evaluation, no extrapolation)."""
    K = len(factor_cdfs)
    if K == 1:
        return float(factor_cdfs[0](L))
    lat = _Lattice(L, n, K)
    spec = lat.spectrum(factor_cdfs[0])
    for cdf in factor_cdfs[1:-1]:
        spec = spec * lat.spectrum(cdf)
    return float(lat.combine(spec[None, :], lat.tail_weights(factor_cdfs[-1])[None, :])[0])


def _resolve_cells(x: float, grid: Optional[LogGrid]) -> int:
    L = math.log(x)
    if grid is None:
        return DEFAULT_GRID_SIZE
    return grid.cells_for(L)


def cdf_product_fft(
    spec: ProductDistSpec, x: float, grid: Optional[LogGrid] = None, *,
    atol: float = FFT_ATOL, rtol: float = FFT_RTOL, full_output: bool = False,
):
    """P(prod (1 + R_k) <= x) by log-domain lattice convolution.

    ``grid`` must reach ln x; its step sets the starting resolution, which is
    doubled until the n/2n results agree to ``max(atol, rtol * F)``.  With
    ``full_output`` returns ``(F, err)`` where ``err = |F_2n - F_n|`` bounds the
    discretization error of the extrapolated value.
    """
    x = float(x)
    if x <= 1.0:
        return (0.0, 0.0) if full_output else 0.0
    n0 = _resolve_cells(x, grid)
    cdfs = [gamma_log_cdf(m, om) for m, om in zip(spec.shapes, spec.scales)]
    L = math.log(x)
    if spec.K == 1:
        value, err = float(cdfs[0](L)), 0.0
    else:
        value, err = _richardson(lambda n: lattice_cdf_sum(cdfs, L, n), n0, atol, rtol)
    value = min(max(value, 0.0), 1.0)
    return (value, err) if full_output else value


def mixture_cdf_fft(
    indices: Sequence[Sequence[int]], weights: Sequence[float], scales: Sequence[float],
    x: float, grid: Optional[LogGrid] = None, *,
    atol: float = FFT_ATOL, rtol: float = FFT_RTOL,
):
    """sum_l W_l F_{A_l}(x) with shapes 1 + l_k sharing one set of scales.

    Factor spectra are computed once per (round, shape) and reused across
    mixture terms.  Returns ``(value, err)``.
    """
    x = float(x)
    if x <= 1.0:
        return 0.0, 0.0
    terms = [(tuple(int(v) for v in l), float(w)) for l, w in zip(indices, weights) if w > 0.0]
    if not terms:
        return 0.0, 0.0
    scales = [float(s) for s in scales]
    K = len(scales)
    L = math.log(x)
    if K == 1:
        value = sum(w * float(gamma_log_cdf(1 + l[0], scales[0])(L)) for l, w in terms)
        return min(max(value, 0.0), 1.0), 0.0

    def evaluate(n):
        lat = _Lattice(L, n, K)
        spectra = {}
        tails = {}

        def spectrum(k, m):
            if (k, m) not in spectra:
                spectra[k, m] = lat.spectrum(gamma_log_cdf(m, scales[k]))
            return spectra[k, m]

        def tail(m):
            if m not in tails:
                tails[m] = lat.tail_weights(gamma_log_cdf(m, scales[-1]))
            return tails[m]

        total = 0.0
        for start in range(0, len(terms), _FFT_BATCH):
            block = terms[start:start + _FFT_BATCH]
            rows = []
            for l, _ in block:
                s = spectrum(0, 1 + l[0])
                for k in range(1, K - 1):
                    s = s * spectrum(k, 1 + l[k])
                rows.append(s)
            tail_rows = np.stack([tail(1 + l[-1]) for l, _ in block])
            vals = lat.combine(np.stack(rows), tail_rows)
            total += float(np.dot([w for _, w in block], vals))
        return total

    n0 = _resolve_cells(x, grid)
    value, err = _richardson(evaluate, n0, atol, rtol)
    return min(max(value, 0.0), 1.0), err


# -- Mellin-Barnes route -------------------------------------------------------

def factor_mellin(m: int, omega: float, s) -> complex:
    """E[(1 + R)^(-s)] for R ~ Gamma(m, omega)."""
    return omega ** (-m) * tricomi_psi(m, m + 1 - complex(s), 1.0 / omega)


def cdf_product_mellin(
    spec: ProductDistSpec, x: float, contour_c: float = 0.5, *,
    tol: float = 1e-9, limlst: int = 200,
) -> float:
    """P(prod (1 + R_k) <= x) by numerical inversion of the Mellin transform.

    F(x) = 1/(2 pi i) int_{c - i inf}^{c + i inf} x^s / s * prod_k E[(1+R_k)^-s] ds,
    c > 0.  Writing s = c + i tau and using conjugate symmetry,

        F(x) = x^c / pi * int_0^inf Re[exp(i tau ln x) h(c + i tau)] d tau,

    a pair of Fourier integrals over a half line, evaluated with QUADPACK's
    QAWF rule (which copes with the algebraic decay of h).
    """
    if contour_c <= 0:
        raise DomainError(f"contour abscissa must be positive, got {contour_c}")
    x = float(x)
    if x <= 1.0:
        return 0.0
    L = math.log(x)

    @lru_cache(maxsize=None)
    def h(tau):
        s = complex(contour_c, tau)
        val = 1.0 / s
        for m, om in zip(spec.shapes, spec.scales):
            val *= factor_mellin(m, om, s)
        return val

    re_part, err_re = integrate.quad(
        lambda t: h(t).real, 0.0, np.inf, weight="cos", wvar=L, epsabs=tol, limlst=limlst,
    )
    im_part, err_im = integrate.quad(
        lambda t: h(t).imag, 0.0, np.inf, weight="sin", wvar=L, epsabs=tol, limlst=limlst,
    )
    scale = x**contour_c / math.pi
    err = scale * (err_re + err_im)
    if not math.isfinite(err) or err > 1e3 * tol * max(scale, 1.0):
        raise ConvergenceError("Mellin-Barnes contour integral did not converge", err)
    return min(max(scale * (re_part - im_part), 0.0), 1.0)


# -- Monte Carlo oracle --------------------------------------------------------

def cdf_product_mc(spec: ProductDistSpec, x: float, n: int, rng: np.random.Generator,
                   *, block: int = 2**20):
    """Monte Carlo estimate of P(prod (1 + R_k) < x); returns ``(p, standard_error)``."""
    hits = 0
    done = 0
    L = math.log(x) if x > 0 else -np.inf
    while done < n:
        size = min(block, n - done)
        logs = np.zeros(size)
        for m, om in zip(spec.shapes, spec.scales):
            logs += np.log1p(rng.gamma(m, om, size))
        hits += int(np.count_nonzero(logs < L))
        done += size
    p = hits / n
    return p, math.sqrt(max(p * (1 - p), 0.0) / n)


# -- high-SNR leading term -----------------------------------------------------

def _pole_orders(shapes):
    # integrand 1/(s * prod_k (s-1)...(s-m_k)): pole at 0 and at j with multiplicity #{m_k >= j}
    orders = {0: 1}
    for j in range(1, max(shapes) + 1):
        orders[j] = sum(1 for m in shapes if m >= j)
    return orders


def _mb_constant_residue(x, shapes, dps=50):
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        L = mpmath.log(xm)
        orders = _pole_orders(shapes)
        total = mpmath.mpf(0)
        for a, p in orders.items():
            # Laurent coefficient of eps^(p-1) in x^a e^(eps L) prod_{b != a} (a - b + eps)^(-q_b)
            series = [L**i / mpmath.factorial(i) for i in range(p)]
            for b, q in orders.items():
                if b == a:
                    continue
                d = mpmath.mpf(a - b)
                factor = [(-1) ** i * mpmath.binomial(q + i - 1, i) * d ** (-q - i) for i in range(p)]
                series = [mpmath.fsum(series[j] * factor[i - j] for j in range(i + 1)) for i in range(p)]
            total += xm**a * series[p - 1]
        return float(total)


def _mb_constant_contour(x, shapes, tol=1e-12):
    L = math.log(x)
    c = max(shapes) + 0.5

    def r(tau):
        s = complex(c, tau)
        den = s
        for m in shapes:
            for j in range(1, m + 1):
                den *= s - j
        return 1.0 / den

    re_part, e1 = integrate.quad(lambda t: r(t).real, 0.0, np.inf, weight="cos", wvar=L, epsabs=tol, limlst=200)
    im_part, e2 = integrate.quad(lambda t: r(t).imag, 0.0, np.inf, weight="sin", wvar=L, epsabs=tol, limlst=200)
    scale = x**c / math.pi
    if scale * (e1 + e2) > 1e-6 * max(1.0, abs(scale * (re_part - im_part))):
        raise ConvergenceError("Mellin-Barnes constant did not converge", scale * (e1 + e2))
    return scale * (re_part - im_part)


def mellin_barnes_constant(x: float, shapes: Sequence[int], method: str = "residue") -> float:
    """M(x; m) = 1/(2 pi i) int x^s / s * prod_k Gamma(s - m_k)/Gamma(s) ds, Re s > max m.

    Equals the volume-type integral int_{prod(1+r_k) <= x} prod_k r_k^(m_k-1)/(m_k-1)! dr.
    The integrand is rational times x^s, so ``method="residue"`` sums its
    residues exactly (in extended precision); ``method="contour"`` integrates
    along the vertical line.  For all-ones shapes this is G_K(x).
    """
    shapes = [int(m) for m in shapes]
    if any(m < 1 for m in shapes):
        raise DomainError("shapes must be >= 1")
    if x < 1:
        raise DomainError(f"x must be >= 1, got {x}")
    if x == 1.0:
        return 0.0
    if method == "residue":
        return _mb_constant_residue(x, shapes)
    if method == "contour":
        return _mb_constant_contour(x, shapes)
    raise ValueError(f"unknown method {method!r}")


def cdf_product_asymptotic(
    spec: ProductDistSpec, x: float, gamma: float, zeta: Sequence[float], *,
    method: str = "residue",
) -> float:
    """Leading high-SNR term prod_k (gamma zeta_k)^-m_k * M(x; m) of F_A(x).

    ``spec.scales`` must equal ``gamma * zeta``.  Decays as gamma^-(sum m_k).
    """
    zeta = np.asarray(zeta, dtype=float)
    if zeta.shape != (spec.K,) or np.any(zeta <= 0) or not gamma > 0:
        raise DomainError("need gamma > 0 and K positive zeta entries")
    if not np.allclose(spec.scales, gamma * zeta, rtol=1e-9, atol=0.0):
        raise DomainError("spec.scales must equal gamma * zeta")
    if x <= 1.0:
        return 0.0
    log_pref = -float(np.dot(spec.shapes, np.log(gamma * zeta)))
    return math.exp(log_pref) * mellin_barnes_constant(x, spec.shapes, method)
