"""Self-contained special functions and distributional tests.

Everything here is implemented in-repo to fixed absolute tolerances one
order tighter than anything downstream asserts: the regularized incomplete
gamma to 1e-10, the normal quantile to better than 1e-8.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_GAMMA_EPS = 1e-15
_GAMMA_ITMAX = 1000


@dataclass(frozen=True)
class KsResult:
    """Kolmogorov-Smirnov sup-distance and its asymptotic p-value."""

    statistic: float
    p_value: float


def _gamma_series(s: float, x: float) -> float:
    """P(s, x) by the power series; converges fast for x < s + 1."""
    term = 1.0 / s
    total = term
    a = s
    for _ in range(_GAMMA_ITMAX):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + s * math.log(x) - math.lgamma(s))

def _gamma_cf(s: float, x: float) -> float:
    """Q(s, x) by the modified Lentz continued fraction; for x >= s + 1."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    f = d
    for i in range(1, _GAMMA_ITMAX + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        f *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return f * math.exp(-x + s * math.log(x) - math.lgamma(s))


def reg_lower_incomplete_gamma(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x)."""
    if s <= 0:
        raise ValueError("s must be strictly positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        return min(_gamma_series(s, x), 1.0)
    return max(1.0 - _gamma_cf(s, x), 0.0)


def reg_upper_incomplete_gamma(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), computed
    without cancellation in the upper tail."""
    if s <= 0:
        raise ValueError("s must be strictly positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        return max(1.0 - _gamma_series(s, x), 0.0)
    return min(_gamma_cf(s, x), 1.0)


def chi2_sf(x: float, df: int) -> float:
    """Chi-square survival function with ``df`` degrees of freedom."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if df < 1 or int(df) != df:
        raise ValueError("df must be a positive integer")
    return reg_upper_incomplete_gamma(df / 2.0, x / 2.0)


# Acklam's rational approximation, then one Halley refinement against the
# erfc-based CDF; absolute error well under 1e-9.
_PPF_A = (-3.969683028665376e+01, 2.209460984245205e+02,
          -2.759285104469687e+02, 1.383577518672690e+02,
          -3.066479806614716e+01, 2.506628277459239e+00)
_PPF_B = (-5.447609879822406e+01, 1.615858368580409e+02,
          -1.556989798598866e+02, 6.680131188771972e+01,
          -1.328068155288572e+01)
_PPF_C = (-7.784894002430293e-03, -3.223964580411365e-01,
          -2.400758277161838e+00, -2.549732539343734e+00,
          4.374664141464968e+00, 2.938163982698783e+00)
_PPF_D = (7.784695709041462e-03, 3.224671290700398e-01,
          2.445134137142996e+00, 3.754408661907416e+00)


def normal_cdf(x):
    """Standard normal CDF; accepts scalars or arrays."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.array([0.5 * math.erfc(-v / math.sqrt(2.0)) for v in x_arr])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out.reshape(np.asarray(x).shape)


def folded_normal_cdf(x, sigma: float):
    """CDF of |N(0, sigma^2)|: 2 Phi(x / sigma) - 1 for x >= 0, else 0."""
    if sigma <= 0:
        raise ValueError("sigma must be strictly positive")
    x_arr = np.asarray(x, dtype=float)
    out = np.clip(2.0 * np.asarray(normal_cdf(x_arr / sigma)) - 1.0, 0.0, 1.0)
    out = np.where(x_arr < 0, 0.0, out)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def normal_quantile(p: float) -> float:
    """Standard normal quantile Phi^{-1}(p) for 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    a, b, c, d = _PPF_A, _PPF_B, _PPF_C, _PPF_D
    p_low, p_high = 0.02425, 1.0 - 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
             / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    elif p <= p_high:
        q = p - 0.5
        r = q * q
        x = ((((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
             / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
              / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    # Halley refinement
    e = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = e * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def kolmogorov_sf(lam: float, terms: int = 120) -> float:
    """Asymptotic Kolmogorov survival function
    Q(lam) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lam^2)."""
    if lam <= 1e-3:
        return 1.0
    total = 0.0
    for j in range(1, terms + 1):
        total += (-1.0) ** (j - 1) * math.exp(-2.0 * j * j * lam * lam)
    return min(max(2.0 * total, 0.0), 1.0)


def ks_test(samples, cdf) -> KsResult:
    """One-sample KS test of ``samples`` against the CDF evaluator ``cdf``.

    ``cdf`` must accept a sorted numpy array.  The p-value uses the
    asymptotic Kolmogorov distribution, adequate at the sample sizes this
    package employs (n >= 2000 in every verifier).
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("at least one sample required")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    stat = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    return KsResult(stat, kolmogorov_sf(math.sqrt(n) * stat))
