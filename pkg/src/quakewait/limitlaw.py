"""The exponential limit law and the conditional waiting-time family.

``limit_cdf`` is the exponential law 1 - exp(-m h) toward which the
conditional family converges as the elapsed time grows; ``conditional_cdf``
is the exact law at elapsed time t for the k-th shock under a linear
cumulative rate with slope m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import as_generator

_U_TOL = 1e-12
_MAX_ITER = 200


class ValidityError(ValueError):
    """The (t, k, m) triple does not define a proper CDF."""


@dataclass(frozen=True)
class WaitingLaw:
    """Parameters of the conditional waiting-time CDF at elapsed time t.

    Valid only when m * t >= k - 1; otherwise the density at h = 0 would
    be negative.
    """

    t: float
    k: int
    m: float

    def __post_init__(self):
        if self.k < 1 or int(self.k) != self.k:
            raise ValidityError("k must be a positive integer")
        if self.m <= 0:
            raise ValidityError("m must be strictly positive")
        if self.t < 0:
            raise ValidityError("t must be nonnegative")
        if self.m * self.t < self.k - 1:
            raise ValidityError(
                f"need m*t >= k-1 for a valid CDF (got m*t={self.m * self.t}, "
                f"k-1={self.k - 1})")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "m", float(self.m))


def limit_cdf(m: float, h):
    """Exponential limit CDF: 1 - exp(-m h)."""
    if m <= 0:
        raise ValueError("m must be strictly positive")
    h_arr = np.asarray(h, dtype=float)
    if np.any(h_arr < 0):
        raise ValueError("h must be nonnegative")
    out = -np.expm1(-m * h_arr)
    return float(out) if np.isscalar(h) or h_arr.ndim == 0 else out


def conditional_cdf(law: WaitingLaw, h):
    """Conditional CDF: 1 - (1 + h/t)^{k-1} exp(-m h)."""
    if law.k == 1:
        return limit_cdf(law.m, h)
    h_arr = np.asarray(h, dtype=float)
    if np.any(h_arr < 0):
        raise ValueError("h must be nonnegative")
    out = -np.expm1((law.k - 1) * np.log1p(h_arr / law.t) - law.m * h_arr)
    return float(out) if np.isscalar(h) or h_arr.ndim == 0 else out


def sample_conditional(law: WaitingLaw, n: int, seed) -> np.ndarray:
    """Inverse-transform sampling by bracketed bisection.

    The CDF is continuous and strictly increasing wherever the law is
    valid, so bisection cannot diverge; iteration stops once every sample
    satisfies |G_t(sample) - u| <= 1e-12.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return np.empty(0)
    rng = as_generator(seed)
    u = rng.random(int(n))
    lo = np.zeros(n)
    hi = np.full(n, 1.0 / law.m)
    for _ in range(_MAX_ITER):
        short = conditional_cdf(law, hi) < u
        if not short.any():
            break
        hi[short] *= 2.0
    mid = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        g = conditional_cdf(law, mid)
        if np.max(np.abs(g - u)) <= _U_TOL:
            break
        above = g >= u
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        mid = 0.5 * (lo + hi)
    return mid


def breakpoints(m: float, r: int) -> np.ndarray:
    """Cut points h_1 < ... < h_{r-1} with limit_cdf(m, h_i) = i/r."""
    if m <= 0:
        raise ValueError("m must be strictly positive")
    if r < 2 or int(r) != r:
        raise ValueError("r must be an integer >= 2")
    i = np.arange(1, int(r))
    return -np.log1p(-i / r) / m


def sup_distance_exp(a: float, b: float) -> float:
    """sup over h >= 0 of |exp(-a h) - exp(-b h)| for rates a, b >= 0.

    For a != b the maximizer is h* = ln(a/b)/(a-b).  Near a == b the h*
    formula is 0/0, so the first-order limit exp(-1)|a-b|/max(a,b) is
    returned instead.  A zero rate gives the degenerate distance 1.
    """
    if a < 0 or b < 0:
        raise ValueError("rates must be nonnegative")
    if a == b:
        return 0.0
    if a == 0.0 or b == 0.0:
        return 1.0
    if abs(a - b) < 1e-12 * max(a, b):
        return math.exp(-1.0) * abs(a - b) / max(a, b)
    h_star = math.log(a / b) / (a - b)
    return abs(math.exp(-b * h_star) - math.exp(-a * h_star))
