"""Intensity models with an eventually-constant tail.

A model is a piecewise-constant rate function lambda(t) on [0, infinity)
that equals a strictly positive constant ``tail_rate`` from ``tail_start``
onward.  Piecewise-constant is the canonical representation: the cumulative
rate and its inverse close in exact arithmetic, so the time transformation
and path likelihood carry no quadrature error.  General rate functions are
admitted through the tabulation adapter :meth:`IntensityModel.tabulated`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class ModelSpecError(ValueError):
    """Malformed intensity-model specification."""


@dataclass(frozen=True, eq=False)
class IntensityModel:
    """Piecewise-constant intensity with rate ``rates[i]`` on
    ``[starts[i], starts[i+1])``; the last segment extends to infinity.

    Immutable after construction; all methods are pure.
    """

    starts: tuple
    rates: tuple
    tail_start: float
    tail_rate: float
    kind: str = "piecewise-constant"
    _cum: tuple = field(init=False, repr=False)

    def __post_init__(self):
        starts = tuple(float(s) for s in self.starts)
        rates = tuple(float(r) for r in self.rates)
        if not starts or starts[0] != 0.0:
            raise ModelSpecError("segments must start at time 0")
        if len(starts) != len(rates):
            raise ModelSpecError("one rate per breakpoint required")
        if any(s2 <= s1 for s1, s2 in zip(starts, starts[1:])):
            raise ModelSpecError("breakpoints must be strictly increasing")
        if any(r < 0 or not np.isfinite(r) for r in rates):
            raise ModelSpecError("rates must be finite and nonnegative")
        if self.tail_rate <= 0:
            raise ModelSpecError("tail_rate must be strictly positive")
        if self.tail_start < 0:
            raise ModelSpecError("tail_start must be nonnegative")
        if starts[-1] > self.tail_start:
            raise ModelSpecError("no breakpoint may lie beyond tail_start")
        if rates[-1] != self.tail_rate:
            raise ModelSpecError("last segment rate must equal tail_rate")
        # cumulative rate at each segment start
        cum = [0.0]
        for i in range(1, len(starts)):
            cum.append(cum[-1] + rates[i - 1] * (starts[i] - starts[i - 1]))
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "tail_start", float(self.tail_start))
        object.__setattr__(self, "tail_rate", float(self.tail_rate))
        object.__setattr__(self, "_cum", tuple(cum))

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, rate: float) -> "IntensityModel":
        """Homogeneous model with lambda(t) = rate for all t."""
        return cls((0.0,), (float(rate),), 0.0, float(rate), kind="constant")

    @classmethod
    def piecewise(cls, segments, tail_start=None, tail_rate=None) -> "IntensityModel":
        """Build from ``[(start, rate), ...]``; tail defaults to the last
        segment."""
        segments = list(segments)
        if not segments:
            raise ModelSpecError("at least one segment required")
        starts = tuple(s for s, _ in segments)
        rates = tuple(r for _, r in segments)
        if tail_start is None:
            tail_start = starts[-1]
        if tail_rate is None:
            tail_rate = rates[-1]
        return cls(starts, rates, tail_start, tail_rate)

    @classmethod
    def tabulated(cls, rate_fn, grid, tail_start, tail_rate) -> "IntensityModel":
        """Adapt a general rate function by sampling it at cell midpoints of
        ``grid`` (which must start at 0 and end at ``tail_start``)."""
        grid = [float(g) for g in grid]
        if not grid or grid[0] != 0.0:
            raise ModelSpecError("tabulation grid must start at 0")
        if grid[-1] > tail_start:
            raise ModelSpecError("tabulation grid must not extend past tail_start")
        starts = []
        rates = []
        for a, b in zip(grid, grid[1:]):
            starts.append(a)
            rates.append(float(rate_fn(0.5 * (a + b))))
        starts.append(grid[-1])
        rates.append(float(tail_rate))
        model = cls(tuple(starts), tuple(rates), tail_start, tail_rate,
                    kind="tabulated")
        return model

    @classmethod
    def from_spec(cls, spec: dict) -> "IntensityModel":
        """Build from a parsed model-spec mapping with keys ``segments``,
        ``tail_start`` and ``tail_rate``."""
        try:
            segments = [(float(t), float(r)) for t, r in spec["segments"]]
            tail_start = float(spec["tail_start"])
            tail_rate = float(spec["tail_rate"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelSpecError(f"invalid model spec: {exc}") from exc
        return cls(tuple(t for t, _ in segments), tuple(r for _, r in segments),
                   tail_start, tail_rate)

    @classmethod
    def from_json(cls, text: str) -> "IntensityModel":
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelSpecError(f"model spec is not valid JSON: {exc}") from exc
        return cls.from_spec(spec)

    def to_spec(self) -> dict:
        return {
            "segments": [[s, r] for s, r in zip(self.starts, self.rates)],
            "tail_start": self.tail_start,
            "tail_rate": self.tail_rate,
        }

    # -- evaluation ---------------------------------------------------

    def rate(self, t):
        """lambda(t); right-continuous in t."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise ValueError("time must be nonnegative")
        idx = np.searchsorted(self.starts, t_arr, side="right") - 1
        out = np.asarray(self.rates)[idx]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def cif(self, t):
        """Cumulative rate Lambda(t) = integral of lambda over [0, t].

        Exact segment sums; accepts scalars or arrays.
        """
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise ValueError("time must be nonnegative")
        starts = np.asarray(self.starts)
        rates = np.asarray(self.rates)
        cum = np.asarray(self._cum)
        idx = np.searchsorted(starts, t_arr, side="right") - 1
        out = cum[idx] + rates[idx] * (t_arr - starts[idx])
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def cif_inverse(self, y):
        """Smallest t with Lambda(t) >= y.

        Flat (zero-rate) stretches map to their left endpoint.  Accepts
        scalars or arrays.
        """
        y_arr = np.asarray(y, dtype=float)
        if np.any(y_arr < 0):
            raise ValueError("cumulative intensity must be nonnegative")
        starts = np.asarray(self.starts)
        rates = np.asarray(self.rates)
        cum = np.asarray(self._cum)
        # segment in which Lambda first reaches y; its rate is strictly
        # positive whenever y > 0 because cum is constant across zero-rate
        # segments and the tail rate is positive
        idx = np.maximum(np.searchsorted(cum, y_arr, side="left") - 1, 0)
        rate = rates[idx]
        safe = np.where(rate > 0, rate, 1.0)
        out = np.where(y_arr > cum[idx],
                       starts[idx] + (y_arr - cum[idx]) / safe,
                       starts[idx])
        out = np.where(y_arr == 0.0, 0.0, out)
        return float(out) if np.isscalar(y) or y_arr.ndim == 0 else out

    @property
    def asymptotic_slope(self) -> float:
        """The tail rate m = lim Lambda(t)/t."""
        return self.tail_rate
