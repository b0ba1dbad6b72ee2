"""Piecewise-constant nonnegative radial profiles on (0, inf).

These are the test functions the oracle maximizes over and the lifts turn
into n-dimensional functions: constant on each knot cell, zero outside the
support.  Inner integrals against them reduce to exact partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["RadialTestFunction"]


@dataclass(frozen=True)
class RadialTestFunction:
    knots: tuple
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.knots) - 1:
            raise ValueError("need one value per cell (len(knots) - 1)")
        prev = 0.0
        for k in self.knots:
            if not (k > prev and math.isfinite(k)):
                raise ValueError("knots must be positive, finite and strictly increasing")
            prev = k
        if any(v < 0 for v in self.values):
            raise ValueError("cell values must be nonnegative")

    @classmethod
    def from_arrays(cls, knots, values) -> "RadialTestFunction":
        return cls(tuple(float(k) for k in knots), tuple(float(v) for v in values))

    @classmethod
    def indicator(cls, a: float, b: float, height: float = 1.0) -> "RadialTestFunction":
        return cls((float(a), float(b)), (float(height),))

    def __call__(self, t: float) -> float:
        if t <= self.knots[0] or t >= self.knots[-1]:
            return 0.0
        idx = int(np.searchsorted(self.knots, t, side="right")) - 1
        return self.values[idx]

    def cumulative(self, t: float) -> float:
        """Exact integral_0^t of the profile."""
        total = 0.0
        for lo, hi, v in zip(self.knots[:-1], self.knots[1:], self.values):
            if t <= lo:
                break
            total += v * (min(t, hi) - lo)
        return total

    @property
    def total_mass(self) -> float:
        return self.cumulative(self.knots[-1])

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values)

    def scaled(self, c: float) -> "RadialTestFunction":
        return RadialTestFunction(self.knots, tuple(c * v for v in self.values))

    def with_value(self, idx: int, value: float) -> "RadialTestFunction":
        vals = list(self.values)
        vals[idx] = value
        return RadialTestFunction(self.knots, tuple(vals))
