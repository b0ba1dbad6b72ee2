"""Leading asymptotic behavior of positive functions on (0, inf).

An Asym records f(t) ~ coeff * t^power * (log t)^log_pow * exp(-rate*t).
At t -> 0+ only (coeff, power) are meaningful; power = +inf / -inf encode
vanishing or blow-up faster than any power (the exp(-d/t) factors).  The
algebra below is what turns grammar weights into divergence certificates:
an improper integral is declared infinite only when its integrand is
bounded below by a non-integrable power tail, never by a refinement
timeout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Asym",
    "tail_integrable",
    "head_integrable",
    "tail_integral_asym",
    "head_integral_asym",
    "cumulative_growth_asym",
    "limit_value",
]


@dataclass(frozen=True)
class Asym:
    coeff: float
    power: float = 0.0
    log_pow: float = 0.0
    rate: float = 0.0

    def mul(self, other: "Asym") -> "Asym":
        power = self.power + other.power
        if math.isnan(power):  # inf - inf: competing super scales
            raise ArithmeticError("indeterminate asymptotic product")
        return Asym(self.coeff * other.coeff, power, self.log_pow + other.log_pow,
                    self.rate + other.rate)

    def pow(self, r: float) -> "Asym":
        if r == 0.0:
            return Asym(1.0)
        power = self.power * r
        if math.isnan(power):
            power = 0.0
        return Asym(self.coeff ** r, power, self.log_pow * r, self.rate * r)

    def scale(self, c: float) -> "Asym":
        return Asym(self.coeff * c, self.power, self.log_pow, self.rate)


def limit_value(a: Asym, at_infinity: bool) -> float:
    """Limit of f at the endpoint: 0, +inf, or the finite leading coeff."""
    if at_infinity:
        if a.rate > 0:
            return 0.0
        if a.rate < 0:
            return math.inf
        if a.power > 0:
            return math.inf
        if a.power < 0:
            return 0.0
        if a.log_pow > 0:
            return math.inf
        if a.log_pow < 0:
            return 0.0
        return a.coeff
    if a.power == math.inf:
        return 0.0
    if a.power == -math.inf:
        return math.inf
    if a.power > 0:
        return 0.0
    if a.power < 0:
        return math.inf
    return a.coeff


def tail_integrable(a: Asym) -> bool:
    """Whether the integral of f up to infinity converges."""
    if a.rate > 0:
        return True
    if a.rate < 0:
        return False
    if a.power < -1:
        return True
    if a.power > -1:
        return False
    return a.log_pow < -1


def head_integrable(a: Asym) -> bool:
    """Whether the integral of f down to 0 converges."""
    if a.power == math.inf:
        return True
    return a.power > -1


def tail_integral_asym(a: Asym) -> Asym:
    """Leading behavior of t -> integral_t^inf f, assuming it converges."""
    if a.rate > 0:
        return Asym(a.coeff / a.rate, a.power, a.log_pow, a.rate)
    if a.power < -1:
        return Asym(a.coeff / (-a.power - 1.0), a.power + 1.0, a.log_pow)
    # power == -1, log_pow < -1
    return Asym(a.coeff / (-a.log_pow - 1.0), 0.0, a.log_pow + 1.0)


def head_integral_asym(a: Asym) -> Asym:
    """Leading behavior of t -> integral_0^t f as t -> 0+, assuming finite."""
    if a.power == math.inf:
        return Asym(a.coeff, math.inf)
    return Asym(a.coeff / (a.power + 1.0), a.power + 1.0)


def cumulative_growth_asym(a: Asym) -> Asym:
    """Leading behavior of t -> integral_c^t f as t -> inf when the full
    tail diverges (the cumulative grows without bound)."""
    if a.rate < 0:
        return Asym(a.coeff / (-a.rate), a.power, a.log_pow, a.rate)
    if a.power > -1:
        return Asym(a.coeff / (a.power + 1.0), a.power + 1.0, a.log_pow)
    if a.power == -1 and a.log_pow >= -1:
        if a.log_pow == -1:
            # integral ~ log log t; treat as a flat, unboundedly growing term
            return Asym(a.coeff, 0.0, 0.0)
        return Asym(a.coeff / (a.log_pow + 1.0), 0.0, a.log_pow + 1.0)
    raise ValueError("cumulative does not grow; tail is integrable")
