"""Symbolic 1-D weights on (0, inf) and separable n-dimensional weights.

The weight grammar is a product of the factors

    c      t^a      (1+t)^b      log(e+t)^g      exp(-d*t)      exp(-d/t)

optionally glued piecewise at finitely many breakpoints 0 < b1 < ... < bm.
Every expression evaluates to a value in (0, inf) for all t > 0, so these
are genuine weights.  Powers and products stay inside the grammar with
exact exponent arithmetic, which is what makes closed-form integration and
exact asymptotics possible downstream.

exp rates may be negative (a power of exp(-d*t) with a negative exponent
is still a positive finite weight); the parser accepts the general form so
that normalized printing round-trips.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .asym import Asym

__all__ = [
    "WeightParseError",
    "Monomial",
    "Piecewise",
    "CallableWeight",
    "WeightExpr",
    "parse_weight",
    "format_weight",
    "weight_eval",
    "weight_eval_array",
    "weight_pow_compose",
    "weight_product",
    "weight_breakpoints",
    "AngularWeight",
    "RnWeight",
    "ExponentQuad",
]


class WeightParseError(ValueError):
    """Syntax or validity error in a weight expression, with offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


def _fmt(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


@dataclass(frozen=True)
class Monomial:
    """Product c * t^a * (1+t)^b * log(e+t)^g * exp(-d*t) * exp(-e/t)."""

    coeff: float = 1.0
    t_pow: float = 0.0
    shift_pow: float = 0.0
    log_pow: float = 0.0
    exp_rate: float = 0.0
    inv_rate: float = 0.0

    def __post_init__(self):
        if not (self.coeff > 0.0 and math.isfinite(self.coeff)):
            raise ValueError(f"weight constant must be positive and finite, got {self.coeff}")
        for name in ("t_pow", "shift_pow", "log_pow", "exp_rate", "inv_rate"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite exponent {name}")

    def __call__(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"weights live on (0, inf); got t={t}")
        val = self.coeff
        if self.t_pow:
            val *= t ** self.t_pow
        if self.shift_pow:
            val *= (1.0 + t) ** self.shift_pow
        if self.log_pow:
            val *= math.log(math.e + t) ** self.log_pow
        arg = -self.exp_rate * t - self.inv_rate / t
        if arg:
            val *= math.exp(arg)
        return val

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        val = np.full(t.shape, self.coeff)
        if self.t_pow:
            val = val * t ** self.t_pow
        if self.shift_pow:
            val = val * (1.0 + t) ** self.shift_pow
        if self.log_pow:
            val = val * np.log(math.e + t) ** self.log_pow
        if self.exp_rate or self.inv_rate:
            val = val * np.exp(-self.exp_rate * t - self.inv_rate / t)
        return val

    def log_value(self, t: float) -> float:
        """log of the weight; exact and stable far outside double range."""
        if t <= 0.0:
            raise ValueError(f"weights live on (0, inf); got t={t}")
        out = math.log(self.coeff)
        if self.t_pow:
            out += self.t_pow * math.log(t)
        if self.shift_pow:
            out += self.shift_pow * math.log1p(t)
        if self.log_pow:
            out += self.log_pow * math.log(math.log(math.e + t))
        return out - self.exp_rate * t - self.inv_rate / t

    def pow(self, r: float) -> "Monomial":
        if r == 1.0:
            return self
        return Monomial(
            coeff=self.coeff ** r,
            t_pow=self.t_pow * r,
            shift_pow=self.shift_pow * r,
            log_pow=self.log_pow * r,
            exp_rate=self.exp_rate * r,
            inv_rate=self.inv_rate * r,
        )

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(
            coeff=self.coeff * other.coeff,
            t_pow=self.t_pow + other.t_pow,
            shift_pow=self.shift_pow + other.shift_pow,
            log_pow=self.log_pow + other.log_pow,
            exp_rate=self.exp_rate + other.exp_rate,
            inv_rate=self.inv_rate + other.inv_rate,
        )

    def scale(self, c: float) -> "Monomial":
        return replace(self, coeff=self.coeff * c)

    @property
    def breakpoints(self) -> tuple:
        return ()

    def asym_zero(self) -> Asym:
        # (1+t)^b, log(e+t)^g and exp(-d*t) all tend to 1 at 0+; exp(-e/t)
        # vanishes (or blows up) faster than any power.
        power = self.t_pow
        if self.inv_rate > 0:
            power = math.inf
        elif self.inv_rate < 0:
            power = -math.inf
        return Asym(coeff=self.coeff, power=power)

    def asym_inf(self) -> Asym:
        return Asym(
            coeff=self.coeff,
            power=self.t_pow + self.shift_pow,
            log_pow=self.log_pow,
            rate=self.exp_rate,
        )

    def log_deriv(self, t: float) -> float:
        """d/dt log m(t); used to locate interior extrema exactly."""
        val = 0.0
        if self.t_pow:
            val += self.t_pow / t
        if self.shift_pow:
            val += self.shift_pow / (1.0 + t)
        if self.log_pow:
            val += self.log_pow / ((math.e + t) * math.log(math.e + t))
        val -= self.exp_rate
        if self.inv_rate:
            val += self.inv_rate / (t * t)
        return val

    def is_constant(self) -> bool:
        return not (self.t_pow or self.shift_pow or self.log_pow or self.exp_rate or self.inv_rate)


@dataclass(frozen=True)
class Piecewise:
    """Finitely many Monomial pieces glued at breakpoints; covers (0, inf)."""

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("piecewise weight needs one more piece than breakpoints")
        prev = 0.0
        for b in self.breakpoints:
            if not (b > prev and math.isfinite(b)):
                raise ValueError(f"breakpoints must be strictly increasing, finite and > 0: {self.breakpoints}")
            prev = b
        if not self.breakpoints:
            raise ValueError("piecewise weight without breakpoints; use a plain product")

    def _index(self, t: float) -> int:
        return bisect_right(self.breakpoints, t)

    def __call__(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"weights live on (0, inf); got t={t}")
        return self.pieces[self._index(t)](t)

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(np.asarray(self.breakpoints), t, side="right")
        out = np.empty(t.shape)
        for k, piece in enumerate(self.pieces):
            mask = idx == k
            if np.any(mask):
                out[mask] = piece.eval_array(t[mask])
        return out

    def log_value(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"weights live on (0, inf); got t={t}")
        return self.pieces[self._index(t)].log_value(t)

    def pow(self, r: float) -> "Piecewise":
        return Piecewise(self.breakpoints, tuple(p.pow(r) for p in self.pieces))

    def scale(self, c: float) -> "Piecewise":
        return Piecewise(self.breakpoints, tuple(p.scale(c) for p in self.pieces))

    def asym_zero(self) -> Asym:
        return self.pieces[0].asym_zero()

    def asym_inf(self) -> Asym:
        return self.pieces[-1].asym_inf()


@dataclass(frozen=True)
class CallableWeight:
    """Positive function on (0, inf) outside the grammar (reduced objects).

    Carries optional asymptotics so quadrature can still certify
    divergence; without them, improper integrals fall back to refinement
    with an explicit unresolved status.
    """

    fn: Callable[[float], float]
    breakpoints: tuple = ()
    asym0: Asym | None = None
    asyminf: Asym | None = None
    label: str = "callable"

    def __call__(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"weights live on (0, inf); got t={t}")
        return self.fn(t)

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        return np.array([self.fn(float(x)) for x in np.asarray(t, dtype=float).ravel()]).reshape(np.shape(t))

    def log_value(self, t: float) -> float:
        val = self(t)
        if val == 0.0:
            return -math.inf
        return math.log(val) if math.isfinite(val) else math.inf

    def pow(self, r: float) -> "CallableWeight":
        fn = self.fn
        return CallableWeight(
            fn=lambda t: fn(t) ** r,
            breakpoints=self.breakpoints,
            asym0=self.asym0.pow(r) if self.asym0 is not None else None,
            asyminf=self.asyminf.pow(r) if self.asyminf is not None else None,
            label=f"({self.label})^{_fmt(r)}",
        )

    def scale(self, c: float) -> "CallableWeight":
        fn = self.fn
        return CallableWeight(
            fn=lambda t: c * fn(t),
            breakpoints=self.breakpoints,
            asym0=self.asym0.scale(c) if self.asym0 is not None else None,
            asyminf=self.asyminf.scale(c) if self.asyminf is not None else None,
            label=f"{_fmt(c)}*{self.label}",
        )

    def asym_zero(self) -> Asym | None:
        return self.asym0

    def asym_inf(self) -> Asym | None:
        return self.asyminf


WeightExpr = Union[Monomial, Piecewise]
WeightLike = Union[Monomial, Piecewise, CallableWeight]


def weight_eval(w: WeightLike, t: float) -> float:
    return w(t)


def weight_eval_array(w: WeightLike, t) -> np.ndarray:
    return w.eval_array(np.asarray(t, dtype=float))


def weight_pow_compose(w: WeightLike, r: float):
    """w(t)^r, exact on the grammar (exponents add/multiply)."""
    return w.pow(r)


def weight_breakpoints(w: WeightLike) -> tuple:
    return tuple(w.breakpoints)


def _merge_pieces(a: WeightExpr, b: WeightExpr) -> WeightExpr:
    breaks = sorted(set(weight_breakpoints(a)) | set(weight_breakpoints(b)))

    def piece_at(w, lo, hi):
        mid = math.sqrt(lo * hi) if hi != math.inf else lo + 1.0
        if isinstance(w, Piecewise):
            return w.pieces[w._index(mid)]
        return w

    if not breaks:
        return a.mul(b)
    edges = [0.0] + breaks + [math.inf]
    pieces = tuple(
        piece_at(a, edges[i], edges[i + 1]).mul(piece_at(b, edges[i], edges[i + 1]))
        for i in range(len(edges) - 1)
    )
    return Piecewise(tuple(breaks), pieces)


def weight_product(*ws: WeightLike) -> WeightLike:
    """Pointwise product; exact for grammar weights."""
    out = None
    for w in ws:
        if out is None:
            out = w
            continue
        if isinstance(out, CallableWeight) or isinstance(w, CallableWeight):
            f, g = out, w
            out = CallableWeight(lambda t, f=f, g=g: f(t) * g(t),
                                 breakpoints=tuple(sorted(set(f.breakpoints) | set(w.breakpoints))))
        else:
            out = _merge_pieces(out, w)
    return out


# ---------------------------------------------------------------------------
# Parsing and printing

_NUM_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str, what: str = ""):
        if not self.accept(token):
            raise WeightParseError(f"expected {what or token!r}", self.pos)

    def number(self, what: str = "number") -> float:
        self.skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if not m:
            raise WeightParseError(f"expected {what}", self.pos)
        self.pos = m.end()
        return float(m.group())

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_factor(sc: _Scanner) -> Monomial:
    sc.skip_ws()
    start = sc.pos
    if sc.accept("t^"):
        return Monomial(t_pow=sc.number("exponent"))
    if sc.accept("(1+t)^"):
        return Monomial(shift_pow=sc.number("exponent"))
    if sc.accept("log(e+t)^"):
        return Monomial(log_pow=sc.number("exponent"))
    if sc.accept("exp(-"):
        rate = sc.number("rate")
        if sc.accept("*t)"):
            return Monomial(exp_rate=rate)
        if sc.accept("/t)"):
            return Monomial(inv_rate=rate)
        raise WeightParseError("expected '*t)' or '/t)' in exp factor", sc.pos)
    m = _NUM_RE.match(sc.text, sc.pos)
    if m:
        sc.pos = m.end()
        value = float(m.group())
        if value <= 0.0:
            raise WeightParseError(f"non-positive constant {m.group()}", start)
        return Monomial(coeff=value)
    raise WeightParseError("expected a weight factor", sc.pos)


def _parse_product(sc: _Scanner) -> Monomial:
    out = _parse_factor(sc)
    while sc.accept("*"):
        out = out.mul(_parse_factor(sc))
    return out


def _parse_bound(sc: _Scanner) -> float:
    sc.skip_ws()
    if sc.accept("inf") or sc.accept("∞"):
        return math.inf
    return sc.number("interval bound")


def parse_weight(expr: str) -> WeightExpr:
    """Parse the weight grammar; raises WeightParseError with the offset."""
    sc = _Scanner(expr)
    sc.skip_ws()
    if sc.accept("{"):
        entries = []
        while True:
            product = _parse_product(sc)
            sc.expect("on", "'on'")
            sc.expect("(", "'('")
            lo = _parse_bound(sc)
            sc.expect(",", "','")
            hi = _parse_bound(sc)
            sc.expect(")", "')'")
            entries.append((lo, hi, product))
            if sc.accept(";"):
                continue
            sc.expect("}", "'}' or ';'")
            break
        if not sc.at_end():
            raise WeightParseError("trailing input after '}'", sc.pos)
        if entries[0][0] != 0.0:
            raise WeightParseError("piecewise weight must start at 0", 0)
        if entries[-1][1] != math.inf:
            raise WeightParseError("piecewise weight must extend to inf", 0)
        breaks = []
        for i, (lo, hi, _) in enumerate(entries):
            if not lo < hi:
                raise WeightParseError(f"degenerate piece ({_fmt(lo)},{_fmt(hi)})", 0)
            if i > 0 and lo != entries[i - 1][1]:
                raise WeightParseError(
                    f"gap or overlap between pieces at {_fmt(entries[i - 1][1])} and {_fmt(lo)}", 0)
            if hi != math.inf:
                breaks.append(hi)
        if not breaks:
            return entries[0][2]
        return Piecewise(tuple(breaks), tuple(e[2] for e in entries))
    out = _parse_product(sc)
    if not sc.at_end():
        raise WeightParseError("trailing input", sc.pos)
    return out


def _format_monomial(m: Monomial) -> str:
    parts = []
    if m.coeff != 1.0 or m.is_constant():
        parts.append(_fmt(m.coeff))
    if m.t_pow:
        parts.append(f"t^{_fmt(m.t_pow)}")
    if m.shift_pow:
        parts.append(f"(1+t)^{_fmt(m.shift_pow)}")
    if m.log_pow:
        parts.append(f"log(e+t)^{_fmt(m.log_pow)}")
    if m.exp_rate:
        parts.append(f"exp(-{_fmt(m.exp_rate)}*t)")
    if m.inv_rate:
        parts.append(f"exp(-{_fmt(m.inv_rate)}/t)")
    return " * ".join(parts)


def format_weight(w: WeightExpr) -> str:
    """Normalized printing; the canonical serialization used in configs."""
    if isinstance(w, Monomial):
        return _format_monomial(w)
    edges = [0.0] + list(w.breakpoints) + [math.inf]
    bits = []
    for i, piece in enumerate(w.pieces):
        hi = "inf" if edges[i + 1] == math.inf else _fmt(edges[i + 1])
        bits.append(f"{_format_monomial(piece)} on ({_fmt(edges[i])},{hi})")
    return "{" + "; ".join(bits) + "}"


# ---------------------------------------------------------------------------
# n-dimensional separable weights

def sphere_measure(n: int) -> float:
    """Surface measure of the unit sphere in R^n; two point masses for n=1."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n == 1:
        return 2.0
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class AngularWeight:
    """Angular factor a(x/|x|): a constant, or values tabulated on a sphere
    quadrature grid whose weights sum to the sphere measure."""

    dim: int
    values: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.values) != len(self.weights) or not self.values:
            raise ValueError("angular grid needs matching, nonempty values and weights")
        if any(v <= 0 or not math.isfinite(v) for v in self.values):
            raise ValueError("angular values must be positive and finite")
        if any(w <= 0 for w in self.weights):
            raise ValueError("angular quadrature weights must be positive")
        total = sum(self.weights)
        if not math.isclose(total, sphere_measure(self.dim), rel_tol=1e-9):
            raise ValueError(
                f"angular quadrature weights sum to {total}, expected {sphere_measure(self.dim)}")

    @classmethod
    def constant(cls, value: float, dim: int) -> "AngularWeight":
        return cls(dim=dim, values=(float(value),), weights=(sphere_measure(dim),))

    @classmethod
    def tabulated(cls, values: Sequence[float], dim: int,
                  weights: Sequence[float] | None = None) -> "AngularWeight":
        """Tabulated values; default grids are uniform atoms for n in {1, 2}
        and a Gauss-Legendre x uniform product grid for n = 3."""
        values = tuple(float(v) for v in values)
        if weights is not None:
            return cls(dim=dim, values=values, weights=tuple(float(w) for w in weights))
        m = len(values)
        if dim in (1, 2):
            if dim == 1 and m != 2:
                raise ValueError("the 0-sphere has exactly two atoms")
            w = sphere_measure(dim) / m
            return cls(dim=dim, values=values, weights=(w,) * m)
        if dim == 3:
            # grid laid out as n_theta x n_phi, row-major in values
            for n_theta in range(1, m + 1):
                if n_theta * n_theta == m:
                    break
            else:
                raise ValueError("n=3 tabulated grid must be square (n_theta == n_phi)")
            nodes, glw = np.polynomial.legendre.leggauss(n_theta)
            del nodes
            n_phi = n_theta
            w = np.repeat(glw, n_phi) * (2.0 * math.pi / n_phi)
            return cls(dim=dim, values=values, weights=tuple(w))
        raise ValueError("tabulated angular weights support n in {1, 2, 3}")

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    def integral_of_power(self, r: float) -> float:
        """integral over the sphere of a^r d(sigma)."""
        return float(sum(w * v ** r for v, w in zip(self.values, self.weights)))

    def esssup(self) -> float:
        return max(self.values)

    def ratio(self, other: "AngularWeight") -> tuple:
        """Pointwise values of other/self on a common grid (for v1^-1 v2)."""
        if self.dim != other.dim:
            raise ValueError("angular dimensions differ")
        if len(self.values) == len(other.values):
            return tuple(b / a for a, b in zip(self.values, other.values))
        if self.is_constant:
            return tuple(v / self.values[0] for v in other.values)
        if other.is_constant:
            return tuple(other.values[0] / v for v in self.values)
        raise ValueError("incompatible angular grids")


@dataclass(frozen=True)
class RnWeight:
    """Separable weight v(x) = radial(|x|) * angular(x/|x|)."""

    dim: int
    radial: WeightLike
    angular: AngularWeight

    def __post_init__(self):
        if self.angular.dim != self.dim:
            raise ValueError("angular weight dimension mismatch")

    @classmethod
    def from_radial(cls, radial: WeightLike, dim: int, angular_value: float = 1.0) -> "RnWeight":
        return cls(dim=dim, radial=radial, angular=AngularWeight.constant(angular_value, dim))

    @classmethod
    def one(cls, dim: int) -> "RnWeight":
        return cls.from_radial(Monomial(), dim)

    def value(self, r: float, node: int = 0) -> float:
        return self.radial(r) * self.angular.values[node]


@dataclass(frozen=True)
class ExponentQuad:
    """The four space exponents plus the derived reduced parameters."""

    p1: float
    p2: float
    q1: float
    q2: float

    def __post_init__(self):
        for name in ("p1", "p2", "q1", "q2"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"exponent {name} must be a positive finite real, got {v}")

    @property
    def p(self) -> float:
        return self.p2 / self.p1

    @property
    def q(self) -> float:
        return self.q2 / self.p1

    @property
    def theta(self) -> float:
        return self.q1 / self.p1

    def as_tuple(self) -> tuple:
        return (self.p1, self.p2, self.q1, self.q2)
