"""Dimension reduction between n-dimensional and 1-D weighted inequalities.

For separable weights v = rho(|x|) * a(x/|x|) the mixed-norm quotient over
functions on R^n collapses to a 1-D quotient against a reduced weight:

  * exponent p < 1: vtilde(t) = rho(t) * (int_S a^{1/(1-p)} dsigma)^{1-p}
                                 * t^{(n-1)(1-p)},
    with the best constant preserved exactly; the lift that realizes it is
    constructed here and its defining integral identities are testable.
  * exponent p = 1: vtilde(t) = rho(t) * esssup a, preserved two-sided up
    to a Hoelder-saturation loss controlled by eps.

Also houses the Lebesgue rewrite u(x) = v(x) * tailnorm(w, p, |x|) for
p = q spaces, and the inversion x -> x/|x|^2 that turns complementary-ball
spaces into ball spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .asym import Asym, tail_integrable
from .profiles import RadialTestFunction
from .quadrature import Cumulative1D, integrate_callable
from .weights import (
    AngularWeight,
    CallableWeight,
    Monomial,
    Piecewise,
    RnWeight,
    WeightExpr,
    weight_product,
)

__all__ = [
    "DegenerateSpaceError",
    "UnsupportedWeightError",
    "AngularResolutionError",
    "MorreySpace",
    "ReducedProblem",
    "sphere_functionals",
    "reduce_subunity",
    "reduce_unity",
    "reduce_embedding",
    "lift_subunity",
    "lift_unity",
    "morrey_to_lebesgue",
    "complementary_transform",
    "complementary_space",
]


class DegenerateSpaceError(ValueError):
    """The outer weight has an infinite tail; the space only contains 0."""


class UnsupportedWeightError(ValueError):
    """Weight outside the closure required by the requested transform."""


class AngularResolutionError(ValueError):
    """Angular grid cannot isolate the near-supremum set."""


@dataclass(frozen=True)
class MorreySpace:
    """One side of the embedding: LM_{p,q}(v, w)."""

    v: RnWeight
    w: WeightExpr
    p: float
    q: float

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("space exponents must be positive")


def sphere_functionals(a: AngularWeight, n: int, r: float) -> tuple[float, float]:
    """(integral over the sphere of a^r, esssup of a); exact for constants."""
    if a.dim != n:
        raise ValueError(f"angular weight lives on S^{a.dim - 1}, asked for n={n}")
    return a.integral_of_power(r), a.esssup()


def _scale_and_power_factor(radial, factor: float, t_pow: float):
    """radial(t) * factor * t^t_pow, staying symbolic when possible."""
    mono = Monomial(coeff=factor, t_pow=t_pow)
    if isinstance(radial, (Monomial, Piecewise)):
        return weight_product(radial, mono)
    a0 = radial.asym_zero()
    ai = radial.asym_inf()
    return CallableWeight(
        fn=lambda t: radial(t) * factor * t ** t_pow,
        breakpoints=radial.breakpoints,
        asym0=a0.mul(Asym(factor, t_pow)) if a0 is not None else None,
        asyminf=ai.mul(Asym(factor, t_pow)) if ai is not None else None,
        label=f"reduced({radial.label})",
    )


def reduce_subunity(v: RnWeight, p: float):
    """Reduced 1-D weight for exponent p in (0,1):
    vtilde(t) = rho(t) * (int_S a^{1/(1-p)})^{1-p} * t^{(n-1)(1-p)}."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"reduction exponent must lie in (0,1), got {p}")
    ang_integral = v.angular.integral_of_power(1.0 / (1.0 - p))
    return _scale_and_power_factor(v.radial, ang_integral ** (1.0 - p),
                                   (v.dim - 1) * (1.0 - p))


def reduce_unity(v: RnWeight):
    """Reduced 1-D weight for exponent 1: vtilde(t) = rho(t) * esssup a."""
    return v.radial.scale(v.angular.esssup())


def _angular_power_ratio(a1: AngularWeight, a2: AngularWeight, e: float) -> AngularWeight:
    """Angular part of (a2/a1)^e on the common grid."""
    vals = a1.ratio(a2)
    base = a1 if len(a1.values) == len(vals) else a2
    if len(base.values) != len(vals):
        base = a2 if len(a2.values) == len(vals) else a1
    return AngularWeight(dim=a1.dim, values=tuple(v ** e for v in vals), weights=base.weights)


@dataclass(frozen=True)
class ReducedProblem:
    """The 1-D data equivalent to the n-dimensional embedding quotient:
    numerator (int_0^inf (int_0^t g^p vtilde)^{q/p} u)^{1/q} against
    denominator (int_0^inf (int_0^t g)^theta w)^{1/theta}, the whole
    quotient raised to 1/p1."""

    vtilde: object
    u: WeightExpr
    w: WeightExpr
    p: float
    q: float
    theta: float
    p1: float
    dim: int
    holder_loss: float = 0.0


def reduce_embedding(source: MorreySpace, target: MorreySpace,
                     eps_fraction: float = 1e-3) -> ReducedProblem:
    """Reduce the embedding source -> target to its 1-D quotient."""
    if source.v.dim != target.v.dim:
        raise ValueError("spaces live in different dimensions")
    p1 = source.p
    p = target.p / source.p
    if p > 1.0:
        raise ValueError("reduction requires the target integrability exponent "
                         "not to exceed the source one (p2 <= p1)")
    q = target.q / p1
    theta = source.q / p1
    u = target.w.pow(target.q)
    w = source.w.pow(source.q)
    e = target.p  # v = v1^{-p2} v2^{p2}
    radial_mix = weight_product(source.v.radial.pow(-e), target.v.radial.pow(e))
    angular_mix = _angular_power_ratio(source.v.angular, target.v.angular, e)
    vmix = RnWeight(dim=source.v.dim, radial=radial_mix, angular=angular_mix)
    if p < 1.0:
        vtilde = reduce_subunity(vmix, p)
        loss = 0.0
    else:
        vtilde = reduce_unity(vmix)
        loss = eps_fraction
    return ReducedProblem(vtilde=vtilde, u=u, w=w, p=p, q=q, theta=theta,
                          p1=p1, dim=source.v.dim, holder_loss=loss)


# ---------------------------------------------------------------------------
# Lifts realizing the reduction (proof-level constructions, used as oracles)

@dataclass(frozen=True)
class LiftedFunction:
    """n-dimensional lift f of a radial profile g.

    lift_kind "subunity": f(x) = g(|x|) * (int_S v(|x| tau')^{1/(1-p)})^{-1}
                                  * v(x)^{1/(1-p)} * |x|^{1-n}
    lift_kind "unity":    f(x) = h(x/|x|) * g(|x|) * |x|^{1-n}, with h a
                                  normalized density on the near-sup set.

    Integrals over balls are evaluated by full polar quadrature (angular
    sums times radial panels), independently of the 1-D forms they are
    meant to reproduce.
    """

    g: RadialTestFunction
    v: RnWeight
    lift_kind: str
    p: float = 1.0
    h: tuple = ()

    def node_value(self, r: float, node: int) -> float:
        """f(r s'_node) evaluated from the defining formula."""
        gval = self.g(r)
        if gval == 0.0:
            return 0.0
        n = self.v.dim
        if self.lift_kind == "subunity":
            e = 1.0 / (1.0 - self.p)
            rho = self.v.radial(r)
            ang = self.v.angular
            sphere_int = sum(wk * (rho * ak) ** e for ak, wk in zip(ang.values, ang.weights))
            return gval * (rho * ang.values[node]) ** e / sphere_int * r ** (1.0 - n)
        return self.h[node] * gval * r ** (1.0 - n)

    def _polar_integral(self, t: float, integrand) -> float:
        """sum_j w_j int_0^t integrand(r, j) r^{n-1} dr over the profile cells."""
        n = self.v.dim
        total = 0.0
        knots = [k for k in self.g.knots if k < t] + [t]
        if knots[0] > 0 and self.g(knots[0] * 0.5) == 0.0:
            pass  # leading empty cell contributes nothing anyway
        for node, wnode in enumerate(self.v.angular.weights):
            for lo, hi in zip(knots[:-1], knots[1:]):
                if hi <= lo:
                    continue
                mid = 0.5 * (lo + hi)
                if self.g(mid) == 0.0:
                    continue
                res = integrate_callable(
                    lambda r, j=node: integrand(r, j) * r ** (n - 1.0), lo, hi, rel_tol=1e-11)
                total += wnode * res.value
        return total

    def ball_integral(self, t: float) -> float:
        """integral of f over B(0, t)."""
        return self._polar_integral(t, self.node_value)

    def weighted_ball_integral(self, t: float) -> float:
        """integral of f^p v (subunity) or f v (unity) over B(0, t)."""
        power = self.p if self.lift_kind == "subunity" else 1.0

        def integrand(r: float, j: int) -> float:
            fval = self.node_value(r, j)
            if fval == 0.0:
                return 0.0
            return fval ** power * self.v.radial(r) * self.v.angular.values[j]

        return self._polar_integral(t, integrand)


def lift_subunity(g: RadialTestFunction, v: RnWeight, p: float) -> LiftedFunction:
    """Lift for p in (0,1): ball integrals of f and of f^p v reproduce the
    1-D integrals of g and of g^p vtilde exactly."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"subunity lift needs p in (0,1), got {p}")
    return LiftedFunction(g=g, v=v, lift_kind="subunity", p=p)


def lift_unity(g: RadialTestFunction, v: RnWeight, eps: float) -> LiftedFunction:
    """Lift for p = 1 via a density h concentrated where the angular part
    is within eps of its supremum; unit sphere integral, so plain ball
    integrals of f match those of g exactly while weighted ones lose at
    most a factor 1 - eps/esssup(a)."""
    if eps <= 0:
        raise AngularResolutionError("need a positive eps to isolate the near-sup set")
    ang = v.angular
    top = ang.esssup()
    mask = [val > top - eps for val in ang.values]
    mass = sum(w for w, m in zip(ang.weights, mask) if m)
    if mass <= 0:
        raise AngularResolutionError(
            "angular grid too coarse to isolate the set within eps of the supremum")
    h = tuple((1.0 / mass) if m else 0.0 for m in mask)
    return LiftedFunction(g=g, v=v, lift_kind="unity", h=h)


# ---------------------------------------------------------------------------
# Space rewrites

def morrey_to_lebesgue(v: RnWeight, w: WeightExpr, p: float) -> RnWeight:
    """For p = q the mixed norm is a plain weighted Lebesgue norm with
    u(x) = v(x) * (int_{|x|}^inf w^p)^{1/p}; degenerate if the tail blows up."""
    if p <= 0 or not math.isfinite(p):
        raise ValueError("need a finite positive exponent")
    wp = w.pow(p)
    ai = wp.asym_inf()
    if ai is not None and not tail_integrable(ai):
        raise DegenerateSpaceError(
            "outer weight has an infinite tail; the space contains only 0")
    cum = Cumulative1D(wp)
    if not math.isfinite(cum.total) and cum.tail(1.0) == math.inf:
        raise DegenerateSpaceError(
            "outer weight has an infinite tail; the space contains only 0")
    radial = v.radial
    inv_p = 1.0 / p
    a0 = radial.asym_zero()
    ainf = radial.asym_inf()
    tail0 = cum.total
    tasym = cum.tail_asym()
    u_radial = CallableWeight(
        fn=lambda t: radial(t) * cum.tail(t) ** inv_p,
        breakpoints=radial.breakpoints,
        asym0=a0.scale(tail0 ** inv_p) if (a0 is not None and math.isfinite(tail0)) else None,
        asyminf=ainf.mul(tasym.pow(inv_p)) if (ainf is not None and tasym is not None) else None,
        label="v*tailnorm(w)",
    )
    return RnWeight(dim=v.dim, radial=u_radial, angular=v.angular)


def _invert_monomial(m: Monomial) -> Monomial:
    if m.log_pow:
        raise UnsupportedWeightError(
            "log factors are not closed under t -> 1/t; unsupported weight")
    # m(1/t): (1/t)^a = t^-a, (1+1/t)^b = (1+t)^b t^-b, exp factors swap roles
    return Monomial(coeff=m.coeff, t_pow=-m.t_pow - m.shift_pow, shift_pow=m.shift_pow,
                    exp_rate=m.inv_rate, inv_rate=m.exp_rate)


def _invert_weight(w):
    if isinstance(w, Monomial):
        return _invert_monomial(w)
    if isinstance(w, Piecewise):
        breaks = tuple(sorted(1.0 / b for b in w.breakpoints))
        pieces = tuple(_invert_monomial(p) for p in reversed(w.pieces))
        return Piecewise(breaks, pieces)
    raise UnsupportedWeightError("radial part not closed under inversion")


def complementary_transform(v: RnWeight, w: WeightExpr, p: float, q: float
                            ) -> tuple[RnWeight, WeightExpr]:
    """Rewrite complementary-ball weights through x = y/|y|^2, t = 1/tau:
    vt(y) = v(y/|y|^2) |y|^{-2n/p}, wt(tau) = tau^{-2/q} w(1/tau).
    Applying the transform twice recovers the originals exactly."""
    n = v.dim
    radial = weight_product(_invert_weight(v.radial), Monomial(t_pow=-2.0 * n / p))
    w_new = weight_product(_invert_weight(w), Monomial(t_pow=-2.0 / q))
    return RnWeight(dim=n, radial=radial, angular=v.angular), w_new


def complementary_space(space: MorreySpace) -> MorreySpace:
    v_new, w_new = complementary_transform(space.v, space.w, space.p, space.q)
    return MorreySpace(v=v_new, w=w_new, p=space.p, q=space.q)
