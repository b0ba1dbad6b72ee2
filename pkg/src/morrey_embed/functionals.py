"""Parameter classification and the characterization functionals I1..I14.

Each supported exponent quadruple (p1, p2, q1, q2) with p2 <= p1 and
p2 < q2 falls into exactly one case; the embedding norm is two-sided
equivalent to a case-specific combination of the functionals:

    A_i  -> I1          A_ii -> I2
    B_i  -> I3 + I4     B_ii -> I3 + I5 + I6
    B_iii-> I4 + I7 + I8     B_iv -> I6 + I7 + I9
    C    -> I10         D_i  -> I11 + I12    D_ii -> I11 + I13 + I14

Seven of the printed functionals carry exponents that break the exact
scaling laws (v2 -> L*v2 must scale every value by L, w1 by 1/L, w2 by L),
so each functional supports a "printed" and a "corrected" exponent
variant; the verify pipeline audits which variant tracks the brute-force
oracle.  Annulus notation: the two-argument region in the integrals is
always {y : x < |y| < t}.

The tail-power kernels T1(s)^{-e} w1(s)^{q1} span hundreds of orders of
magnitude for exponential weights, so every functional built on them is
evaluated in log space with max-shifted quadrature; divergence is decided
by exact asymptotic certificates first, numbers second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize as _sciopt

from .asym import (
    Asym,
    head_integrable,
    head_integral_asym,
    limit_value,
    tail_integrable,
    tail_integral_asym,
)
from .quadrature import (
    Cumulative1D,
    SupResult,
    golden_max_log,
    integrate_callable,
    integrate_weighted,
    sup_search,
)
from .reduction import MorreySpace
from .weights import ExponentQuad, Monomial, Piecewise, weight_product

__all__ = [
    "EmbeddingCase",
    "ComponentValue",
    "FunctionalValue",
    "AdmissibilityReport",
    "EvalSettings",
    "EmbeddingProblem",
    "CASE_COMPONENTS",
    "SUPPORTED_TAGS",
    "VARIANT_SENSITIVE",
    "classify",
    "check_admissibility",
    "eval_functional",
    "embedding_norm_estimate",
    "make_variant_table",
]

SUPPORTED_TAGS = ("A_i", "A_ii", "B_i", "B_ii", "B_iii", "B_iv", "C", "D_i", "D_ii")

CASE_COMPONENTS = {
    "A_i": (1,),
    "A_ii": (2,),
    "B_i": (3, 4),
    "B_ii": (3, 5, 6),
    "B_iii": (4, 7, 8),
    "B_iv": (6, 7, 9),
    "C": (10,),
    "D_i": (11, 12),
    "D_ii": (11, 13, 14),
}

# functionals whose printed exponents differ from the scaling-consistent ones
VARIANT_SENSITIVE = (4, 6, 9, 10, 12, 13, 14)


@dataclass(frozen=True)
class EmbeddingCase:
    tag: str
    reason: str = ""

    @property
    def supported(self) -> bool:
        return self.tag in SUPPORTED_TAGS

    @property
    def components(self) -> tuple:
        return CASE_COMPONENTS.get(self.tag, ())

    def __str__(self) -> str:
        return self.tag if self.supported else f"unsupported({self.reason})"


def classify(params: ExponentQuad) -> EmbeddingCase:
    """Deterministic case tag; every quadruple gets exactly one."""
    p1, p2, q1, q2 = params.as_tuple()
    if p2 > p1:
        return EmbeddingCase("unsupported", "p2 > p1 (deferred parameter region)")
    if p2 >= q2:
        return EmbeddingCase(
            "unsupported",
            "p2 >= q2 (deferred; p2 = q2 reduces to a weighted Lebesgue target)")
    if p1 == p2:
        if q1 <= p1:
            return EmbeddingCase("C")
        return EmbeddingCase("D_i" if q1 <= q2 else "D_ii")
    if q1 <= p2:
        return EmbeddingCase("A_i" if p1 <= q2 else "A_ii")
    if max(p1, q1) <= q2:
        return EmbeddingCase("B_i")
    if p1 <= q2 < q1:
        return EmbeddingCase("B_ii")
    if q1 <= q2 < p1:
        return EmbeddingCase("B_iii")
    return EmbeddingCase("B_iv")


def make_variant_table(spec: str = "printed") -> dict:
    """Per-functional exponent choice.  spec is 'printed', 'corrected', or a
    comma list like 'I4=corrected,I9=printed' on top of printed defaults."""
    table = {k: "printed" for k in range(1, 15)}
    spec = spec.strip()
    if spec in ("printed", ""):
        return table
    if spec == "corrected":
        return {k: "corrected" for k in range(1, 15)}
    for item in spec.split(","):
        name, _, choice = item.strip().partition("=")
        if not name.upper().startswith("I") or choice not in ("printed", "corrected"):
            raise ValueError(f"bad variant entry {item!r}")
        k = int(name[1:])
        if k not in table:
            raise ValueError(f"no functional {name}")
        table[k] = choice
    return table


# ---------------------------------------------------------------------------
# Extended-real and log-space helpers

_LOG_MAX = 709.0
_LOG_MIN = -745.0


def xpow(x: float, e: float) -> float:
    if e == 0.0:
        return 1.0
    if math.isnan(x):
        return math.nan
    if x == math.inf:
        return math.inf if e > 0 else 0.0
    if x == 0.0:
        return 0.0 if e > 0 else math.inf
    try:
        return x ** e
    except OverflowError:
        return math.inf if (x > 1.0) == (e > 0) else 0.0


def xmul(*xs: float) -> float:
    """Product with nan for the indeterminate 0 * inf."""
    out = 1.0
    for x in xs:
        if math.isnan(x):
            return math.nan
        if (x == 0.0 and out == math.inf) or (x == math.inf and out == 0.0):
            return math.nan
        out *= x
    return out


def xlog(x: float) -> float:
    if math.isnan(x):
        return math.nan
    if x == 0.0:
        return -math.inf
    if x == math.inf:
        return math.inf
    return math.log(x)


def xexp(l: float) -> float:
    if math.isnan(l):
        return math.nan
    if l > _LOG_MAX:
        return math.inf
    if l < _LOG_MIN:
        return 0.0
    return math.exp(l)


def _log_asym(a: Asym, t: float) -> float:
    out = math.log(a.coeff) + a.power * math.log(t) - a.rate * t
    if a.log_pow:
        out += a.log_pow * math.log(math.log(t))
    return out


@dataclass
class ComponentValue:
    name: str
    value: float
    error_estimate: float
    finite: bool
    variant: str
    argsup: tuple = ()
    note: str = ""
    converged: bool = True


@dataclass
class FunctionalValue:
    value: float
    components: list
    error_estimate: float
    finite: bool

    @property
    def converged(self) -> bool:
        return all(c.converged for c in self.components)


@dataclass
class AdmissibilityReport:
    passed: bool
    checks: list

    def failures(self) -> list:
        return [name + (f": {detail}" if detail else "")
                for name, ok, detail in self.checks if not ok]


@dataclass(frozen=True)
class EvalSettings:
    rel_tol: float = 1e-8
    inner_rel_tol: float = 1e-9
    sup_per_decade: int = 24
    inner_per_decade: int = 12
    grid_min: float = 1e-6
    grid_max: float = 1e6
    bracket_tol: float = 1e-7
    inner_bracket_tol: float = 2e-5
    probe_points: tuple = (1e-2, 1e-1, 1.0, 1e1, 1e2)


def _edge_pads(lo: float) -> list:
    return [lo * (1.0 + 10.0 ** (-k)) for k in range(1, 9)]


# ---------------------------------------------------------------------------
# Exact range suprema for grammar weights

class RangeSupExpr:
    """sup over (a, b) of a grammar weight via per-piece critical points."""

    def __init__(self, w):
        self.w = w
        self._crits = []
        edges = [0.0] + list(w.breakpoints) + [math.inf]
        for lo, hi in zip(edges[:-1], edges[1:]):
            piece = w
            if isinstance(w, Piecewise):
                mid = math.sqrt(lo * hi) if hi != math.inf else lo + 1.0
                piece = w.pieces[w._index(mid)]
            self._crits.append((lo, hi, piece, self._piece_crits(piece, lo, hi)))

    @staticmethod
    def _piece_crits(piece: Monomial, lo: float, hi: float) -> list:
        if piece.is_constant():
            return []
        a = max(lo, 1e-10)
        b = min(hi, 1e10)
        if a >= b:
            return []
        grid = np.geomspace(a, b, max(8, int(12 * math.log10(b / a)) + 1))
        vals = [piece.log_deriv(float(t)) for t in grid]
        roots = []
        for x0, x1, f0, f1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if f0 * f1 < 0.0:
                roots.append(float(_sciopt.brentq(piece.log_deriv, x0, x1,
                                                  xtol=1e-15, rtol=1e-15)))
        return roots

    def sup(self, a: float, b: float) -> float:
        """sup over the open interval (a, b); a may be 0, b may be inf."""
        if b <= a:
            return 0.0
        best = 0.0
        for lo, hi, piece, crits in self._crits:
            s0, s1 = max(a, lo), min(b, hi)
            if s0 >= s1:
                continue
            left = limit_value(piece.asym_zero(), False) if s0 == 0.0 else piece(s0)
            right = limit_value(piece.asym_inf(), True) if s1 == math.inf else piece(s1)
            best = max(best, left, right)
            for c in crits:
                if s0 < c < s1:
                    best = max(best, piece(c))
            if best == math.inf:
                return math.inf
        return best


class RunningSupGrid:
    """Prefix/suffix suprema of a positive callable on a refined log grid."""

    def __init__(self, phi, lo: float = 1e-7, hi: float = 1e7, per_decade: int = 8,
                 breakpoints: tuple = ()):
        self.phi = phi
        pts = set(np.geomspace(lo, hi, int(per_decade * math.log10(hi / lo)) + 1))
        pts.update(b for b in breakpoints if lo < b < hi)
        self.grid = sorted(pts)
        self._seg: dict = {}

    def _segment_max(self, i: int) -> float:
        val = self._seg.get(i)
        if val is None:
            a, b = self.grid[i], self.grid[i + 1]
            _, val, _ = golden_max_log(self.phi, a, b, tol=1e-9)
            val = max(val, self.phi(a), self.phi(b))
            self._seg[i] = val
        return val

    def prefix(self, x: float) -> float:
        """sup of phi over (grid start, x], including phi(x)."""
        best = self.phi(x)
        for i in range(len(self.grid) - 1):
            if self.grid[i + 1] > x:
                if self.grid[i] < x:
                    _, v, _ = golden_max_log(self.phi, self.grid[i], x, tol=1e-9)
                    best = max(best, v)
                break
            best = max(best, self._segment_max(i))
            if best == math.inf:
                break
        return best

    def suffix(self, x: float) -> float:
        """sup of phi over [x, grid end), including phi(x)."""
        best = self.phi(x)
        for i in range(len(self.grid) - 2, -1, -1):
            if self.grid[i] < x:
                if self.grid[i + 1] > x:
                    _, v, _ = golden_max_log(self.phi, x, self.grid[i + 1], tol=1e-9)
                    best = max(best, v)
                break
            best = max(best, self._segment_max(i))
            if best == math.inf:
                break
        return best


# ---------------------------------------------------------------------------
# Shared primitives of one scenario

class EmbeddingProblem:
    """Primitives for one embedding scenario: outer-weight tails, the
    annulus mass of the mixed weight (p2 < p1) or the running suprema of
    the weight ratio (p1 = p2), with exact asymptotics for certificates."""

    def __init__(self, source: MorreySpace, target: MorreySpace,
                 settings: EvalSettings | None = None):
        if source.v.dim != target.v.dim:
            raise ValueError("spaces live in different dimensions")
        self.source = source
        self.target = target
        self.cfg = settings or EvalSettings()
        self.params = ExponentQuad(p1=source.p, p2=target.p, q1=source.q, q2=target.q)
        self.n = source.v.dim

        self.w1q1 = source.w.pow(source.q)
        self.w2q2 = target.w.pow(target.q)
        self._t1 = Cumulative1D(self.w1q1)
        self._t2 = Cumulative1D(self.w2q2)
        self.a_w1q1_inf = self.w1q1.asym_inf()
        self.a_w2q2_inf = self.w2q2.asym_inf()
        self.a_w1q1_0 = self.w1q1.asym_zero()
        self.a_w2q2_0 = self.w2q2.asym_zero()

        p1, p2 = self.params.p1, self.params.p2
        if p2 < p1:
            e_sig = p1 * p2 / (p1 - p2)
            mix_radial = weight_product(source.v.radial.pow(-e_sig), target.v.radial.pow(e_sig))
            self.mix = weight_product(mix_radial, Monomial(t_pow=self.n - 1.0))
            ratios = source.v.angular.ratio(target.v.angular)
            base = source.v.angular if len(source.v.angular.values) == len(ratios) \
                else target.v.angular
            self.A_sigma = float(sum(w * r ** e_sig for r, w in zip(ratios, base.weights)))
            self._R = Cumulative1D(self.mix)
        else:
            self.mix = None
            self._R = None
            self.A_sigma = math.nan
        # ratio of the inner weights (target over source), radial and angular
        self.rho_ratio = weight_product(source.v.radial.pow(-1.0), target.v.radial.pow(1.0))
        self.sup_a_ratio = max(source.v.angular.ratio(target.v.angular))
        self._ratio_sup = RangeSupExpr(self.rho_ratio) \
            if isinstance(self.rho_ratio, (Monomial, Piecewise)) else None
        self._running: dict = {}

    # -- tails --------------------------------------------------------------
    def T1(self, x: float) -> float:
        return self._t1.total if x <= 0.0 else self._t1.tail(x)

    def T2(self, x: float) -> float:
        return self._t2.total if x <= 0.0 else self._t2.tail(x)

    def tails_finite(self) -> tuple:
        return (not self._t1.tail_divergent, not self._t2.tail_divergent)

    @property
    def a_T1_inf(self) -> Asym | None:
        return self._t1.tail_asym()

    @property
    def a_T2_inf(self) -> Asym | None:
        return self._t2.tail_asym()

    def a_T1_0(self) -> Asym:
        """Behavior of T1(t) as t -> 0+ (constant, or certified blow-up)."""
        if math.isfinite(self._t1.total):
            return Asym(self._t1.total, 0.0)
        a0 = self.a_w1q1_0
        return Asym(a0.coeff / (-a0.power - 1.0), a0.power + 1.0)

    def a_T2_0(self) -> Asym:
        if math.isfinite(self._t2.total):
            return Asym(self._t2.total, 0.0)
        a0 = self.a_w2q2_0
        return Asym(a0.coeff / (-a0.power - 1.0), a0.power + 1.0)

    # -- stable logs ----------------------------------------------------------
    def log_T1(self, x: float) -> float:
        v = self.T1(x)
        if v > 1e-280 or v == 0.0 and self.a_T1_inf is None:
            return xlog(v)
        if v == math.inf:
            return math.inf
        # deep tail: the leading asymptotic term is exact to rounding there
        return _log_asym(self.a_T1_inf, x)

    def log_T2(self, x: float) -> float:
        v = self.T2(x)
        if v > 1e-280 or v == 0.0 and self.a_T2_inf is None:
            return xlog(v)
        if v == math.inf:
            return math.inf
        return _log_asym(self.a_T2_inf, x)

    def log_w1q1(self, t: float) -> float:
        return self.w1q1.log_value(t)

    def log_w2q2(self, t: float) -> float:
        return self.w2q2.log_value(t)

    def log_kernel1(self, s: float, e: float) -> float:
        """log of T1(s)^{-e} w1(s)^{q1}."""
        return -e * self.log_T1(s) + self.log_w1q1(s)

    def log_phi1(self, t: float, e: float) -> float:
        """log of integral_0^t T1^{-e} w1^{q1}, exact via d/ds T1 = -w1^{q1}."""
        if t <= 0.0:
            return -math.inf
        x = (1.0 - e) * self.log_T1(t)
        y = (1.0 - e) * self.log_T1(0.0)  # -inf when T1(0) = inf
        if x == math.inf:
            return math.inf
        corr = 0.0
        if y - x > -700.0 and y != -math.inf:
            diff = math.exp(y - x)
            if diff >= 1.0:
                return -math.inf
            corr = math.log1p(-diff)
        return x + corr - math.log(e - 1.0)

    def phi1(self, a: float, b: float, e: float) -> float:
        """integral_a^b T1(s)^{-e} w1(s)^{q1} ds (value space)."""
        if b <= a:
            return 0.0
        num = xpow(self.T1(b) if b < math.inf else 0.0, 1.0 - e) - xpow(self.T1(a), 1.0 - e)
        return num / (e - 1.0)

    def phi1_asym_inf(self, e: float) -> Asym | None:
        a = self.a_T1_inf
        return a.pow(1.0 - e).scale(1.0 / (e - 1.0)) if a is not None else None

    def phi1_asym_0(self, e: float) -> Asym:
        if math.isfinite(self._t1.total):
            return head_integral_asym(self.a_w1q1_0).scale(self._t1.total ** (-e))
        return self.a_T1_0().pow(1.0 - e).scale(1.0 / (e - 1.0))

    # -- annulus mass of the mixed weight (p2 < p1) --------------------------
    def V(self, x: float, t: float) -> float:
        """integral over the annulus {x < |y| < t} of (v1^-1 v2)^{p1p2/(p1-p2)}."""
        if self._R is None:
            raise ValueError("annulus mass is defined only for p2 < p1")
        if t <= x:
            return 0.0
        if x <= 0.0:
            val = self._R.head(t) if t < math.inf else (math.inf if self._R.head_divergent
                                                        else self._R.total)
        elif t == math.inf:
            val = self._R.tail(x)
        else:
            val = self._R.range(x, t)
        return self.A_sigma * val

    def V_growth_asym(self) -> Asym | None:
        """Growth of t -> V(x, t) when the annulus mass is unbounded."""
        if self._R is None or not self._R.tail_divergent:
            return None
        a = self._R.growth_asym()
        return a.scale(self.A_sigma) if a is not None else None

    def V_head_divergent(self) -> bool:
        return self._R is not None and self._R.head_divergent

    def V_head_growth_asym(self) -> Asym | None:
        """Blow-up of x -> V(x, t) as x -> 0 when the head diverges."""
        if self._R is None or not self._R.head_divergent:
            return None
        a0 = self.mix.asym_zero()
        if a0.power == -math.inf:
            return Asym(a0.coeff, -math.inf)
        return Asym(self.A_sigma * a0.coeff / (-a0.power - 1.0), a0.power + 1.0)

    # -- ratio suprema (p1 = p2) ---------------------------------------------
    def ratio_sup(self, a: float, b: float) -> float:
        """sup over the annulus (a, b) of the radial ratio rho2/rho1."""
        if self._ratio_sup is not None:
            return self._ratio_sup.sup(a, b)
        grid = self._running.setdefault(
            "ratio", RunningSupGrid(lambda t: self.rho_ratio(t),
                                    breakpoints=self.rho_ratio.breakpoints))
        if a <= 0.0:
            return grid.prefix(b) if b < math.inf else math.inf
        return grid.suffix(a) if b == math.inf else max(grid.prefix(b), self.rho_ratio(a))

    def running_sup(self, key: str, phi, breakpoints: tuple = ()) -> RunningSupGrid:
        if key not in self._running:
            self._running[key] = RunningSupGrid(phi, breakpoints=breakpoints)
        return self._running[key]

    # -- sup search with growth guard ----------------------------------------
    def outer_sup(self, f, a: float = 0.0, b: float = math.inf,
                  breakpoints: tuple = ()) -> tuple:
        """(SupResult, diverged, note): sup_search plus geometric probes past
        the grid; sustained growth there is reported as divergence."""
        cfg = self.cfg
        pads = _edge_pads(a) if a > 0.0 else []
        res = sup_search(f, a, b, per_decade=cfg.sup_per_decade, grid_min=cfg.grid_min,
                         grid_max=cfg.grid_max, bracket_tol=cfg.bracket_tol,
                         breakpoints=tuple(breakpoints) + tuple(pads))
        if res.sup == math.inf:
            return res, True, "objective hits +inf"
        note = ""
        if b == math.inf:
            edge = max(cfg.grid_max, a * 1e3 if a > 0 else 0.0)
            vals = []
            for k in range(1, 7):
                try:
                    vals.append(f(edge * 10.0 ** k))
                except (OverflowError, ValueError, ZeroDivisionError):
                    vals.append(math.nan)
            vals = [v for v in vals if not math.isnan(v)]
            if any(v == math.inf for v in vals):
                return res, True, "objective hits +inf beyond the grid"
            if len(vals) >= 4 and all(v1 > v0 * 1.2 for v0, v1 in zip(vals, vals[1:])) \
                    and vals[-1] > 100.0 * max(res.sup, 1e-30):
                return res, True, "unbounded growth along probe sequence"
        return res, False, note

    def inner_sup(self, f, a: float, b: float = math.inf) -> SupResult:
        cfg = self.cfg
        return sup_search(f, a, b, per_decade=cfg.inner_per_decade, grid_min=cfg.grid_min,
                          grid_max=cfg.grid_max, bracket_tol=cfg.inner_bracket_tol, top_k=2,
                          breakpoints=tuple(_edge_pads(a)) if a > 0 else ())


# ---------------------------------------------------------------------------
# Admissibility

def check_admissibility(case: EmbeddingCase, problem: EmbeddingProblem) -> AdmissibilityReport:
    """Hypothesis checks for the classified case; failures are verdicts."""
    checks = []
    pr = problem
    p1, p2, q1, q2 = pr.params.as_tuple()
    t1_ok, t2_ok = pr.tails_finite()
    checks.append(("tail_w1_finite", t1_ok,
                   "" if t1_ok else "degenerate: integral_t^inf w1^q1 = inf for all t"))
    checks.append(("tail_w2_finite", t2_ok,
                   "" if t2_ok else "degenerate: integral_t^inf w2^q2 = inf for all t"))
    if not (t1_ok and t2_ok):
        return AdmissibilityReport(False, checks)
    if not case.supported:
        return AdmissibilityReport(True, checks)

    if case.tag.startswith("B"):
        e = q1 / (q1 - p2)
        a4 = q1 * (p1 - p2) / (p1 * (q1 - p2))
        ok = True
        detail = ""
        for t in pr.cfg.probe_points:
            val = xexp(_log_kernel_integral(
                pr, t, lambda s, t=t: a4 * xlog(pr.V(s, t)) + pr.log_kernel1(s, e)))
            if not (0.0 < val < math.inf):
                ok = False
                detail = f"inner balance integral not in (0,inf) at t={t:g} (value {val:g})"
                break
        checks.append(("balance_integral", ok, detail))

    if case.tag.startswith("D"):
        cont, where = _ratio_continuous(pr)
        checks.append(("ratio_continuous", cont,
                       "" if cont else f"v1^-1 v2 discontinuous at {where}"))
        e1 = q1 / (q1 - p1)
        m = p1 * e1
        ok = True
        detail = ""
        sup_pow = weight_product(pr.rho_ratio.pow(m), Monomial(coeff=pr.sup_a_ratio ** m))
        for t in pr.cfg.probe_points:
            res = integrate_weighted(sup_pow, 1.0, 0.0, t, pr.cfg.inner_rel_tol)
            if not (0.0 < res.value < math.inf):
                ok = False
                detail = f"sphere-sup integral not in (0,inf) at t={t:g}"
                break
        checks.append(("sphere_sup_integral", ok, detail))
        ok = True
        detail = ""
        for t in pr.cfg.probe_points:
            val = pr.phi1(0.0, t, e1)
            if not (0.0 < val < math.inf):
                ok = False
                detail = f"tail-power integral not in (0,inf) at t={t:g}"
                break
        checks.append(("tail_power_integral", ok, detail))
        eta = -q2 * p1 / (q2 - p1)
        ok = True
        detail = ""
        for t in pr.cfg.probe_points:
            res = integrate_weighted(pr.target.w, eta, 0.0, t, pr.cfg.inner_rel_tol)
            if not (0.0 < res.value < math.inf):
                ok = False
                detail = f"w2 negative-power integral not in (0,inf) at t={t:g}"
                break
        checks.append(("w2_negative_power_integral", ok, detail))

    passed = all(ok for _, ok, _ in checks)
    return AdmissibilityReport(passed, checks)


def _ratio_continuous(pr: EmbeddingProblem) -> tuple:
    r = pr.rho_ratio
    if isinstance(r, Piecewise):
        for b in r.breakpoints:
            left = r(b * (1.0 - 1e-12))
            right = r(b * (1.0 + 1e-12))
            if abs(left - right) > 1e-9 * max(left, right):
                return False, f"t={b:g}"
    a1, a2 = pr.source.v.angular, pr.target.v.angular
    vals = a1.ratio(a2)
    if max(vals) > min(vals) * (1.0 + 1e-12):
        return False, "angular part (tabulated, non-constant ratio)"
    return True, ""


# ---------------------------------------------------------------------------
# Log-space kernel integrals

def _log_kernel_integral(pr: EmbeddingProblem, t: float, lam,
                         head_asym: Asym | None = None, pts: tuple = ()) -> float:
    """log of integral_0^t exp(lam(s)) ds via a max shift."""
    if head_asym is not None and not head_integrable(head_asym):
        return math.inf
    lo = min(pr.cfg.grid_min, t * 1e-6)
    samples = list(np.geomspace(lo, t, 40)) + [t * (1.0 - 10.0 ** (-k)) for k in range(1, 7)]
    best = -math.inf
    for s in samples:
        if 0.0 < s < t:
            val = lam(s)
            if val == math.inf:
                return math.inf
            if not math.isnan(val):
                best = max(best, val)
    if best == -math.inf:
        return -math.inf
    shift = best

    def f(s: float) -> float:
        return xexp(lam(s) - shift)

    res = integrate_callable(f, 0.0, t, rel_tol=pr.cfg.inner_rel_tol,
                             points=tuple(p for p in pts if p < t), limit=120)
    if res.value == math.inf:
        return math.inf
    if res.value <= 0.0 or math.isnan(res.value):
        return -math.inf
    return shift + math.log(res.value)


def _log_tail_integral(pr: EmbeddingProblem, t0: float, lam,
                       tail_asym: Asym | None = None, pts: tuple = ()) -> float:
    """log of integral_t0^inf exp(lam(s)) ds via a max shift."""
    if tail_asym is not None and not tail_integrable(tail_asym):
        return math.inf
    lo = max(t0, pr.cfg.grid_min * 1e-2)
    hi = max(lo * 1e4, pr.cfg.grid_max)
    samples = list(np.geomspace(lo if lo > 0 else 1e-8, hi, 48))
    samples += [t0 * (1.0 + 10.0 ** (-k)) for k in range(1, 7) if t0 > 0]
    best = -math.inf
    for s in samples:
        if s > t0:
            val = lam(s)
            if val == math.inf:
                return math.inf
            if not math.isnan(val):
                best = max(best, val)
    if best == -math.inf:
        return -math.inf
    shift = best

    def f(s: float) -> float:
        return xexp(lam(s) - shift)

    res = integrate_callable(f, t0, math.inf, rel_tol=pr.cfg.inner_rel_tol,
                             points=pts, tail_asym=tail_asym, limit=120)
    if res.value == math.inf:
        return math.inf
    if res.value <= 0.0 or math.isnan(res.value):
        return -math.inf
    return shift + math.log(res.value)


def _log_outer_integral(pr: EmbeddingProblem, lam, tail_asym: Asym | None,
                        head_asym: Asym | None, pts: tuple = ()) -> tuple:
    """(log value, converged) of integral_0^inf exp(lam(t)) dt."""
    if tail_asym is not None and not tail_integrable(tail_asym):
        return math.inf, True
    if head_asym is not None and not head_integrable(head_asym):
        return math.inf, True
    samples = np.geomspace(pr.cfg.grid_min * 1e-2, pr.cfg.grid_max * 1e2, 64)
    best = -math.inf
    for s in samples:
        val = lam(float(s))
        if val == math.inf:
            return math.inf, True
        if not math.isnan(val):
            best = max(best, val)
    if best == -math.inf:
        return -math.inf, False
    shift = best

    def f(s: float) -> float:
        return xexp(lam(s) - shift)

    res = integrate_callable(f, 0.0, math.inf, rel_tol=pr.cfg.rel_tol,
                             points=pts, tail_asym=tail_asym, head_asym=head_asym,
                             limit=80)
    if res.value == math.inf:
        return math.inf, True
    if res.value <= 0.0 or math.isnan(res.value):
        return -math.inf, res.converged
    return shift + math.log(res.value), res.converged


# ---------------------------------------------------------------------------
# Functional evaluators

def _component(name, value, err, variant, argsup=(), note="", converged=True) -> ComponentValue:
    finite = math.isfinite(value)
    return ComponentValue(name=name, value=value, error_estimate=err, finite=finite,
                          variant=variant, argsup=argsup, note=note, converged=converged)


def _grows(a: Asym | None) -> bool:
    return a is not None and limit_value(a, True) == math.inf


def _asym_prod(factors) -> Asym | None:
    """Product of powered asymptotics; None when any factor is unknown."""
    out = Asym(1.0)
    for a, e in factors:
        if a is None:
            return None
        try:
            out = out.mul(a.pow(e))
        except ArithmeticError:
            return None
    return out


def _eval_I1(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    ev = (p1 - p2) / (p1 * p2)
    gv = pr.V_growth_asym()
    if gv is not None and pr.a_T2_inf is not None:
        if _grows(gv.pow(ev).mul(pr.a_T2_inf.pow(1.0 / q2))):
            return _component("I1", math.inf, 0.0, variant,
                              note="inner sup over t diverges as t -> inf")

    def inner(x: float) -> float:
        res = pr.inner_sup(
            lambda t: xexp(ev * xlog(pr.V(x, t)) + pr.log_T2(t) / q2), x)
        return res.sup

    def outer(x: float) -> float:
        return xexp(-pr.log_T1(x) / q1 + xlog(inner(x)))

    res, diverged, note = pr.outer_sup(outer)
    if diverged:
        return _component("I1", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I1", res.sup, res.sup * 1e-7, variant, argsup=(res.argsup,))


def _eval_I2(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    beta2 = q2 * (p1 - p2) / (p2 * (p1 - q2))
    gamma2 = q2 / (p1 - q2)
    delta2 = (p1 - q2) / (p1 * q2)
    tail = None
    gv = pr.V_growth_asym()
    base = pr.a_T2_inf.pow(gamma2).mul(pr.a_w2q2_inf) if pr.a_T2_inf is not None else None
    if base is not None:
        tail = base if gv is None else base.mul(gv.pow(beta2))
        if not tail_integrable(tail):
            return _component("I2", math.inf, 0.0, variant,
                              note="inner integral over (x, inf) diverges")

    def outer(x: float) -> float:
        logj = _log_tail_integral(
            pr, x,
            lambda s: beta2 * xlog(pr.V(x, s)) + gamma2 * pr.log_T2(s) + pr.log_w2q2(s),
            tail_asym=tail, pts=pr.w2q2.breakpoints)
        return xexp(-pr.log_T1(x) / q1 + delta2 * logj)

    res, diverged, note = pr.outer_sup(outer)
    if diverged:
        return _component("I2", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I2", res.sup, res.sup * 1e-6, variant, argsup=(res.argsup,))


def _eval_I3(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    ev = (p1 - p2) / (p1 * p2)
    front = xpow(pr.T1(0.0), -1.0 / q1)
    if pr.V_head_divergent():
        value = xmul(front, math.inf)
        return _component("I3", value if not math.isnan(value) else math.inf, 0.0, variant,
                          note="annulus mass from 0 diverges")
    gv = pr.V_growth_asym()
    if gv is not None and pr.a_T2_inf is not None \
            and _grows(gv.pow(ev).mul(pr.a_T2_inf.pow(1.0 / q2))):
        return _component("I3", math.inf, 0.0, variant, note="sup over t diverges as t -> inf")

    res, diverged, note = pr.outer_sup(
        lambda t: xexp(ev * xlog(pr.V(0.0, t)) + pr.log_T2(t) / q2))
    if diverged:
        return _component("I3", math.inf, 0.0, variant, note=note or "sup diverges")
    value = xmul(front, res.sup)
    if math.isnan(value):
        return _component("I3", math.nan, math.inf, variant, converged=False,
                          note="indeterminate 0 * inf")
    return _component("I3", value, value * 1e-6, variant, argsup=(res.argsup,))


def _eval_I4(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    a4 = q1 * (p1 - p2) / (p1 * (q1 - p2))
    e = q1 / (q1 - p2)
    E4 = (q1 - p2) / (q1 * p2) if variant == "corrected" else (p1 - q2) / (q1 * q2)
    head = _kernel_head_asym(pr, a4, e)
    pts = pr.w1q1.breakpoints

    def outer(t: float) -> float:
        logk = _log_kernel_integral(
            pr, t, lambda s, t=t: a4 * xlog(pr.V(s, t)) + pr.log_kernel1(s, e),
            head_asym=head, pts=pts)
        return xexp(pr.log_T2(t) / q2 + E4 * logk)

    res, diverged, note = pr.outer_sup(outer)
    if diverged:
        return _component("I4", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I4", res.sup, res.sup * 1e-6, variant, argsup=(res.argsup,))


def _kernel_head_asym(pr: EmbeddingProblem, a_exp: float, e: float) -> Asym | None:
    """s -> 0 behavior of V(s, t)^{a_exp} T1(s)^{-e} w1(s)^{q1}."""
    if pr.V_head_divergent():
        g = pr.V_head_growth_asym()
        return _asym_prod([(g, a_exp), (pr.a_T1_0(), -e), (pr.a_w1q1_0, 1.0)])
    return _asym_prod([(pr.a_T1_0(), -e), (pr.a_w1q1_0, 1.0)])


def _sup_factor_VT2(pr: EmbeddingProblem, c: float, d: float):
    """t -> sup_{z > t} V(t,z)^c T2(z)^d with its certified growth check."""
    gv = pr.V_growth_asym()
    diverges = False
    if gv is not None and pr.a_T2_inf is not None:
        diverges = _grows(gv.pow(c).mul(pr.a_T2_inf.pow(d)))

    def S(t: float) -> float:
        res = pr.inner_sup(lambda z: xexp(c * xlog(pr.V(t, z)) + d * pr.log_T2(z)), t)
        return res.sup

    # envelope for the outer integrand's tail behavior
    r_tail = pr._R.tail_asym() if pr._R is not None else None
    env = None
    if pr.a_T2_inf is not None:
        if r_tail is not None:
            env = r_tail.scale(pr.A_sigma).pow(c).mul(pr.a_T2_inf.pow(d))
        elif gv is not None:
            env = gv.pow(c).mul(pr.a_T2_inf.pow(d))
    return S, diverges, env


def _eval_I5(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e = q1 / (q1 - p2)
    b = q1 * (q2 - p2) / (p2 * (q1 - q2))
    c5 = q1 * q2 * (p1 - p2) / (p1 * p2 * (q1 - q2))
    d = q1 / (q1 - q2)
    E = (q1 - q2) / (q1 * q2)
    S, s_div, s_env = _sup_factor_VT2(pr, c5, d)
    if s_div:
        return _component("I5", math.inf, 0.0, variant, note="sup factor over (t, inf) diverges")

    def lam(t: float) -> float:
        return b * pr.log_phi1(t, e) + pr.log_kernel1(t, e) + xlog(S(t))

    tail = head = None
    if s_env is not None:
        tail = _asym_prod([(pr.phi1_asym_inf(e), b), (pr.a_T1_inf, -e),
                           (pr.a_w1q1_inf, 1.0), (s_env, 1.0)])
    s0 = S(pr.cfg.grid_min)
    if math.isfinite(s0):
        head = _asym_prod([(pr.phi1_asym_0(e), b), (pr.a_T1_0(), -e),
                           (pr.a_w1q1_0, 1.0), (Asym(max(s0, 1e-300)), 1.0)])
    logval, conv = _log_outer_integral(pr, lam, tail, head, pts=pr.w1q1.breakpoints)
    if logval == math.inf:
        return _component("I5", math.inf, 0.0, variant, note="outer integral diverges")
    value = xexp(E * logval)
    return _component("I5", value, value * 1e-6, variant, converged=conv)


def _eval_I6(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e = q1 / (q1 - p2)
    a4 = q1 * (p1 - p2) / (p1 * (q1 - p2))
    a6 = a4 if variant == "corrected" else q1 * (q2 - p2) / (p1 * (q1 - p2))
    b = q1 * (q2 - p2) / (p2 * (q1 - q2))
    d = q1 / (q1 - q2)
    E = (q1 - q2) / (q1 * q2)
    S, s_div, s_env = _sup_factor_VT2(pr, a4, d)
    if s_div:
        return _component("I6", math.inf, 0.0, variant, note="sup factor over (t, inf) diverges")
    head_k = _kernel_head_asym(pr, a6, e)
    pts = pr.w1q1.breakpoints

    def lam(t: float) -> float:
        logk = _log_kernel_integral(
            pr, t, lambda s, t=t: a6 * xlog(pr.V(s, t)) + pr.log_kernel1(s, e),
            head_asym=head_k, pts=pts)
        return b * logk + pr.log_kernel1(t, e) + xlog(S(t))

    tail = None
    if s_env is not None and not pr.V_head_divergent():
        gv = pr.V_growth_asym()
        k_env = _asym_prod([(pr.phi1_asym_inf(e), 1.0)] +
                           ([(gv, a6)] if gv is not None else []))
        tail = _asym_prod([(k_env, b), (s_env, 1.0), (pr.a_T1_inf, -e),
                           (pr.a_w1q1_inf, 1.0)])
    logval, conv = _log_outer_integral(pr, lam, tail, None, pts=pts)
    if logval == math.inf:
        return _component("I6", math.inf, 0.0, variant, note="outer integral diverges")
    value = xexp(E * logval)
    return _component("I6", value, value * 1e-6, variant, converged=conv)


def _eval_I7(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    beta2 = q2 * (p1 - p2) / (p2 * (p1 - q2))
    gamma2 = q2 / (p1 - q2)
    delta2 = (p1 - q2) / (p1 * q2)
    front = xpow(pr.T1(0.0), -1.0 / q1)
    if pr.V_head_divergent():
        return _component("I7", math.inf, 0.0, variant, note="annulus mass from 0 diverges")
    tail = None
    gv = pr.V_growth_asym()
    if pr.a_T2_inf is not None:
        base = pr.a_T2_inf.pow(gamma2).mul(pr.a_w2q2_inf)
        tail = base if gv is None else base.mul(gv.pow(beta2))
        if not tail_integrable(tail):
            return _component("I7", math.inf, 0.0, variant,
                              note="integral over (0, inf) diverges")
    logj = _log_tail_integral(
        pr, 0.0,
        lambda t: beta2 * xlog(pr.V(0.0, t)) + gamma2 * pr.log_T2(t) + pr.log_w2q2(t),
        tail_asym=tail, pts=pr.w2q2.breakpoints)
    if logj == math.inf:
        return _component("I7", math.inf, 0.0, variant, note="integral over (0, inf) diverges")
    value = xmul(front, xexp(delta2 * logj))
    if math.isnan(value):
        return _component("I7", math.nan, math.inf, variant, converged=False,
                          note="indeterminate 0 * inf")
    return _component("I7", value, value * 1e-6, variant)


def _eval_I8(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    beta2 = q2 * (p1 - p2) / (p2 * (p1 - q2))
    gamma2 = q2 / (p1 - q2)
    delta2 = (p1 - q2) / (p1 * q2)
    e = q1 / (q1 - p2)
    E8 = (q1 - p2) / (q1 * p2)
    tail = None
    gv = pr.V_growth_asym()
    if pr.a_T2_inf is not None:
        base = pr.a_T2_inf.pow(gamma2).mul(pr.a_w2q2_inf)
        tail = base if gv is None else base.mul(gv.pow(beta2))
        if not tail_integrable(tail):
            return _component("I8", math.inf, 0.0, variant,
                              note="inner integral over (t, inf) diverges")

    def outer(t: float) -> float:
        logj = _log_tail_integral(
            pr, t,
            lambda s, t=t: beta2 * xlog(pr.V(t, s)) + gamma2 * pr.log_T2(s) + pr.log_w2q2(s),
            tail_asym=tail, pts=pr.w2q2.breakpoints)
        return xexp(E8 * pr.log_phi1(t, e) + delta2 * logj)

    res, diverged, note = pr.outer_sup(outer)
    if diverged:
        return _component("I8", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I8", res.sup, res.sup * 1e-6, variant, argsup=(res.argsup,))


def _eval_I9(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e = q1 / (q1 - p2)
    b = q1 * (q2 - p2) / (p2 * (q1 - q2))
    beta2 = q2 * (p1 - p2) / (p2 * (p1 - q2))
    E = (q1 - q2) / (q1 * q2)
    if variant == "corrected":
        gamma9 = q2 / (p1 - q2)
        c9 = q1 * (p1 - q2) / (p1 * (q1 - q2))
    else:
        gamma9 = q1 / (p1 - q2)
        c9 = q1 * (p1 - q2) / (q1 - q2)
    tail_inner = None
    gv = pr.V_growth_asym()
    if pr.a_T2_inf is not None:
        base = pr.a_T2_inf.pow(gamma9).mul(pr.a_w2q2_inf)
        tail_inner = base if gv is None else base.mul(gv.pow(beta2))
        if not tail_integrable(tail_inner):
            return _component("I9", math.inf, 0.0, variant,
                              note="inner integral over (t, inf) diverges")

    def lam(t: float) -> float:
        logj = _log_tail_integral(
            pr, t,
            lambda s, t=t: beta2 * xlog(pr.V(t, s)) + gamma9 * pr.log_T2(s) + pr.log_w2q2(s),
            tail_asym=tail_inner, pts=pr.w2q2.breakpoints)
        return b * pr.log_phi1(t, e) + pr.log_kernel1(t, e) + c9 * logj

    inner_env = tail_integral_asym(tail_inner) \
        if tail_inner is not None and tail_integrable(tail_inner) else None
    tail_outer = _asym_prod([(pr.phi1_asym_inf(e), b), (pr.a_T1_inf, -e),
                             (pr.a_w1q1_inf, 1.0), (inner_env, c9)])
    logval, conv = _log_outer_integral(pr, lam, tail_outer, None, pts=pr.w1q1.breakpoints)
    if logval == math.inf:
        return _component("I9", math.inf, 0.0, variant, note="outer integral diverges")
    value = xexp(E * logval)
    return _component("I9", value, value * 1e-6, variant, converged=conv)


def _eval_I10(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    m = 1.0 if variant == "corrected" else p1
    supa_m = xpow(pr.sup_a_ratio, m)

    # log of the radial ess sup objective; the angular sup factors out and
    # the running supremum of logs is the log of the running supremum
    def phi_log(tau: float) -> float:
        return m * pr.rho_ratio.log_value(tau) - pr.log_T1(tau) / q1

    a_rr0 = pr.rho_ratio.asym_zero()
    a_rri = pr.rho_ratio.asym_inf()
    if a_rr0 is not None and limit_value(a_rr0.pow(m), False) == math.inf:
        return _component("I10", math.inf, 0.0, variant,
                          note="weight-ratio sup over small balls diverges")
    if a_rri is not None and pr.a_T1_inf is not None and pr.a_T2_inf is not None:
        minorant = pr.a_T2_inf.pow(1.0 / q2).mul(a_rri.pow(m)).mul(pr.a_T1_inf.pow(-1.0 / q1))
        if _grows(minorant):
            return _component("I10", math.inf, 0.0, variant,
                              note="sup objective grows without bound (certified minorant)")

    grid = pr.running_sup(f"i10_{variant}", phi_log, breakpoints=pr.rho_ratio.breakpoints)

    def outer(x: float) -> float:
        return xexp(pr.log_T2(x) / q2 + xlog(supa_m) + grid.prefix(x))

    res, diverged, note = pr.outer_sup(outer)
    if diverged:
        return _component("I10", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I10", res.sup, res.sup * 1e-6, variant, argsup=(res.argsup,))


def _eval_I11(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    front = xpow(pr.T1(0.0), -1.0 / q1)
    a_rri = pr.rho_ratio.asym_inf()
    if a_rri is not None and pr.a_T2_inf is not None \
            and _grows(pr.a_T2_inf.pow(1.0 / q2).mul(a_rri)):
        return _component("I11", math.inf, 0.0, variant,
                          note="sup objective grows without bound (certified minorant)")
    a_rr0 = pr.rho_ratio.asym_zero()
    if a_rr0 is not None and limit_value(a_rr0, False) == math.inf:
        return _component("I11", math.inf, 0.0, variant,
                          note="weight-ratio sup over small balls diverges")

    def outer(t: float) -> float:
        return xexp(pr.log_T2(t) / q2 + xlog(pr.sup_a_ratio) + xlog(pr.ratio_sup(0.0, t)))

    res, diverged, note = pr.outer_sup(outer, breakpoints=pr.rho_ratio.breakpoints)
    if diverged:
        return _component("I11", math.inf, 0.0, variant, note=note or "outer sup diverges")
    value = xmul(front, res.sup)
    if math.isnan(value):
        return _component("I11", math.nan, math.inf, variant, converged=False,
                          note="indeterminate 0 * inf")
    return _component("I11", value, value * 1e-6, variant, argsup=(res.argsup,))


def _eval_I12(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e1 = q1 / (q1 - p1)
    m = p1 * e1 if variant == "corrected" else p1
    E12 = (q1 - p1) / (q1 * p1)
    supa_m = xpow(pr.sup_a_ratio, m)
    a_rr0 = pr.rho_ratio.asym_zero()
    if a_rr0 is not None and limit_value(a_rr0.pow(m), False) == math.inf:
        return _component("I12", math.inf, 0.0, variant,
                          note="weight-ratio sup near 0 makes the kernel diverge")
    head = _asym_prod([(pr.a_T1_0(), -e1), (pr.a_w1q1_0, 1.0)])
    pts = pr.w1q1.breakpoints + pr.rho_ratio.breakpoints

    def outer(t: float) -> float:
        logk = _log_kernel_integral(
            pr, t,
            lambda x, t=t: pr.log_kernel1(x, e1) + xlog(supa_m)
            + m * xlog(pr.ratio_sup(x, t)),
            head_asym=head, pts=pts)
        return xexp(E12 * logk + pr.log_T2(t) / q2)

    res, diverged, note = pr.outer_sup(outer, breakpoints=pr.rho_ratio.breakpoints)
    if diverged:
        return _component("I12", math.inf, 0.0, variant, note=note or "outer sup diverges")
    return _component("I12", res.sup, res.sup * 1e-6, variant, argsup=(res.argsup,))


def _ratio_T2_suffix(pr: EmbeddingProblem, m: float, d: float, key: str):
    """t -> log sup_{tau > t} (rho2/rho1)(tau)^m T2(tau)^d, certified."""
    def phi_log(tau: float) -> float:
        return m * pr.rho_ratio.log_value(tau) + d * pr.log_T2(tau)

    a_rri = pr.rho_ratio.asym_inf()
    diverges = False
    env = None
    if a_rri is not None and pr.a_T2_inf is not None:
        env = a_rri.pow(m).mul(pr.a_T2_inf.pow(d))
        diverges = _grows(env)
    grid = pr.running_sup(key, phi_log, breakpoints=pr.rho_ratio.breakpoints)
    return grid.suffix, diverges, env


def _eval_I13(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e1 = q1 / (q1 - p1)
    b13 = q1 * (q2 - p1) / (p1 * (q1 - q2))
    d = q1 / (q1 - q2)
    E = (q1 - q2) / (q1 * q2)
    m = q1 * q2 / (q1 - q2) if variant == "corrected" else q2 * (q1 - p1) / (q1 - q2)
    suffix_log, s_div, s_env = _ratio_T2_suffix(pr, m, d, f"i13_{variant}")
    if s_div:
        return _component("I13", math.inf, 0.0, variant,
                          note="sup factor over the outer region diverges")
    supa_m = xpow(pr.sup_a_ratio, m)

    def lam(t: float) -> float:
        return (b13 * pr.log_phi1(t, e1) + pr.log_kernel1(t, e1)
                + xlog(supa_m) + suffix_log(t))

    tail = _asym_prod([(pr.phi1_asym_inf(e1), b13), (pr.a_T1_inf, -e1),
                       (pr.a_w1q1_inf, 1.0), (s_env, 1.0)])
    logval, conv = _log_outer_integral(pr, lam, tail, None, pts=pr.w1q1.breakpoints)
    if logval == math.inf:
        return _component("I13", math.inf, 0.0, variant, note="outer integral diverges")
    value = xexp(E * logval)
    return _component("I13", value, value * 1e-6, variant, converged=conv)


def _eval_I14(pr: EmbeddingProblem, variant: str) -> ComponentValue:
    p1, p2, q1, q2 = pr.params.as_tuple()
    e1 = q1 / (q1 - p1)
    b13 = q1 * (q2 - p1) / (p1 * (q1 - q2))
    d = q1 / (q1 - q2)
    E = (q1 - q2) / (q1 * q2)
    m = p1 * e1 if variant == "corrected" else p1
    suffix_log, s_div, s_env = _ratio_T2_suffix(pr, m, d, f"i14_{variant}")
    if s_div:
        return _component("I14", math.inf, 0.0, variant,
                          note="sup factor over the outer region diverges")
    a_rr0 = pr.rho_ratio.asym_zero()
    if a_rr0 is not None and limit_value(a_rr0.pow(m), False) == math.inf:
        return _component("I14", math.inf, 0.0, variant,
                          note="weight-ratio sup near 0 makes the kernel diverge")
    supa_m = xpow(pr.sup_a_ratio, m)
    head = _asym_prod([(pr.a_T1_0(), -e1), (pr.a_w1q1_0, 1.0)])
    pts = pr.w1q1.breakpoints + pr.rho_ratio.breakpoints

    def lam(t: float) -> float:
        logk = _log_kernel_integral(
            pr, t,
            lambda x, t=t: pr.log_kernel1(x, e1) + xlog(supa_m)
            + m * xlog(pr.ratio_sup(x, t)),
            head_asym=head, pts=pts)
        return b13 * logk + xlog(supa_m) + suffix_log(t) + pr.log_kernel1(t, e1)

    a_rri = pr.rho_ratio.asym_inf()
    rr_env = None
    if a_rri is not None:
        # kernel envelope: the running ratio sup is either eventually flat
        # or tracks the ratio's own growth (only the verdict scale matters)
        rr_env = a_rri.pow(m) if limit_value(a_rri, True) == math.inf else Asym(1.0)
    k_env = _asym_prod([(pr.phi1_asym_inf(e1), 1.0), (rr_env, 1.0)])
    tail = _asym_prod([(k_env, b13), (s_env, 1.0), (pr.a_T1_inf, -e1), (pr.a_w1q1_inf, 1.0)])
    logval, conv = _log_outer_integral(pr, lam, tail, None, pts=pts)
    if logval == math.inf:
        return _component("I14", math.inf, 0.0, variant, note="outer integral diverges")
    value = xexp(E * logval)
    return _component("I14", value, value * 1e-6, variant, converged=conv)


_EVALUATORS = {
    1: _eval_I1, 2: _eval_I2, 3: _eval_I3, 4: _eval_I4, 5: _eval_I5, 6: _eval_I6,
    7: _eval_I7, 8: _eval_I8, 9: _eval_I9, 10: _eval_I10, 11: _eval_I11,
    12: _eval_I12, 13: _eval_I13, 14: _eval_I14,
}


def eval_functional(k: int, problem: EmbeddingProblem, variant: str = "printed") -> ComponentValue:
    """Evaluate I_k for the scenario; +inf carries the diverging part's name."""
    if k not in _EVALUATORS:
        raise ValueError(f"no functional I{k}")
    if variant not in ("printed", "corrected"):
        raise ValueError(f"variant must be printed or corrected, got {variant!r}")
    p1, p2 = problem.params.p1, problem.params.p2
    if k <= 9 and not p2 < p1:
        raise ValueError(f"I{k} requires p2 < p1")
    if k >= 10 and p1 != p2:
        raise ValueError(f"I{k} requires p1 = p2")
    return _EVALUATORS[k](problem, variant)


def embedding_norm_estimate(case: EmbeddingCase, problem: EmbeddingProblem,
                            variants=None) -> FunctionalValue:
    """Case combination of the functionals; the embedding holds iff finite."""
    if not case.supported:
        raise ValueError(f"cannot evaluate an unsupported case: {case}")
    if variants is None:
        variants = make_variant_table("printed")
    elif isinstance(variants, str):
        variants = make_variant_table(variants)
    comps = [eval_functional(k, problem, variants[k]) for k in case.components]
    total = sum(c.value for c in comps)
    err = sum(c.error_estimate for c in comps if math.isfinite(c.error_estimate))
    return FunctionalValue(value=total, components=comps, error_estimate=err,
                           finite=all(c.finite for c in comps))
