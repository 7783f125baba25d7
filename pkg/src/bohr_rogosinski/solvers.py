"""Radius equations LHS(r) = RHS for each supported class, and their minimal roots.

Every class tag maps to a :class:`RadiusEquation`: an increasing left-hand
side built from extremal series, majorant tails and weighted coefficient
sums, and a constant right-hand side equal to the class's lower bound for
``d(0, boundary Omega)``.  The root finder scans a uniform grid for the first
sign change and then bisects.

Growth terms are evaluated at ``x = r**m``; ``m = inf`` is supported and sets
``x = 0`` (so a distortion term ``beta f0'(x)`` becomes ``beta``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np

from .coeff_bounds import CoeffBoundProvider
from .errors import ConditionViolated, DivergenceBeforeRoot, DivergenceError, NoRootInRange
from .extremal import (
    build_extremal_pair,
    convex_distance,
    cs_distance,
    janowski_f0,
    janowski_f0_prime,
    janowski_starlike_distance,
    ks_growth_series,
    ks_distance,
    starlike_distance,
    symmetric_k_prime,
)
from .psi import CLASSICAL, CUSTOM, ORDER_ALPHA, PsiModel, is_janowski_family, psi_series
from .series import (
    Series,
    derivative,
    div_by_z,
    double_bohr_integral,
    eval_real,
    integrate,
    majorant_tail,
    mul,
    mul_by_z,
    substitute_power,
)
from .weights import WeightSequence, weighted_sum

ONE_THIRD = 1.0 / 3.0


class ClassTag(str, Enum):
    GEN_STARLIKE = "gen-starlike"
    GEN_STARLIKE_EXTREMAL = "gen-starlike-extremal"
    JANOWSKI = "janowski"
    ORDER_ALPHA = "order-alpha"
    CLASSICAL = "classical"
    KS = "ks"
    SC = "sc"
    CC = "cc"
    CS = "cs"

    @property
    def is_starlike_section(self) -> bool:
        """Tags whose LHS has the beta-blend and weighted M(n) sum."""
        return self in _STARLIKE_TAGS

    @property
    def caps_at_one_third(self) -> bool:
        return self not in (ClassTag.GEN_STARLIKE, ClassTag.JANOWSKI, ClassTag.ORDER_ALPHA, ClassTag.CLASSICAL)


_STARLIKE_TAGS = frozenset(
    {ClassTag.GEN_STARLIKE, ClassTag.GEN_STARLIKE_EXTREMAL, ClassTag.JANOWSKI, ClassTag.ORDER_ALPHA, ClassTag.CLASSICAL}
)


@dataclass(frozen=True)
class NumericConfig:
    T: int = 256
    root_tol: float = 1e-12
    quad_tol: float = 1e-11
    r_max: float = 1.0 - 1e-6
    scan_points: int = 512
    sum_tol: float = 1e-15
    tail_tol: float = 1e-13

    def __post_init__(self):
        if self.T < 32:
            raise ValueError("truncation order T must be at least 32")
        if min(self.root_tol, self.quad_tol, self.sum_tol, self.tail_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if not 0.0 < self.r_max < 1.0:
            raise ValueError("r_max must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class RadiusProblem:
    class_tag: ClassTag
    psi: PsiModel = field(default_factory=PsiModel.classical)
    beta: float = 0.0
    m: float = math.inf
    N: int = 1
    weights: WeightSequence | None = None
    bounds: CoeffBoundProvider | None = None
    numeric: NumericConfig = field(default_factory=NumericConfig)

    def __post_init__(self):
        object.__setattr__(self, "class_tag", ClassTag(self.class_tag))
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if not (self.m == math.inf or (float(self.m).is_integer() and self.m >= 1)):
            raise ValueError(f"m must be a positive integer or inf, got {self.m}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if self.weights is None or not self.class_tag.is_starlike_section:
            object.__setattr__(self, "weights", WeightSequence.power_tail(self.N))
        if self.psi.kind == CUSTOM and any(complex(c).imag != 0 for c in self.psi.coeffs):
            raise ValueError("psi must have real coefficients (image symmetric about the real axis)")

    def x_of(self, r: float) -> float:
        return 0.0 if self.m == math.inf else r ** int(self.m)

    def m_label(self) -> str:
        return "inf" if self.m == math.inf else str(int(self.m))


@dataclass(frozen=True, eq=False)
class RadiusEquation:
    lhs: Callable[[float], float]
    rhs: float
    caps: bool
    extremal_coeffs: np.ndarray
    description: str


@dataclass(frozen=True)
class SharpnessReport:
    delta: float
    lhs_excess: float | None
    excess_positive: bool | None
    coefficients_positive: bool | None
    skipped: str | None = None


@dataclass(frozen=True, eq=False)
class RadiusResult:
    r0: float
    rb: float
    capped: bool
    residual: float
    condition_ok: bool
    rhs: float
    lhs_at_zero: float
    equation: RadiusEquation = field(repr=False)
    problem: RadiusProblem = field(repr=False)
    sharp_probe: SharpnessReport | None = None


def default_bounds(psi: PsiModel, T: int) -> CoeffBoundProvider:
    if psi.kind == CLASSICAL:
        return CoeffBoundProvider.classical()
    if psi.kind == ORDER_ALPHA:
        return CoeffBoundProvider.order_alpha(psi.alpha)
    if is_janowski_family(psi):
        return CoeffBoundProvider.janowski(psi.D, psi.E)
    return CoeffBoundProvider.extremal(build_extremal_pair(psi, T).f0)


def _positive_prefix(s: Series, count: int = 64) -> np.ndarray:
    return s.coeffs[1 : min(s.order, count) + 1].real.copy()


def _starlike_equation(p: RadiusProblem, growth: Callable[[float], float], bounds: CoeffBoundProvider, rhs: float, t_n: np.ndarray, caps: bool, desc: str) -> RadiusEquation:
    w = p.weights
    num = p.numeric

    def lhs(r: float) -> float:
        return growth(p.x_of(r)) + weighted_sum(bounds, w, r, num.sum_tol).value

    return RadiusEquation(lhs=lhs, rhs=rhs, caps=caps, extremal_coeffs=t_n, description=desc)


def _gen_starlike_equation(p: RadiusProblem, extremal_bounds: bool) -> RadiusEquation:
    num = p.numeric
    pair = build_extremal_pair(p.psi, num.T)
    f0, f0p = pair.f0, derivative(pair.f0)
    beta = p.beta

    def growth(x: float) -> float:
        return beta * eval_real(f0p, x, tol=num.tail_tol) + (1.0 - beta) * eval_real(f0, x, tol=num.tail_tol)

    if extremal_bounds:
        bounds = CoeffBoundProvider.extremal(f0)
    else:
        bounds = p.bounds or default_bounds(p.psi, num.T)
    rhs = starlike_distance(p.psi, num.quad_tol)
    return _starlike_equation(p, growth, bounds, rhs, _positive_prefix(f0), extremal_bounds, "beta f0'(r^m) + (1-beta) f0(r^m) + sum M(n) phi_n(r) = -f0(-1)")


def _janowski_equation(p: RadiusProblem) -> RadiusEquation:
    if not is_janowski_family(p.psi):
        raise ValueError("the Janowski solver needs a Janowski-family psi")
    D, E, beta = p.psi.D, p.psi.E, p.beta

    def growth(x: float) -> float:
        return beta * janowski_f0_prime(D, E, x) + (1.0 - beta) * janowski_f0(D, E, x)

    pair = build_extremal_pair(p.psi, 64)
    return _starlike_equation(
        p, growth, CoeffBoundProvider.janowski(D, E), janowski_starlike_distance(D, E), _positive_prefix(pair.f0), False,
        "Janowski closed form",
    )


def _order_alpha_equation(p: RadiusProblem, classical: bool) -> RadiusEquation:
    if classical:
        if not (is_janowski_family(p.psi) and p.psi.D == 1.0 and p.psi.E == -1.0):
            raise ValueError("the classical solver needs psi = (1+z)/(1-z)")
        alpha = 0.0
    else:
        if p.psi.kind not in (ORDER_ALPHA, CLASSICAL):
            raise ValueError("the order-alpha solver needs an order-alpha psi")
        alpha = p.psi.alpha
    beta = p.beta
    a2 = 2.0 * (1.0 - alpha)

    def growth(x: float) -> float:
        return beta * (1.0 + (1.0 - 2.0 * alpha) * x) / (1.0 - x) ** (a2 + 1.0) + (1.0 - beta) * x / (1.0 - x) ** a2

    bounds = CoeffBoundProvider.classical() if classical else CoeffBoundProvider.order_alpha(alpha)
    rhs = 0.25 if classical else 4.0 ** (-(1.0 - alpha))
    k = np.arange(63)
    t_n = np.cumprod(np.concatenate(([1.0], (k + a2) / (k + 1))))
    return _starlike_equation(p, growth, bounds, rhs, t_n, False, "classical closed form" if classical else "order-alpha closed form")


def _ks_equation(p: RadiusProblem) -> RadiusEquation:
    num, N = p.numeric, p.N
    T = num.T
    growth = ks_growth_series(p.psi, T)
    tail_psi = majorant_tail(psi_series(p.psi, T), N)
    # R^N(r) = int_0^r M_t^N(psi) t^(2N-2) / (1 - t^2) dt
    integrand = mul(mul_by_z(tail_psi, 2 * N - 2).truncate(min(T, tail_psi.order)), substitute_power(Series.geometric(T), 2))
    rn = integrate(integrand)
    rhs = ks_distance(p.psi, num.quad_tol)

    def lhs(r: float) -> float:
        return eval_real(growth, p.x_of(r), tol=num.tail_tol) + eval_real(rn, r, tol=num.tail_tol)

    return RadiusEquation(lhs, rhs, True, _positive_prefix(growth), "int_0^{r^m} psi/(1-t^2) + R^N(r) = int_0^1 psi(-t)/(1+t^2)")


def _sc_equation(p: RadiusProblem) -> RadiusEquation:
    num, N = p.numeric, p.N
    pair = build_extremal_pair(p.psi, num.T)
    h = pair.f0
    prod = mul(majorant_tail(h, N), majorant_tail(psi_series(p.psi, num.T), N))
    rn = integrate(div_by_z(prod))
    rhs = starlike_distance(p.psi, num.quad_tol)

    def lhs(r: float) -> float:
        return eval_real(h, p.x_of(r), tol=num.tail_tol) + eval_real(rn, r, tol=num.tail_tol)

    return RadiusEquation(lhs, rhs, True, _positive_prefix(h), "h(r^m) + R^N(r) + h(-1) = 0")


def _cc_equation(p: RadiusProblem) -> RadiusEquation:
    num, N = p.numeric, p.N
    pair = build_extremal_pair(p.psi, num.T)
    k = pair.k_psi
    prod = mul(majorant_tail(pair.k_psi_prime, N), majorant_tail(psi_series(p.psi, num.T), N))
    rhs = convex_distance(p.psi, num.quad_tol)

    def lhs(r: float) -> float:
        return eval_real(k, p.x_of(r), tol=num.tail_tol) + double_bohr_integral(prod, r, tol=num.tail_tol)

    return RadiusEquation(lhs, rhs, True, _positive_prefix(k), "k(r^m) + R^N(r) + k(-1) = 0")


def _cs_equation(p: RadiusProblem) -> RadiusEquation:
    num, N = p.numeric, p.N
    pair = build_extremal_pair(p.psi, num.T)
    kp_sym = symmetric_k_prime(pair)
    psi_s = psi_series(p.psi, num.T)
    first = mul(psi_s, kp_sym)
    prod = mul(majorant_tail(kp_sym, N), majorant_tail(psi_s, N))
    rhs = cs_distance(p.psi, num.quad_tol)

    def lhs(r: float) -> float:
        return double_bohr_integral(first, p.x_of(r), tol=num.tail_tol) + double_bohr_integral(prod, r, tol=num.tail_tol)

    return RadiusEquation(lhs, rhs, True, _positive_prefix(pair.k_psi), "double integral of psi K' at r^m + R^N(r) = boundary double integral")


def build_equation(p: RadiusProblem) -> RadiusEquation:
    tag = p.class_tag
    if tag is ClassTag.GEN_STARLIKE:
        return _gen_starlike_equation(p, extremal_bounds=False)
    if tag is ClassTag.GEN_STARLIKE_EXTREMAL:
        return _gen_starlike_equation(p, extremal_bounds=True)
    if tag is ClassTag.JANOWSKI:
        return _janowski_equation(p)
    if tag is ClassTag.ORDER_ALPHA:
        return _order_alpha_equation(p, classical=False)
    if tag is ClassTag.CLASSICAL:
        return _order_alpha_equation(p, classical=True)
    if tag is ClassTag.KS:
        return _ks_equation(p)
    if tag is ClassTag.SC:
        return _sc_equation(p)
    if tag is ClassTag.CC:
        return _cc_equation(p)
    if tag is ClassTag.CS:
        return _cs_equation(p)
    raise ValueError(f"unsupported class tag {tag}")


def minimal_root(f: Callable[[float], float], r_max: float, scan_points: int, root_tol: float) -> tuple[float, float]:
    """First sign change of an increasing-from-negative ``f`` on (0, r_max], then bisection.

    Returns ``(root, |f(root)|)``.  Raises :class:`NoRootInRange` when no
    sign change is seen and :class:`DivergenceBeforeRoot` when ``f`` cannot
    be evaluated before the first sign change.
    """
    lo = 0.0
    hi = None
    for i in range(1, scan_points + 1):
        r = r_max * i / scan_points
        try:
            fr = f(r)
        except DivergenceError as exc:
            raise DivergenceBeforeRoot(f"evaluation failed at r={r:.12g} before any sign change: {exc}", r=r) from exc
        if fr >= 0.0:
            hi = r
            break
        lo = r
    if hi is None:
        raise NoRootInRange(f"LHS - RHS < 0 on the whole interval (0, {r_max}]")

    flo, fhi = f(lo), f(hi)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm >= 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo <= root_tol and min(abs(flo), abs(fhi)) <= root_tol:
            break
    if abs(flo) <= abs(fhi):
        return lo, abs(flo)
    return hi, abs(fhi)


def solve(p: RadiusProblem, probe: bool = False) -> RadiusResult:
    """Minimal positive root of the class's radius equation."""
    eq = build_equation(p)
    num = p.numeric
    lhs0 = eq.lhs(0.0)
    if lhs0 >= eq.rhs:
        raise ConditionViolated(f"LHS(0+) = {lhs0:.12g} >= RHS = {eq.rhs:.12g}")
    r0, residual = minimal_root(lambda r: eq.lhs(r) - eq.rhs, num.r_max, num.scan_points, num.root_tol)
    capped = eq.caps and r0 > ONE_THIRD
    rb = min(ONE_THIRD, r0) if eq.caps else r0
    res = RadiusResult(r0=r0, rb=rb, capped=capped, residual=residual, condition_ok=True, rhs=eq.rhs, lhs_at_zero=lhs0, equation=eq, problem=p)
    if probe:
        res = replace(res, sharp_probe=sharpness_probe(p, res))
    return res


def _solver_for(tag: ClassTag):
    def run(p: RadiusProblem, probe: bool = False) -> RadiusResult:
        if p.class_tag is not tag:
            raise ValueError(f"expected class {tag.value}, got {p.class_tag.value}")
        return solve(p, probe)

    run.__name__ = f"solve_{tag.name.lower()}"
    run.__doc__ = f"Solve a ``{tag.value}`` radius problem."
    return run


solve_gen_starlike = _solver_for(ClassTag.GEN_STARLIKE)
solve_gen_starlike_extremal = _solver_for(ClassTag.GEN_STARLIKE_EXTREMAL)
solve_janowski = _solver_for(ClassTag.JANOWSKI)
solve_order_alpha = _solver_for(ClassTag.ORDER_ALPHA)
solve_classical = _solver_for(ClassTag.CLASSICAL)
solve_ks = _solver_for(ClassTag.KS)
solve_sc = _solver_for(ClassTag.SC)
solve_cc = _solver_for(ClassTag.CC)
solve_cs = _solver_for(ClassTag.CS)


def sharpness_probe(p: RadiusProblem, res: RadiusResult, delta: float = 1e-3) -> SharpnessReport:
    """Check LHS(r0 + delta) > RHS and positivity of the extremal coefficients.

    Only meaningful when the radius was not capped at 1/3.
    """
    if res.capped:
        return SharpnessReport(delta, None, None, None, skipped="capped at 1/3")
    r = res.r0 + delta
    if r >= p.numeric.r_max:
        return SharpnessReport(delta, None, None, None, skipped="r0 + delta beyond r_max")
    try:
        excess = res.equation.lhs(r) - res.equation.rhs
    except DivergenceError as exc:
        return SharpnessReport(delta, None, None, None, skipped=f"LHS not certified at r0 + delta: {exc}")
    coeffs = res.equation.extremal_coeffs
    return SharpnessReport(delta, excess, excess > 0.0, bool(np.all(coeffs > 0.0)))


def lhs_is_increasing(res: RadiusResult, points: int = 64, r_hi: float | None = None) -> bool:
    """LHS strictly increasing on a uniform grid of (0, r_hi] (default r0)."""
    r_hi = res.r0 if r_hi is None else r_hi
    grid = r_hi * np.arange(1, points + 1) / points
    vals = [res.equation.lhs(0.0)] + [res.equation.lhs(float(r)) for r in grid]
    return bool(np.all(np.diff(vals) > 0.0))


def root_certificate(res: RadiusResult) -> bool:
    tol = res.problem.numeric.root_tol
    eq = res.equation
    return res.residual <= tol and eq.lhs(res.r0 - 16 * tol) < eq.rhs < eq.lhs(res.r0 + 16 * tol)
