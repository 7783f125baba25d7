"""Brute-force verification on randomly generated subordinate functions.

Schwarz functions are built so that ``|w(z)| <= |z|`` holds by construction
(scalar multiples ``c z`` with ``|c| <= 1``, monomials, and ``z`` times a
finite Blaschke product).  From them the oracle builds

* subordinates ``g = f o w`` of a given ``f``;
* genuine members of the starlike/convex classes, by solving
  ``z f'/f = psi(w)`` or ``1 + z f''/f' = psi(w)`` as series;
* members of the conjugate/symmetric-point classes as the real-coefficient
  (resp. odd) members of those, and K_s members through an explicit
  ``h`` of order 1/2.

Each randomized suite is deterministic in its seed and reports failures as
``FAIL <check> seed=<s> r=<r> theta=<t> margin=<m>`` lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .extremal import build_extremal_pair
from .psi import PsiModel, psi_series
from .series import (
    Series,
    compose,
    derivative,
    div_by_z,
    evaluate,
    exp_series,
    integrate,
    majorant_tail,
    mul,
    mul_by_z,
    reflect,
    substitute_power,
)
from .solvers import ClassTag, RadiusProblem, RadiusResult
from .weights import WeightSequence

ORACLE_ORDER = 96
SCALAR = "scalar"
MONOMIAL = "monomial"
BLASCHKE = "blaschke"
FAMILIES = (SCALAR, MONOMIAL, BLASCHKE)


@dataclass(frozen=True, eq=False)
class SchwarzFunction:
    omega: Series
    construction: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    margin: float
    theta: float | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def summary(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.passed}/{self.total}"


def format_failure(check: str, seed, r: float, theta, margin: float) -> str:
    t = "-" if theta is None else f"{theta:.6g}"
    return f"FAIL {check} seed={seed} r={r:.6g} theta={t} margin={margin:.6g}"


# Schwarz functions


def schwarz_scalar(c: complex, T: int = ORACLE_ORDER) -> SchwarzFunction:
    if abs(c) > 1.0:
        raise ValueError("|c| must be <= 1")
    return SchwarzFunction(Series.monomial(1, T, c), SCALAR, {"c": c})


def schwarz_monomial(k: int, T: int = ORACLE_ORDER) -> SchwarzFunction:
    return SchwarzFunction(Series.monomial(k, T), MONOMIAL, {"k": k})


def blaschke_factor(a: complex, T: int = ORACLE_ORDER) -> Series:
    """Series of ``(z - a)/(1 - conj(a) z)`` for ``|a| < 1``."""
    if abs(a) >= 1.0:
        raise ValueError("Blaschke zeros must lie inside the disk")
    geo = Series.geometric(T, np.conj(a))
    lin = Series(np.concatenate(([-a, 1.0], np.zeros(T - 1))))
    return mul(lin, geo)


def schwarz_blaschke(zeros: Iterable[complex], T: int = ORACLE_ORDER, rotation: complex = 1.0) -> SchwarzFunction:
    zeros = list(zeros)
    if len(zeros) > 2:
        raise ValueError("at most two Blaschke zeros are supported")
    prod = Series.constant(rotation, T)
    for a in zeros:
        prod = mul(prod, blaschke_factor(a, T))
    return SchwarzFunction(mul_by_z(prod).truncate(T), BLASCHKE, {"zeros": zeros, "rotation": rotation})


def random_schwarz(seed, family: str, T: int = ORACLE_ORDER, real: bool = False) -> SchwarzFunction:
    """Deterministic random Schwarz function; ``real=True`` keeps coefficients real."""
    rng = np.random.default_rng(seed)
    if family == SCALAR:
        rho = rng.uniform(0.0, 1.0)
        c = rho * (rng.choice([-1.0, 1.0]) if real else np.exp(2j * np.pi * rng.uniform()))
        return schwarz_scalar(c, T)
    if family == MONOMIAL:
        return schwarz_monomial(int(rng.integers(1, 5)), T)
    if family == BLASCHKE:
        n = int(rng.integers(1, 3))
        if real:
            zeros = list(rng.uniform(-0.9, 0.9, size=n))
            rot = float(rng.choice([-1.0, 1.0]))
        else:
            zeros = list(np.sqrt(rng.uniform(0, 0.81, size=n)) * np.exp(2j * np.pi * rng.uniform(size=n)))
            rot = complex(np.exp(2j * np.pi * rng.uniform()))
        return schwarz_blaschke(zeros, T, rot)
    raise ValueError(f"unknown Schwarz family {family!r}")


def make_subordinate(f: Series, w: SchwarzFunction) -> Series:
    return compose(f, w.omega)


# class members


def starlike_member(psi: PsiModel, w: SchwarzFunction) -> Series:
    """``f`` with ``z f'/f = psi(w(z))``, a member of S*(psi)."""
    T = w.omega.order
    p = compose(psi_series(psi, T), w.omega)
    return mul_by_z(exp_series(integrate(div_by_z(p - 1.0)))).truncate(T)


def convex_member(psi: PsiModel, w: SchwarzFunction) -> Series:
    """``f`` with ``1 + z f''/f' = psi(w(z))``, a member of C(psi)."""
    T = w.omega.order
    p = compose(psi_series(psi, T), w.omega)
    return integrate(exp_series(integrate(div_by_z(p - 1.0)))).truncate(T)


def odd_convex_member(psi: PsiModel, w1: SchwarzFunction) -> Series:
    """Odd member of C(psi) from ``w(z) = w1(z^2)``; odd convex functions lie in C_s(psi)."""
    w = SchwarzFunction(substitute_power(w1.omega, 2), w1.construction + "(z^2)", w1.params)
    return convex_member(psi, w)


def ks_member(psi: PsiModel, w: SchwarzFunction, w_h: SchwarzFunction) -> Series:
    """Member of K_s(psi): ``z f' = G psi(w)`` with ``G = -h(z) h(-z)/z`` and ``h`` in S*(1/2).

    ``w_h`` must carry two more orders than ``w``; dividing by z twice eats them.
    """
    T = w.omega.order
    if w_h.omega.order < T + 2:
        raise ValueError("w_h needs order >= order(w) + 2")
    h = starlike_member(PsiModel.janowski(0.0, -1.0), w_h)
    G = div_by_z(-mul(h, reflect(h)))
    p = compose(psi_series(psi, T), w.omega)
    return integrate(mul(div_by_z(G), p)).truncate(T)


def class_member(tag: ClassTag, psi: PsiModel, seed, T: int = ORACLE_ORDER) -> Series:
    rng = np.random.default_rng(seed)
    fam = FAMILIES[int(rng.integers(len(FAMILIES)))]
    sub_seed = int(rng.integers(2**31))
    if tag in (ClassTag.SC, ClassTag.CC):
        w = random_schwarz(sub_seed, fam, T, real=True)
        return starlike_member(psi, w) if tag is ClassTag.SC else convex_member(psi, w)
    if tag is ClassTag.CS:
        return odd_convex_member(psi, random_schwarz(sub_seed, fam, T))
    if tag is ClassTag.KS:
        fam_h = FAMILIES[int(rng.integers(len(FAMILIES)))]
        return ks_member(psi, random_schwarz(sub_seed, fam, T), random_schwarz(sub_seed + 1, fam_h, T + 2))
    return starlike_member(psi, random_schwarz(sub_seed, fam, T))


# checks


def _scale(*values: float) -> float:
    return 1e-12 * max(1.0, *values)


def check_series_lemma(f: Series, g: Series, N: int, k: int, r: float) -> CheckResult:
    """``sum_{n=N}^k |b_n| r^n <= sum_{n=N}^k |a_n| r^n`` for ``g`` subordinate to ``f``."""
    k = min(k, f.order, g.order)
    rn = r ** np.arange(k + 1)
    lhs = float(np.sum(np.abs(g.coeffs[N : k + 1]) * rn[N:]))
    rhs = float(np.sum(np.abs(f.coeffs[N : k + 1]) * rn[N:]))
    margin = rhs - lhs
    return CheckResult(margin >= -_scale(lhs, rhs), margin)


def weight_vector(weights: WeightSequence, r: float, order: int) -> np.ndarray:
    return np.array([weights.phi(n, r) for n in range(order + 1)])


def check_weighted_lemma(f: Series, g: Series, weights: WeightSequence, r: float) -> CheckResult:
    """Weighted form: the subordinate's weighted coefficient sum is dominated by ``f``'s."""
    k = min(f.order, g.order)
    phi = weight_vector(weights, r, k)
    lhs = float(np.dot(np.abs(g.coeffs[: k + 1]), phi))
    rhs = float(np.dot(np.abs(f.coeffs[: k + 1]), phi))
    margin = rhs - lhs
    return CheckResult(margin >= -_scale(lhs, rhs), margin)


def bohr_operator(f: Series, N: int, r: float) -> float:
    """``M_r^N(f)`` on the stored coefficients (no tail guard; for axiom checks)."""
    c = np.abs(f.coeffs[N:])
    return float(np.dot(c, r ** np.arange(N, f.order + 1)))


def check_operator_axioms(f: Series, g: Series, alpha: complex, N: int, r: float) -> dict[str, bool]:
    """Bohr-operator properties; product and unit only for N = 0."""
    Mf, Mg = bohr_operator(f, N, r), bohr_operator(g, N, r)
    tol = _scale(Mf, Mg, Mf * Mg)
    out = {
        "nonnegative": Mf >= 0.0 and (r == 0.0 or (Mf == 0.0) == (not np.any(f.coeffs[N:]))),
        "subadditive": bohr_operator(f + g, N, r) <= Mf + Mg + tol,
        "homogeneous": abs(bohr_operator(alpha * f, N, r) - abs(alpha) * Mf) <= tol * max(1.0, abs(alpha)),
    }
    if N == 0:
        out["submultiplicative"] = bohr_operator(mul(f, g), 0, r) <= Mf * Mg + tol
        out["unit"] = bohr_operator(Series.constant(1.0, f.order), 0, r) == 1.0
    return out


def _lhs_terms(p: RadiusProblem, g: Series, r: float, theta: np.ndarray) -> np.ndarray:
    z = r * np.exp(1j * theta)
    zm = np.zeros_like(z) if p.m == math.inf else z ** int(p.m)
    gz = np.array([evaluate(g, complex(x), strict=True).value for x in zm])
    if p.class_tag.is_starlike_section:
        gp = derivative(g)
        gpz = np.array([evaluate(gp, complex(x), strict=True).value for x in zm])
        growth = p.beta * np.abs(gpz) + (1.0 - p.beta) * np.abs(gz)
        phi = weight_vector(p.weights, r, g.order)
        coeff_sum = float(np.dot(np.abs(g.coeffs), phi))
    else:
        growth = np.abs(gz)
        coeff_sum = evaluate(majorant_tail(g, p.N), r, strict=True).value.real
    return growth + coeff_sum


def check_radius_inequality(p: RadiusProblem, res: RadiusResult, f: Series, g: Series, r: float, theta_samples: int = 64) -> CheckResult:
    """Worst margin ``RHS - LHS(theta)`` of the class inequality on ``|z| = r``.

    For the starlike tags the LHS is evaluated on ``g`` (pass ``g = f`` for
    the class member itself); for the remaining tags ``g`` is the
    subordinate of ``f``.  The grid maximum is only a lower bound of the true
    maximum over the circle.
    """
    del f  # the majorant enters only through how g was built
    theta = 2.0 * np.pi * np.arange(theta_samples) / theta_samples
    lhs = _lhs_terms(p, g, r, theta)
    margins = res.rhs - lhs
    i = int(np.argmin(margins))
    worst = float(margins[i])
    return CheckResult(worst >= -_scale(res.rhs), worst, float(theta[i]))


def check_growth_bounds(f: Series, model: PsiModel, r: float, theta_samples: int = 64, convex: bool = False, T: int | None = None) -> CheckResult:
    """``-F(-r) <= |f(z)| <= F(r)`` on ``|z| = r`` with F = f0 (or k when ``convex``)."""
    pair = build_extremal_pair(model, T or f.order)
    F = pair.k_psi if convex else pair.f0
    upper = evaluate(F, r, strict=True).value.real
    lower = -evaluate(F, -r, strict=True).value.real
    theta = 2.0 * np.pi * np.arange(theta_samples) / theta_samples
    vals = np.abs([evaluate(f, complex(r * np.exp(1j * t)), strict=True).value for t in theta])
    margins = np.minimum(upper - vals, vals - lower)
    i = int(np.argmin(margins))
    return CheckResult(bool(margins[i] >= -1e-8), float(margins[i]), float(theta[i]))


# majorants used by the lemma suites


def koebe(T: int) -> Series:
    return Series(np.arange(T + 1, dtype=float))


def half_plane(T: int) -> Series:
    """``z/(1 - z)``, convex with all coefficients 1."""
    c = np.ones(T + 1)
    c[0] = 0.0
    return Series(c)


def classical_psi(T: int) -> Series:
    return psi_series(PsiModel.classical(), T)


def random_analytic(rng: np.random.Generator, T: int) -> Series:
    """Bounded random coefficients: analytic in the disk but no structure."""
    mags = rng.uniform(0.0, 1.0, T + 1)
    return Series(mags * np.exp(2j * np.pi * rng.uniform(size=T + 1)))


# Termwise-dominating majorants: subordinates of these satisfy |b_n| <= |a_n|
# (Rogosinski-type bounds for starlike Koebe and for convex maps with |a_n| = |a_1|).
DOMINATING_MAJORANTS: dict[str, Callable[[int], Series]] = {
    "koebe": koebe,
    "half-plane": half_plane,
    "classical-psi": classical_psi,
}


def _pick_pair(rng: np.random.Generator, T: int, allow_random: bool) -> tuple[str, Series, Series]:
    names = list(DOMINATING_MAJORANTS) + (["random"] if allow_random else [])
    name = names[int(rng.integers(len(names)))]
    f = random_analytic(rng, T) if name == "random" else DOMINATING_MAJORANTS[name](T)
    fam = FAMILIES[int(rng.integers(len(FAMILIES)))]
    w = random_schwarz(int(rng.integers(2**31)), fam, T)
    return f"{name}/{fam}", f, make_subordinate(f, w)


def lemma_suite(seed: int = 0, pairs: int = 1000, T: int = 64, Ns=(1, 2, 3), ks=(8, 32, None), rs=(0.1, 0.25, 1.0 / 3.0)) -> SuiteReport:
    """Section-sum lemma over ``pairs`` seeded subordinate pairs.

    Arbitrary bounded ``f`` are included for N = 1 only, where the lemma
    holds for every analytic majorant; N >= 2 uses termwise-dominating
    majorants (it fails in general, e.g. for ``f(z) = z``).
    """
    rep = SuiteReport("lemma")
    for i in range(pairs):
        rng = np.random.default_rng([seed, i])
        label, f, g = _pick_pair(rng, T, allow_random=True)
        ok = True
        for N in Ns:
            if label.startswith("random") and N > 1:
                continue
            for k in ks:
                for r in rs:
                    c = check_series_lemma(f, g, N, T if k is None else k, r)
                    if not c.ok:
                        ok = False
                        rep.failures.append(format_failure(f"series-lemma[{label},N={N},k={k or T}]", f"{seed}:{i}", r, None, c.margin))
        rep.total += 1
        rep.passed += ok
    return rep


def weighted_lemma_suite(seed: int = 0, pairs: int = 500, T: int = 64, r: float = 0.3, weights: WeightSequence | None = None) -> SuiteReport:
    weights = weights or WeightSequence.odd()
    rep = SuiteReport("weighted-lemma")
    for i in range(pairs):
        rng = np.random.default_rng([seed, 10_000 + i])
        label, f, g = _pick_pair(rng, T, allow_random=False)
        c = check_weighted_lemma(f, g, weights, r)
        rep.total += 1
        if c.ok:
            rep.passed += 1
        else:
            rep.failures.append(format_failure(f"weighted-lemma[{label},{weights.label()}]", f"{seed}:{i}", r, None, c.margin))
    return rep


def operator_suite(seed: int = 0, pairs: int = 1000, N: int = 0, rs=(0.1, 1.0 / 3.0, 0.5), T: int = 32) -> SuiteReport:
    rep = SuiteReport(f"operator[N={N}]")
    for i in range(pairs):
        rng = np.random.default_rng([seed, 20_000 + i])
        f, g = random_analytic(rng, T), random_analytic(rng, T)
        alpha = complex(rng.normal(), rng.normal())
        ok = True
        for r in rs:
            for name, passed in check_operator_axioms(f, g, alpha, N, r).items():
                if not passed:
                    ok = False
                    rep.failures.append(format_failure(f"operator-{name}[N={N}]", f"{seed}:{i}", r, None, float("nan")))
        rep.total += 1
        rep.passed += ok
    return rep


def growth_suite(seed: int = 0, samples: int = 100, r: float = 0.4, psi: PsiModel | None = None, T: int = ORACLE_ORDER) -> SuiteReport:
    psi = psi or PsiModel.classical()
    rep = SuiteReport("growth")
    for i in range(samples):
        rng = np.random.default_rng([seed, 30_000 + i])
        fam = FAMILIES[int(rng.integers(len(FAMILIES)))]
        w = random_schwarz(int(rng.integers(2**31)), fam, T)
        convex = bool(i % 2)
        f = convex_member(psi, w) if convex else starlike_member(psi, w)
        c = check_growth_bounds(f, psi, r, convex=convex)
        rep.total += 1
        if c.ok:
            rep.passed += 1
        else:
            rep.failures.append(format_failure(f"growth[{'convex' if convex else 'starlike'},{fam}]", f"{seed}:{i}", r, c.theta, c.margin))
    return rep


def radius_suite(results: Iterable[RadiusResult], seed: int = 0, subordinates: int = 100, theta_samples: int = 64, fraction: float = 0.9, T: int = ORACLE_ORDER) -> SuiteReport:
    """Class inequality at ``fraction * rb`` for random members/subordinates of each solved instance."""
    rep = SuiteReport("radius")
    for j, res in enumerate(results):
        p = res.problem
        r = fraction * res.rb
        for i in range(subordinates):
            rng = np.random.default_rng([seed, 40_000 + 1000 * j + i])
            f = class_member(p.class_tag, p.psi, int(rng.integers(2**31)), T)
            if p.class_tag.is_starlike_section:
                g = f
            else:
                fam = FAMILIES[int(rng.integers(len(FAMILIES)))]
                g = make_subordinate(f, random_schwarz(int(rng.integers(2**31)), fam, T))
            c = check_radius_inequality(p, res, f, g, r, theta_samples)
            rep.total += 1
            if c.ok:
                rep.passed += 1
            else:
                rep.failures.append(format_failure(f"radius[{p.class_tag.value},m={p.m_label()},N={p.N}]", f"{seed}:{j}:{i}", r, c.theta, c.margin))
    return rep


def golden_problems() -> list[RadiusProblem]:
    """Reference instances: classical and order-1/2 starlike, the Janowski
    reduction, odd weights, and the four subordination classes at m = 1, inf."""
    from dataclasses import replace as _replace

    from .solvers import NumericConfig

    classical = PsiModel.classical()
    out = [
        RadiusProblem(ClassTag.GEN_STARLIKE, classical),
        RadiusProblem(ClassTag.GEN_STARLIKE, PsiModel.order_alpha(0.5)),
        RadiusProblem(ClassTag.JANOWSKI, PsiModel.janowski(1.0, -1.0)),
        RadiusProblem(ClassTag.GEN_STARLIKE, classical, weights=WeightSequence.odd()),
    ]
    for tag in (ClassTag.KS, ClassTag.SC, ClassTag.CC, ClassTag.CS):
        for m in (1, math.inf):
            p = RadiusProblem(tag, classical, m=m)
            if tag is ClassTag.CS and m == math.inf:
                # the root sits near 0.92; T = 256 cannot certify the tails there
                p = _replace(p, numeric=NumericConfig(T=1024))
            out.append(p)
    return out
