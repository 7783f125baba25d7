"""Extremal functions and distance lower bounds.

For a model psi the starlike extremal is ``f0(z) = z exp(int_0^z (psi(t)-1)/t dt)``
and the convex extremal ``k`` solves ``1 + z k''/k' = psi`` with ``k'(z) = f0(z)/z``.
Both are built as truncated series from the psi coefficients.

The distance constants are lower bounds for ``d(0, boundary f(D))`` over a
whole class, evaluated on the boundary point -1 through integral
representations only; a raw series is never summed at |z| = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import quadrature
from .psi import PsiModel, log_growth_integrand, psi_eval, psi_series
from .series import (
    DEFAULT_ORDER,
    Series,
    div_by_z,
    exp_series,
    integrate,
    mul,
    mul_by_z,
    sqrt_series,
    substitute_power,
)


@dataclass(frozen=True, eq=False)
class ExtremalPair:
    f0: Series
    k_psi: Series
    k_psi_prime: Series
    psi: PsiModel
    T: int


def build_extremal_pair(model: PsiModel, T: int = DEFAULT_ORDER) -> ExtremalPair:
    """Series of f0, k and k' from the psi coefficients up to order T.

    ``k' = exp(int (psi-1)/t)`` carries order T; f0 = z k' and k = int k' are
    then known to order T + 1.
    """
    psi = psi_series(model, T)
    kp = exp_series(integrate(div_by_z(psi - 1.0)))
    return ExtremalPair(f0=mul_by_z(kp), k_psi=integrate(kp), k_psi_prime=kp, psi=model, T=T)


def ks_growth_series(model: PsiModel, T: int = DEFAULT_ORDER) -> Series:
    """``int_0^z psi(t)/(1 - t^2) dt``, the growth majorant for K_s(psi)."""
    return integrate(mul(psi_series(model, T), substitute_power(Series.geometric(T), 2)))


def symmetric_k_prime(pair: ExtremalPair) -> Series:
    """``K'(z) = sqrt(k'(z^2))`` normalized by K'(0) = 1."""
    return sqrt_series(substitute_power(pair.k_psi_prime, 2))


def _pow1p(E: float, x: float, a: float) -> float:
    """``(1 + E x)**(a / E)`` through log1p, continuous as E -> 0."""
    if abs(E) < 1e-150:  # log1p(Ex)/E = x to double precision; avoids a/E overflow
        return math.exp(a * x)
    return math.exp(a * (math.log1p(E * x) / E))


def janowski_f0(D: float, E: float, x: float) -> float:
    return x * _pow1p(E, x, D - E)


def janowski_f0_prime(D: float, E: float, x: float) -> float:
    if E == 0.0:
        return (1.0 + D * x) * math.exp(D * x)
    return (1.0 + D * x) * _pow1p(E, x, D - E) / (1.0 + E * x)


def janowski_starlike_distance(D: float, E: float) -> float:
    """Closed form of ``-f0(-1)`` for Janowski(D, E)."""
    return _pow1p(E, -1.0, D - E)


def _log_kprime_at_minus(model: PsiModel, x: float, tol: float) -> float:
    """``log k'(-x) = int_0^x (psi(-u) - 1)/u du`` for x in [0, 1]."""
    if x == 0.0:
        return 0.0
    return quadrature.adaptive(log_growth_integrand(model), 0.0, x, tol)


def starlike_distance(model: PsiModel, tol: float = quadrature.DEFAULT_QUAD_TOL) -> float:
    """``-f0(-1) = exp(int_0^1 (psi(-s) - 1)/s ds)``."""
    return math.exp(_log_kprime_at_minus(model, 1.0, tol))


def convex_distance(model: PsiModel, tol: float = quadrature.DEFAULT_QUAD_TOL) -> float:
    """``-k(-1) = int_0^1 k'(-s) ds`` by nested quadrature."""
    inner_tol = tol * 1e-2
    return quadrature.adaptive(lambda s: math.exp(_log_kprime_at_minus(model, s, inner_tol)), 0.0, 1.0, tol)


def ks_distance(model: PsiModel, tol: float = quadrature.DEFAULT_QUAD_TOL) -> float:
    return quadrature.adaptive(lambda t: psi_eval(model, -t) / (1.0 + t * t), 0.0, 1.0, tol)


def cs_integrand(model: PsiModel, tol: float = quadrature.DEFAULT_QUAD_TOL):
    """``t -> psi(-t) sqrt(k'(-t^2))`` on [0, 1]."""
    inner_tol = tol * 1e-2

    def h(t: float) -> float:
        return psi_eval(model, -t) * math.exp(0.5 * _log_kprime_at_minus(model, t * t, inner_tol))

    return h


def cs_distance(model: PsiModel, tol: float = quadrature.DEFAULT_QUAD_TOL) -> float:
    """``int_0^1 (1/s) int_0^s psi(-t) sqrt(k'(-t^2)) dt ds``.

    Swapping the order of integration turns the double integral into
    ``int_0^1 h(t) log(1/t) dt``, which QUADPACK handles with a log weight.
    """
    return quadrature.log_weighted(cs_integrand(model, tol), 1.0, tol)
