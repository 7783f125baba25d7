"""Adaptive Gauss-Kronrod quadrature with a hard tolerance contract.

Thin wrapper around QUADPACK (``scipy.integrate.quad``): the estimated error
must come back below ``tol`` or :class:`QuadratureError` is raised.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

from scipy import integrate as _spi

from .errors import QuadratureError

DEFAULT_QUAD_TOL = 1e-11


def adaptive(func: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_QUAD_TOL, limit: int = 200) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _spi.IntegrationWarning)
        value, err = _spi.quad(func, a, b, epsabs=tol, epsrel=tol * 1e-2, limit=limit)
    if not err <= tol:
        raise QuadratureError(f"quadrature on [{a}, {b}] reached only {err:.3g} (wanted {tol:.3g})", achieved=err)
    return value


def nested_double(func: Callable[[float], float], r: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    """``int_0^r (1/s) int_0^s func(t) dt ds`` by literal nested quadrature.

    Deliberately slow; used as an independent reference for the term-wise
    and log-weight routes.
    """

    def outer(s: float) -> float:
        if s == 0.0:
            return func(0.0)
        return adaptive(func, 0.0, s, tol * 0.1) / s

    return adaptive(outer, 0.0, r, tol)


def log_weighted(func: Callable[[float], float], r: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    """Same double integral via ``int_0^r func(t) log(r/t) dt`` (order of integration swapped)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _spi.IntegrationWarning)
        # weight 'alg-loga' on [0, r] is w(t) = log(t - 0); split log(r/t) = log r - log t
        plain, e1 = _spi.quad(func, 0.0, r, epsabs=tol, epsrel=tol * 1e-2, limit=200)
        logt, e2 = _spi.quad(func, 0.0, r, weight="alg-loga", wvar=(0.0, 0.0), epsabs=tol, epsrel=tol * 1e-2, limit=200)
    err = e1 + e2
    if not err <= tol:
        raise QuadratureError(f"log-weighted quadrature reached only {err:.3g}", achieved=err)
    return plain * math.log(r) - logt
