"""Per-index coefficient bounds M(n) >= |a_n| for a starlike class.

Products are accumulated incrementally so large n never touches factorials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .series import Series, growth_ratio

JANOWSKI_PRODUCT = "janowski-product"
ORDER_ALPHA_PRODUCT = "order-alpha-product"
CLASSICAL_N = "classical-n"
EXTREMAL_DERIVED = "extremal-derived"


@dataclass(frozen=True, eq=False)
class CoeffBoundProvider:
    variant: str
    D: float = 1.0
    E: float = -1.0
    alpha: float = 0.0
    f0: Series | None = None

    @classmethod
    def janowski(cls, D: float, E: float) -> "CoeffBoundProvider":
        return cls(JANOWSKI_PRODUCT, D=float(D), E=float(E))

    @classmethod
    def order_alpha(cls, alpha: float) -> "CoeffBoundProvider":
        return cls(ORDER_ALPHA_PRODUCT, alpha=float(alpha))

    @classmethod
    def classical(cls) -> "CoeffBoundProvider":
        return cls(CLASSICAL_N)

    @classmethod
    def extremal(cls, f0: Series) -> "CoeffBoundProvider":
        return cls(EXTREMAL_DERIVED, f0=f0)

    @property
    def max_index(self) -> int | None:
        return self.f0.order if self.variant == EXTREMAL_DERIVED else None

    def _factor(self, k: int) -> tuple[float, float]:
        """Ratio M(k+2)/M(k+1) as (numerator, denominator)."""
        if self.variant == JANOWSKI_PRODUCT:
            return abs(self.E - self.D + self.E * k), k + 1.0
        if self.variant == ORDER_ALPHA_PRODUCT:
            return k + 2.0 * (1.0 - self.alpha), k + 1.0
        raise AssertionError(self.variant)

    def ratio_limit(self) -> float | None:
        """``lim M(n+1)/M(n)`` when known; None means estimate from data."""
        if self.variant == JANOWSKI_PRODUCT:
            return abs(self.E)
        if self.variant in (ORDER_ALPHA_PRODUCT, CLASSICAL_N):
            return 1.0
        return max(growth_ratio(self.f0), 0.0)

    def __call__(self, n: int) -> float:
        return bound(self, n)


def iter_bounds(provider: CoeffBoundProvider) -> Iterator[float]:
    """Yield M(1), M(2), ... as a running product; stops at the stored order for extremal data."""
    v = provider.variant
    if v == CLASSICAL_N:
        n = 1
        while True:
            yield float(n)
            n += 1
    if v == EXTREMAL_DERIVED:
        for c in provider.f0.coeffs[1:]:
            yield float(abs(c))
        return
    m, k = 1.0, 0
    while True:
        yield m
        num, den = provider._factor(k)
        # multiply before dividing: integer-valued products stay exact
        m = m * num / den
        k += 1


def bound(provider: CoeffBoundProvider, n: int) -> float:
    if n < 1:
        raise ValueError("coefficient index starts at 1")
    if provider.variant == CLASSICAL_N:
        return float(n)
    if provider.variant == EXTREMAL_DERIVED:
        if n > provider.f0.order:
            raise IndexError(f"extremal series only known to order {provider.f0.order}, asked for {n}")
        return float(abs(provider.f0.coeffs[n]))
    for i, m in enumerate(iter_bounds(provider), start=1):
        if i == n:
            return m
    raise AssertionError("unreachable")


def bounds_array(provider: CoeffBoundProvider, n_max: int) -> np.ndarray:
    """M(1..n_max) as an array (index 0 holds M(1))."""
    out = np.empty(n_max)
    for i, m in zip(range(n_max), iter_bounds(provider)):
        out[i] = m
    return out
