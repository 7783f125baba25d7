"""Ma-Minda generating functions psi with psi(0) = 1.

Janowski-family models, ``psi(z) = (1 + D z)/(1 + E z)`` with
``-1 <= E < D <= 1``, have closed-form values and majorant tails.  The
classical model is Janowski(1, -1) and order alpha is Janowski(1 - 2 alpha, -1),
but both keep their own tag so that solvers can pick the matching
closed-form corollary.

Custom models are given by Taylor data only.  Their admissibility
(univalence, starlikeness with respect to 1, symmetry, positive real part)
is the caller's assertion and is never checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DivergenceError
from .series import DEFAULT_ORDER, Series, evaluate, tail_sum

JANOWSKI = "janowski"
ORDER_ALPHA = "order-alpha"
CLASSICAL = "classical"
CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class PsiModel:
    kind: str
    D: float = 1.0
    E: float = -1.0
    alpha: float = 0.0
    coeffs: tuple[complex, ...] = ()
    exact: bool = False  # custom only: coefficients past the list are zero

    def __post_init__(self):
        if self.kind == JANOWSKI:
            if not (-1.0 <= self.E < self.D <= 1.0):
                raise ValueError(f"Janowski parameters need -1 <= E < D <= 1, got D={self.D}, E={self.E}")
        elif self.kind == ORDER_ALPHA:
            if not 0.0 <= self.alpha < 1.0:
                raise ValueError(f"order alpha must lie in [0, 1), got {self.alpha}")
            object.__setattr__(self, "D", 1.0 - 2.0 * self.alpha)
            object.__setattr__(self, "E", -1.0)
        elif self.kind == CLASSICAL:
            object.__setattr__(self, "D", 1.0)
            object.__setattr__(self, "E", -1.0)
        elif self.kind == CUSTOM:
            if not self.coeffs or self.coeffs[0] != 1:
                raise ValueError("custom psi must have constant coefficient 1")
            if not all(np.isfinite(complex(c)) for c in self.coeffs):
                raise ValueError("custom psi coefficients must be finite")
        else:
            raise ValueError(f"unknown psi kind {self.kind!r}")

    @classmethod
    def janowski(cls, D: float, E: float) -> "PsiModel":
        return cls(JANOWSKI, D=float(D), E=float(E))

    @classmethod
    def order_alpha(cls, alpha: float) -> "PsiModel":
        return cls(ORDER_ALPHA, alpha=float(alpha))

    @classmethod
    def classical(cls) -> "PsiModel":
        return cls(CLASSICAL)

    @classmethod
    def custom(cls, coeffs: Sequence[complex], exact: bool = False) -> "PsiModel":
        return cls(CUSTOM, coeffs=tuple(complex(c) for c in coeffs), exact=exact)

    @property
    def has_closed_form_eval(self) -> bool:
        return self.kind != CUSTOM

    @property
    def derivative_at_zero(self) -> float:
        if self.kind == CUSTOM:
            return self.coeffs[1].real if len(self.coeffs) > 1 else 0.0
        return self.D - self.E

    def label(self) -> str:
        if self.kind == JANOWSKI:
            return f"janowski(D={self.D:g},E={self.E:g})"
        if self.kind == ORDER_ALPHA:
            return f"order-alpha({self.alpha:g})"
        if self.kind == CUSTOM:
            return f"custom[{len(self.coeffs)}]"
        return CLASSICAL


def load_custom(path: str | Path, exact: bool = False) -> PsiModel:
    """Read ``re im`` pairs, one coefficient per line, line k for z**k.

    Blank lines and ``#`` comments are skipped.
    """
    coeffs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno + 1}: expected 're im', got {line!r}")
        coeffs.append(complex(float(parts[0]), float(parts[1])))
    if not coeffs or coeffs[0] != 1:
        raise ValueError(f"{path}: first coefficient must be '1 0'")
    return PsiModel.custom(coeffs, exact=exact)


def psi_series(model: PsiModel, order: int = DEFAULT_ORDER) -> Series:
    if model.kind == CUSTOM:
        stored = np.asarray(model.coeffs, dtype=complex)
        if not model.exact:
            # unknown beyond the stored data: never pad
            return Series(stored[: order + 1])
        c = np.zeros(order + 1, dtype=complex)
        k = min(order + 1, stored.size)
        c[:k] = stored[:k]
        return Series(c)
    D, E = model.D, model.E
    c = np.empty(order + 1)
    c[0] = 1.0
    if order >= 1:
        c[1:] = (D - E) * (-E) ** np.arange(order)
    return Series(c)


def psi_eval(model: PsiModel, x: float) -> float:
    """psi at a real point with |x| <= 1 (closed form for the Janowski family)."""
    if abs(x) > 1.0:
        raise ValueError("psi is evaluated only on [-1, 1]")
    if model.kind == CUSTOM:
        s = psi_series(model, len(model.coeffs) - 1)
        if model.exact:
            return evaluate(s, x).value.real
        ev = evaluate(s, x, strict=False)
        if not ev.certified:
            raise DivergenceError(f"custom psi cannot be certified at x={x}", r=abs(x), tail=ev.tail)
        return ev.value.real
    den = 1.0 + model.E * x
    if den == 0.0:
        raise ZeroDivisionError(f"psi has a pole at x={x}")
    return (1.0 + model.D * x) / den


def psi_majorant_tail(model: PsiModel, n_start: int, t: float) -> float:
    """``sum_{n >= n_start} |c_n| t**n`` for n_start >= 1."""
    if n_start < 1:
        raise ValueError("n_start must be >= 1")
    if not 0.0 <= t < 1.0:
        raise ValueError("t must lie in [0, 1)")
    if model.kind == CUSTOM:
        if not model.exact and n_start > len(model.coeffs) - 1:
            raise DivergenceError(f"custom psi has no data at index {n_start}", r=t)
        s = psi_series(model, max(len(model.coeffs) - 1, n_start))
        if model.exact:
            return tail_sum(s, n_start, t, strict=False)
        return tail_sum(s, n_start, t)
    D, E = model.D, model.E
    e = abs(E)
    if e == 0.0:
        return D * t if n_start == 1 else 0.0
    return (D - E) * e ** (n_start - 1) * t**n_start / (1.0 - e * t)


def psi_coefficient_ratio_limit(model: PsiModel) -> float | None:
    """limsup |c_{n+1}/c_n| where known in closed form."""
    if model.kind == CUSTOM:
        return None
    return abs(model.E)


def is_janowski_family(model: PsiModel) -> bool:
    return model.kind in (JANOWSKI, ORDER_ALPHA, CLASSICAL)


def log_growth_integrand(model: PsiModel):
    """``s -> (psi(-s) - 1)/s`` on [0, 1], continuous at 0 with value -psi'(0)."""
    d0 = model.derivative_at_zero
    if model.kind != CUSTOM:
        D, E = model.D, model.E

        def g(s: float) -> float:
            # (psi(-s) - 1)/s = -(D - E)/(1 - E s), exact including s = 0
            return -(D - E) / (1.0 - E * s)

        return g

    def g_custom(s: float) -> float:
        if s == 0.0:
            return -d0
        return (psi_eval(model, -s) - 1.0) / s

    return g_custom

