"""Power-type weight families phi_n(r) and certified weighted coefficient sums.

Only index-masked powers ``phi_n(r) = r**n`` (or 0) are supported; this is
what keeps the tail of ``sum M(n) phi_n(r)`` certifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .coeff_bounds import CoeffBoundProvider, iter_bounds
from .errors import DivergenceError

POWER_TAIL = "tail"
ODD = "odd"
EVEN = "even"
MASKED = "masked"

MAX_TERMS = 1_000_000
DEFAULT_SUM_TOL = 1e-15


@dataclass(frozen=True)
class WeightSequence:
    kind: str
    n_start: int = 1
    indices: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind == POWER_TAIL and self.n_start < 1:
            raise ValueError("tail weights need N >= 1")
        if self.kind == MASKED and any(i < 1 for i in self.indices):
            raise ValueError("masked indices start at 1")
        if self.kind not in (POWER_TAIL, ODD, EVEN, MASKED):
            raise ValueError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def power_tail(cls, n_start: int) -> "WeightSequence":
        return cls(POWER_TAIL, n_start=int(n_start))

    @classmethod
    def odd(cls) -> "WeightSequence":
        return cls(ODD)

    @classmethod
    def even(cls) -> "WeightSequence":
        return cls(EVEN)

    @classmethod
    def masked(cls, indices) -> "WeightSequence":
        return cls(MASKED, indices=frozenset(int(i) for i in indices))

    @classmethod
    def none(cls) -> "WeightSequence":
        return cls.masked(())

    def active(self, n: int) -> bool:
        if n < 1:
            return False
        if self.kind == POWER_TAIL:
            return n >= self.n_start
        if self.kind == ODD:
            return n % 2 == 1
        if self.kind == EVEN:
            return n % 2 == 0
        return n in self.indices

    def phi(self, n: int, r: float) -> float:
        return r**n if self.active(n) else 0.0

    @property
    def max_index(self) -> int | None:
        if self.kind == MASKED:
            return max(self.indices, default=0)
        return None

    @property
    def gap(self) -> int:
        return 2 if self.kind in (ODD, EVEN) else 1

    def label(self) -> str:
        if self.kind == POWER_TAIL:
            return f"tail:{self.n_start}"
        if self.kind in (ODD, EVEN):
            return self.kind
        if not self.indices:
            return "none"
        return ",".join(str(i) for i in sorted(self.indices))


def parse_weights(text: str) -> WeightSequence:
    """Parse ``tail:N``, ``odd``, ``even``, ``none`` or an explicit index list ``1,3,7``."""
    t = text.strip().lower()
    if t.startswith("tail:"):
        return WeightSequence.power_tail(int(t[5:]))
    if t == ODD:
        return WeightSequence.odd()
    if t == EVEN:
        return WeightSequence.even()
    if t in ("none", ""):
        return WeightSequence.none()
    if t.startswith("mask:"):
        t = t[5:]
    return WeightSequence.masked(int(p) for p in t.split(",") if p.strip())


class WeightedSum(NamedTuple):
    value: float
    tail_bound: float
    n_terms: int


def weighted_sum(
    provider: CoeffBoundProvider,
    weights: WeightSequence,
    r: float,
    tol: float = DEFAULT_SUM_TOL,
    start: int = 1,
) -> WeightedSum:
    """``sum_{n >= start} M(n) phi_n(r)`` with a geometric tail certificate.

    Terms are added until the last active term ``u`` and the ratio bound
    ``q`` give ``u q / (1 - q) <= tol``.  ``q`` is the larger of the last
    observed ratio between active terms and ``(lim M(n+1)/M(n) * r)**gap``;
    for the supported providers the ratios are eventually monotone, so this
    bounds all later ratios.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    if r == 0.0:
        return WeightedSum(0.0, 0.0, 0)
    max_idx = weights.max_index
    lim = provider.ratio_limit()
    lim_q = (lim * r) ** weights.gap if lim is not None else 0.0

    total = 0.0
    prev = None
    q = 1.0
    last = 0.0
    rn = 1.0
    n = 0
    for n, m in enumerate(iter_bounds(provider), start=1):
        rn *= r
        if max_idx is not None and n > max_idx:
            return WeightedSum(total, 0.0, n - 1)
        if n < start or not weights.active(n):
            continue
        term = m * rn
        total += term
        if prev is not None:
            q = max(term / prev if prev > 0 else 0.0, lim_q)
        prev = term
        last = term
        if max_idx is None and q < 1.0 and n > start + 2 * weights.gap:
            tail = last * q / (1.0 - q)
            if tail <= tol * max(1.0, total):
                return WeightedSum(total, tail, n)
        if n > MAX_TERMS:
            break
    if max_idx is not None:
        raise DivergenceError(f"coefficient bounds end before index {max_idx}", r=r)
    if q < 1.0:
        tail = last * q / (1.0 - q)
        if tail <= tol * max(1.0, total):
            return WeightedSum(total, tail, n)
    else:
        tail = float("inf")
    raise DivergenceError(f"weighted sum cannot be certified at r={r:.12g} (tail bound {tail:.3g})", r=r, tail=tail)
