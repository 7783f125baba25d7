"""Truncated power series with complex coefficients.

A :class:`Series` stores the Taylor coefficients ``c_0, ..., c_T`` of a
function analytic in the unit disk.  Coefficients beyond ``T`` are *unknown*,
not zero, so binary operations between series of different orders truncate to
the smaller order instead of padding.

Everything here is a pure function of immutable inputs.  Evaluation and tail
sums carry a tail estimate built from the empirical growth ratio of the last
coefficients; when that estimate cannot be made small the result is flagged
(or, in strict mode, rejected with :class:`DivergenceError`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DivergenceError, SeriesPreconditionError

DEFAULT_ORDER = 256
RATIO_WINDOW = 16
DEFAULT_TAIL_TOL = 1e-12
NOISE_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class Series:
    """Truncated Taylor series ``sum_{n<=T} coeffs[n] z**n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.coeffs.size > 6 else ""
        return f"Series([{head}{more}], T={self.order})"

    @property
    def real(self) -> np.ndarray:
        return self.coeffs.real.copy()

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs.imag) <= tol))

    def truncate(self, order: int) -> "Series":
        if order < 0:
            raise ValueError("order must be non-negative")
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    # arithmetic sugar; the module-level functions are the real implementation
    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return Series(-self.coeffs)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return Series(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __call__(self, x: complex) -> complex:
        return evaluate(self, x, strict=True).value

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "Series":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, coeff: complex = 1.0) -> "Series":
        if k > order:
            raise ValueError("monomial degree exceeds truncation order")
        c = np.zeros(order + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls.monomial(1, order)

    @classmethod
    def geometric(cls, order: int = DEFAULT_ORDER, ratio: complex = 1.0) -> "Series":
        """Series of ``1/(1 - ratio*z)``."""
        return cls(np.asarray(ratio, dtype=complex) ** np.arange(order + 1))


class MajorantSeries(Series):
    """A series whose coefficients are non-negative reals."""

    def __post_init__(self):
        super().__post_init__()
        c = self.coeffs
        if np.any(c.imag != 0) or np.any(c.real < 0):
            raise ValueError("majorant coefficients must be non-negative reals")


class Evaluation(NamedTuple):
    value: complex
    tail: float
    certified: bool


def _coerce(other, order: int) -> Series:
    if isinstance(other, Series):
        return other
    return Series.constant(complex(other), order)


def _align(a: Series, b: Series) -> tuple[np.ndarray, np.ndarray]:
    t = min(a.order, b.order)
    return a.coeffs[: t + 1], b.coeffs[: t + 1]


def add(a: Series, b: Series) -> Series:
    x, y = _align(a, b)
    return Series(x + y)


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the smaller of the two orders."""
    x, y = _align(a, b)
    return Series(np.convolve(x, y)[: x.size])


def derivative(a: Series) -> Series:
    if a.order == 0:
        return Series([0.0])
    n = np.arange(1, a.order + 1)
    return Series(a.coeffs[1:] * n)


def integrate(a: Series) -> Series:
    """Antiderivative vanishing at 0; the order grows by one."""
    n = np.arange(1, a.order + 2)
    return Series(np.concatenate(([0.0], a.coeffs / n)))


def div_by_z(a: Series) -> Series:
    if a.coeffs[0] != 0:
        raise SeriesPreconditionError("div_by_z needs a zero constant term")
    if a.order == 0:
        return Series([0.0])
    return Series(a.coeffs[1:])


def mul_by_z(a: Series, k: int = 1) -> Series:
    """Multiply by ``z**k``; all coefficients stay known, so the order grows by k."""
    return Series(np.concatenate((np.zeros(k, dtype=complex), a.coeffs)))


def reflect(a: Series) -> Series:
    """``a(-z)``."""
    return Series(a.coeffs * (-1.0) ** np.arange(a.coeffs.size))


def substitute_power(a: Series, k: int) -> Series:
    """``a(z**k)`` truncated at the input order.

    Indices between the known ones are genuinely zero, so the result is
    known up to ``k*(T+1) - 1``; it is cut back to ``T``.
    """
    if k < 1:
        raise ValueError("power must be positive")
    c = np.zeros(a.coeffs.size, dtype=complex)
    idx = np.arange(0, a.coeffs.size, k)
    c[idx] = a.coeffs[: idx.size]
    return Series(c)


def exp_series(a: Series) -> Series:
    """exp(a) through ``n E_n = sum_{k=1}^n k a_k E_{n-k}``."""
    if a.coeffs[0] != 0:
        raise SeriesPreconditionError("exp_series needs a(0) = 0")
    t = a.order
    ka = a.coeffs * np.arange(t + 1)
    e = np.zeros(t + 1, dtype=complex)
    e[0] = 1.0
    for n in range(1, t + 1):
        e[n] = np.dot(ka[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return Series(e)


def log_series(a: Series) -> Series:
    """log(a) for a(0) = 1, via ``L' = a'/a``."""
    if a.coeffs[0] != 1:
        raise SeriesPreconditionError("log_series needs a(0) = 1")
    t = a.order
    c = a.coeffs
    lg = np.zeros(t + 1, dtype=complex)
    # n c_n = sum_{k=1}^{n} k L_k c_{n-k}
    for n in range(1, t + 1):
        acc = n * c[n] - np.dot(np.arange(1, n) * lg[1:n], c[n - 1 : 0 : -1])
        lg[n] = acc / n
    return Series(lg)


def sqrt_series(a: Series) -> Series:
    """Square root normalized by S(0) = 1."""
    if a.coeffs[0] != 1:
        raise SeriesPreconditionError("sqrt_series needs a(0) = 1")
    t = a.order
    c = a.coeffs
    s = np.zeros(t + 1, dtype=complex)
    s[0] = 1.0
    for n in range(1, t + 1):
        cross = np.dot(s[1:n], s[n - 1 : 0 : -1]) if n > 1 else 0.0
        s[n] = (c[n] - cross) / 2.0
    return Series(s)


def compose(f: Series, w: Series) -> Series:
    """``f(w(z))`` by Horner's scheme over series; requires ``w(0) = 0``."""
    if w.coeffs[0] != 0:
        raise SeriesPreconditionError("compose needs an inner series with w(0) = 0")
    t = min(f.order, w.order)
    wc = w.coeffs[: t + 1]
    out = np.zeros(t + 1, dtype=complex)
    out[0] = f.coeffs[t]
    for k in range(t - 1, -1, -1):
        out = np.convolve(out, wc)[: t + 1]
        out[0] += f.coeffs[k]
    return Series(out)


def majorant(a: Series) -> MajorantSeries:
    return MajorantSeries(np.abs(a.coeffs))


def majorant_tail(a: Series, n_start: int) -> MajorantSeries:
    """Coefficients ``|a_n|`` for ``n >= n_start``, zero below."""
    c = np.abs(a.coeffs)
    c[: max(n_start, 0)] = 0.0
    return MajorantSeries(c)


def growth_ratio(a: Series, window: int = RATIO_WINDOW) -> float:
    """Largest per-step magnitude ratio over the last ``window`` coefficients.

    Ratios between non-adjacent nonzero entries are taken per index step, so
    series with only even (or odd) coefficients are handled.  An all-zero
    window means the series looks polynomial and 0 is returned; a window with
    a single nonzero entry gives the conservative value 1.
    """
    mags = np.abs(a.coeffs[max(0, a.order - window) :])
    nz = np.flatnonzero(mags)
    if nz.size == 0:
        return 0.0
    if nz.size == 1:
        return 1.0
    steps = np.diff(nz)
    ratios = (mags[nz[1:]] / mags[nz[:-1]]) ** (1.0 / steps)
    return float(ratios.max())


def envelope(a: Series, window: int = RATIO_WINDOW) -> tuple[float, float]:
    """Geometric envelope ``|a_n| <~ A * rho**(n - T)`` fitted to the last ``window`` coefficients.

    ``rho`` compares the maxima of the two half-window blocks, so sparse,
    periodic or nearly cancelling entries do not inflate it the way
    entry-to-entry ratios would.  ``A`` is the smallest anchor dominating
    every entry in the window.  Falls back to :func:`growth_ratio` when the
    older block is empty.  Entries below ``NOISE_FLOOR`` relative to the
    window maximum count as zero (roundoff in coefficients that vanish by
    symmetry).
    """
    T = a.order
    start = max(0, T - window)
    mags = np.abs(a.coeffs[start:])
    mags = np.where(mags > NOISE_FLOOR * mags.max(initial=0.0), mags, 0.0)
    nz = np.flatnonzero(mags)
    if nz.size == 0:
        return 0.0, 0.0
    half = max(1, mags.size // 2)
    older, newer = mags[: mags.size - half].max(initial=0.0), mags[mags.size - half :].max(initial=0.0)
    if older > 0.0:
        rho = float((newer / older) ** (1.0 / half))
    else:
        rho = growth_ratio(a, window)
    idx = start + nz
    with np.errstate(under="ignore", over="ignore"):
        anchor = float(np.max(mags[nz] * rho ** (T - idx))) if rho > 0 else float(mags[nz[-1]])
    return rho, anchor


def tail_estimate(a: Series, x_abs: float) -> float:
    """Geometric extrapolation of the truncated tail at ``|z| = x_abs``.

    Uses the fitted :func:`envelope`; returns ``inf`` when ``rho * x_abs >= 1``.
    """
    if x_abs == 0.0:
        return 0.0
    rho, anchor = envelope(a)
    if anchor == 0.0:
        return 0.0
    q = rho * x_abs
    if q >= 1.0:
        return float("inf")
    with np.errstate(under="ignore"):
        return float(anchor * x_abs**a.order * q / (1.0 - q))


def _certify(value: complex, tail: float, tol: float) -> bool:
    return tail <= tol * max(1.0, abs(value))


def evaluate(a: Series, x: complex, *, tol: float = DEFAULT_TAIL_TOL, strict: bool = False) -> Evaluation:
    """Horner evaluation with a tail diagnostic.

    With ``strict=True`` an uncertifiable tail raises :class:`DivergenceError`
    instead of returning a flagged :class:`Evaluation`.
    """
    value = complex(np.polyval(a.coeffs[::-1], x))
    tail = tail_estimate(a, abs(x))
    ok = _certify(value, tail, tol)
    if strict and not ok:
        raise DivergenceError(f"series tail at |x|={abs(x):.6g} estimated {tail:.3g} > tol", r=abs(x), tail=tail)
    return Evaluation(value, tail, ok)


def eval_real(a: Series, x: float, *, tol: float = DEFAULT_TAIL_TOL) -> float:
    """Strict evaluation returning the real part (for real-coefficient series at real x)."""
    return evaluate(a, x, tol=tol, strict=True).value.real


def tail_sum(a: Series, n_start: int, r: float, *, tol: float = DEFAULT_TAIL_TOL, strict: bool = True) -> float:
    """Bohr operator ``sum_{n >= n_start} |a_n| r**n`` on the truncated data."""
    if n_start < 0:
        raise ValueError("n_start must be non-negative")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    m = majorant_tail(a, n_start)
    ev = evaluate(m, r, tol=tol, strict=strict)
    return ev.value.real


def double_bohr_integral(a: Series, r: float, *, tol: float = DEFAULT_TAIL_TOL) -> float:
    """``int_0^r (1/s) int_0^s a(t) dt ds`` computed as ``sum c_n r^(n+1)/(n+1)^2``."""
    n1 = np.arange(1, a.order + 2)
    b = Series(np.concatenate(([0.0], a.coeffs / n1**2)))
    v = evaluate(b, r, tol=tol, strict=True).value
    return v.real if a.is_real() else v


def from_values(values: Sequence[complex]) -> Series:
    return Series(np.asarray(values, dtype=complex))
