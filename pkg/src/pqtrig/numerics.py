"""Low-level kernels: double-exponential quadrature, bracketed root finding, AGM.

Everything here is binary64 and pure; the tanh-sinh node tables are built once
per level and shared read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

__all__ = [
    "QuadSettings",
    "Bracket",
    "DEFAULT_SETTINGS",
    "NumericsError",
    "DomainError",
    "BracketError",
    "BudgetExhaustedError",
    "tanh_sinh_table",
    "integrate_endpoint_singular",
    "find_root",
    "agm",
]

# Nodes stop at |t| = T_MAX; there the distance to the nearer endpoint is
# ~1e-275, so an x**-alpha singularity leaves a tail of order 1e-275**(1-alpha).
T_MAX = 6.0
_HALF_PI = 0.5 * math.pi


class NumericsError(ArithmeticError):
    """Base class for failures of the numerical kernels."""


class DomainError(NumericsError, ValueError):
    """An argument lies outside the domain of the operation."""


class BracketError(DomainError):
    """The supplied interval does not enclose a sign change."""


class BudgetExhaustedError(NumericsError):
    """Refinement budget ran out before the tolerance was met."""


@dataclass(frozen=True)
class QuadSettings:
    """Tolerances shared by the quadrature, root-finding and AGM kernels."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-13
    max_levels: int = 12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if int(self.max_levels) != self.max_levels or self.max_levels < 1:
            raise ValueError("max_levels must be an integer >= 1")


DEFAULT_SETTINGS = QuadSettings()


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] with function values of opposite (or zero) sign."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError(f"empty bracket [{self.lo}, {self.hi}]")
        if not self.f_lo * self.f_hi <= 0:
            raise BracketError(
                f"no sign change on [{self.lo}, {self.hi}]: "
                f"f(lo)={self.f_lo}, f(hi)={self.f_hi}"
            )

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    # Level 0 uses all integer multiples of h=1; level L>0 adds the odd
    # multiples of 2**-L.  Returns (dl, dr, w) on [-1, 1]: dl = 1 + x and
    # dr = 1 - x without cancellation, w the unscaled weight.
    if level == 0:
        t = np.arange(-int(T_MAX), int(T_MAX) + 1, dtype=float)
    else:
        n = 2**level
        k = np.arange(1, int(T_MAX * n) + 1, 2, dtype=float)
        pos = k / n
        t = np.concatenate([-pos[::-1], pos])
    v = _HALF_PI * np.sinh(np.abs(t))
    e = np.exp(-2.0 * v)
    near = 2.0 * e / (1.0 + e)  # 1 - tanh(v)
    far = 2.0 - near
    dr = np.where(t >= 0, near, far)
    dl = np.where(t >= 0, far, near)
    w = _HALF_PI * np.cosh(t) * (4.0 * e / (1.0 + e) ** 2)  # / cosh(v)**2
    for arr in (dl, dr, w):
        arr.setflags(write=False)
    return dl, dr, w


@lru_cache(maxsize=None)
def tanh_sinh_table(max_levels: int):
    """Flattened node table for levels ``0..max_levels``.

    Returns ``(dl, dr, w, offsets)`` where the nodes of level ``L`` occupy
    ``offsets[L]:offsets[L+1]``.  The layout is what the compiled kernels
    iterate over.
    """
    parts = [_level_nodes(L) for L in range(max_levels + 1)]
    offsets = np.zeros(max_levels + 2, dtype=np.int64)
    offsets[1:] = np.cumsum([len(p[0]) for p in parts])
    dl = np.concatenate([p[0] for p in parts])
    dr = np.concatenate([p[1] for p in parts])
    w = np.concatenate([p[2] for p in parts])
    for arr in (dl, dr, w, offsets):
        arr.setflags(write=False)
    return dl, dr, w, offsets


def integrate_endpoint_singular(
    f: Callable,
    a: float,
    b: float,
    settings: QuadSettings = DEFAULT_SETTINGS,
    *,
    complement: bool = False,
    min_levels: int = 2,
) -> float:
    """Integrate ``f`` over ``[a, b]`` with the tanh-sinh rule.

    Integrable algebraic endpoint singularities are fine.  ``f`` is called on
    numpy arrays of abscissae.  With ``complement=True`` it is called as
    ``f(t, t - a, b - t)`` where both distances are computed without
    cancellation; use this form whenever the integrand blows up at an
    endpoint, since ``t`` alone rounds onto the endpoint long before the
    integrand's tail is exhausted.

    Levels are refined until two successive estimates differ by at most
    ``max(abs_tol, rel_tol * |I|)``.  Nodes where ``f`` is not finite (the
    abscissa rounded onto a singular endpoint) are dropped.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"integration requires a < b, got a={a}, b={b}")
    half = 0.5 * (b - a)
    previous = math.nan
    change = math.nan
    total = 0.0
    for level in range(settings.max_levels + 1):
        dl, dr, w = _level_nodes(level)
        left = half * dl
        right = half * dr
        t = np.where(dl <= 1.0, a + left, b - right)
        vals = f(t, left, right) if complement else f(t)
        vals = np.broadcast_to(np.asarray(vals, dtype=float), t.shape)
        terms = w * vals
        terms = np.where(np.isfinite(terms), terms, 0.0)
        h = 2.0**-level
        total = 0.5 * total + h * float(np.sum(terms)) if level else float(np.sum(terms))
        estimate = half * total
        change = abs(estimate - previous)
        if level >= min_levels and change <= max(settings.abs_tol, settings.rel_tol * abs(estimate)):
            return estimate
        previous = estimate
    raise BudgetExhaustedError(
        f"tanh-sinh did not converge on [{a}, {b}] within {settings.max_levels} levels "
        f"(last change {change:.3e})"
    )


def _brent(f, lo, hi, f_lo, f_hi, settings, maxiter):
    # Classical Brent: inverse quadratic / secant steps, bisection fallback.
    a, b, fa, fb = lo, hi, f_lo, f_hi
    if abs(fa) < abs(fb):
        a, b, fa, fb = b, a, fb, fa
    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if fb == 0.0:
            return b
        if fa * fb > 0:
            a, fa = c, fc
            d = e = b - c
        if abs(fa) < abs(fb):
            c, fc = b, fb
            b, fb = a, fa
            a, fa = c, fc
        tol = 2.0 * np.finfo(float).eps * abs(b) + 0.5 * (settings.rel_tol * abs(b) + settings.abs_tol)
        m = 0.5 * (a - b)
        if abs(m) <= tol and abs(fb) <= settings.abs_tol:
            return b
        if abs(m) <= 2.0 * np.finfo(float).eps * abs(b) or a == b:
            return b
        if abs(e) >= tol and abs(fc) > abs(fb):
            s = fb / fc
            if c == a:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                qq = fc / fa
                r = fb / fa
                p = s * (2.0 * m * qq * (qq - r) - (b - c) * (r - 1.0))
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        c, fc = b, fb
        b = b + (d if abs(d) > tol else math.copysign(tol, m))
        fb = f(b)
    return b


def _newton_bisect(f, fprime, lo, hi, f_lo, settings, maxiter):
    # Newton steps that fall outside the current bracket become bisections.
    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx < 0) == (f_lo < 0):
            lo, f_lo = x, fx
        else:
            hi = x
        d = fprime(x)
        step_ok = d != 0.0 and math.isfinite(d)
        x_new = x - fx / d if step_ok else math.nan
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        tol = settings.rel_tol * abs(x_new) + settings.abs_tol
        if abs(x_new - x) <= 1e-3 * tol and abs(fx) <= settings.abs_tol:
            return x_new
        if hi - lo <= 2.0 * np.finfo(float).eps * max(abs(lo), abs(hi)):
            return x_new
        x = x_new
    return x


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    settings: QuadSettings = DEFAULT_SETTINGS,
    fprime: Optional[Callable[[float], float]] = None,
    maxiter: int = 200,
) -> float:
    """Root of ``f`` inside ``bracket``.

    Brent's method by default; with ``fprime`` a safeguarded Newton iteration
    that falls back to bisection whenever a step leaves the bracket.  The
    returned abscissa always lies in ``[bracket.lo, bracket.hi]``.  Iteration
    ends once the bracket is below ``rel_tol*|x| + abs_tol`` and
    ``|f(x)| <= abs_tol``, or when the bracket reaches machine resolution.
    """
    if bracket.f_lo == 0.0:
        return bracket.lo
    if bracket.f_hi == 0.0:
        return bracket.hi
    if fprime is None:
        x = _brent(f, bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi, settings, maxiter)
    else:
        x = _newton_bisect(f, fprime, bracket.lo, bracket.hi, bracket.f_lo, settings, maxiter)
    return min(max(x, bracket.lo), bracket.hi)


def agm(a0: float, b0: float, settings: QuadSettings = DEFAULT_SETTINGS, debug: bool = False) -> float:
    """Arithmetic-geometric mean M(a0, b0) for ``a0 >= b0 > 0``.

    Stops once ``|a_n - b_n| <= abs_tol * a_n`` and returns the next
    arithmetic mean.  ``debug=True`` asserts that ``a_n`` never increases and
    ``b_n`` never decreases.
    """
    a = float(a0)
    b = float(b0)
    if not (b > 0 and a > 0):
        raise DomainError(f"agm needs positive arguments, got ({a0}, {b0})")
    if a < b:
        raise DomainError(f"agm expects a0 >= b0, got ({a0}, {b0})")
    for _ in range(64):
        if abs(a - b) <= settings.abs_tol * a:
            break
        a_next = 0.5 * (a + b)
        b_next = math.sqrt(a * b)
        if debug:
            assert a_next <= a and b_next >= b, (a, b, a_next, b_next)
        a, b = a_next, b_next
    return 0.5 * (a + b)
