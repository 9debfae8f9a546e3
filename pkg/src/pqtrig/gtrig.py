"""Generalized trigonometric functions sin_pq, cos_pq and the constant pi_pq.

``sin_pq`` is the inverse of F(x) = int_0^x (1 - t**q)**(-1/p) dt on
[0, pi_pq/2], continued to the real line by the reflection
sin(pi_pq - x) = sin(x), oddness and 2*pi_pq periodicity; ``cos_pq`` is its
derivative, so |cos|**p + |sin|**q = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from . import _kernels
from .numerics import BudgetExhaustedError, DomainError

__all__ = [
    "ParamPair",
    "PrincipalValue",
    "pi_pq",
    "asin_pq",
    "sin_pq",
    "cos_pq",
    "sincos_pq",
    "principal_value",
    "parse_exponent",
]

ArrayLike = Union[float, np.ndarray]


def parse_exponent(text) -> float:
    """Accept ``2``, ``1.2`` or a ratio such as ``6/5``."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a valid exponent: {text!r}") from exc


@dataclass(frozen=True)
class ParamPair:
    """Exponent pair (p, q) with 1 < p, q < inf.

    The half-period constants are computed once at construction and shared by
    every evaluation that uses the pair.
    """

    p: float
    q: float
    p_star: float = field(init=False)
    q_star: float = field(init=False)
    x_cut: float = field(init=False, repr=False, compare=False)
    g_half: float = field(init=False, repr=False, compare=False)
    pi: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = parse_exponent(self.p)
        q = parse_exponent(self.q)
        if not (1.0 < p < math.inf and 1.0 < q < math.inf):
            raise DomainError(f"exponents must satisfy 1 < p, q < inf, got p={p}, q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p_star", p / (p - 1.0))
        object.__setattr__(self, "q_star", q / (q - 1.0))
        x_cut, g_half = _kernels.active()["constants"](p, q)
        if not (math.isfinite(x_cut) and math.isfinite(g_half)):
            raise BudgetExhaustedError(f"could not compute pi_pq for p={p}, q={q}")
        object.__setattr__(self, "x_cut", x_cut)
        object.__setattr__(self, "g_half", g_half)
        object.__setattr__(self, "pi", 2.0 * (x_cut + g_half))

    @property
    def half_pi(self) -> float:
        return self.x_cut + self.g_half

    def dual(self) -> "ParamPair":
        """The pair (q*, p*)."""
        return ParamPair(self.q_star, self.p_star)

    def __str__(self):
        return f"({_fmt(self.p)},{_fmt(self.q)})"


def _fmt(v: float) -> str:
    frac = Fraction(v).limit_denominator(100)
    if abs(float(frac) - v) < 1e-15 * abs(v):
        return str(frac)
    return repr(v)


@dataclass(frozen=True)
class PrincipalValue:
    """(x, sin_pq x, cos_pq x) on the principal interval [0, pi_pq/2]."""

    x: float
    s: float
    c: float


def pi_pq(params: ParamPair) -> float:
    """pi_pq = 2 * int_0^1 (1 - t**q)**(-1/p) dt."""
    return params.pi


def _check(out_s, x):
    if np.any(np.isnan(out_s) & np.isfinite(x)):
        raise BudgetExhaustedError("quadrature budget exhausted while inverting F_pq")


def sincos_pq(params: ParamPair, x: ArrayLike):
    """Return ``(sin_pq(x), cos_pq(x))`` for scalar or array ``x``."""
    k = _kernels.active()
    args = (params.p, params.q, params.x_cut, params.g_half)
    if np.ndim(x) == 0:
        xf = float(x)
        s, c = k["sincos"](*args, xf)
        _check(s, xf)
        return float(s), float(c)
    arr = np.asarray(x, dtype=float)
    s, c = k["sincos_batch"](*args, np.ascontiguousarray(arr.ravel()))
    _check(s, arr.ravel())
    return s.reshape(arr.shape), c.reshape(arr.shape)


def sin_pq(params: ParamPair, x: ArrayLike) -> ArrayLike:
    return sincos_pq(params, x)[0]


def cos_pq(params: ParamPair, x: ArrayLike) -> ArrayLike:
    """Derivative of sin_pq, equal to +-(1 - |sin_pq x|**q)**(1/p)."""
    return sincos_pq(params, x)[1]


def principal_value(params: ParamPair, x: float) -> PrincipalValue:
    x = float(x)
    if not 0.0 <= x <= params.half_pi:
        raise DomainError(f"x={x} outside the principal interval [0, {params.half_pi}]")
    s, c = sincos_pq(params, x)
    return PrincipalValue(x, s, c)


def _asin_scalar(k, params, s):
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"asin_pq is defined on [0, 1], got {s}")
    val = k["arcsin"](params.p, params.q, params.x_cut, params.g_half, s)
    if math.isnan(val):
        raise BudgetExhaustedError(f"quadrature budget exhausted at F_pq({s})")
    return float(val)


def asin_pq(params: ParamPair, x: ArrayLike) -> ArrayLike:
    """F_pq(x) = int_0^x (1 - t**q)**(-1/p) dt for x in [0, 1].

    Near x = 1 the inverse is badly conditioned: a rounding error of one ulp
    in ``x`` moves the result by roughly ulp**(1/p*).
    """
    k = _kernels.active()
    if np.ndim(x) == 0:
        return _asin_scalar(k, params, float(x))
    arr = np.asarray(x, dtype=float)
    out = np.array([_asin_scalar(k, params, v) for v in arr.ravel()])
    return out.reshape(arr.shape)
