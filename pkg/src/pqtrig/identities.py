"""Closed-form double-angle, multiple-angle and duality relations.

Every evaluator takes the values (s, c) = (sin x, cos x) rather than the angle,
so each one is plain algebra that can be checked against ``gtrig``.  Where a
formula contains ``1 - ratio**3`` or ``1 - m`` with the ratio close to one,
the difference is formed from an exact factorization instead of by
subtraction.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .elliptic import MODULUS_26
from .gtrig import ParamPair, cos_pq, sin_pq
from .numerics import DomainError

__all__ = [
    "ConsistencyError",
    "phi",
    "phi_inv",
    "double_angle_26",
    "addition_26",
    "multiple_angle_s",
    "multiple_angle_c",
    "multiple_angle_c_forms",
    "duality",
    "double_angle_65_6",
    "double_angle_65_2",
    "f_g_forward",
    "f_g_inverse",
    "g_of_f",
    "sin26_complement",
    "case1_lhs",
    "case1_rhs",
    "radicand_expanded",
    "radicand_square",
]

SQRT3 = math.sqrt(3.0)
CONSISTENCY_TOL = 1e-9
NEG_ZERO_TOL = 1e-12


class ConsistencyError(DomainError):
    """(s, c) does not satisfy |c|**p + |s|**q = 1 for the stated pair."""


def _unit(name, v, lo=0.0, hi=1.0):
    v = float(v)
    if not lo <= v <= hi:
        raise DomainError(f"{name}={v} outside [{lo}, {hi}]")
    return v


def _nonneg(c):
    # rounding may leave c slightly negative at the quarter period
    if c < 0.0:
        if c < -NEG_ZERO_TOL:
            raise DomainError(f"cosine value {c} is negative")
        return 0.0
    return c


def _consistent(s, c, p, q):
    err = abs(abs(c) ** p + abs(s) ** q - 1.0)
    if err > CONSISTENCY_TOL:
        raise ConsistencyError(f"|c|^{p:g} + |s|^{q:g} - 1 = {err:.3e} for (s, c) = ({s}, {c})")


def phi(x: float) -> float:
    """Moebius-type map sending sin_{2,6} u to cn(2 * 3**(1/4) * u)."""
    x = _unit("x", x)
    x2 = x * x
    return (1.0 - (SQRT3 + 1.0) * x2) / (1.0 + (SQRT3 - 1.0) * x2)


def phi_inv(y: float) -> float:
    y = _unit("y", y, -1.0, 1.0)
    return math.sqrt((1.0 - y) / ((SQRT3 + 1.0) + (SQRT3 - 1.0) * y))


def double_angle_26(s: float, c: float) -> float:
    """sin_{2,6}(2x) = 2 s c / sqrt(1 + 8 s**6), valid for x in [0, pi_{2,6}/2]."""
    _consistent(s, c, 2.0, 6.0)
    return 2.0 * s * c / math.sqrt(1.0 + 8.0 * s**6)


def _sign(sign) -> int:
    if sign in ("+", "plus", 1, +1):
        return 1
    if sign in ("-", "minus", -1):
        return -1
    raise DomainError(f"sign must be plus or minus, got {sign!r}")


def addition_26(U: float, V: float, sign="plus") -> float:
    """sin_{2,6}(u +- v) from U = sin_{2,6} u and V = sin_{2,6} v.

    The caller guarantees u, v, u +- v in [0, pi_{2,6}/2]; the angles are not
    recoverable from U, V alone.  With the minus sign and U close to V the
    result behaves like sqrt(1 - y) with y near 1, so the absolute error grows
    toward sqrt(eps) as U -> V; U == V returns 0 exactly.
    """
    U = _unit("U", U)
    V = _unit("V", V)
    sgn = _sign(sign)
    if sgn < 0 and U == V:
        return 0.0
    k2 = MODULUS_26.k_sq
    pu = phi(U)
    pv = phi(V)
    xu = 1.0 - pu * pu
    xv = 1.0 - pv * pv
    root = math.sqrt(max(xu * xv * (1.0 - k2 * xu) * (1.0 - k2 * xv), 0.0))
    y = (pu * pv - sgn * root) / (1.0 - k2 * xu * xv)
    return phi_inv(min(max(y, -1.0), 1.0))


def multiple_angle_s(q: float, s: float, c: float) -> float:
    """sin_{2,q}(2**(2/q) x) = 2**(2/q) s c**(q*-1), (s, c) taken at (q*, q)."""
    q = float(q)
    qs = q / (q - 1.0)
    _consistent(s, c, qs, q)
    return 2.0 ** (2.0 / q) * s * _nonneg(c) ** (qs - 1.0)


def multiple_angle_c_forms(q: float, s: float, c: float):
    """The three equal expressions for cos_{2,q}(2**(2/q) x)."""
    q = float(q)
    qs = q / (q - 1.0)
    _consistent(s, c, qs, q)
    cp = _nonneg(c) ** qs
    sq = abs(s) ** q
    return 1.0 - 2.0 * sq, 2.0 * cp - 1.0, cp - sq


def multiple_angle_c(q: float, s: float, c: float) -> float:
    forms = multiple_angle_c_forms(q, s, c)
    spread = max(forms) - min(forms)
    if spread > CONSISTENCY_TOL:
        raise ConsistencyError(f"cosine forms disagree by {spread:.3e}")
    return forms[0]


def duality(pq: ParamPair, x: float) -> float:
    """cos_{q*,p*}**(q*-1) of (pi_{q*,p*}/2)(1 - x), which equals
    sin_pq((pi_pq/2) x) for x in [0, 2]."""
    x = _unit("x", x, 0.0, 2.0)
    dual = pq.dual()
    c = cos_pq(dual, dual.half_pi * (1.0 - x))
    return _nonneg(c) ** (pq.q_star - 1.0)


@lru_cache(maxsize=1)
def _s_quarter_65_6() -> float:
    pair = ParamPair(1.2, 6.0)
    return sin_pq(pair, 0.5 * pair.half_pi)


def double_angle_65_6(s: float, c: float) -> float:
    """sin_{6/5,6}(2x) for x in [0, pi_{6/5,6}/4].

    With A = 1 + 32 s**6 c**(6/5) the value is
    2**(1/6) s c**(1/5) (3 + sqrt A)**(1/2) / (A**(1/4) (1 + sqrt A)**(1/6)).
    Inputs beyond the quarter of the period (s > sin(pi/4)) are rejected.
    """
    _consistent(s, c, 1.2, 6.0)
    if s < 0.0 or s > _s_quarter_65_6() * (1.0 + 1e-12):
        raise DomainError(f"s={s} outside the window x in [0, pi_(6/5,6)/4]")
    c = _nonneg(c)
    big_a = 1.0 + 32.0 * s**6 * c**1.2
    ra = math.sqrt(big_a)
    return 2.0 ** (1.0 / 6.0) * s * c**0.2 * math.sqrt(3.0 + ra) / (big_a**0.25 * (1.0 + ra) ** (1.0 / 6.0))


def _one_minus_cube(one_minus_r, r):
    # 1 - r**3 = (1 - r)(1 + r + r**2)
    return one_minus_r * (1.0 + r + r * r)


def double_angle_65_2(s: float, c: float) -> float:
    """sin_{6/5,2}(2x) for x in [0, pi_{6/5,2}/2]."""
    _consistent(s, c, 1.2, 2.0)
    w = _nonneg(c) ** 0.4
    s2 = s * s
    den = 9.0 - 8.0 * s2 + 8.0 * s2 * w
    ratio = (9.0 - 8.0 * s2 - 4.0 * s2 * w) / den
    return math.sqrt(max(_one_minus_cube(12.0 * s2 * w / den, ratio), 0.0))


def f_g_forward(gx: float, with_cos: bool = False):
    """f(2x) from g(x), where f = sin_{6/5,2} and g(x) = sin_{2,6}(2x/3).

    With ``with_cos=True`` returns ``(f(2x), |cos_{6/5,2}(2x)|)``; the
    cosine comes from 1 - f**2 = ratio**3 without cancellation, so the pair
    can be fed back to ``f_g_inverse`` losslessly even where f(2x) rounds
    to 1.
    """
    g2 = _unit("g(x)", gx) ** 2
    den = 1.0 + 2.0 * g2
    ratio = (1.0 - g2) / den
    f = math.sqrt(max(_one_minus_cube(3.0 * g2 / den, ratio), 0.0))
    if with_cos:
        return f, ratio**2.5
    return f


def _one_minus_f2(f, c):
    # 1 - f**2 = |cos_{6/5,2}|**(6/5); the cosine keeps it accurate near f = 1
    if c is None:
        return (1.0 - f) * (1.0 + f)
    _consistent(f, c, 1.2, 2.0)
    return abs(c) ** 1.2


def f_g_inverse(f2x: float, c2x: float | None = None) -> float:
    """g(x) recovered from f(2x); inverse of ``f_g_forward``.

    ``c2x = cos_{6/5,2}(2x)`` is optional; pass it when f(2x) is close to 1,
    where 1 - f**2 cannot be formed accurately from f alone.
    """
    f = _unit("f(2x)", f2x)
    m = _one_minus_f2(f, c2x) ** (1.0 / 3.0)
    one_minus_m = f * f / (1.0 + m + m * m)  # m**3 = 1 - f**2
    return math.sqrt(one_minus_m / (1.0 + 2.0 * m))


def g_of_f(fx: float, cx: float | None = None) -> float:
    """g(x) = sin_{2,6}(2x/3) from f(x) = sin_{6/5,2} x (and optionally its cosine)."""
    f = _unit("f(x)", fx)
    return 2.0 * f * _one_minus_f2(f, cx) ** (1.0 / 6.0) / math.sqrt(9.0 - 8.0 * f * f)


def sin26_complement(V: float) -> float:
    """sin_{2,6}(pi_{2,6}/2 - v) from V = sin_{2,6} v."""
    V = _unit("V", V)
    return math.sqrt((1.0 - V) * (1.0 + V) / (1.0 + 2.0 * V * V))


def case1_lhs(S: float) -> float:
    a = S**6
    return 1.0 - (1.0 - 20.0 * a - 8.0 * a * a) / (1.0 + 8.0 * a) ** 1.5


def case1_rhs(S: float) -> float:
    a = S**6
    r = math.sqrt(1.0 + 8.0 * a)
    return a * (3.0 + r) ** 3 / ((1.0 + 8.0 * a) ** 1.5 * (1.0 + r))


def radicand_expanded(S: float) -> float:
    a = S**6
    return 1.0 - 40.0 * a + 384.0 * a**2 + 320.0 * a**3 + 64.0 * a**4


def radicand_square(S: float) -> float:
    a = S**6
    return (1.0 - 20.0 * a - 8.0 * a * a) ** 2
