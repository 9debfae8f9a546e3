"""Hot loops: principal-branch inversion, range reduction, batch evaluation, RK4.

Two builds of the same source exist.  ``numba_kernels()`` compiles scalar
tanh-sinh loops and everything above them with ``numba.njit``;
``numpy_kernels()`` evaluates each quadrature level as one vectorized numpy
expression and runs the outer loops in the interpreter.  ``active()`` picks
one according to ``PQTRIG_DISABLE_NUMBA``.

Principal branch.  For x in [0, pi_pq/2] with s = sin_pq(x):

* lower regime, s**q <= 1/2: solve F(s) = x with
  F(s) = int_0^s (1 - t**q)**(-1/p) dt, smooth on [0, s];
* upper regime: with r = 1 - s**q and y = pi_pq/2 - x solve G(r) = y,
  G(r) = (1/q) int_0^r rho**(-1/p) (1 - rho)**(1/q - 1) d rho.

The upper regime is solved in sigma = r**(1/p*) (= c**(p-1)) where G is
nearly linear, and returns c = r**(1/p) directly, so the cosine keeps full
relative accuracy near the quarter period instead of being recovered from
1 - s**q.
"""

import math
from functools import lru_cache

import numpy as np

from . import _accel
from .numerics import DEFAULT_SETTINGS, integrate_endpoint_singular, tanh_sinh_table

ABS_TOL = DEFAULT_SETTINGS.abs_tol
REL_TOL = DEFAULT_SETTINGS.rel_tol
MAX_LEVELS = DEFAULT_SETTINGS.max_levels
MIN_LEVELS = 2
SNAP = 1e-14
NEWTON_MAX = 60

KIND_F = 0
KIND_G = 1


def _quad_sum_loop(kind, p, q, b, dl, dr, w, offsets):
    # int_0^b of the selected integrand; nan if the budget runs out.
    half = 0.5 * b
    ip = -1.0 / p
    iq = 1.0 / q - 1.0
    total = 0.0
    previous = 0.0
    for level in range(offsets.shape[0] - 1):
        acc = 0.0
        for j in range(offsets[level], offsets[level + 1]):
            if dl[j] <= 1.0:
                t = half * dl[j]
            else:
                t = b - half * dr[j]
            if kind == KIND_F:
                val = (1.0 - t**q) ** ip
            else:
                if t <= 0.0:
                    continue
                val = t**ip * (1.0 - t) ** iq / q
            acc += w[j] * val
        if level == 0:
            total = acc
        else:
            total = 0.5 * total + acc * 2.0**-level
        estimate = half * total
        if level >= MIN_LEVELS and abs(estimate - previous) <= max(ABS_TOL, REL_TOL * abs(estimate)):
            return estimate
        previous = estimate
    return math.nan


def _integrand_np(kind, p, q):
    if kind == KIND_F:
        return lambda t: (1.0 - t**q) ** (-1.0 / p)

    def g(t, left, right):
        # left is rho itself on [0, b]; zero only where it underflowed
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(left > 0, left ** (-1.0 / p) * (1.0 - t) ** (1.0 / q - 1.0) / q, 0.0)

    return g


def _quad_np(kind, p, q, b):
    if b <= 0.0:
        return 0.0
    return integrate_endpoint_singular(
        _integrand_np(kind, p, q), 0.0, b, DEFAULT_SETTINGS,
        complement=kind == KIND_G, min_levels=MIN_LEVELS,
    )


def _build(jit, quad):
    """Assemble the solver stack on top of ``quad(kind, p, q, b)``."""

    @jit
    def constants(p, q):
        # x_cut = F(2**(-1/q)) separates the regimes; g_half = G(1/2);
        # pi_pq = 2 * (x_cut + g_half).
        s0 = 0.5 ** (1.0 / q)
        return quad(KIND_F, p, q, s0), quad(KIND_G, p, q, 0.5)

    @jit
    def solve_lower(p, q, x):
        # Newton on the convex increasing F from s = x >= root: monotone.
        s_max = 0.5 ** (1.0 / q)
        s = min(x, s_max)
        lo = 0.0
        hi = s_max
        for _ in range(NEWTON_MAX):
            res = quad(KIND_F, p, q, s) - x if s > 0.0 else -x
            if res != res:
                return math.nan
            if res == 0.0:
                break
            if res > 0.0:
                hi = s
            else:
                lo = s
            step = res * (1.0 - s**q) ** (1.0 / p)
            s_new = s - step
            if not (lo <= s_new <= hi):
                s_new = 0.5 * (lo + hi)
            done = abs(s_new - s) <= 1e-10 * s_new
            s = s_new
            if done or hi - lo <= 4e-16 * hi:
                break
        return s

    @jit
    def solve_upper(p, q, y):
        # Newton in sigma: G(sigma**p*) is convex increasing in sigma with
        # slope (p*/q) (1 - r)**(1/q - 1); start above the root at y q / p*.
        p_star = p / (p - 1.0)
        slope0 = p_star / q
        s_max = 0.5 ** (1.0 / p_star)
        sig = min(y / slope0, s_max)
        lo = 0.0
        hi = s_max
        for _ in range(NEWTON_MAX):
            r = sig**p_star
            res = quad(KIND_G, p, q, r) - y if r > 0.0 else -y
            if res != res:
                return math.nan
            if res == 0.0:
                break
            if res > 0.0:
                hi = sig
            else:
                lo = sig
            step = res / (slope0 * (1.0 - r) ** (1.0 / q - 1.0))
            sig_new = sig - step
            if not (lo <= sig_new <= hi):
                sig_new = 0.5 * (lo + hi)
            done = abs(sig_new - sig) <= 1e-10 * sig_new
            sig = sig_new
            if done or hi - lo <= 4e-16 * hi:
                break
        return sig

    @jit
    def principal(p, q, x_cut, g_half, x):
        # (s, c) for x in [0, pi_pq/2]
        if x <= x_cut:
            s = solve_lower(p, q, x)
            return s, (1.0 - s**q) ** (1.0 / p)
        y = g_half - (x - x_cut)
        if y <= 0.0:
            return 1.0, 0.0
        sig = solve_upper(p, q, y)
        r = sig ** (p / (p - 1.0))
        return math.exp(math.log1p(-r) / q), sig ** (1.0 / (p - 1.0))

    @jit
    def sincos(p, q, x_cut, g_half, x):
        if not math.isfinite(x):
            return math.nan, math.nan
        half_pi = x_cut + g_half
        period = 4.0 * half_pi
        pi = 2.0 * half_pi
        r = x - math.trunc(x / period) * period
        if r > pi:
            r -= period
        elif r < -pi:
            r += period
        ssign = 1.0
        if r < 0.0:
            r = -r
            ssign = -1.0
        csign = 1.0
        if r > half_pi:
            r = pi - r
            csign = -1.0
        if r <= SNAP:
            return ssign * 0.0, csign
        if half_pi - r <= SNAP:
            return ssign, csign * 0.0
        s, c = principal(p, q, x_cut, g_half, r)
        return ssign * s, csign * c

    @jit
    def sincos_batch(p, q, x_cut, g_half, xs):
        n = xs.shape[0]
        s_out = np.empty(n)
        c_out = np.empty(n)
        for i in range(n):
            s_out[i], c_out[i] = sincos(p, q, x_cut, g_half, xs[i])
        return s_out, c_out

    @jit
    def arcsin_principal(p, q, x_cut, g_half, s):
        # F(s) for s in [0, 1]
        if s <= 0.0:
            return 0.0
        if s**q <= 0.5:
            return quad(KIND_F, p, q, s)
        r = -math.expm1(q * math.log(s))
        return (x_cut + g_half) - quad(KIND_G, p, q, r)

    return {
        "constants": constants,
        "principal": principal,
        "sincos": sincos,
        "sincos_batch": sincos_batch,
        "arcsin": arcsin_principal,
        "rk4": jit(_rk4_flux),
    }


def _rk4_flux(p, q, h, n):
    # u' = |w|**(1/(p-1)) sign(w),  w' = -((p-1) q / p) |u|**(q-2) u
    a = 1.0 / (p - 1.0)
    lam = (p - 1.0) * q / p
    b = q - 1.0
    u_out = np.empty(n + 1)
    w_out = np.empty(n + 1)
    u = 0.0
    w = 1.0
    u_out[0] = u
    w_out[0] = w
    for i in range(n):
        k1u = math.copysign(abs(w) ** a, w)
        k1w = -lam * math.copysign(abs(u) ** b, u)
        uu = u + 0.5 * h * k1u
        ww = w + 0.5 * h * k1w
        k2u = math.copysign(abs(ww) ** a, ww)
        k2w = -lam * math.copysign(abs(uu) ** b, uu)
        uu = u + 0.5 * h * k2u
        ww = w + 0.5 * h * k2w
        k3u = math.copysign(abs(ww) ** a, ww)
        k3w = -lam * math.copysign(abs(uu) ** b, uu)
        uu = u + h * k3u
        ww = w + h * k3w
        k4u = math.copysign(abs(ww) ** a, ww)
        k4w = -lam * math.copysign(abs(uu) ** b, uu)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w = w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        u_out[i + 1] = u
        w_out[i + 1] = w
    return u_out, w_out


@lru_cache(maxsize=None)
def numpy_kernels():
    return _build(_accel.passthrough, _quad_np)


@lru_cache(maxsize=None)
def numba_kernels():
    if not _accel.HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    dl, dr, w, offsets = tanh_sinh_table(MAX_LEVELS)
    loop = _accel.njit(_quad_sum_loop)

    @_accel.njit
    def quad(kind, p, q, b):
        if b <= 0.0:
            return 0.0
        return loop(kind, p, q, b, dl, dr, w, offsets)

    return _build(_accel.njit, quad)


def active():
    return numba_kernels() if _accel.USE_NUMBA else numpy_kernels()
