"""Identity verification suites.

Each suite evaluates one family of closed forms against direct evaluation
through ``gtrig`` / ``elliptic`` / ``ode`` and condenses the pointwise errors
into :class:`IdentityReport` records.  Grids are uniform and include both
endpoints; passing a ``numpy.random.Generator`` switches to random interior
points (endpoints are kept).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import elliptic, identities as ids
from .gtrig import ParamPair, sin_pq, sincos_pq
from .ode import integrate_ivp

__all__ = ["IdentityReport", "SUITES", "suite_names", "run_suite", "run_all"]


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    domain_lo: float
    domain_hi: float
    samples: int
    max_abs_err: float
    argmax_x: float
    passed: bool
    tolerance: float

    def __post_init__(self):
        if self.passed != (self.max_abs_err <= self.tolerance):
            raise ValueError(f"inconsistent report for {self.identity_name}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityReport":
        return cls(
            identity_name=str(d["identity_name"]),
            domain_lo=float(d["domain_lo"]),
            domain_hi=float(d["domain_hi"]),
            samples=int(d["samples"]),
            max_abs_err=float(d["max_abs_err"]),
            argmax_x=float(d["argmax_x"]),
            passed=bool(d["passed"]),
            tolerance=float(d["tolerance"]),
        )


def make_report(name, xs, errors, tol, lo=None, hi=None) -> IdentityReport:
    """Max error with ties broken towards the smaller abscissa; NaN counts as inf."""
    xs = np.asarray(xs, dtype=float).ravel()
    errs = np.asarray(errors, dtype=float).ravel()
    errs = np.where(np.isnan(errs), np.inf, np.abs(errs))
    worst = float(np.max(errs))
    at = float(np.min(xs[errs == worst]))
    lo = float(np.min(xs)) if lo is None else float(lo)
    hi = float(np.max(xs)) if hi is None else float(hi)
    return IdentityReport(name, lo, hi, int(xs.size), worst, at, bool(worst <= tol), float(tol))


def _grid(lo, hi, n, rng):
    if rng is None or n <= 2:
        return np.linspace(lo, hi, max(n, 2))
    inner = rng.uniform(lo, hi, n - 2)
    return np.sort(np.concatenate([[lo, hi], inner]))


def _pairs_lattice(total, n, rng, window="sum"):
    # (u, v) in {u, v >= 0, u + v <= total} ("sum") or {0 <= v <= u <= total} ("diff")
    if rng is not None:
        u = rng.uniform(0.0, total, n)
        v = rng.uniform(0.0, total, n)
        if window == "sum":
            flip = u + v > total
            u[flip], v[flip] = total - u[flip], total - v[flip]
        else:
            u, v = np.maximum(u, v), np.minimum(u, v)
        return u, v
    m = 2
    while m * (m + 1) // 2 < n:
        m += 1
    step = total / (m - 1)
    us, vs = [], []
    for i in range(m):
        for j in range(m - i):
            if window == "sum":
                us.append(i * step)
                vs.append(j * step)
            else:
                us.append((i + j) * step)
                vs.append(i * step)
    return np.array(us), np.array(vs)


# exponent pairs used throughout the suites
P22 = (2.0, 2.0)
P26 = (2.0, 6.0)
P656 = (1.2, 6.0)
P652 = (1.2, 2.0)
P434 = (4.0 / 3.0, 4.0)

_PAIR_CACHE: Dict[tuple, ParamPair] = {}


def pair(pq) -> ParamPair:
    if pq not in _PAIR_CACHE:
        _PAIR_CACHE[pq] = ParamPair(*pq)
    return _PAIR_CACHE[pq]


def _vec(fn, *arrays):
    return np.array([fn(*args) for args in zip(*arrays)], dtype=float)


def suite_pythagorean(samples, tol, rng):
    out = []
    for pq in (P22, P26, P656, P652, P434):
        P = pair(pq)
        xs = _grid(0.0, 2.0 * P.pi, samples, rng)
        s, c = sincos_pq(P, xs)
        out.append(make_report(f"pythagorean{P}", xs, np.abs(c) ** P.p + np.abs(s) ** P.q - 1.0, tol))
    return out


def suite_double_angle_26(samples, tol, rng):
    P = pair(P26)
    xs = _grid(0.0, P.half_pi, samples, rng)
    s, c = sincos_pq(P, xs)
    err = _vec(ids.double_angle_26, s, c) - sin_pq(P, 2.0 * xs)
    return [make_report("double_angle_26", xs, err, tol)]


CONTINUITY_STEP = 1e-11
CONTINUITY_TOL = 1e-9


def suite_double_angle_65_6(samples, tol, rng):
    P = pair(P656)
    P2 = pair(P26)
    xs = _grid(0.0, 0.5 * P.half_pi, samples, rng)
    s, c = sincos_pq(P, xs)
    err = _vec(ids.double_angle_65_6, s, c) - sin_pq(P, 2.0 * xs)
    out = [make_report("double_angle_65_6", xs, err, tol)]

    # the proof splits at x = pi/8; the closed form must not jump there
    mid = P.pi / 8.0
    near = mid + CONTINUITY_STEP * np.arange(-50, 51)
    sn, cn = sincos_pq(P, near)
    vals = _vec(ids.double_angle_65_6, sn, cn)
    jumps = np.abs(np.diff(vals))
    out.append(make_report("double_angle_65_6:continuity", near[1:], jumps, CONTINUITY_TOL, near[0], near[-1]))

    # 1 - 20 S^6 - 8 S^12 with S = sin_{2,6}(2^(1/3) x) vanishes at pi/8 and changes sign there
    def case_quantity(x):
        a = sin_pq(P2, 2.0 ** (1.0 / 3.0) * x) ** 6
        return 1.0 - 20.0 * a - 8.0 * a * a

    at_mid = case_quantity(mid)
    sign_ok = case_quantity(mid - 1e-3) > 0.0 and case_quantity(mid + 1e-3) < 0.0
    out.append(make_report("double_angle_65_6:case_split", [mid], [at_mid if sign_ok else math.inf], 1e-12))
    return out


def suite_double_angle_65_2(samples, tol, rng):
    P = pair(P652)
    xs = _grid(0.0, P.half_pi, samples, rng)
    s, c = sincos_pq(P, xs)
    err = _vec(ids.double_angle_65_2, s, c) - sin_pq(P, 2.0 * xs)
    return [make_report("double_angle_65_2", xs, err, tol)]


def suite_multiple_angle(samples, tol, rng):
    out = []
    for q in (2.0, 4.0, 6.0):
        Pa = pair((q / (q - 1.0), q))
        Pb = pair((2.0, q))
        scale = 2.0 ** (2.0 / q)
        xs = _grid(0.0, Pa.half_pi, samples, rng)
        s, c = sincos_pq(Pa, xs)
        sb, cb = sincos_pq(Pb, scale * xs)
        err_s = _vec(lambda a, b: ids.multiple_angle_s(q, a, b), s, c) - sb
        forms = np.array([ids.multiple_angle_c_forms(q, a, b) for a, b in zip(s, c)])
        err_c = np.max(np.abs(forms - cb[:, None]), axis=1)
        tag = f"[q={q:g}]"
        out.append(make_report("multiple_angle_s" + tag, xs, err_s, tol))
        out.append(make_report("multiple_angle_c" + tag, xs, err_c, tol))
        rel = (Pb.pi - 0.5 * scale * Pa.pi) / Pb.pi
        out.append(make_report("multiple_angle_pi" + tag, [Pb.pi], [rel], 1e-12))
    return out


def suite_duality(samples, tol, rng):
    out = []
    for pq in (P652, P26, P434):
        P = pair(pq)
        xs = _grid(0.0, 2.0, samples, rng)
        err = _vec(lambda x: ids.duality(P, x), xs) - sin_pq(P, P.half_pi * xs)
        out.append(make_report(f"duality{P}", xs, err, tol))
        D = P.dual()
        lhs = P.q * P.pi
        rel = (lhs - P.p_star * D.pi) / lhs
        out.append(make_report(f"duality_pi{P}", [P.pi], [rel], 1e-12))
    a, b = pair(P652), pair(P26)
    rel = (2.0 * a.pi - 6.0 * b.pi) / (6.0 * b.pi)
    out.append(make_report("duality_pi:2*pi(6/5,2)=6*pi(2,6)", [a.pi], [rel], 1e-12))
    return out


def suite_elliptic(samples, tol, rng):
    P = pair(P26)
    m = elliptic.MODULUS_26
    K = elliptic.complete_K(m)
    rel = (P.pi - 2.0 * K / 3.0**0.25) / P.pi
    out = [make_report("elliptic_pi", [P.pi], [rel], 1e-12)]
    us = _grid(0.0, P.half_pi, samples, rng)
    lhs = _vec(lambda u: elliptic.jacobi(2.0 * 3.0**0.25 * u, m).cn, us)
    rhs = _vec(lambda s: ids.phi(min(max(s, 0.0), 1.0)), sin_pq(P, us))
    out.append(make_report("elliptic_representation", us, lhs - rhs, tol))
    return out


def suite_cn_addition(samples, tol, rng):
    m = elliptic.MODULUS_26
    K = elliptic.complete_K(m)
    u, v = _pairs_lattice(K, samples, rng)
    err = _vec(lambda a, b: elliptic.cn_addition(a, b, m) - elliptic.jacobi(a + b, m).cn, u, v)
    return [make_report("cn_addition", u + v, err, tol, 0.0, K)]


def suite_addition_26(samples, tol, rng):
    P = pair(P26)
    H = P.half_pi
    out = []
    us = _grid(0.0, 0.5 * H, samples, rng)
    U = sin_pq(P, us)
    s, c = sincos_pq(P, us)
    err = _vec(lambda a: ids.addition_26(a, a, "plus"), U) - _vec(ids.double_angle_26, s, c)
    out.append(make_report("addition_26:u=v", us, err, tol))
    for sign, window in (("plus", "sum"), ("minus", "diff")):
        u, v = _pairs_lattice(H, samples, rng, window)
        target = u + v if sign == "plus" else u - v
        err = _vec(lambda a, b: ids.addition_26(a, b, sign), sin_pq(P, u), sin_pq(P, v)) - sin_pq(P, target)
        out.append(make_report(f"addition_26:{sign}", target, err, 1e-10, 0.0, H))
    return out


def suite_quarter_period(samples, tol, rng):
    P = pair(P26)
    val = sin_pq(P, P.pi / 4.0) ** 6 - (3.0 * math.sqrt(3.0) - 5.0) / 4.0
    return [make_report("quarter_period", [P.pi / 4.0], [val], 1e-12)]


def suite_radicand(samples, tol, rng):
    S = _grid(0.0, 1.0, samples, rng)
    out = [
        make_report("radicand", S, _vec(ids.radicand_expanded, S) - _vec(ids.radicand_square, S), 1e-12),
        make_report("case1", S, _vec(ids.case1_lhs, S) - _vec(ids.case1_rhs, S), 1e-12),
    ]
    return out


def suite_f_g(samples, tol, rng):
    F = pair(P652)
    G = pair(P26)
    xs = _grid(0.0, F.half_pi, samples, rng)
    g = sin_pq(G, 2.0 * xs / 3.0)
    f2, c2 = sincos_pq(F, 2.0 * xs)
    f1, c1 = sincos_pq(F, xs)
    out = [
        make_report("f_g_forward", xs, _vec(ids.f_g_forward, g) - f2, tol),
        make_report("f_g_inverse", xs, _vec(ids.f_g_inverse, f2, c2) - g, tol),
        make_report("g_of_f", xs, _vec(ids.g_of_f, f1, c1) - g, tol),
    ]
    # sin_{2,6}(pi/2 - 2x/3) changes sign past x = pi_(6/5,2)/4; the closed form gives its modulus
    comp = np.abs(sin_pq(G, G.half_pi - 2.0 * xs / 3.0))
    out.append(make_report("sin26_complement", xs, _vec(ids.sin26_complement, g) - comp, tol))
    gs = _grid(0.0, 1.0, samples, rng)
    back = _vec(lambda a: ids.f_g_inverse(*ids.f_g_forward(a, with_cos=True)), gs)
    out.append(make_report("f_g_roundtrip", gs, back - gs, 1e-12))
    return out


def suite_phi(samples, tol, rng):
    xs = _grid(0.0, 1.0, samples, rng)
    ys = _grid(-1.0, 1.0, samples, rng)
    return [
        make_report("phi_inv(phi(x))", xs, _vec(lambda x: ids.phi_inv(ids.phi(x)), xs) - xs, 1e-13),
        make_report("phi(phi_inv(y))", ys, _vec(lambda y: ids.phi(ids.phi_inv(y)), ys) - ys, 1e-13),
    ]


ODE_STEPS = 100_000
ODE_ENERGY_TOL = 1e-9


def suite_ode(samples, tol, rng):
    out = []
    for pq in (P22, P26, P656, P652):
        P = pair(pq)
        traj = integrate_ivp(P, 2.0 * P.pi, ODE_STEPS)
        idx = np.unique(np.linspace(0, ODE_STEPS, samples).round().astype(int))
        xs = traj.x[idx]
        out.append(make_report(f"ode{P}", xs, traj.u[idx] - sin_pq(P, xs), tol))
        drift = np.abs(traj.energy - 1.0)
        out.append(make_report(f"ode_energy{P}", traj.x, drift, ODE_ENERGY_TOL))
    return out


@dataclass(frozen=True)
class Suite:
    run: Callable
    samples: int
    tolerance: float


SUITES: Dict[str, Suite] = {
    "pythagorean": Suite(suite_pythagorean, 1000, 1e-12),
    "double_angle_26": Suite(suite_double_angle_26, 500, 1e-10),
    "double_angle_65_6": Suite(suite_double_angle_65_6, 500, 1e-10),
    "double_angle_65_2": Suite(suite_double_angle_65_2, 500, 1e-10),
    "multiple_angle": Suite(suite_multiple_angle, 300, 1e-10),
    "duality": Suite(suite_duality, 300, 1e-10),
    "elliptic": Suite(suite_elliptic, 300, 1e-10),
    "cn_addition": Suite(suite_cn_addition, 100, 1e-11),
    "addition_26": Suite(suite_addition_26, 300, 1e-11),
    "quarter_period": Suite(suite_quarter_period, 1, 1e-12),
    "radicand": Suite(suite_radicand, 200, 1e-12),
    "f_g": Suite(suite_f_g, 300, 1e-10),
    "phi": Suite(suite_phi, 300, 1e-13),
    "ode": Suite(suite_ode, 50, 1e-6),
}


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(
    name: str,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> List[IdentityReport]:
    """Run one suite; ``tol`` overrides the suite's default tolerance for its
    main comparison (fixed-threshold side checks keep their own)."""
    if name not in SUITES:
        raise KeyError(name)
    suite = SUITES[name]
    rng = None if seed is None else np.random.default_rng(seed)
    n = suite.samples if samples is None else int(samples)
    return suite.run(n, suite.tolerance if tol is None else float(tol), rng)


def run_all(samples=None, tol=None, seed=None) -> List[IdentityReport]:
    reports = []
    for name in SUITES:
        reports.extend(run_suite(name, samples, tol, seed))
    return reports
