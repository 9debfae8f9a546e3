"""Jacobi elliptic functions and K(k) by the arithmetic-geometric mean."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import DomainError, QuadSettings, agm

__all__ = [
    "Modulus",
    "EllipticTriple",
    "MODULUS_26",
    "complete_K",
    "jacobi",
    "cn_addition",
]

AGM_TOL = 1e-15
AGM_MAX_ITER = 40


@dataclass(frozen=True)
class Modulus:
    k: float
    k_sq: float
    k_prime: float

    def __post_init__(self):
        if not 0.0 <= self.k < 1.0:
            raise DomainError(f"modulus must lie in [0, 1), got k={self.k}")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        if not 0.0 <= k < 1.0:
            raise DomainError(f"modulus must lie in [0, 1), got k={k}")
        return cls(k, k * k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_k_sq(cls, k_sq: float) -> "Modulus":
        k_sq = float(k_sq)
        if not 0.0 <= k_sq < 1.0:
            raise DomainError(f"k**2 must lie in [0, 1), got {k_sq}")
        return cls(math.sqrt(k_sq), k_sq, math.sqrt(1.0 - k_sq))


# Modulus that turns sin_{2,6} into a cn: k**2 = (2 - sqrt 3)/4.
MODULUS_26 = Modulus.from_k_sq((2.0 - math.sqrt(3.0)) / 4.0)


@dataclass(frozen=True)
class EllipticTriple:
    sn: float
    cn: float
    dn: float


def complete_K(m: Modulus) -> float:
    """K(k) = pi / (2 * M(1, k'))."""
    return math.pi / (2.0 * agm(1.0, m.k_prime, QuadSettings(abs_tol=AGM_TOL, rel_tol=AGM_TOL)))


def _agm_arrays(m: Modulus):
    a = [1.0]
    c = [m.k]
    b = m.k_prime
    for _ in range(AGM_MAX_ITER):
        if abs(a[-1] - b) <= AGM_TOL * a[-1]:
            break
        an = a[-1]
        a.append(0.5 * (an + b))
        c.append(0.5 * (an - b))
        b = math.sqrt(an * b)
    return a, c


def jacobi(u: float, m: Modulus) -> EllipticTriple:
    """(sn, cn, dn)(u, k) by descending Landen transformation.

    The amplitude recursion is valid for every real ``u``, so arguments up
    to 2K (needed for the sin_{2,6} representation) need no reduction.
    """
    u = float(u)
    a, c = _agm_arrays(m)
    n = len(a) - 1
    phi = 2.0**n * a[n] * u
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(1.0 - m.k_sq * sn * sn)
    return EllipticTriple(sn, cn, dn)


def cn_addition(u: float, v: float, m: Modulus) -> float:
    """cn(u + v) from the values of sn, cn, dn at u and v."""
    tu = jacobi(u, m)
    tv = jacobi(v, m)
    num = tu.cn * tv.cn - tu.sn * tv.sn * tu.dn * tv.dn
    den = 1.0 - m.k_sq * tu.sn**2 * tv.sn**2
    return num / den
