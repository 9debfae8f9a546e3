"""Generalized trigonometric functions sin_pq, cos_pq, pi_pq and their
double-angle identities, with quadrature, elliptic-function and ODE checks."""

from ._accel import USE_NUMBA
from .elliptic import MODULUS_26, EllipticTriple, Modulus, cn_addition, complete_K, jacobi
from .gtrig import ParamPair, PrincipalValue, asin_pq, cos_pq, pi_pq, principal_value, sin_pq, sincos_pq
from .numerics import (
    Bracket,
    BracketError,
    BudgetExhaustedError,
    DomainError,
    NumericsError,
    QuadSettings,
    agm,
    find_root,
    integrate_endpoint_singular,
)
from .ode import IvpState, StepBudgetError, Trajectory, integrate_ivp

__version__ = "0.1.0"
