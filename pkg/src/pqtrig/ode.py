"""Independent check of sin_pq through the p-Laplacian initial value problem.

    -(|u'|**(p-2) u')' = ((p-1) q / p) |u|**(q-2) u,   u(0) = 0, u'(0) = 1

is integrated in the flux variable w = |u'|**(p-2) u' with classical RK4 at a
fixed step.  The exact solution is sin_pq and conserves |u'|**p + |u|**q = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .gtrig import ParamPair
from .numerics import DomainError, NumericsError

__all__ = ["IvpState", "Trajectory", "StepBudgetError", "integrate_ivp", "signed_pow"]

MAX_DRIFT = 1e-6


class StepBudgetError(NumericsError):
    """Energy drift shows the step is too coarse for the exponents."""


class IvpState(NamedTuple):
    x: float
    u: float
    w: float


def signed_pow(y, alpha):
    """sign(y) * |y|**alpha, elementwise."""
    return np.sign(y) * np.abs(y) ** alpha


@dataclass(frozen=True)
class Trajectory:
    params: ParamPair
    x: np.ndarray
    u: np.ndarray
    w: np.ndarray

    @property
    def du(self) -> np.ndarray:
        return signed_pow(self.w, 1.0 / (self.params.p - 1.0))

    @property
    def energy(self) -> np.ndarray:
        return np.abs(self.du) ** self.params.p + np.abs(self.u) ** self.params.q

    @property
    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - 1.0)))

    def __len__(self):
        return len(self.x)

    def __getitem__(self, i) -> IvpState:
        return IvpState(float(self.x[i]), float(self.u[i]), float(self.w[i]))


def integrate_ivp(params: ParamPair, x_end: float, step_budget: int) -> Trajectory:
    """RK4 with h = x_end / step_budget; every step is recorded.

    Raises StepBudgetError if max |E - 1| exceeds 1e-6.
    """
    x_end = float(x_end)
    if not 0.0 < x_end <= 2.0 * params.pi * (1.0 + 1e-15):
        raise DomainError(f"x_end must lie in (0, 2 pi_pq] = (0, {2.0 * params.pi}], got {x_end}")
    if int(step_budget) != step_budget or step_budget < 1:
        raise DomainError(f"step_budget must be a positive integer, got {step_budget}")
    n = int(step_budget)
    h = x_end / n
    u, w = _kernels.active()["rk4"](params.p, params.q, h, n)
    traj = Trajectory(params, np.linspace(0.0, x_end, n + 1), u, w)
    drift = traj.energy_drift
    if not drift <= MAX_DRIFT:
        raise StepBudgetError(f"energy drift {drift:.3e} exceeds {MAX_DRIFT:g} with {n} steps")
    return traj
