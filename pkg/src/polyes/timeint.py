"""Five-stage fourth-order low-storage Runge-Kutta (Carpenter & Kennedy, 1994)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dgsem import DgSolution, max_wave_speed

# 2N-storage coefficients, solution 3 of the 1994 NASA report
LSRK54_A = (
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
)
LSRK54_B = (
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
)
LSRK54_C = (
    0.0,
    1432997174477.0 / 9575080441755.0,
    2526269341429.0 / 6820363962896.0,
    2006345519317.0 / 3224310063776.0,
    2802321613138.0 / 2924317926251.0,
)


@dataclass(frozen=True)
class TimeIntegratorConfig:
    cfl: float = 1.0
    final_time: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"CFL must lie in (0, 1], got {self.cfl}")
        if not self.final_time >= 0.0:
            raise ValueError(f"final time must be nonnegative, got {self.final_time}")


def cfl_timestep(sol: DgSolution, cfl: float) -> float:
    """``dt = CFL dx / (lambda_max (2N + 1))`` with the smallest element width."""
    lam = max_wave_speed(sol)
    if not lam > 0.0:
        raise ValueError(f"maximum wave speed must be positive, got {lam}")
    return cfl * min(sol.mesh.spacing) / (lam * (2 * sol.ops.degree + 1))


def lsrk54_step(u, rhs: Callable, t: float, dt: float):
    """Advance ``u' = rhs(u, t)`` by one step. Uses one extra register."""
    u = np.array(u, dtype=np.result_type(u, float), copy=True)
    du = np.zeros_like(u)
    for a, b, c in zip(LSRK54_A, LSRK54_B, LSRK54_C):
        du *= a
        du += dt * rhs(u, t + c * dt)
        u += b * du
    return u


def stability_polynomial(z):
    """Amplification factor ``R(z)`` of one step applied to ``u' = z u``."""
    return lsrk54_step(np.array(1.0 + 0j), lambda u, t: z * u, 0.0, 1.0)


def integrate(
    u0,
    rhs: Callable,
    t0: float,
    t_final: float,
    timestep: Callable,
    callback: Optional[Callable] = None,
):
    """March to ``t_final``; the last step is shortened to land on it exactly.

    ``timestep(u, t)`` returns the step size to use; ``callback(u, t, step)`` is
    invoked before every step and once more at the final time.
    """
    u, t, step = np.array(u0, dtype=float, copy=True), float(t0), 0
    while t < t_final:
        if callback is not None:
            callback(u, t, step)
        dt = timestep(u, t)
        if t + dt >= t_final or t_final - (t + dt) < 1e-12 * dt:
            dt = t_final - t
            u = lsrk54_step(u, rhs, t, dt)
            t = t_final
        else:
            u = lsrk54_step(u, rhs, t, dt)
            t += dt
        step += 1
    if callback is not None:
        callback(u, t, step)
    return u, t, step
