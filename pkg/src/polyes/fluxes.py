"""Two-point entropy conservative and entropy stable numerical fluxes.

All kernels accept left/right states with the conserved variables on the
leading axis and broadcast over any trailing batch axes, so the DG volume
and surface loops call them on whole arrays of node pairs at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equations import (
    EquationOfState,
    _eigenvector_matrix,
    _pressure,
    check_density,
    entropy_variables,
)
from .means import _avg_sound_speed_sq, _gamma_mean


@dataclass(frozen=True)
class DissipationDecomposition:
    """``(R, Lambda, Z)`` of the matrix dissipation at one interface."""

    r_hat: np.ndarray
    lambda_hat: np.ndarray
    z_hat: np.ndarray


class _Averages:
    __slots__ = ("rho_gamma", "rho_avg", "v_avg", "p_avg", "rho_l", "rho_r", "p_l", "p_r", "_ul", "_ur")

    def __init__(self, u_l, u_r, eos):
        u_l = np.asarray(u_l, dtype=float)
        u_r = np.asarray(u_r, dtype=float)
        if u_l.shape[0] != u_r.shape[0]:
            raise ValueError(
                f"state dimension mismatch: {u_l.shape[0]} vs {u_r.shape[0]} components"
            )
        rho_l = check_density(u_l[0])
        rho_r = check_density(u_r[0])
        p_l, p_r = _pressure(rho_l, eos), _pressure(rho_r, eos)
        self.rho_gamma = _gamma_mean(rho_l, rho_r, eos, p_l, p_r)
        self.rho_avg = 0.5 * (rho_l + rho_r)
        self.v_avg = 0.5 * (u_l[1:] / rho_l + u_r[1:] / rho_r)
        self.p_avg = 0.5 * (p_l + p_r)
        self.rho_l, self.rho_r, self.p_l, self.p_r = rho_l, rho_r, p_l, p_r
        self._ul, self._ur = u_l, u_r

    def sound_speed_sq(self, eos):
        return _avg_sound_speed_sq(self.rho_l, self.rho_r, eos, self.p_l, self.p_r)


def _check_dir(direction, ncomp):
    if not 0 <= direction < ncomp - 1:
        raise ValueError(f"axis {direction} out of range for a {ncomp - 1}D state")


def _ec_from_averages(avg: _Averages, direction):
    mass = avg.rho_gamma * avg.v_avg[direction]
    f = np.empty((avg.v_avg.shape[0] + 1,) + np.shape(mass))
    f[0] = mass
    f[1:] = mass * avg.v_avg
    f[1 + direction] += avg.p_avg
    return f


def ec_flux(u_l, u_r, direction: int, eos: EquationOfState):
    """Entropy conservative flux along axis ``direction``.

    Satisfies ``[[w]].f = [[p v_dir]]`` and is consistent and symmetric.
    """
    avg = _Averages(u_l, u_r, eos)
    _check_dir(direction, avg.v_avg.shape[0] + 1)
    return _ec_from_averages(avg, direction)


def discrete_entropy_jacobian(u_l, u_r, eos: EquationOfState):
    """Averaged entropy Jacobian ``H_hat`` with ``H_hat [[w]] = [[u]]``."""
    avg = _Averages(u_l, u_r, eos)
    a2 = float(avg.sound_speed_sq(eos))
    rg = float(avg.rho_gamma)
    v = avg.v_avg
    n = v.shape[0] + 1
    H = np.empty((n, n))
    H[0, 0] = rg
    H[0, 1:] = H[1:, 0] = rg * v
    H[1:, 1:] = rg * np.outer(v, v) + a2 * float(avg.rho_avg) * np.eye(n - 1)
    return H / a2


def dissipation_decomposition(u_l, u_r, direction: int, eos: EquationOfState):
    avg = _Averages(u_l, u_r, eos)
    n = avg.v_avg.shape[0] + 1
    _check_dir(direction, n)
    a2 = float(avg.sound_speed_sq(eos))
    a = np.sqrt(a2)
    rg = float(avg.rho_gamma)
    vn = avg.v_avg[direction]
    lam = np.full(n, float(vn))
    lam[0] = vn - a
    lam[-1] = vn + a
    z = np.full(n, rg)
    z[0] = z[-1] = rg / (2.0 * a2)
    return DissipationDecomposition(_eigenvector_matrix(avg.v_avg, a, direction), lam, z)


def _dissipation(avg: _Averages, jump_w, direction, eos):
    # R |Lambda| Z R^T [[w]] evaluated right to left, never forming matrices
    a2 = avg.sound_speed_sq(eos)
    a = np.sqrt(a2)
    v = avg.v_avg
    vn = v[direction]
    k = 1 + direction
    s = jump_w[0] + np.sum(v * jump_w[1:], axis=0)
    acoustic = avg.rho_gamma / (2.0 * a2)
    q_slow = np.abs(vn - a) * acoustic * (s - a * jump_w[k])
    q_fast = np.abs(vn + a) * acoustic * (s + a * jump_w[k])
    q_sum = q_slow + q_fast
    shear = np.abs(vn) * avg.rho_gamma
    d = np.empty_like(jump_w)
    d[0] = q_sum
    d[1:] = v * q_sum + shear * jump_w[1:]
    d[k] = vn * q_sum + a * (q_fast - q_slow)
    return d


def es_flux(u_l, u_r, direction: int, eos: EquationOfState):
    """Entropy stable flux: :func:`ec_flux` minus matrix dissipation in entropy variables."""
    avg = _Averages(u_l, u_r, eos)
    _check_dir(direction, avg.v_avg.shape[0] + 1)
    jump_w = entropy_variables(avg._ur, eos) - entropy_variables(avg._ul, eos)
    return _ec_from_averages(avg, direction) - 0.5 * _dissipation(avg, jump_w, direction, eos)


def entropy_production(u_l, u_r, direction: int, eos: EquationOfState, flux=es_flux):
    """``[[w]].f* - [[Psi_dir]]``: zero for EC fluxes, nonpositive for ES fluxes."""
    u_l = np.asarray(u_l, dtype=float)
    u_r = np.asarray(u_r, dtype=float)
    jump_w = entropy_variables(u_r, eos) - entropy_variables(u_l, eos)
    f = flux(u_l, u_r, direction, eos)
    psi_r = _pressure(u_r[0], eos) * u_r[1 + direction] / u_r[0]
    psi_l = _pressure(u_l[0], eos) * u_l[1 + direction] / u_l[0]
    return np.sum(jump_w * f, axis=0) - (psi_r - psi_l)


FLUXES = {"ec": ec_flux, "es": es_flux}
