"""Interface averages used by the entropy conservative and stable fluxes.

Both the gamma-mean of the density and the averaged squared sound speed are
quotients of jumps and tend to 0/0 when the two densities approach each
other. Below the cutoff ``SERIES_CUTOFF`` on ``nu = f**2`` with
``f = (rho_r - rho_l)/(rho_r + rho_l)`` they are evaluated from a truncated
series in ``nu`` instead.
"""

from __future__ import annotations

import numpy as np

from .equations import EquationOfState, check_density

SERIES_CUTOFF = 1.0e-4


def arithmetic_mean(a, b):
    return 0.5 * (a + b)


def _ratio(rho_l, rho_r):
    rho_l = np.asarray(rho_l, dtype=float)
    rho_r = np.asarray(rho_r, dtype=float)
    f = (rho_r - rho_l) / (rho_r + rho_l)
    return 0.5 * (rho_l + rho_r), f * f


def gamma_mean_series(rho_l, rho_r, eos: EquationOfState):
    """Series form of the gamma-mean, accurate for nearby densities."""
    return _gamma_series(*_ratio(rho_l, rho_r), eos.gamma)


def _gamma_series(avg, nu, g):
    c1 = (g - 2.0) / 3.0
    c2 = (g + 1.0) * (g - 2.0) * (g - 3.0) / 45.0
    c3 = (g + 1.0) * (g - 2.0) * (g - 3.0) * (2.0 * g * (g - 2.0) - 9.0) / 945.0
    # Sign of c3 follows the closed-form expansion, which at gamma = 1
    # reproduces the logarithmic-mean series 1 - nu/3 - 4nu^2/45 - 44nu^3/945.
    return avg * (1.0 + nu * (c1 - nu * (c2 - nu * c3)))


def gamma_mean_direct(rho_l, rho_r, eos: EquationOfState):
    """Quotient form ``(1/gamma) [[p]]/[[e]]``; undefined for equal densities."""
    rho_l = np.asarray(rho_l, dtype=float)
    rho_r = np.asarray(rho_r, dtype=float)
    if eos.is_isothermal:
        return (rho_r - rho_l) / np.log(rho_r / rho_l)
    g = eos.gamma
    return (g - 1.0) / g * (rho_r**g - rho_l**g) / (rho_r ** (g - 1.0) - rho_l ** (g - 1.0))


def gamma_mean(rho_l, rho_r, eos: EquationOfState):
    """Density average ``{{rho}}_gamma``.

    Reduces to the logarithmic mean for the isothermal law and to the
    arithmetic mean for ``gamma = 2``. Always lies between the two inputs.
    """
    rho_l = check_density(rho_l).astype(float)
    rho_r = check_density(rho_r).astype(float)
    return _gamma_mean(rho_l, rho_r, eos)


def _gamma_mean(rho_l, rho_r, eos, p_l=None, p_r=None):
    # p_l, p_r: pressures if already known, saving two powers per pair
    avg, nu = _ratio(rho_l, rho_r)
    small = nu < SERIES_CUTOFF
    series = _gamma_series(avg, nu, eos.gamma)
    if np.all(small):
        return series
    with np.errstate(divide="ignore", invalid="ignore"):
        if eos.is_isothermal or p_l is None:
            direct = gamma_mean_direct(rho_l, rho_r, eos)
        else:
            g = eos.gamma
            direct = (g - 1.0) / g * (p_r - p_l) / (p_r / rho_r - p_l / rho_l)
    return np.where(small, series, direct)


def avg_sound_speed_sq_series(rho_l, rho_r, eos: EquationOfState):
    if eos.is_isothermal:
        return np.full(np.broadcast(rho_l, rho_r).shape, eos.c**2)
    g = eos.gamma
    avg, nu = _ratio(rho_l, rho_r)
    c1 = (g - 1.0) * (g - 2.0) / 6.0
    c2 = (g - 1.0) * (g - 2.0) * (g - 3.0) * (g - 4.0) / 120.0
    c3 = (g - 1.0) * (g - 2.0) * (g - 3.0) * (g - 4.0) * (g - 5.0) * (g - 6.0) / 5040.0
    return g * eos.kappa * avg ** (g - 1.0) * (1.0 + nu * (c1 + nu * (c2 + nu * c3)))


def avg_sound_speed_sq_direct(rho_l, rho_r, eos: EquationOfState):
    if eos.is_isothermal:
        return np.full(np.broadcast(rho_l, rho_r).shape, eos.c**2)
    rho_l = np.asarray(rho_l, dtype=float)
    rho_r = np.asarray(rho_r, dtype=float)
    return eos.kappa * (rho_r**eos.gamma - rho_l**eos.gamma) / (rho_r - rho_l)


def avg_sound_speed_sq(rho_l, rho_r, eos: EquationOfState):
    """Average ``[[p]]/[[rho]]`` of the squared sound speed (exactly ``c**2`` if isothermal)."""
    rho_l = check_density(rho_l).astype(float)
    rho_r = check_density(rho_r).astype(float)
    return _avg_sound_speed_sq(rho_l, rho_r, eos)


def _avg_sound_speed_sq(rho_l, rho_r, eos, p_l=None, p_r=None):
    if eos.is_isothermal:
        return avg_sound_speed_sq_series(rho_l, rho_r, eos)
    _, nu = _ratio(rho_l, rho_r)
    small = nu < SERIES_CUTOFF
    series = avg_sound_speed_sq_series(rho_l, rho_r, eos)
    if np.all(small):
        return series
    with np.errstate(divide="ignore", invalid="ignore"):
        if p_l is None:
            direct = avg_sound_speed_sq_direct(rho_l, rho_r, eos)
        else:
            direct = (p_r - p_l) / (rho_r - rho_l)
    return np.where(small, series, direct)
