"""Entropy conservative and entropy stable schemes for the polytropic Euler equations."""

from .equations import DomainError, EquationOfState
from .fluxes import ec_flux, es_flux
from .means import avg_sound_speed_sq, gamma_mean
from .sbp import lgl_operator_set

__all__ = [
    "DomainError",
    "EquationOfState",
    "avg_sound_speed_sq",
    "ec_flux",
    "es_flux",
    "gamma_mean",
    "lgl_operator_set",
]
