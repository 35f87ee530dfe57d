"""First-order periodic finite-volume scheme in 1D, used as a cross-check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equations import EquationOfState, entropy, entropy_potential, entropy_variables


class InadmissibleCellError(ValueError):
    def __init__(self, cell, value):
        self.cell = int(cell)
        self.value = float(value)
        super().__init__(f"nonpositive density {self.value!r} in cell {self.cell}")


@dataclass
class FvGrid:
    """Cell averages ``u[c, i]`` on a uniform periodic grid of spacing ``dx``."""

    u: np.ndarray
    dx: float

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        if not self.dx > 0.0:
            raise ValueError(f"cell width must be positive, got {self.dx}")
        if self.u.ndim != 2:
            raise ValueError("cell states must have shape (ncomp, ncells)")

    @property
    def n_cells(self):
        return self.u.shape[1]

    def check(self):
        bad = np.flatnonzero(~(self.u[0] > 0.0))
        if bad.size:
            raise InadmissibleCellError(bad[0], self.u[0, bad[0]])


def fv_interface_fluxes(grid: FvGrid, flux, eos: EquationOfState):
    """Flux at interface ``i+1/2`` for every cell ``i`` (periodic)."""
    grid.check()
    return flux(grid.u, np.roll(grid.u, -1, axis=1), 0, eos)


def fv_residual(grid: FvGrid, flux, eos: EquationOfState):
    """``(u_t)_i = -(f*_{i+1/2} - f*_{i-1/2}) / dx``."""
    f = fv_interface_fluxes(grid, flux, eos)
    return -(f - np.roll(f, 1, axis=1)) / grid.dx


def fv_total_entropy(grid: FvGrid, eos: EquationOfState):
    grid.check()
    return float(np.sum(entropy(grid.u, eos)) * grid.dx)


def fv_entropy_rate(grid: FvGrid, flux, eos: EquationOfState):
    """``sum_i w_i . (u_t)_i dx``: zero for EC fluxes, nonpositive for ES fluxes."""
    w = entropy_variables(grid.u, eos)
    return float(np.sum(w * fv_residual(grid, flux, eos)) * grid.dx)


def fv_interface_entropy_terms(grid: FvGrid, flux, eos: EquationOfState):
    """Per-interface ``[[w]].f* - [[Psi]]``; their sum is the entropy rate."""
    f = fv_interface_fluxes(grid, flux, eos)
    w = entropy_variables(grid.u, eos)
    psi = entropy_potential(grid.u, 0, eos)
    jump_w = np.roll(w, -1, axis=1) - w
    return np.sum(jump_w * f, axis=0) - (np.roll(psi, -1) - psi)
