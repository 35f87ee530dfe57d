"""Split-form DG spectral element discretisation on periodic Cartesian meshes.

Nodal data layout (conserved variable first, structure of arrays):

* 1D: ``u[c, ex, i]``
* 2D: ``u[c, ex, ey, i, j]`` with ``i`` the x-node and ``j`` the y-node

The semi-discrete scheme is ``J u_t = -Res(u) + J s`` where ``s`` is an
optional manufactured source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .equations import EquationOfState, entropy_variables, physical_flux
from .sbp import SbpOperatorSet, lgl_operator_set

TwoPointFlux = Callable[[np.ndarray, np.ndarray, int, EquationOfState], np.ndarray]


class InadmissibleStateError(ValueError):
    """Nonpositive nodal density; carries the element and node index."""

    def __init__(self, element, node, value):
        self.element = tuple(int(k) for k in element)
        self.node = tuple(int(k) for k in node)
        self.value = float(value)
        super().__init__(
            f"nonpositive density {self.value!r} at element {self.element}, node {self.node}"
        )


@dataclass(frozen=True)
class CartesianMesh:
    """Uniform periodic mesh of ``n_elements[d]`` elements along each axis."""

    n_elements: tuple
    lower: tuple = None
    upper: tuple = None

    def __post_init__(self):
        n = tuple(int(k) for k in np.atleast_1d(self.n_elements))
        if len(n) not in (1, 2) or min(n) < 1:
            raise ValueError(f"need 1 or 2 positive element counts, got {self.n_elements}")
        object.__setattr__(self, "n_elements", n)
        lo = (0.0,) * len(n) if self.lower is None else tuple(map(float, self.lower))
        hi = (1.0,) * len(n) if self.upper is None else tuple(map(float, self.upper))
        if len(lo) != len(n) or len(hi) != len(n) or any(h <= l for l, h in zip(lo, hi)):
            raise ValueError("domain bounds must match the dimension and be increasing")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def square(cls, n: int, dim: int = 2):
        return cls((n,) * dim)

    @property
    def dim(self):
        return len(self.n_elements)

    @property
    def spacing(self):
        return tuple((h - l) / n for l, h, n in zip(self.lower, self.upper, self.n_elements))

    @property
    def metrics(self):
        """Reference-to-physical scale factors ``X_xi, Y_eta`` (half widths)."""
        return tuple(0.5 * d for d in self.spacing)

    @property
    def jacobian(self):
        return float(np.prod(self.metrics))

    def contravariant_scale(self, direction):
        """Factor turning the Cartesian flux along ``direction`` into the contravariant one."""
        m = self.metrics
        return float(np.prod([m[k] for k in range(self.dim) if k != direction]))

    def node_coordinates(self, nodes):
        """Physical coordinates, each shaped like the spatial part of a solution array."""
        coords = []
        for k in range(self.dim):
            e = np.arange(self.n_elements[k])
            x = self.lower[k] + (e[:, None] + 0.5 * (nodes[None, :] + 1.0)) * self.spacing[k]
            coords.append(x)
        if self.dim == 1:
            return (coords[0],)
        x, y = coords
        ex, ey = self.n_elements
        n = len(nodes)
        X = np.broadcast_to(x[:, None, :, None], (ex, ey, n, n))
        Y = np.broadcast_to(y[None, :, None, :], (ex, ey, n, n))
        return X, Y


@dataclass
class DgSolution:
    mesh: CartesianMesh
    ops: SbpOperatorSet
    u: np.ndarray
    eos: EquationOfState
    t: float = 0.0

    def __post_init__(self):
        N1 = self.ops.degree + 1
        expected = tuple(self.mesh.n_elements) + (N1,) * self.mesh.dim
        if self.u.shape[1:] != expected:
            raise ValueError(f"solution shape {self.u.shape[1:]} does not match mesh {expected}")
        if self.u.shape[0] < self.mesh.dim + 1:
            raise ValueError("state has fewer momentum components than the mesh dimension")

    @classmethod
    def from_function(cls, mesh, degree, eos, func, t=0.0):
        """Nodal interpolation of ``func(*coords) -> (ncomp, ...)``."""
        ops = degree if isinstance(degree, SbpOperatorSet) else lgl_operator_set(degree)
        coords = mesh.node_coordinates(ops.nodes)
        u = np.array(func(*coords), dtype=float)
        return cls(mesh, ops, u, eos, t)

    @property
    def coordinates(self):
        return self.mesh.node_coordinates(self.ops.nodes)

    def copy(self, u=None):
        return DgSolution(self.mesh, self.ops, self.u.copy() if u is None else u, self.eos, self.t)


def check_admissible(mesh: CartesianMesh, u):
    bad = ~(u[0] > 0.0)
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        d = mesh.dim
        raise InadmissibleStateError(idx[:d], idx[d:], u[0][tuple(idx)])


@dataclass
class _PairTables:
    """Pair scatter for the symmetric two-point volume sum."""

    left: np.ndarray
    right: np.ndarray
    scatter: np.ndarray
    diag: np.ndarray = field(default=None)


_TABLE_CACHE: dict = {}


def _pair_tables(ops: SbpOperatorSet):
    key = (ops.degree, ops.deriv.tobytes())
    tab = _TABLE_CACHE.get(key)
    if tab is None:
        D = ops.deriv
        il, ir = np.triu_indices(ops.degree + 1, k=1)
        S = np.zeros((il.size, ops.degree + 1))
        S[np.arange(il.size), il] = D[il, ir]
        S[np.arange(il.size), ir] = D[ir, il]
        tab = _PairTables(il, ir, 2.0 * S, 2.0 * np.diag(D).copy())
        _TABLE_CACHE[key] = tab
    return tab


def _directional_residual(u, direction, mesh, ops, eos, volume_flux, surface_flux):
    """Volume plus surface terms along one axis, before contravariant scaling.

    Returns the term together with the face fluxes at each element's upper face.
    """
    d = mesh.dim
    node_axis = 1 + d + direction
    elem_axis = 1 + direction
    um = np.moveaxis(u, node_axis, -1)
    tab = _pair_tables(ops)

    f_nodes = physical_flux(um, direction, eos)
    f_pairs = volume_flux(um[..., tab.left], um[..., tab.right], direction, eos)
    term = f_pairs @ tab.scatter + f_nodes * tab.diag

    f_star = surface_flux(um[..., -1], np.roll(um[..., 0], -1, axis=elem_axis), direction, eos)
    f_star_lower = np.roll(f_star, 1, axis=elem_axis)
    term[..., -1] += (f_star - f_nodes[..., -1]) / ops.weights[-1]
    term[..., 0] -= (f_star_lower - f_nodes[..., 0]) / ops.weights[0]
    return np.moveaxis(term, -1, node_axis), f_star


def dg_residual(
    sol: DgSolution,
    volume_flux: TwoPointFlux,
    surface_flux: TwoPointFlux,
    source=None,
    t: Optional[float] = None,
):
    """Spatial residual ``Res`` with ``J u_t = -Res + J source``.

    ``source`` is accepted for interface symmetry with :func:`dg_rhs` but does
    not enter ``Res``; it is added by the caller.
    """
    mesh, ops, u = sol.mesh, sol.ops, sol.u
    if ops.degree < 1:
        raise ValueError("polynomial degree must be at least 1")
    check_admissible(mesh, u)
    res = np.zeros_like(u)
    for direction in range(mesh.dim):
        term, _ = _directional_residual(u, direction, mesh, ops, sol.eos, volume_flux, surface_flux)
        res += mesh.contravariant_scale(direction) * term
    return res


def dg_rhs(sol: DgSolution, volume_flux, surface_flux, source=None, t: Optional[float] = None):
    """Time derivative ``u_t = (-Res + J source)/J``."""
    t = sol.t if t is None else t
    rhs = dg_residual(sol, volume_flux, surface_flux) / (-sol.mesh.jacobian)
    if source is not None:
        rhs += source(*sol.coordinates, t, sol.eos)
    return rhs


def interface_fluxes(sol: DgSolution, surface_flux: TwoPointFlux, direction: int = 0):
    """Numerical fluxes at each element's upper face along ``direction``."""
    check_admissible(sol.mesh, sol.u)
    d = sol.mesh.dim
    um = np.moveaxis(sol.u, 1 + d + direction, -1)
    return surface_flux(um[..., -1], np.roll(um[..., 0], -1, axis=1 + direction), direction, sol.eos)


def _quadrature(sol: DgSolution, values):
    """``sum_elements J sum_nodes omega ... values`` over the trailing spatial axes."""
    w = sol.ops.weights
    if sol.mesh.dim == 1:
        wq = w
    else:
        wq = w[:, None] * w[None, :]
    axes = tuple(range(-2 * sol.mesh.dim, 0))
    return sol.mesh.jacobian * np.sum(values * wq, axis=axes)


def entropy_residual(sol: DgSolution, residual):
    """Integrated entropy time derivative ``IS_t = -sum J w.W.Res``."""
    w = entropy_variables(sol.u, sol.eos)
    return float(-_quadrature(sol, np.sum(w * residual, axis=0)))


def total_entropy(sol: DgSolution):
    from .equations import entropy

    return float(_quadrature(sol, entropy(sol.u, sol.eos)))


def integrate(sol: DgSolution, values):
    """Domain integral of nodal ``values`` (per component if a leading axis is present)."""
    return _quadrature(sol, values)


def l2_error(sol: DgSolution, reference, t: Optional[float] = None):
    """Per-component discrete L2 error against ``reference(*coords, t)``."""
    t = sol.t if t is None else t
    ref = np.asarray(reference(*sol.coordinates, t), dtype=float)
    diff = sol.u - ref[: sol.u.shape[0]]
    return np.sqrt(_quadrature(sol, diff * diff))


def max_wave_speed(sol: DgSolution):
    """Largest ``|v_n| + a`` over all nodes and directions."""
    from .equations import sound_speed_sq

    check_admissible(sol.mesh, sol.u)
    rho = sol.u[0]
    a = np.sqrt(sound_speed_sq(rho, sol.eos))
    lam = 0.0
    for k in range(sol.mesh.dim):
        lam = max(lam, float(np.max(np.abs(sol.u[1 + k] / rho) + a)))
    return lam
