"""Polytropic and isothermal Euler equations at the continuous level.

States are numpy arrays with the conserved variables on the leading axis,
``u = (rho, rho*v_1, ..., rho*v_d)``, so every function here works on a
single state of shape ``(d+1,)`` or on a batch of shape ``(d+1, ...)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Raised when a kernel receives a state outside its domain (rho <= 0)."""


class EosKind(enum.Enum):
    POLYTROPIC = "polytropic"
    ISOTHERMAL = "isothermal"


@dataclass(frozen=True)
class EquationOfState:
    """Closed gas law ``p(rho)``.

    Use :meth:`polytropic` or :meth:`isothermal` rather than the raw
    constructor. For the isothermal law ``gamma`` is reported as exactly 1.
    """

    kind: EosKind
    kappa: float = 1.0
    gamma: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if self.kind is EosKind.POLYTROPIC:
            if not self.gamma > 1.0:
                raise ValueError(
                    f"polytropic gas needs gamma > 1, got {self.gamma} "
                    "(select the isothermal law explicitly for gamma = 1)"
                )
            if not self.kappa > 0.0:
                raise ValueError(f"polytropic gas needs kappa > 0, got {self.kappa}")
        else:
            if not self.c > 0.0:
                raise ValueError(f"isothermal gas needs c > 0, got {self.c}")
            if self.gamma != 1.0:
                object.__setattr__(self, "gamma", 1.0)

    @classmethod
    def polytropic(cls, kappa: float, gamma: float) -> "EquationOfState":
        return cls(EosKind.POLYTROPIC, kappa=float(kappa), gamma=float(gamma))

    @classmethod
    def isothermal(cls, c: float) -> "EquationOfState":
        return cls(EosKind.ISOTHERMAL, c=float(c), gamma=1.0)

    @property
    def is_isothermal(self) -> bool:
        return self.kind is EosKind.ISOTHERMAL

    def __str__(self):
        if self.is_isothermal:
            return f"isothermal(c={self.c:g})"
        return f"polytropic(kappa={self.kappa:g}, gamma={self.gamma:g})"


def check_density(rho, what="density"):
    rho = np.asarray(rho)
    if np.any(~(rho > 0.0)):
        bad = rho[~(rho > 0.0)].ravel()[0]
        raise DomainError(f"nonpositive {what}: {bad!r}")
    return rho


def _pressure(rho, eos):
    if eos.is_isothermal:
        return eos.c**2 * rho
    return eos.kappa * rho**eos.gamma


def _internal_energy(rho, eos):
    if eos.is_isothermal:
        return eos.c**2 * np.log(rho)
    return eos.kappa * rho ** (eos.gamma - 1.0) / (eos.gamma - 1.0)


def _sound_speed_sq(rho, eos):
    if eos.is_isothermal:
        return eos.c**2 * np.ones_like(rho)
    return eos.gamma * eos.kappa * rho ** (eos.gamma - 1.0)


def pressure(rho, eos: EquationOfState):
    """``kappa*rho**gamma`` (polytropic) or ``c**2*rho`` (isothermal)."""
    return _pressure(check_density(rho), eos)


def internal_energy(rho, eos: EquationOfState):
    """Internal energy compatible with :func:`pressure`, i.e. ``rho*e'(rho) = p/rho``."""
    return _internal_energy(check_density(rho), eos)


def sound_speed_sq(rho, eos: EquationOfState):
    """``a**2 = gamma*p/rho``."""
    return _sound_speed_sq(check_density(rho), eos)


def _split(u):
    u = np.asarray(u, dtype=float)
    if u.shape[0] < 2:
        raise ValueError(f"state needs at least 2 components, got shape {u.shape}")
    rho = check_density(u[0])
    return u, rho, u[1:] / rho


def _check_dir(direction, u):
    ndim = u.shape[0] - 1
    if not 0 <= direction < ndim:
        raise ValueError(f"axis {direction} out of range for a {ndim}D state")


def velocity(u):
    return _split(u)[2]


def physical_flux(u, direction: int, eos: EquationOfState):
    """Physical flux of the state(s) ``u`` along axis ``direction``."""
    u, rho, v = _split(u)
    _check_dir(direction, u)
    vn = v[direction]
    f = u * vn
    f[0] = u[1 + direction]
    f[1 + direction] += _pressure(rho, eos)
    return f


def entropy(u, eos: EquationOfState):
    """Total energy ``rho*|v|^2/2 + rho*e(rho)``, the mathematical entropy."""
    u, rho, v = _split(u)
    return 0.5 * rho * np.sum(v * v, axis=0) + rho * _internal_energy(rho, eos)


def entropy_variables(u, eos: EquationOfState):
    """Gradient of :func:`entropy` with respect to the conserved variables."""
    u, rho, v = _split(u)
    w = np.empty_like(u)
    w[0] = _internal_energy(rho, eos) + _pressure(rho, eos) / rho - 0.5 * np.sum(v * v, axis=0)
    w[1:] = v
    return w


def entropy_flux(u, direction: int, eos: EquationOfState):
    u, rho, v = _split(u)
    _check_dir(direction, u)
    return v[direction] * (entropy(u, eos) + _pressure(rho, eos))


def entropy_potential(u, direction: int, eos: EquationOfState):
    """Flux potential ``p*v_dir``; equals ``w.f_dir - f^s_dir``."""
    u, rho, v = _split(u)
    _check_dir(direction, u)
    return _pressure(rho, eos) * v[direction]


def eigenvalues(u, direction: int, eos: EquationOfState):
    """``(v_n - a, v_n, ..., v_n, v_n + a)`` along ``direction``."""
    u, rho, v = _split(u)
    _check_dir(direction, u)
    a = np.sqrt(_sound_speed_sq(rho, eos))
    vn = v[direction]
    lam = np.repeat(vn[None, ...], u.shape[0], axis=0)
    lam[0] = vn - a
    lam[-1] = vn + a
    return lam


def max_wave_speed(u, direction: int, eos: EquationOfState):
    return np.max(np.abs(eigenvalues(u, direction, eos)))


def entropy_jacobian(u, eos: EquationOfState):
    """Symmetric positive definite ``H = du/dw`` for a single state."""
    u, rho, v = _split(u)
    if u.ndim != 1:
        raise ValueError("entropy_jacobian expects a single state")
    a2 = _sound_speed_sq(rho, eos)
    n = u.shape[0]
    H = np.empty((n, n))
    H[0, 0] = rho
    H[0, 1:] = H[1:, 0] = rho * v
    H[1:, 1:] = rho * np.outer(v, v) + a2 * rho * np.eye(n - 1)
    return H / a2


def flux_jacobian(u, direction: int, eos: EquationOfState):
    """``A = df_dir/du`` for a single state."""
    u, rho, v = _split(u)
    _check_dir(direction, u)
    n = u.shape[0]
    k = 1 + direction
    vn = v[direction]
    A = np.zeros((n, n))
    A[0, k] = 1.0
    for j in range(1, n):
        A[j, 0] = -v[j - 1] * vn
        A[j, j] += vn
        A[j, k] += v[j - 1]
    A[k, 0] += _sound_speed_sq(rho, eos)
    return A


def eigenvectors(u, direction: int, eos: EquationOfState):
    """Right eigenvectors ordered (slow acoustic, shear..., fast acoustic)."""
    u, rho, v = _split(u)
    _check_dir(direction, u)
    a = float(np.sqrt(_sound_speed_sq(rho, eos)))
    return _eigenvector_matrix(v, a, direction)


def _eigenvector_matrix(v, a, direction):
    n = v.shape[0] + 1
    R = np.zeros((n, n))
    R[0, 0] = R[0, -1] = 1.0
    R[1:, 0] = v
    R[1:, -1] = v
    R[1 + direction, 0] -= a
    R[1 + direction, -1] += a
    shear = [j for j in range(v.shape[0]) if j != direction]
    for col, j in enumerate(shear, start=1):
        R[1 + j, col] = 1.0
    return R


def eigenvector_scaling(u, eos: EquationOfState):
    """Diagonal of ``Z`` with ``H = R Z R^T``."""
    u, rho, _ = _split(u)
    a2 = _sound_speed_sq(rho, eos)
    z = np.full(u.shape[0], float(rho))
    z[0] = z[-1] = rho / (2.0 * a2)
    return z


def eigenvector_scaling_check(u, direction: int, eos: EquationOfState):
    """Return ``(R, Z, R Z R^T)``; the product reproduces :func:`entropy_jacobian`."""
    R = eigenvectors(u, direction, eos)
    Z = np.diag(eigenvector_scaling(u, eos))
    return R, Z, R @ Z @ R.T
