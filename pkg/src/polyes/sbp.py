"""Legendre-Gauss-Lobatto collocation operators with the SBP property."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DEGREE = 15
SBP_TOL = 1e-12


@dataclass(frozen=True)
class SbpOperatorSet:
    degree: int
    nodes: np.ndarray
    weights: np.ndarray
    deriv: np.ndarray

    @property
    def mass(self):
        return np.diag(self.weights)

    @property
    def boundary(self):
        b = np.zeros((self.degree + 1, self.degree + 1))
        b[0, 0], b[-1, -1] = -1.0, 1.0
        return b


def legendre(n, x):
    """``P_n(x)`` and ``P_n'(x)`` by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p_prev, p = np.ones_like(x), x.copy()
    if n == 0:
        return p_prev, np.zeros_like(x)
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    # derivative from n (x P_n - P_{n-1}) / (x^2 - 1); only used at interior points
    with np.errstate(divide="ignore", invalid="ignore"):
        dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def lgl_nodes(n):
    """Roots of ``(1 - x^2) P_n'(x)`` by Newton iteration from Chebyshev-Lobatto points."""
    x = -np.cos(np.pi * np.arange(n + 1) / n)
    interior = x[1:-1].copy()
    for _ in range(100):
        # (1-x^2) P_n' = n (P_{n-1} - x P_n); its derivative is -n(n+1) P_n
        p, _ = legendre(n, interior)
        p_nm1, _ = legendre(n - 1, interior)
        g = n * (p_nm1 - interior * p)
        dg = -n * (n + 1) * p
        step = g / dg
        interior -= step
        if np.max(np.abs(step), initial=0.0) < 1e-16:
            break
    x[1:-1] = interior
    x[0], x[-1] = -1.0, 1.0
    # enforce exact mirror symmetry
    x = 0.5 * (x - x[::-1])
    return x


def barycentric_weights(x):
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def derivative_matrix(x):
    """``D_ij = l_j'(x_i)`` from barycentric weights; rows sum to zero."""
    wb = barycentric_weights(x)
    n = len(x)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                D[i, j] = wb[j] / wb[i] / (x[i] - x[j])
        D[i, i] = -np.sum(D[i, :])
    return D


def lgl_operator_set(n: int) -> SbpOperatorSet:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"polynomial degree must be an integer in [1, {MAX_DEGREE}], got {n!r}")
    n = int(n)
    x = lgl_nodes(n)
    p, _ = legendre(n, x)
    w = 2.0 / (n * (n + 1) * p**2)
    w = 0.5 * (w + w[::-1])
    return SbpOperatorSet(degree=n, nodes=x, weights=w, deriv=derivative_matrix(x))


def sbp_defect(ops: SbpOperatorSet) -> float:
    Q = ops.weights[:, None] * ops.deriv
    return float(np.max(np.abs(Q + Q.T - ops.boundary)))


def verify_sbp(ops: SbpOperatorSet):
    """Return ``(ok, max |MD + (MD)^T - B|)``."""
    defect = sbp_defect(ops)
    return defect <= SBP_TOL, defect
