"""Error functionals and tight spectral-radius error bounds.

For a candidate v_hat in span(Phi) the report carries four xi-norms: the
approximation error against the exact value, the TD error, the Bellman
residual, and the adequacy gap between them; the residual squared always
splits as TD error squared plus adequacy squared.

For an oblique direction X, the amplification of the best achievable error
is exactly the xi-norm of the projector onto span(Phi) along span(L'X)^perp,
computed from three m x m matrices:

  A = Phi' Xi Phi,  B = (X' L Phi)^-1,  C = X' L Xi^-1 L' X,
  bound = sqrt(spectral_radius(A B C B')).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mdp import Mdp, bellman_apply, exact_value, l_matrix
from .projections import (
    FeatureBasis,
    SINGULAR_CONDITION_LIMIT,
    StateWeights,
    condition_estimate,
    orthogonal_coefficient_map,
    psd_product_spectral_radius,
    weighted_norm,
)


@dataclass(frozen=True)
class ErrorReport:
    approx_error: float     # ||v - v_hat||_xi
    td_error: float         # ||v_hat - Proj T v_hat||_xi
    br_residual: float      # ||v_hat - T v_hat||_xi
    adequacy: float         # ||T v_hat - Proj T v_hat||_xi


@dataclass(frozen=True)
class BoundReport:
    direction_tag: str
    a_matrix: np.ndarray
    b_matrix: np.ndarray | None
    c_matrix: np.ndarray
    bound: float | None
    status: str  # "ok" | "singular"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def error_report(mdp: Mdp, phi: FeatureBasis, xi: StateWeights,
                 v_hat: np.ndarray) -> ErrorReport:
    """All four error functionals for a candidate value in span(Phi)."""
    v_hat = np.asarray(v_hat, dtype=float)
    pi = orthogonal_coefficient_map(phi, xi)
    projected = phi.matrix @ (pi.matrix @ v_hat)
    scale = 1.0 + float(np.max(np.abs(v_hat), initial=0.0))
    if np.max(np.abs(projected - v_hat)) > 1e-8 * scale:
        raise ValueError("candidate value is not in the feature span")
    v = exact_value(mdp)
    t_v_hat = bellman_apply(mdp, v_hat)
    proj_t = phi.matrix @ (pi.matrix @ t_v_hat)
    return ErrorReport(
        approx_error=weighted_norm(v - v_hat, xi),
        td_error=weighted_norm(v_hat - proj_t, xi),
        br_residual=weighted_norm(v_hat - t_v_hat, xi),
        adequacy=weighted_norm(t_v_hat - proj_t, xi),
    )


def error_bound(mdp: Mdp, phi: FeatureBasis, xi: StateWeights,
                x: np.ndarray) -> BoundReport:
    """Tight amplification factor sqrt(sigma(A B C B')) for direction X.

    Singular X' L Phi means the oblique solution does not exist; the bound is
    reported as a status, never as a sentinel number.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    a = phi.matrix.T @ (phi.matrix * xi.weights[:, None])
    ltx = l_matrix(mdp).T @ x
    c = (ltx.T / xi.weights[None, :]) @ ltx
    lphi = l_matrix(mdp) @ phi.matrix
    xlphi = x.T @ lphi
    cond = condition_estimate(xlphi, x, lphi)
    tag = "oblique-X"
    if not np.isfinite(cond) or cond > SINGULAR_CONDITION_LIMIT:
        return BoundReport(tag, a, None, c, None, "singular")
    b = np.linalg.inv(xlphi)
    bcbt = b @ c @ b.T
    bound = float(np.sqrt(psd_product_spectral_radius(a, bcbt)))
    return BoundReport(tag, a, b, c, bound, "ok")


def concentration_coefficient(mdp: Mdp, xi: StateWeights) -> float:
    """max over (i,j) of p_ij / xi_i, a stochasticity measure of the chain."""
    return float(np.max(mdp.transitions / xi.weights[:, None]))


def br_guarantee(mdp: Mdp, phi: FeatureBasis, xi: StateWeights,
                 v_hat: np.ndarray) -> tuple[float, float]:
    """Both sides of the residual-based performance guarantee.

    lhs = ||v - v_hat||_xi, rhs = sqrt(C(xi)) / (1 - gamma) * ||v_hat - T v_hat||_xi.
    """
    v_hat = np.asarray(v_hat, dtype=float)
    v = exact_value(mdp)
    lhs = weighted_norm(v - v_hat, xi)
    residual = weighted_norm(v_hat - bellman_apply(mdp, v_hat), xi)
    rhs = np.sqrt(concentration_coefficient(mdp, xi)) / (1.0 - mdp.discount) * residual
    return lhs, rhs


def stationary_td_bound_check(mdp: Mdp, phi: FeatureBasis,
                              xi_stationary: StateWeights) -> tuple[float, float]:
    """TD error bound under the stationary distribution.

    lhs = ||v - v_td||_xi, rhs = ||v - v_best||_xi / sqrt(1 - gamma^2).
    Requires xi' P = xi' within 1e-8.
    """
    from .solvers import solve_best, solve_td

    xi = xi_stationary
    resid = np.max(np.abs(xi.weights @ mdp.transitions - xi.weights))
    if resid > 1e-8:
        raise ValueError(f"weights are not stationary for P (residual {resid:.3e})")
    v = exact_value(mdp)
    td = solve_td(mdp, phi, xi)
    if not td.ok:
        raise ArithmeticError("TD solve is singular under a stationary distribution")
    best = solve_best(mdp, phi, xi)
    lhs = weighted_norm(v - td.value_estimate, xi)
    rhs = weighted_norm(v - best.value_estimate, xi) / np.sqrt(1.0 - mdp.discount ** 2)
    return lhs, rhs
