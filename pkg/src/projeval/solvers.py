"""Projected-equation solvers: best projection, TD(0), BR, and oblique.

Every method is one m x m solve. Writing L = I - gamma P and Xi for the
diagonal weight matrix:

  best:    (Phi' Xi Phi)   w = Phi' Xi v       (orthogonal projection of v)
  TD(0):   (Phi' Xi L Phi) w = Phi' Xi r
  BR:      (Psi' Xi Psi)   w = Psi' Xi r       with Psi = L Phi
  oblique: (X'  L  Phi)    w = X'  r           for any direction matrix X

TD and BR are the oblique solves with X = Xi Phi and X = Xi L Phi; the
direction X* solving L' X* = Xi Phi reproduces the best projection.
Singularity of the m x m system (condition estimate above 1e12) is an
explicit status on the solution, never a silently garbage answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mdp import Mdp, exact_value, l_matrix
from .projections import (
    FeatureBasis,
    SINGULAR_CONDITION_LIMIT,
    StateWeights,
    condition_estimate,
)


@dataclass(frozen=True)
class ProjectionSolution:
    """Outcome of one projected solve: weights, value estimate, diagnostics."""

    weights: np.ndarray | None
    value_estimate: np.ndarray | None
    method: str
    condition_estimate: float
    status: str  # "ok" | "singular"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _projected_solve(left: np.ndarray, right: np.ndarray, rhs: np.ndarray,
                     phi: FeatureBasis, method: str) -> ProjectionSolution:
    """Solve (left' right) w = rhs with a cancellation-aware condition check."""
    M = left.T @ right
    cond = condition_estimate(M, left, right)
    if not np.isfinite(cond) or cond > SINGULAR_CONDITION_LIMIT:
        return ProjectionSolution(None, None, method, cond, "singular")
    w = np.linalg.solve(M, rhs)
    return ProjectionSolution(w, phi.matrix @ w, method, cond, "ok")


def solve_best(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> ProjectionSolution:
    """xi-orthogonal projection of the exact value onto span(Phi)."""
    v = exact_value(mdp)
    xiphi = phi.matrix * xi.weights[:, None]
    return _projected_solve(xiphi, phi.matrix, xiphi.T @ v, phi, "best")


def solve_td(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> ProjectionSolution:
    """TD(0) fixed point: the value in span(Phi) with zero projected TD error."""
    xiphi = phi.matrix * xi.weights[:, None]
    lphi = l_matrix(mdp) @ phi.matrix
    return _projected_solve(xiphi, lphi, xiphi.T @ mdp.rewards, phi, "td")


def solve_br(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> ProjectionSolution:
    """Minimizer of the xi-weighted Bellman residual over span(Phi)."""
    psi = l_matrix(mdp) @ phi.matrix
    xipsi = psi * xi.weights[:, None]
    return _projected_solve(xipsi, psi, xipsi.T @ mdp.rewards, phi, "br")


def solve_oblique(mdp: Mdp, phi: FeatureBasis, x: np.ndarray) -> ProjectionSolution:
    """Solution of the projected equation for an arbitrary direction matrix X."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape != phi.matrix.shape:
        raise ValueError(f"direction matrix is {x.shape}, expected {phi.matrix.shape}")
    lphi = l_matrix(mdp) @ phi.matrix
    return _projected_solve(x, lphi, x.T @ mdp.rewards, phi, "oblique")


def optimal_direction(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> np.ndarray:
    """Direction X* with L' X* = Xi Phi; its oblique solve is the best projection."""
    xiphi = phi.matrix * xi.weights[:, None]
    x_star = np.linalg.solve(l_matrix(mdp).T, xiphi)
    resid = np.max(np.abs(l_matrix(mdp).T @ x_star - xiphi))
    if resid > 1e-10 * (1.0 + np.max(np.abs(xiphi))):
        raise ArithmeticError(f"optimal-direction solve residual too large: {resid}")
    return x_star


def td_direction(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> np.ndarray:
    """X = Xi Phi, the direction whose oblique solve is the TD(0) fixed point."""
    return phi.matrix * xi.weights[:, None]


def br_direction(mdp: Mdp, phi: FeatureBasis, xi: StateWeights) -> np.ndarray:
    """X = Xi L Phi, the direction whose oblique solve is the BR minimizer."""
    return (l_matrix(mdp) @ phi.matrix) * xi.weights[:, None]
