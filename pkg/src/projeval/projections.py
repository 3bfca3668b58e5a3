"""Weighted norms and (oblique) projections onto a feature subspace.

A projection onto span(Phi) is represented by its coefficient map pi, the
m x N matrix sending a state-space vector to coordinates in the feature
basis; the projector itself is Phi @ pi. Projector norms in the xi-weighted
norm are computed through small m x m products, with a full-size singular
value oracle for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# any m x m system above this condition estimate is declared singular;
# TD genuinely diverges on such instances and must be reported, not masked
SINGULAR_CONDITION_LIMIT = 1e12

INDEPENDENCE_SV_RATIO = 1e-10


class SingularMatrixError(np.linalg.LinAlgError):
    """A projected m x m system is numerically singular."""

    def __init__(self, what: str, condition: float):
        super().__init__(f"{what} is numerically singular (condition estimate {condition:.3e})")
        self.what = what
        self.condition = condition


@dataclass(frozen=True)
class FeatureBasis:
    """N x m feature matrix with linearly independent columns."""

    matrix: np.ndarray

    @property
    def n_states(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def make_feature_basis(matrix) -> FeatureBasis:
    phi = np.array(matrix, dtype=float)
    if phi.ndim == 1:
        phi = phi[:, None]
    n, m = phi.shape
    if m > n:
        raise ValueError(f"feature matrix is {n}x{m}, need m <= N")
    s = np.linalg.svd(phi, compute_uv=False)
    if s[-1] <= INDEPENDENCE_SV_RATIO * s[0]:
        raise ValueError(
            f"feature columns are not linearly independent "
            f"(singular value ratio {s[-1] / s[0]:.3e})")
    phi.flags.writeable = False
    return FeatureBasis(phi)


@dataclass(frozen=True)
class StateWeights:
    """Strictly positive distribution over states, inducing the weighted norm."""

    weights: np.ndarray

    @property
    def n_states(self) -> int:
        return self.weights.shape[0]


def make_state_weights(weights) -> StateWeights:
    xi = np.array(weights, dtype=float).ravel()
    if np.any(xi <= 0.0):
        raise ValueError("state weights must be strictly positive")
    total = xi.sum()
    if not np.isfinite(total) or total <= 0:
        raise ValueError("state weights must have a positive finite sum")
    xi = xi / total
    xi.flags.writeable = False
    return StateWeights(xi)


@dataclass(frozen=True)
class CoefficientMap:
    """m x N map from state-space vectors to feature coordinates."""

    matrix: np.ndarray
    direction_tag: str


def weighted_norm(v: np.ndarray, xi: StateWeights) -> float:
    """sqrt(sum_i xi_i v_i^2)."""
    v = np.asarray(v, dtype=float)
    if v.shape != xi.weights.shape:
        raise ValueError(f"vector has length {v.size}, expected {xi.n_states}")
    return float(np.sqrt(np.dot(xi.weights, v * v)))


def condition_estimate(M: np.ndarray, left: np.ndarray, right: np.ndarray) -> float:
    """Cancellation-aware condition estimate of the product M = left' right.

    The classical condition number of M misses catastrophic cancellation:
    a 1x1 product can collapse to a tiny but nonzero scalar (condition 1)
    while the underlying projected system is effectively singular. Scaling
    by the Frobenius norms of the factors catches this; the estimate always
    dominates the classical condition number.
    """
    s_min = np.linalg.svd(M, compute_uv=False)[-1]
    scale = np.linalg.norm(left) * np.linalg.norm(right)
    if s_min == 0.0:
        return float("inf")
    return float(scale / s_min)


def _solve_with_condition(M: np.ndarray, rhs: np.ndarray,
                          left: np.ndarray, right: np.ndarray, what: str):
    cond = condition_estimate(M, left, right)
    if not np.isfinite(cond) or cond > SINGULAR_CONDITION_LIMIT:
        raise SingularMatrixError(what, cond)
    return np.linalg.solve(M, rhs), cond


def orthogonal_coefficient_map(phi: FeatureBasis, xi: StateWeights) -> CoefficientMap:
    """pi = (Phi' Xi Phi)^-1 Phi' Xi, the xi-orthogonal coefficient map."""
    xiphi = phi.matrix * xi.weights[:, None]
    gram = phi.matrix.T @ xiphi
    pi, _ = _solve_with_condition(gram, xiphi.T, xiphi, phi.matrix, "Gram matrix")
    return CoefficientMap(pi, "orthogonal-xi")


def oblique_coefficient_map(phi: FeatureBasis, x: np.ndarray) -> CoefficientMap:
    """pi_X = (X' Phi)^-1 X', projecting onto span(Phi) orthogonally to span(X)."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape != phi.matrix.shape:
        raise ValueError(f"direction matrix is {x.shape}, expected {phi.matrix.shape}")
    pi, _ = _solve_with_condition(x.T @ phi.matrix, x.T, x, phi.matrix,
                                  "direction product X'Phi")
    return CoefficientMap(pi, "oblique-X")


def spectral_radius(m_matrix: np.ndarray) -> float:
    """Maximum absolute eigenvalue of a square matrix."""
    m_matrix = np.asarray(m_matrix, dtype=float)
    if m_matrix.ndim != 2 or m_matrix.shape[0] != m_matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got {m_matrix.shape}")
    return float(np.max(np.abs(np.linalg.eigvals(m_matrix))))


def psd_product_spectral_radius(g: np.ndarray, h: np.ndarray) -> float:
    """Spectral radius of G H for symmetric PSD G, H.

    Computed as the top eigenvalue of G^(1/2) H G^(1/2), a similar symmetric
    PSD matrix; avoids complex eigensolvers and spurious imaginary parts.
    """
    g = 0.5 * (g + g.T)
    h = 0.5 * (h + h.T)
    lam, vec = np.linalg.eigh(g)
    g_half = (vec * np.sqrt(np.maximum(lam, 0.0))) @ vec.T
    sym = g_half @ h @ g_half
    return float(np.max(np.maximum(np.linalg.eigvalsh(0.5 * (sym + sym.T)), 0.0)))


def projector_weighted_norm(phi: FeatureBasis, pi: CoefficientMap,
                            xi: StateWeights) -> float:
    """xi-operator norm of the projector Phi pi, via m x m products only.

    ||Y Z||_xi^2 is the spectral radius of (Y' Xi Y)(Z Xi^-1 Z') with
    Y = Phi and Z = pi.
    """
    g = phi.matrix.T @ (phi.matrix * xi.weights[:, None])
    h = (pi.matrix / xi.weights[None, :]) @ pi.matrix.T
    return float(np.sqrt(psd_product_spectral_radius(g, h)))


def operator_norm_oracle(op_matrix: np.ndarray, xi: StateWeights) -> float:
    """Full-size oracle for the induced xi-operator norm of an N x N matrix.

    Largest singular value of Xi^(1/2) M Xi^(-1/2); used to validate the
    small-matrix route above.
    """
    op_matrix = np.asarray(op_matrix, dtype=float)
    root = np.sqrt(xi.weights)
    scaled = (op_matrix * root[:, None]) / root[None, :]
    return float(np.linalg.svd(scaled, compute_uv=False)[0])
