"""Finite MDP with a fixed policy: transition matrix, rewards, discount.

The chain is uncontrolled; all value computations reduce to dense linear
algebra with L = I - gamma * P.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Mdp:
    """An uncontrolled finite-state MDP: row-stochastic P, rewards r, discount."""

    transitions: np.ndarray
    rewards: np.ndarray
    discount: float

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]


def make_mdp(transitions, rewards, discount: float) -> Mdp:
    """Build a validated Mdp, renormalizing rows that are within tolerance.

    Raises ValueError listing every violated invariant otherwise.
    """
    P = np.array(transitions, dtype=float)
    r = np.array(rewards, dtype=float).ravel()
    m = Mdp(P, r, float(discount))
    problems = validate(m)
    if problems:
        raise ValueError("invalid MDP: " + "; ".join(problems))
    # file-parsed probabilities carry rounding noise; renormalize inside tolerance
    row_sums = P.sum(axis=1, keepdims=True)
    P = P / row_sums
    P.flags.writeable = False
    r.flags.writeable = False
    return Mdp(P, r, float(discount))


def validate(mdp: Mdp) -> list[str]:
    """Check all Mdp invariants; return a list of violations (empty means ok)."""
    problems = []
    P, r, gamma = mdp.transitions, mdp.rewards, mdp.discount
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        problems.append(f"transition matrix is {P.shape}, expected square")
        return problems
    n = P.shape[0]
    if r.shape != (n,):
        problems.append(f"rewards has length {r.size}, expected {n}")
    if not (0.0 < gamma < 1.0):
        problems.append("discount not in (0,1)")
    if np.any(P < 0.0) or np.any(P > 1.0):
        i, j = np.unravel_index(np.argmin(P) if P.min() < 0 else np.argmax(P), P.shape)
        problems.append(f"probability out of [0,1] at ({i},{j}): {P[i, j]}")
    row_sums = P.sum(axis=1)
    bad = np.nonzero(np.abs(row_sums - 1.0) > ROW_SUM_TOL)[0]
    for i in bad:
        problems.append(f"row {i} sums to {row_sums[i]!r}")
    return problems


def bellman_apply(mdp: Mdp, v: np.ndarray) -> np.ndarray:
    """One application of the Bellman operator: r + gamma * P v."""
    v = np.asarray(v, dtype=float)
    if v.shape != (mdp.n_states,):
        raise ValueError(f"value vector has length {v.size}, expected {mdp.n_states}")
    return mdp.rewards + mdp.discount * (mdp.transitions @ v)


def apply_L(mdp: Mdp, v: np.ndarray) -> np.ndarray:
    """(I - gamma P) v."""
    v = np.asarray(v, dtype=float)
    if v.shape != (mdp.n_states,):
        raise ValueError(f"value vector has length {v.size}, expected {mdp.n_states}")
    return v - mdp.discount * (mdp.transitions @ v)


def apply_L_transpose(mdp: Mdp, v: np.ndarray) -> np.ndarray:
    """(I - gamma P') v."""
    v = np.asarray(v, dtype=float)
    if v.shape != (mdp.n_states,):
        raise ValueError(f"value vector has length {v.size}, expected {mdp.n_states}")
    return v - mdp.discount * (mdp.transitions.T @ v)


def l_matrix(mdp: Mdp) -> np.ndarray:
    """The dense matrix L = I - gamma P."""
    return np.eye(mdp.n_states) - mdp.discount * mdp.transitions


def exact_value(mdp: Mdp) -> np.ndarray:
    """Unique solution of (I - gamma P) v = r via a pivoted dense solve."""
    L = l_matrix(mdp)
    v = np.linalg.solve(L, mdp.rewards)
    resid = np.max(np.abs(L @ v - mdp.rewards))
    if not np.isfinite(resid) or resid > 1e-10 * (1.0 + np.max(np.abs(mdp.rewards), initial=0.0)):
        raise ArithmeticError(f"value solve residual too large: {resid}")
    return v


def stationary_distribution(mdp: Mdp, tol: float = 1e-12,
                            max_iter: int = 1_000_000) -> np.ndarray | None:
    """Stationary xi with xi' P = xi', xi > 0, or None when no such xi exists.

    Power iteration from the uniform distribution; None is returned when the
    iteration fails to converge or the limit puts (numerically) zero mass on
    some state, as happens for chains with an absorbing class.
    """
    P = mdp.transitions
    n = mdp.n_states
    xi = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = xi @ P
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - xi)) < tol:
            xi = nxt
            break
        xi = nxt
    else:
        return None
    if np.min(xi) <= 1e-12:
        return None
    return xi / xi.sum()
