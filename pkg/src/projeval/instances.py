"""Analytic fixtures and seeded random generators for benchmark instances.

The two analytic fixtures carry closed-form reference weights; the random
generators (chains, features, weights) are pure functions of a SeedSpec, so
any trial of a sweep can be regenerated bit-identically in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mdp import Mdp, make_mdp
from .projections import FeatureBasis, StateWeights, make_feature_basis, make_state_weights

_RESAMPLE_LIMIT = 100
_WEIGHT_FLOOR = 1e-3


@dataclass(frozen=True)
class ReferenceWeights:
    """Closed-form solver weights, when analytically known."""

    w_best: float
    w_td: float | None  # None when the TD system is singular
    w_br: float


@dataclass(frozen=True)
class Instance:
    mdp: Mdp
    phi: FeatureBasis
    xi: StateWeights
    reference: ReferenceWeights | None = None


@dataclass(frozen=True)
class SeedSpec:
    """Deterministic seed: a master seed plus integer derivation labels.

    Identical (master_seed, labels) always yields bit-identical draws;
    distinct labels yield independent streams.
    """

    master_seed: int
    labels: tuple[int, ...] = ()

    def rng(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.labels)
        return np.random.default_rng(seq)

    def derive(self, *labels: int) -> "SeedSpec":
        return SeedSpec(self.master_seed, self.labels + tuple(labels))


def example1(gamma: float, theta: float) -> Instance:
    """Two-state chain with one feature (1, 2)' and uniform weights.

    State 1 jumps to state 2, state 2 is absorbing; rewards are
    (cos theta, sin theta). Reference weights:

      w_best = r1/5 + (2+gamma) r2 / (5(1-gamma))
      w_td   = (r1 + 2 r2) / (5 - 6 gamma)        (absent at gamma = 5/6)
      w_br   = ((1-2g) r1 + (2-2g) r2) / ((1-2g)^2 + (2-2g)^2)

    The TD system is singular exactly at gamma = 5/6.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must be in (0,1)")
    r1, r2 = np.cos(theta), np.sin(theta)
    mdp = make_mdp([[0.0, 1.0], [0.0, 1.0]], [r1, r2], gamma)
    phi = make_feature_basis([[1.0], [2.0]])
    xi = make_state_weights([0.5, 0.5])
    w_best = r1 / 5.0 + (2.0 + gamma) * r2 / (5.0 * (1.0 - gamma))
    den_td = 5.0 - 6.0 * gamma
    w_td = None if den_td == 0.0 else (r1 + 2.0 * r2) / den_td
    g1, g2 = 1.0 - 2.0 * gamma, 2.0 - 2.0 * gamma
    w_br = (g1 * r1 + g2 * r2) / (g1 * g1 + g2 * g2)
    return Instance(mdp, phi, xi, ReferenceWeights(w_best, w_td, w_br))


def block_triangular(k: int, l: int, seed: SeedSpec, gamma: float = 0.9) -> Instance:
    """(k+l)-state MDP whose first k states never reach the last l states.

    The feature space is all of R^k on the first block and a random proper
    subspace on the second, so the first-block value is exactly representable
    while the second generally is not.
    """
    if k < 1 or l < 1:
        raise ValueError("block sizes must be >= 1")
    rng = seed.rng()
    n = k + l
    P = np.zeros((n, n))
    p11 = rng.uniform(size=(k, k))
    P[:k, :k] = p11 / p11.sum(axis=1, keepdims=True)
    p2 = rng.uniform(size=(l, n))
    P[k:, :] = p2 / p2.sum(axis=1, keepdims=True)
    r = rng.uniform(-1.0, 1.0, size=n)
    mdp = make_mdp(P, r, gamma)

    s2_dim = max(1, l - 1)
    for _ in range(_RESAMPLE_LIMIT):
        s2 = rng.uniform(-1.0, 1.0, size=(l, s2_dim))
        phi_mat = np.zeros((n, k + s2_dim))
        phi_mat[:k, :k] = np.eye(k)
        phi_mat[k:, k:] = s2
        try:
            phi = make_feature_basis(phi_mat)
            break
        except ValueError:
            continue
    else:
        raise RuntimeError("could not draw an independent second-block basis")
    xi = make_state_weights(rng.uniform(_WEIGHT_FLOOR, 1.0, size=n))
    return Instance(mdp, phi, xi)


def random_chain(n: int, gamma: float, seed: SeedSpec) -> Mdp:
    """Random forward chain: state i advances with probability p_i, else stays.

    The last state is absorbing; p_i are uniform on (0,1) and rewards uniform
    on [-1,1].
    """
    if n < 2:
        raise ValueError("chain needs at least 2 states")
    rng = seed.rng()
    p = rng.uniform(size=n - 1)
    P = np.zeros((n, n))
    idx = np.arange(n - 1)
    P[idx, idx + 1] = p
    P[idx, idx] = 1.0 - p
    P[n - 1, n - 1] = 1.0
    r = rng.uniform(-1.0, 1.0, size=n)
    return make_mdp(P, r, gamma)


def random_features(n: int, k: int, seed: SeedSpec) -> FeatureBasis:
    """Random basis with entries uniform on [-1,1], resampled until independent."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = seed.rng()
    for _ in range(_RESAMPLE_LIMIT):
        try:
            return make_feature_basis(rng.uniform(-1.0, 1.0, size=(n, k)))
        except ValueError:
            continue
    raise RuntimeError(f"could not draw an independent {n}x{k} basis")


def random_weights(n: int, seed: SeedSpec) -> StateWeights:
    """Random strictly positive distribution: uniform on [floor, 1], normalized."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = seed.rng()
    return make_state_weights(rng.uniform(_WEIGHT_FLOOR, 1.0, size=n))


def ergodic_chain(n: int, gamma: float, seed: SeedSpec) -> Mdp:
    """Cyclic chain: state i advances to (i+1) mod n with probability p_i.

    Irreducible and aperiodic, so a strictly positive stationary distribution
    exists; used as the fixture for stationary-distribution TD bounds.
    """
    if n < 2:
        raise ValueError("chain needs at least 2 states")
    rng = seed.rng()
    # keep stay/advance probabilities away from 0 so mixing stays fast
    p = rng.uniform(0.1, 0.9, size=n)
    P = np.zeros((n, n))
    idx = np.arange(n)
    P[idx, (idx + 1) % n] = p
    P[idx, idx] += 1.0 - p
    r = rng.uniform(-1.0, 1.0, size=n)
    return make_mdp(P, r, gamma)
