import numpy as np
import pytest

from projeval import make_feature_basis, make_mdp, make_state_weights


def random_dense_mdp(rng, n, gamma=None):
    """Dense random row-stochastic MDP with uniform[-1,1] rewards."""
    if gamma is None:
        gamma = float(rng.uniform(0.2, 0.98))
    P = rng.uniform(size=(n, n))
    P /= P.sum(axis=1, keepdims=True)
    r = rng.uniform(-1.0, 1.0, size=n)
    return make_mdp(P, r, gamma)


def random_instance(rng, n_max=20, m_max=10, gamma=None):
    """Random (mdp, phi, xi) triple for property sweeps."""
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, min(m_max, n) + 1))
    mdp = random_dense_mdp(rng, n, gamma)
    phi = make_feature_basis(rng.uniform(-1.0, 1.0, size=(n, m)))
    xi = make_state_weights(rng.uniform(1e-3, 1.0, size=n))
    return mdp, phi, xi


@pytest.fixture
def rng():
    return np.random.default_rng(20100627)
