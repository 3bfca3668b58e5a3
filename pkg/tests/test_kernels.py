import subprocess
import sys

import numpy as np

from projeval import kernels
from projeval.instances import SeedSpec, example1, random_chain, random_features, random_weights


def test_jitted_and_plain_paths_agree():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(2, 16))
        k = int(rng.integers(1, n + 1))
        seed = SeedSpec(int(rng.integers(1 << 32)))
        mdp = random_chain(n, 0.95, seed)
        phi = random_features(n, k, seed.derive(1))
        xi = random_weights(n, seed.derive(2))
        fast = kernels.trial_stats(mdp.transitions, mdp.rewards, 0.95,
                                   phi.matrix, xi.weights)
        plain = kernels.trial_stats_numpy(mdp.transitions, mdp.rewards, 0.95,
                                          phi.matrix, xi.weights)
        # backend discrepancy grows with the conditioning of the m x m solves
        np.testing.assert_allclose(fast, plain, rtol=1e-3, atol=1e-9,
                                   equal_nan=True)
        assert fast[kernels.TD_SINGULAR] == plain[kernels.TD_SINGULAR]


def test_singular_instance_flagged():
    inst = example1(5.0 / 6.0, 1.0)
    out = kernels.trial_stats(inst.mdp.transitions, inst.mdp.rewards, 5.0 / 6.0,
                              inst.phi.matrix, inst.xi.weights)
    assert out[kernels.TD_SINGULAR] == 1.0
    assert np.isnan(out[kernels.E_TD])
    assert np.isnan(out[kernels.B_TD])
    assert np.isfinite(out[kernels.E_BR])


def test_example1_hand_values():
    inst = example1(0.5, 0.0)
    out = kernels.trial_stats(inst.mdp.transitions, inst.mdp.rewards, 0.5,
                              inst.phi.matrix, inst.xi.weights)
    np.testing.assert_allclose(out[kernels.E_BEST], np.sqrt(0.4), rtol=1e-12)
    np.testing.assert_allclose(out[kernels.B_TD], 1.25, rtol=1e-12)
    np.testing.assert_allclose(out[kernels.B_BR], np.sqrt(1.25), rtol=1e-12)


def test_env_flag_selects_numpy_backend():
    code = ("import os; os.environ['PROJEVAL_NUMBA'] = '0'; "
            "from projeval import kernels; print(kernels.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
