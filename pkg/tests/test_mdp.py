import numpy as np
import pytest

from projeval import (
    apply_L,
    apply_L_transpose,
    bellman_apply,
    exact_value,
    make_mdp,
    stationary_distribution,
    validate,
)
from projeval.instances import SeedSpec, ergodic_chain
from projeval.mdp import Mdp

from conftest import random_dense_mdp


def two_state(gamma=0.9, r=(1.0, 0.0)):
    return make_mdp([[0.0, 1.0], [0.0, 1.0]], list(r), gamma)


class TestValidate:
    def test_valid_two_state(self):
        assert validate(two_state()) == []

    def test_bad_row_sum(self):
        m = Mdp(np.array([[0.4, 0.5], [0.0, 1.0]]), np.zeros(2), 0.9)
        problems = validate(m)
        assert any("row 0 sums to" in p for p in problems)

    def test_gamma_out_of_range(self):
        m = Mdp(np.eye(2), np.zeros(2), 1.0)
        assert "discount not in (0,1)" in validate(m)

    def test_negative_probability(self):
        m = Mdp(np.array([[-0.5, 1.5], [0.0, 1.0]]), np.zeros(2), 0.9)
        assert any("out of [0,1]" in p for p in validate(m))

    def test_dimension_mismatch(self):
        m = Mdp(np.eye(3), np.zeros(2), 0.9)
        assert any("rewards has length 2" in p for p in validate(m))

    def test_make_mdp_raises(self):
        with pytest.raises(ValueError, match="row 0 sums"):
            make_mdp([[0.4, 0.5], [0.0, 1.0]], [0.0, 0.0], 0.9)

    def test_make_mdp_renormalizes_within_tolerance(self):
        eps = 5e-13
        m = make_mdp([[0.5 + eps, 0.5], [0.0, 1.0]], [0.0, 0.0], 0.9)
        np.testing.assert_allclose(m.transitions.sum(axis=1), 1.0, rtol=0, atol=1e-16)


class TestBellmanApply:
    def test_fixed_point(self, rng):
        m = random_dense_mdp(rng, 7)
        v = exact_value(m)
        np.testing.assert_allclose(bellman_apply(m, v), v, atol=1e-10)

    def test_zero_reward_is_linear_map(self, rng):
        m = make_mdp(random_dense_mdp(rng, 5).transitions, np.zeros(5), 0.7)
        v = rng.normal(size=5)
        np.testing.assert_allclose(bellman_apply(m, v),
                                   0.7 * (m.transitions @ v), atol=1e-14)

    def test_hand_value(self):
        m = two_state(0.5, (1.0, 0.0))
        np.testing.assert_allclose(bellman_apply(m, np.zeros(2)), [1.0, 0.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            bellman_apply(two_state(), np.zeros(3))


class TestExactValue:
    def test_two_state_closed_form(self):
        # v(1) = r1 + gamma r2/(1-gamma), v(2) = r2/(1-gamma)
        m = two_state(0.5, (1.0, 0.0))
        np.testing.assert_allclose(exact_value(m), [1.0, 0.0], atol=1e-12)

    def test_zero_reward(self, rng):
        m = make_mdp(random_dense_mdp(rng, 6).transitions, np.zeros(6), 0.9)
        np.testing.assert_allclose(exact_value(m), np.zeros(6), atol=1e-14)

    def test_single_absorbing_state(self):
        m = make_mdp([[1.0]], [3.0], 0.8)
        np.testing.assert_allclose(exact_value(m), [3.0 / 0.2], atol=1e-10)

    def test_linearity_in_reward(self, rng):
        base = random_dense_mdp(rng, 12)
        r1 = rng.normal(size=12)
        r2 = rng.normal(size=12)
        v1 = exact_value(make_mdp(base.transitions, r1, base.discount))
        v2 = exact_value(make_mdp(base.transitions, r2, base.discount))
        v12 = exact_value(make_mdp(base.transitions, r1 + r2, base.discount))
        np.testing.assert_allclose(v12, v1 + v2, atol=1e-10)

    def test_geometric_series_bound(self, rng):
        for _ in range(20):
            m = random_dense_mdp(rng, int(rng.integers(2, 31)))
            v = exact_value(m)
            limit = np.max(np.abs(m.rewards)) / (1.0 - m.discount)
            assert np.max(np.abs(v)) <= limit + 1e-10


class TestApplyL:
    def test_inverse_of_exact_value(self, rng):
        m = random_dense_mdp(rng, 9)
        np.testing.assert_allclose(apply_L(m, exact_value(m)), m.rewards, atol=1e-10)

    def test_zero(self):
        np.testing.assert_allclose(apply_L(two_state(), np.zeros(2)), np.zeros(2))

    def test_hand_value(self):
        m = two_state(0.5)
        np.testing.assert_allclose(apply_L(m, np.array([1.0, 2.0])), [0.0, 1.0])

    def test_transpose_is_adjoint(self, rng):
        m = random_dense_mdp(rng, 8)
        u, v = rng.normal(size=8), rng.normal(size=8)
        assert apply_L(m, v) @ u == pytest.approx(v @ apply_L_transpose(m, u))


class TestStationaryDistribution:
    def test_symmetric_two_state(self):
        m = make_mdp([[0.5, 0.5], [0.5, 0.5]], [0.0, 0.0], 0.9)
        np.testing.assert_allclose(stationary_distribution(m), [0.5, 0.5], atol=1e-10)

    def test_absorbing_chain_not_found(self):
        assert stationary_distribution(two_state()) is None

    def test_ergodic_chain_residual(self):
        m = ergodic_chain(8, 0.9, SeedSpec(7))
        xi = stationary_distribution(m)
        assert xi is not None
        assert np.min(xi) > 0
        assert np.max(np.abs(xi @ m.transitions - xi)) <= 1e-10
