import math

import numpy as np
import pytest

from oracles import (
    dense_min_error,
    pure_min_error,
    random_projection,
    random_pure_vector,
    random_test_operator,
)
from qchernoff import classical, quantum
from qchernoff.exceptions import ValidationError
from qchernoff.states import StatePair, pure_state, random_density


def random_pair(seed, d=None):
    rng = np.random.default_rng(seed)
    d = d or int(rng.integers(2, 4))
    r0, r1 = (int(rng.integers(1, d + 1)) for _ in range(2))
    return StatePair(random_density(d, r0, seed).matrix, random_density(d, r1, seed + 104729).matrix)


def pure_pair(seed, d=2):
    rng = np.random.default_rng(seed)
    v0, v1 = random_pure_vector(d, rng), random_pure_vector(d, rng)
    return StatePair(pure_state(v0).matrix, pure_state(v1).matrix), abs(np.vdot(v0, v1)) ** 2


class TestBayesError:
    def test_constant_tests(self, qubit_pair):
        assert quantum.bayes_error_quantum(qubit_pair, 1, np.zeros((2, 2))) == pytest.approx(0.5)
        assert quantum.bayes_error_quantum(qubit_pair, 1, np.eye(2)) == pytest.approx(0.5)

    def test_rejects_invalid_test(self, qubit_pair):
        with pytest.raises(ValidationError):
            quantum.bayes_error_quantum(qubit_pair, 1, 2 * np.eye(2))
        with pytest.raises(ValidationError):
            quantum.bayes_error_quantum(qubit_pair, 1, np.eye(3))

    def test_commuting_matches_classical(self):
        p, q = np.array([0.6, 0.3, 0.1]), np.array([0.2, 0.2, 0.6])
        pair = StatePair(np.diag(p), np.diag(q))
        lam = classical.ml_test(p, q)
        assert quantum.bayes_error_quantum(pair, 1, np.diag(lam)) == pytest.approx(
            classical.bayes_error(p, q, lam), abs=1e-15
        )


class TestHelstrom:
    def test_commuting_is_ml_test(self):
        p, q = np.array([0.6, 0.3, 0.1]), np.array([0.2, 0.2, 0.6])
        proj = quantum.helstrom_test(StatePair(np.diag(p), np.diag(q)))
        np.testing.assert_allclose(proj, np.diag(classical.ml_test(p, q)), atol=1e-12)

    def test_identical_states(self):
        rho = random_density(3, 3, 1).matrix
        assert np.allclose(quantum.helstrom_test(StatePair(rho, rho)), 0)

    def test_qubit_rank_one(self, qubit_pair):
        proj = quantum.helstrom_test(qubit_pair)
        assert np.allclose(proj @ proj, proj, atol=1e-12)
        assert np.real(np.trace(proj)) == pytest.approx(1.0)
        err = quantum.bayes_error_quantum(qubit_pair, 1, proj)
        assert err == pytest.approx(quantum.min_error_exact(qubit_pair), abs=1e-14)

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("n", [1, 2])
    def test_attains_min_error(self, seed, n):
        pair = random_pair(seed)
        proj = quantum.helstrom_test(pair, n)
        assert quantum.bayes_error_quantum(pair, n, proj) == pytest.approx(
            quantum.min_error_exact(pair, n), abs=1e-12
        )


class TestMinError:
    def test_qubit_value(self, qubit_pair):
        # rho1 - rho0 has eigenvalues +-sqrt(1/8)
        assert quantum.min_error_exact(qubit_pair) == pytest.approx(0.5 - math.sqrt(2) / 8, abs=1e-15)

    def test_orthogonal_and_equal(self):
        assert quantum.min_error_exact(StatePair(np.diag([1, 0]), np.diag([0, 1]))) == pytest.approx(0)
        rho = random_density(2, 2, 3).matrix
        assert quantum.min_error_exact(StatePair(rho, rho), 3) == pytest.approx(0.5)

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_dense_oracle(self, seed, n):
        pair = random_pair(seed)
        assert quantum.min_error_exact(pair, n) == pytest.approx(
            dense_min_error(pair.rho0.matrix, pair.rho1.matrix, n), abs=1e-12
        )

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_pure_closed_form(self, seed, n):
        pair, F = pure_pair(seed)
        expected = dense_min_error(pair.rho0.matrix, pair.rho1.matrix, n)
        assert pure_min_error(F, n) == pytest.approx(expected, abs=1e-12)
        assert quantum.min_error_exact(pair, n) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("seed", range(6))
    def test_dominates_random_tests(self, seed):
        pair = random_pair(seed)
        rng = np.random.default_rng(seed)
        best = quantum.min_error_exact(pair)
        for _ in range(20):
            assert quantum.bayes_error_quantum(pair, 1, random_test_operator(pair.dim, rng)) >= best - 1e-10
            assert quantum.bayes_error_quantum(pair, 1, random_projection(pair.dim, rng)) >= best - 1e-10

    @pytest.mark.parametrize("seed", range(5))
    def test_non_increasing_in_n(self, seed):
        pair = random_pair(seed, d=2)
        errs = [quantum.min_error_exact(pair, n) for n in range(1, 6)]
        assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))


class TestAHat:
    def test_qubit_half(self, qubit_pair):
        assert quantum.a_hat(qubit_pair, 0.5) == pytest.approx((2 + math.sqrt(3)) / 4, abs=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_pure_states(self, seed):
        pair, F = pure_pair(seed, d=3)
        for s in (0.2, 0.5, 0.8):
            assert quantum.a_hat(pair, s) == pytest.approx(F, abs=1e-12)
        assert quantum.a_hat(pair, 0.0) == pytest.approx(1.0)
        assert quantum.a_hat(pair, 1.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_double_sum_matches_trace(self, seed):
        pair = random_pair(seed)
        grid = np.linspace(0.01, 0.99, 15)
        direct = quantum.a_hat_trace(pair, grid)
        np.testing.assert_allclose([quantum.a_hat(pair, s) for s in grid], direct, atol=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_symmetry(self, seed):
        pair = random_pair(seed)
        for s in (0.1, 0.35, 0.7):
            assert quantum.a_hat(pair, s) == pytest.approx(quantum.a_hat(pair.swapped(), 1 - s), abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_multiplicative(self, seed):
        pair = random_pair(seed, d=2)
        big = StatePair(np.kron(pair.rho0.matrix, pair.rho0.matrix), np.kron(pair.rho1.matrix, pair.rho1.matrix))
        for s in (0.25, 0.5, 0.75):
            assert quantum.a_hat(big, s) == pytest.approx(quantum.a_hat(pair, s) ** 2, abs=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_log_convex_and_dominates_error(self, seed):
        pair = random_pair(seed)
        grid = np.linspace(0.02, 0.98, 49)
        logs = np.log([quantum.a_hat(pair, s) for s in grid])
        assert np.all(logs[:-2] + logs[2:] - 2 * logs[1:-1] >= -1e-10)
        assert quantum.min_error_exact(pair) <= 0.5 * np.exp(logs.min()) + 1e-12

    def test_out_of_range(self, qubit_pair):
        with pytest.raises(ValidationError):
            quantum.a_hat(qubit_pair, 1.5)

    def test_limits(self):
        pair = StatePair(np.diag([0.5, 0.5, 0.0]), np.diag([0.0, 0.5, 0.5]))
        assert quantum.a_hat_limits(pair) == pytest.approx((0.5, 0.5))


class TestQCB:
    def test_qubit(self, qubit_pair):
        res = quantum.qcb(qubit_pair)
        assert res.bound == pytest.approx(math.log((2 + math.sqrt(3)) / 4), abs=1e-10)
        assert res.minimizer == "interior" and res.s_star == pytest.approx(0.5, abs=1e-6)
        assert res.a_hat_min == pytest.approx(math.exp(res.bound))

    @pytest.mark.parametrize("seed", range(5))
    def test_pure_states(self, seed):
        pair, F = pure_pair(seed)
        assert quantum.qcb(pair).bound == pytest.approx(math.log(F), abs=1e-10)

    def test_identical(self):
        rho = random_density(3, 2, 9).matrix
        res = quantum.qcb(StatePair(rho, rho))
        assert res.bound == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal(self):
        res = quantum.qcb(StatePair(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        assert res.bound == -math.inf and res.a_hat_min == 0.0

    @pytest.mark.parametrize("seed", range(10))
    def test_below_grid(self, seed):
        pair = random_pair(seed)
        res = quantum.qcb(pair)
        grid = np.linspace(0.001, 0.999, 999)
        oracle = min(np.log(quantum.a_hat_trace(pair, grid)).min(), *np.log(quantum.a_hat_limits(pair)))
        assert res.bound <= oracle + 1e-12
        assert res.bound >= oracle - 1e-6

    @pytest.mark.parametrize("seed", range(5))
    def test_swap_symmetry(self, seed):
        pair = random_pair(seed)
        a, b = quantum.qcb(pair), quantum.qcb(pair.swapped())
        assert a.bound == pytest.approx(b.bound, abs=1e-10)


class TestRepeatedMeasurement:
    @pytest.mark.parametrize("seed", range(5))
    def test_sandwich(self, seed):
        pair = random_pair(seed, d=2)
        from qchernoff import nsmap

        for n in range(1, 6):
            err = quantum.min_error_exact(pair, n)
            assert nsmap.error_floor(pair, n) <= err + 1e-12
            assert err <= quantum.repeated_measurement_upper(pair, n) + 1e-12

    def test_first_copy_equals_helstrom(self, qubit_pair):
        assert quantum.repeated_measurement_upper(qubit_pair, 1) == pytest.approx(
            quantum.min_error_exact(qubit_pair), abs=1e-14
        )

    def test_uninformative(self):
        rho = random_density(2, 2, 4).matrix
        assert quantum.repeated_measurement_upper(StatePair(rho, rho), 4) == pytest.approx(0.5)
