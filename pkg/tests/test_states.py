import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_unitary
from qchernoff.exceptions import ValidationError
from qchernoff.states import (
    StatePair,
    commutes,
    pure_state,
    random_density,
    validate_density,
)


@pytest.mark.parametrize("M", [np.eye(2) / 2, np.diag([0.7, 0.3])])
def test_accepts_valid_states(M):
    rho = validate_density(M)
    np.testing.assert_allclose(rho.matrix, M, atol=1e-15)
    assert rho.dim == 2


def test_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError, match="negative eigenvalue"):
        validate_density(np.diag([1.5, -0.5]))


def test_rejects_bad_trace():
    with pytest.raises(ValidationError, match="trace"):
        validate_density(np.diag([0.7, 0.4]))


def test_clips_small_violations():
    rho = validate_density(np.diag([1 + 5e-9, -5e-9]))
    assert np.all(rho.spectrum.eigenvalues >= 0)
    assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-15)


def test_kernel_eigenvalues_are_exact_zeros():
    v = np.array([1.0, 1.0j]) / np.sqrt(2)
    rho = pure_state(v)
    assert rho.spectrum.eigenvalues.tolist() == [1.0, 0.0]
    assert rho.rank == 1


def test_random_density_deterministic():
    a = random_density(4, 4, seed=7)
    b = random_density(4, 4, seed=7)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, random_density(4, 4, seed=8).matrix)


def test_random_pure():
    rho = random_density(2, 1, seed=3)
    np.testing.assert_allclose(rho.spectrum.eigenvalues, [1.0, 0.0], atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6), data=st.data())
def test_random_density_invariants(seed, d, data):
    rank = data.draw(st.integers(1, d))
    rho = random_density(d, rank, seed)
    w = np.linalg.eigvalsh(rho.matrix)
    assert w.min() >= -1e-12
    assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
    assert np.sum(w > 1e-10 * w.max()) == rank
    # every returned state is itself a valid input
    validate_density(rho.matrix)


def test_rank_out_of_range():
    with pytest.raises(ValidationError):
        random_density(3, 4, seed=0)


class TestCommutes:
    def test_diagonals(self):
        assert commutes(StatePair(np.diag([0.6, 0.4]), np.diag([0.1, 0.9])))

    def test_identical(self):
        rho = random_density(3, 3, seed=1)
        assert commutes(StatePair(rho, rho))

    def test_qubit_pair(self, qubit_pair):
        a, b = qubit_pair.rho0.matrix, qubit_pair.rho1.matrix
        # [diag(3/4, 1/4), [[1/2, 1/4], [1/4, 1/2]]] has off-diagonal entries +-1/8
        comm = a @ b - b @ a
        np.testing.assert_allclose(comm, [[0, 0.125], [-0.125, 0]], atol=1e-15)
        assert not commutes(qubit_pair)

    def test_shared_eigenbasis(self):
        U = random_unitary(3, np.random.default_rng(5))
        a = (U * [0.5, 0.3, 0.2]) @ U.conj().T
        b = (U * [0.1, 0.1, 0.8]) @ U.conj().T
        assert commutes(StatePair(a, b))


def test_pair_dimension_mismatch():
    with pytest.raises(ValidationError):
        StatePair(np.eye(2) / 2, np.eye(3) / 3)


def test_pair_caches_reconstruct(qubit_pair):
    for lam, V, rho in [
        (qubit_pair.lambdas, qubit_pair.x, qubit_pair.rho0),
        (qubit_pair.gammas, qubit_pair.y, qubit_pair.rho1),
    ]:
        np.testing.assert_allclose((V * lam) @ V.conj().T, rho.matrix, atol=1e-10)
