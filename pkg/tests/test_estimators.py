import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from qchernoff import classical, quantum
from qchernoff.estimators import HelstromTest, LikelihoodRatioTest, QuantumChernoffBound
from qchernoff.exceptions import ValidationError


def test_params_and_clone():
    est = LikelihoodRatioTest(priors=(0.3, 0.7))
    assert est.get_params() == {"priors": (0.3, 0.7)}
    assert clone(est).priors == (0.3, 0.7)
    assert HelstromTest(n=2).set_params(n=3).n == 3


def test_not_fitted():
    with pytest.raises(NotFittedError):
        LikelihoodRatioTest().predict([[0]])
    with pytest.raises(NotFittedError):
        QuantumChernoffBound().a_hat(0.5)


def test_likelihood_ratio_fit_predict():
    est = LikelihoodRatioTest().fit([0.9, 0.1], [0.5, 0.5])
    assert est.chernoff_.case == "a"
    assert est.min_error_ == pytest.approx(0.3)
    assert est.predict([[0], [1]]).tolist() == [0, 1]
    assert est.predict([[0, 0, 0], [0, 0, 1]]).tolist() == [0, 1]
    with pytest.raises(ValidationError):
        est.predict([[2]])
    with pytest.raises(ValidationError):
        est.predict([[0.5]])


def test_likelihood_ratio_exponents():
    est = LikelihoodRatioTest().fit([1.0, 0.0], [0.5, 0.5])
    expected = [-(n + 1) * math.log(2) / n for n in range(1, 6)]
    np.testing.assert_allclose(est.error_exponents(5), expected, atol=1e-12)


def test_predict_error_matches_product_min_error():
    p0, p1 = np.array([0.6, 0.3, 0.1]), np.array([0.2, 0.3, 0.5])
    est = LikelihoodRatioTest().fit(p0, p1)
    X = np.array(np.meshgrid(*[range(3)] * 3, indexing="ij")).reshape(3, -1).T
    lam = est.predict(X)
    w0 = np.prod(p0[X], axis=1)
    w1 = np.prod(p1[X], axis=1)
    err = 0.5 * (w0 @ lam + w1 @ (1 - lam))
    assert err == pytest.approx(classical.product_min_error(p0, p1, 3), abs=1e-15)


def test_quantum_chernoff_bound(qubit_pair):
    est = QuantumChernoffBound().fit(qubit_pair.rho0.matrix, qubit_pair.rho1.matrix)
    assert est.bound_ == pytest.approx(quantum.qcb(qubit_pair).bound)
    assert est.a_hat([0.5])[0] == pytest.approx((2 + math.sqrt(3)) / 4)
    assert est.ns_pair_.P.size == 4


def test_helstrom_estimator(qubit_pair):
    est = HelstromTest(n=1).fit(qubit_pair.rho0.matrix, qubit_pair.rho1.matrix)
    probs = est.predict_proba([qubit_pair.rho0.matrix, qubit_pair.rho1.matrix])
    np.testing.assert_allclose(probs.sum(axis=1), 1.0)
    err = 0.5 * (probs[0, 1] + probs[1, 0])
    assert err == pytest.approx(est.min_error_, abs=1e-14)
    assert est.score() == pytest.approx(1 - est.min_error_, abs=1e-14)
