"""scikit-learn style wrappers.

The functional API in :mod:`qchernoff.classical` and :mod:`qchernoff.quantum`
does the work; these classes package it as estimators with ``get_params``,
fitted attributes ending in ``_`` and ``check_is_fitted`` support.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from . import classical, nsmap, quantum
from .exceptions import ValidationError
from .states import StatePair
from .validation import check_pair, check_priors


class LikelihoodRatioTest(ClassifierMixin, BaseEstimator):
    """Bayes-optimal test between two distributions on ``{0, ..., m-1}``.

    ``fit`` takes the two hypotheses; ``predict`` takes rows of i.i.d.
    observations (symbol indices) and returns 1 where H1 is chosen. Ties and
    impossible rows go to H0.

    Parameters
    ----------
    priors : (float, float) or None
        Prior weights of H0 and H1, equal by default.

    Attributes
    ----------
    chernoff_ : ChernoffResult
    chernoff_value_ : float
        Optimal error exponent ``lim (1/n) log Delta_n``.
    min_error_ : float
        Single-observation Bayes error.
    classes_ : ndarray
    """

    def __init__(self, priors=None):
        self.priors = priors

    def fit(self, P0, P1):
        p0, p1 = check_pair(P0, P1)
        w0, w1 = check_priors(self.priors)
        self.p0_, self.p1_ = p0, p1
        self.chernoff_ = classical.chernoff(p0, p1)
        self.chernoff_value_ = self.chernoff_.value
        self.min_error_ = classical.min_error(p0, p1, (w0, w1))
        with np.errstate(divide="ignore"):
            self._log0 = np.log(p0)
            self._log1 = np.log(p1)
            self._log_w = (np.log(w0), np.log(w1))
        self.classes_ = np.array([0, 1])
        self.n_symbols_ = p0.size
        return self

    def _scores(self, X) -> tuple[np.ndarray, np.ndarray]:
        check_is_fitted(self)
        X = np.asarray(X)
        if X.ndim == 1:
            X = X[:, None]
        if not np.issubdtype(X.dtype, np.integer):
            raise ValidationError("observations must be integer symbol indices")
        if X.size and (X.min() < 0 or X.max() >= self.n_symbols_):
            raise ValidationError(f"symbols must lie in [0, {self.n_symbols_})")
        s0 = self._log_w[0] + self._log0[X].sum(axis=1)
        s1 = self._log_w[1] + self._log1[X].sum(axis=1)
        return s0, s1

    def predict(self, X) -> np.ndarray:
        s0, s1 = self._scores(X)
        return (s1 > s0).astype(int)

    def error_exponents(self, n_max: int) -> np.ndarray:
        """``(1/n) log Delta(P0**n, P1**n)`` for ``n = 1..n_max``."""
        check_is_fitted(self)
        return np.array(
            [
                classical.log_product_min_error(self.p0_, self.p1_, n, self.priors) / n
                for n in range(1, n_max + 1)
            ]
        )


class QuantumChernoffBound(BaseEstimator):
    """Quantum Chernoff bound of a pair of density matrices.

    Parameters
    ----------
    eps_rank : float or None
        Relative threshold below which eigenvalues count as zero.

    Attributes
    ----------
    bound_ : float
    s_star_ : float or None
    minimizer_ : str
    a_hat_min_ : float
    pair_ : StatePair
    ns_pair_ : NSPair
    """

    def __init__(self, eps_rank=None):
        self.eps_rank = eps_rank

    def fit(self, rho0, rho1):
        self.pair_ = StatePair(rho0, rho1, self.eps_rank)
        res = quantum.qcb(self.pair_)
        self.result_ = res
        self.bound_ = res.bound
        self.s_star_ = res.s_star
        self.minimizer_ = res.minimizer
        self.a_hat_min_ = res.a_hat_min
        self.ns_pair_ = nsmap.ns_distributions(self.pair_)
        return self

    def a_hat(self, s) -> np.ndarray:
        check_is_fitted(self)
        return np.array([quantum.a_hat(self.pair_, float(t)) for t in np.atleast_1d(s)])


class HelstromTest(BaseEstimator):
    """Optimal projective test between ``rho0^n`` and ``rho1^n``.

    ``predict_proba`` maps n-copy density matrices to the outcome
    probabilities ``(Tr[(1 - Pi) rho], Tr[Pi rho])``.
    """

    def __init__(self, n=1, eps_rank=None):
        self.n = n
        self.eps_rank = eps_rank

    def fit(self, rho0, rho1):
        self.pair_ = StatePair(rho0, rho1, self.eps_rank)
        self.projector_ = quantum.helstrom_test(self.pair_, self.n)
        self.min_error_ = quantum.min_error_exact(self.pair_, self.n)
        self.classes_ = np.array([0, 1])
        return self

    def predict_proba(self, states) -> np.ndarray:
        check_is_fitted(self)
        states = np.asarray(states, dtype=complex)
        if states.ndim == 2:
            states = states[None]
        p1 = np.real(np.einsum("ij,kji->k", self.projector_, states))
        p1 = np.clip(p1, 0.0, 1.0)
        return np.column_stack([1.0 - p1, p1])

    def score(self, rho0=None, rho1=None) -> float:
        """Success probability ``1 - Err`` of the fitted test on the fitted (or given) pair."""
        check_is_fitted(self)
        pair = self.pair_ if rho0 is None else StatePair(rho0, rho1, self.eps_rank)
        return 1.0 - quantum.bayes_error_quantum(pair, self.n, self.projector_)
