"""Error functionals for n-copy quantum hypothesis testing with equal priors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import classical
from .classical import ChernoffResult
from .exceptions import ValidationError
from .linalg import (
    EPS_RANK,
    eig_hermitian,
    hermitize,
    powers_with_convention,
    support_projection,
    tensor_power,
    trace_norm,
)
from .nsmap import ns_distributions
from .states import StatePair
from .validation import check_positive_int

#: Below this gap between the single-copy outcome probabilities the measurement carries no information.
UNINFORMATIVE_TOL = 1e-15


@dataclass(frozen=True)
class QCBResult:
    """Quantum Chernoff bound ``inf_s log Tr[rho0**(1-s) rho1**s]``.

    Attributes:
        bound: the infimum (``-inf`` for orthogonal supports).
        minimizer, s_star: location of the infimum, as in :class:`ChernoffResult`.
        a_hat_min: ``exp(bound)``.
        limit0, limit1: one-sided limits ``Tr[rho0 supp rho1]`` and ``Tr[supp rho0 rho1]``.
        classical: the underlying classical result on the embedded pair.
    """

    bound: float
    minimizer: str
    s_star: Optional[float]
    a_hat_min: float
    limit0: float
    limit1: float
    classical: ChernoffResult


def n_copy_states(pair: StatePair, n: int) -> tuple[np.ndarray, np.ndarray]:
    n = check_positive_int(n)
    return tensor_power(pair.rho0.matrix, n), tensor_power(pair.rho1.matrix, n)


def check_test_operator(r, dim: int, eps_rank: float = EPS_RANK) -> np.ndarray:
    """Validate ``0 <= r <= 1`` on a ``dim``-dimensional space."""
    R = hermitize(r)
    if R.shape[0] != dim:
        raise ValidationError(f"test operator has dimension {R.shape[0]}, expected {dim}")
    w = np.linalg.eigvalsh(R)
    if w[0] < -eps_rank or w[-1] > 1.0 + eps_rank:
        raise ValidationError(
            f"test operator eigenvalues must lie in [0, 1], found [{w[0]:.3g}, {w[-1]:.3g}]"
        )
    return R


def bayes_error_quantum(pair: StatePair, n: int, r) -> float:
    """``(1/2) Tr[r rho0^n] + (1/2) Tr[(1 - r) rho1^n]`` for a test operator ``r``."""
    a, b = n_copy_states(pair, n)
    R = check_test_operator(r, a.shape[0], pair.eps_rank)
    type1 = np.real(np.trace(R @ a))
    type2 = 1.0 - np.real(np.trace(R @ b))
    return float(0.5 * (type1 + type2))


def helstrom_test(pair: StatePair, n: int = 1) -> np.ndarray:
    """Projection onto the positive eigenspace of ``rho1^n - rho0^n``.

    Eigenvalues within the rank tolerance of zero are left out, so ties
    favour H0.
    """
    a, b = n_copy_states(pair, n)
    return support_projection(b - a, pair.eps_rank)


def min_error_exact(pair: StatePair, n: int = 1) -> float:
    """``(1/2)(1 - (1/2)||rho1^n - rho0^n||_1)``, the smallest achievable n-copy error."""
    a, b = n_copy_states(pair, n)
    return 0.5 * (1.0 - 0.5 * trace_norm(b - a))


def a_hat(pair: StatePair, s: float) -> float:
    """``Tr[rho0**(1-s) rho1**s]`` via the eigenvalue/overlap double sum.

    Uses ``0**0 = 1``, so the value is 1 at both endpoints.
    """
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"s must lie in [0, 1], got {s}")
    left = powers_with_convention(pair.lambdas, 1.0 - s, 0.0)
    right = powers_with_convention(pair.gammas, s, 0.0)
    return float(left @ pair.overlaps() @ right)


def a_hat_trace(pair: StatePair, s):
    """``Tr[rho0**(1-s) rho1**s]`` from matrix fractional powers.

    Both states are re-diagonalized with LAPACK, independently of the cached
    spectra used by :func:`a_hat`. ``s`` may be a scalar or a sequence.
    """
    d0 = eig_hermitian(pair.rho0.matrix, method="lapack")
    d1 = eig_hermitian(pair.rho1.matrix, method="lapack")
    ss = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any((ss < 0) | (ss > 1)):
        raise ValidationError("s must lie in [0, 1]")
    out = np.empty(ss.size)
    for k, t in enumerate(ss):
        left = _apply(d0, powers_with_convention(d0.eigenvalues, 1.0 - t, pair.eps_rank))
        right = _apply(d1, powers_with_convention(d1.eigenvalues, t, pair.eps_rank))
        out[k] = np.real(np.trace(left @ right))
    return float(out[0]) if np.ndim(s) == 0 else out


def _apply(decomposition, mapped: np.ndarray) -> np.ndarray:
    V = decomposition.eigenvectors
    return (V * mapped) @ V.conj().T


def a_hat_limits(pair: StatePair) -> tuple[float, float]:
    """One-sided limits of ``s -> Tr[rho0**(1-s) rho1**s]`` at 0 and 1."""
    s1 = support_projection(pair.rho1.matrix, pair.eps_rank)
    s0 = support_projection(pair.rho0.matrix, pair.eps_rank)
    return (
        float(np.real(np.trace(pair.rho0.matrix @ s1))),
        float(np.real(np.trace(s0 @ pair.rho1.matrix))),
    )


def qcb(pair: StatePair) -> QCBResult:
    """Quantum Chernoff bound.

    On ``(0, 1)`` the quantum overlap equals the classical one of the
    embedded pair, so the classical case analysis applies unchanged.
    """
    ns = ns_distributions(pair)
    # the embedding sums to one only up to rounding in the overlaps
    res = classical.chernoff(ns.P / ns.P.sum(), ns.Q / ns.Q.sum())
    limit0, limit1 = a_hat_limits(pair)
    a_min = 0.0 if res.value == -math.inf else math.exp(res.value)
    return QCBResult(res.value, res.minimizer, res.s_star, a_min, limit0, limit1, res)


def single_copy_outcomes(pair: StatePair) -> tuple[float, float]:
    """Probabilities ``Tr[rho_i Pi]`` of the 'reject H0' outcome of the one-copy Helstrom test."""
    proj = helstrom_test(pair, 1)
    b0 = float(np.clip(np.real(np.trace(pair.rho0.matrix @ proj)), 0.0, 1.0))
    b1 = float(np.clip(np.real(np.trace(pair.rho1.matrix @ proj)), 0.0, 1.0))
    return b0, b1


def log_repeated_measurement_upper(pair: StatePair, n: int) -> float:
    b0, b1 = single_copy_outcomes(pair)
    if abs(b1 - b0) <= UNINFORMATIVE_TOL:
        return math.log(0.5)
    return classical.log_product_min_error(classical.bernoulli(b0), classical.bernoulli(b1), n)


def repeated_measurement_upper(pair: StatePair, n: int) -> float:
    """Error of measuring every copy with the one-copy Helstrom test, then applying the ML rule.

    This is a valid n-copy test, hence an upper bound on :func:`min_error_exact`.
    """
    return math.exp(log_repeated_measurement_upper(pair, n))
