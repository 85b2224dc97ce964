"""Classical embedding of a pair of quantum states.

Given spectral decompositions ``rho0 = sum_i l_i |x_i><x_i|`` and
``rho1 = sum_j g_j |y_j><y_j|``, the distributions on ``d*d`` points

    P[i*d + j] = l_i |<x_i|y_j>|**2,    Q[i*d + j] = g_j |<x_i|y_j>|**2

reproduce ``Tr[rho0**(1-s) rho1**s]`` as their classical overlap
``sum P**(1-s) Q**s`` and bound every projective test from below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical
from .linalg import powers_with_convention
from .states import StatePair

NS_ATOL = 1e-10


@dataclass(frozen=True)
class NSPair:
    """Embedded distributions, flattened row-major over ``(i, j)``."""

    P: np.ndarray
    Q: np.ndarray
    dim: int

    def flat_index(self, i: int, j: int) -> int:
        return i * self.dim + j

    def pair_index(self, k: int) -> tuple[int, int]:
        return divmod(k, self.dim)


def ns_distributions(pair: StatePair) -> NSPair:
    overlaps = pair.overlaps()
    P = (pair.lambdas[:, None] * overlaps).ravel()
    Q = (pair.gammas[None, :] * overlaps).ravel()
    return NSPair(P, Q, pair.dim)


def classical_overlap(P: np.ndarray, Q: np.ndarray, s: float) -> float:
    """``sum P**(1-s) Q**s`` with ``0**0 = 1``."""
    return float(np.sum(powers_with_convention(P, 1.0 - s, 0.0) * powers_with_convention(Q, s, 0.0)))


def error_floor(pair: StatePair, n: int = 1) -> float:
    """Lower bound ``(1/2) Delta(P**n, Q**n)`` on the error of any n-copy projective test.

    For ``n = 1`` this is ``(1/4) sum_ij min(p_ij, q_ij)``; larger ``n`` go
    through exact type-class enumeration on the ``d*d``-point alphabet.
    """
    ns = ns_distributions(pair)
    if n == 1:
        return 0.25 * float(np.sum(np.minimum(ns.P, ns.Q)))
    return 0.5 * classical.product_min_error(ns.P, ns.Q, n, atol=NS_ATOL)


def log_error_floor(pair: StatePair, n: int) -> float:
    ns = ns_distributions(pair)
    return np.log(0.5) + classical.log_product_min_error(ns.P, ns.Q, n, atol=NS_ATOL)


def ns_chernoff_identity_check(pair: StatePair, s_grid=None) -> float:
    """Largest gap between ``sum P**(1-s) Q**s`` and ``Tr[rho0**(1-s) rho1**s]`` on ``s_grid``.

    The trace side is computed from matrix fractional powers, independently
    of the embedding.
    """
    from .quantum import a_hat_trace

    if s_grid is None:
        s_grid = np.linspace(0.0, 1.0, 103)[1:-1]
    ns = ns_distributions(pair)
    s_grid = np.asarray(s_grid, dtype=float)
    direct = a_hat_trace(pair, s_grid)
    embedded = np.array([classical_overlap(ns.P, ns.Q, s) for s in s_grid])
    return float(np.max(np.abs(embedded - direct)))
