"""Binary hypothesis testing on a finite alphabet.

Covers single-shot Bayes errors, the Hellinger arc ``p_s ~ p0**(1-s) p1**s``
and its log-normalizer ``H``, the Chernoff distance for distributions with
arbitrary (possibly different) supports, and exact n-fold error
probabilities by type-class enumeration.

Supports are taken literally: an entry is outside the support iff it is
exactly ``0.0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, logsumexp

from .exceptions import EmptyArcError, PreconditionError, SizeCapError
from .validation import (
    DIST_ATOL,
    check_distribution,
    check_open_unit,
    check_pair,
    check_positive_int,
    check_priors,
    check_test_vector,
)

#: Endpoint probe offset for the one-sided slopes of ``H``.
EPS_END = 1e-6
#: Slopes with absolute value below this count as zero.
SLOPE_TOL = 1e-9
#: ``H''(1/2)`` at or below this means ``log(p1/p0)`` is constant on the common support.
FLAT_TOL = 1e-12
GOLDEN_TOL = 1e-10
TYPE_CLASS_CAP = 20_000_000

Minimizer = Literal["interior", "limit-at-0", "limit-at-1", "minus-infinity", "flat"]
CaseTag = Literal["a", "b", "c", "d", "disjoint"]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SupportPartition:
    """Index sets: common support ``B`` and the exclusive parts ``S0``, ``S1``."""

    B: np.ndarray
    S0: np.ndarray
    S1: np.ndarray


@dataclass(frozen=True)
class ArcPoint:
    s: float
    A: float
    density: np.ndarray


@dataclass(frozen=True)
class ChernoffResult:
    """Outcome of :func:`chernoff`.

    Attributes:
        value: ``inf_s log A(s)``; ``-inf`` when the supports are disjoint.
        minimizer: where the infimum sits.
        sigma: interior critical point (case ``a`` only).
        case: which of the endpoint-slope cases applied.
        mass0, mass1: ``P0(B)`` and ``P1(B)``.
        slope0, slope1: ``H'`` at the endpoint probes (``nan`` if not evaluated).
    """

    value: float
    minimizer: Minimizer
    sigma: Optional[float]
    case: CaseTag
    mass0: float = 0.0
    mass1: float = 0.0
    slope0: float = math.nan
    slope1: float = math.nan

    @property
    def s_star(self) -> Optional[float]:
        if self.minimizer == "interior":
            return self.sigma
        if self.minimizer == "limit-at-0":
            return 0.0
        if self.minimizer == "limit-at-1":
            return 1.0
        return None


def support_partition(p0, p1) -> SupportPartition:
    p0, p1 = check_pair(p0, p1)
    d0 = p0 > 0
    d1 = p1 > 0
    return SupportPartition(
        B=np.flatnonzero(d0 & d1), S0=np.flatnonzero(d0 & ~d1), S1=np.flatnonzero(d1 & ~d0)
    )


def bayes_error(p0, p1, lam, priors=None) -> float:
    """``w0 * E_P0[lam] + w1 * E_P1[1 - lam]`` for a randomized test ``lam``."""
    p0, p1 = check_pair(p0, p1)
    lam = check_test_vector(lam, p0.size)
    w0, w1 = check_priors(priors)
    return float(w0 * np.dot(p0, lam) + w1 * np.dot(p1, 1.0 - lam))


def ml_test(p0, p1) -> np.ndarray:
    """Indicator of ``p1 > p0``; ties go to H0."""
    p0, p1 = check_pair(p0, p1)
    return (p1 > p0).astype(float)


def min_error(p0, p1, priors=None) -> float:
    """Minimal Bayes error ``sum_x min(w0 p0(x), w1 p1(x))``."""
    p0, p1 = check_pair(p0, p1)
    w0, w1 = check_priors(priors)
    return float(np.sum(np.minimum(w0 * p0, w1 * p1)))


class _Arc:
    """Log-space view of the Hellinger arc restricted to the common support."""

    def __init__(self, p0: np.ndarray, p1: np.ndarray):
        self.size = p0.size
        self.B = np.flatnonzero((p0 > 0) & (p1 > 0))
        self.mass0 = float(np.sum(p0[self.B]))
        self.mass1 = float(np.sum(p1[self.B]))
        self.log_p0 = np.log(p0[self.B])
        self.llr = np.log(p1[self.B]) - self.log_p0

    @property
    def empty(self) -> bool:
        return self.B.size == 0

    def require(self) -> None:
        if self.empty:
            raise EmptyArcError("P0 and P1 have disjoint supports; the Hellinger arc is empty")

    def log_weights(self, s: float) -> np.ndarray:
        return self.log_p0 + s * self.llr

    def H(self, s: float) -> float:
        return float(logsumexp(self.log_weights(s)))

    def moments(self, s: float) -> tuple[float, float, float]:
        """``H``, ``H'`` and ``H''`` at ``s``."""
        lw = self.log_weights(s)
        h = float(logsumexp(lw))
        w = np.exp(lw - h)
        mean = float(np.dot(w, self.llr))
        var = float(np.dot(w, (self.llr - mean) ** 2))
        return h, mean, var

    def dH(self, s: float) -> float:
        return self.moments(s)[1]

    def density(self, s: float) -> np.ndarray:
        lw = self.log_weights(s)
        out = np.zeros(self.size)
        out[self.B] = np.exp(lw - logsumexp(lw))
        return out


def _arc(p0, p1) -> _Arc:
    return _Arc(*check_pair(p0, p1))


def arc_A(p0, p1, s: float) -> float:
    """Normalizer ``A(s) = sum_B p0**(1-s) p1**s`` for ``s`` in ``(0, 1)``; zero when ``B`` is empty."""
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    if arc.empty:
        return 0.0
    return math.exp(arc.H(s))


def arc_point(p0, p1, s: float) -> ArcPoint:
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    arc.require()
    return ArcPoint(s=s, A=math.exp(arc.H(s)), density=arc.density(s))


def H(p0, p1, s: float) -> float:
    """``log A(s)``."""
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    arc.require()
    return arc.H(s)


def H_prime(p0, p1, s: float) -> float:
    """Mean of ``log(p1/p0)`` under ``p_s``."""
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    arc.require()
    return arc.moments(s)[1]


def H_second(p0, p1, s: float) -> float:
    """Variance of ``log(p1/p0)`` under ``p_s``."""
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    arc.require()
    return arc.moments(s)[2]


def gammas(p0, p1, s: float) -> tuple[float, float]:
    """``(H - s H', H + (1 - s) H')`` at ``s``."""
    s = check_open_unit(s)
    arc = _arc(p0, p1)
    arc.require()
    h, dh, _ = arc.moments(s)
    return h - s * dh, h + (1.0 - s) * dh


def golden_section(f, a: float, b: float, tol: float = GOLDEN_TOL) -> float:
    """Minimizer of a unimodal ``f`` on ``[a, b]`` to bracket width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _polish_root(arc: _Arc, s: float, lo: float, hi: float) -> float:
    # a few Newton steps on H' = 0, accepted only while |H'| shrinks
    _, g, h2 = arc.moments(s)
    for _ in range(5):
        if h2 <= 0 or g == 0:
            break
        t = s - g / h2
        if not lo < t < hi:
            break
        _, gt, h2t = arc.moments(t)
        if abs(gt) >= abs(g):
            break
        s, g, h2 = t, gt, h2t
    return s


def chernoff(p0, p1) -> ChernoffResult:
    """Chernoff distance ``inf_{0<=s<=1} log sum p0**(1-s) p1**s``.

    On ``(0, 1)`` the function ``H = log A`` is convex, with one-sided limits
    ``log P0(B)`` at 0 and ``log P1(B)`` at 1 (``B`` the common support),
    while ``H(0) = H(1) = 0``. The infimum is located by the signs of the
    slopes near the two ends:

    * ``a``: falling then rising, interior minimum found by golden section;
    * ``b``: non-increasing, infimum is the limit at 1;
    * ``c``: non-decreasing, infimum is the limit at 0;
    * ``d``: flat, ``H`` equals ``log P0(B) = log P1(B)`` throughout.

    A linear arc (constant likelihood ratio on ``B``) is detected from a
    vanishing second derivative and classified from its exact slope.
    """
    arc = _arc(p0, p1)
    if arc.empty:
        return ChernoffResult(-math.inf, "minus-infinity", None, "disjoint")
    h0 = math.log(arc.mass0)
    h1 = math.log(arc.mass1)
    masses = dict(mass0=arc.mass0, mass1=arc.mass1)

    if arc.moments(0.5)[2] <= FLAT_TOL:
        slope = h1 - h0
        fields = dict(masses, slope0=slope, slope1=slope)
        if slope < -SLOPE_TOL:
            return ChernoffResult(h1, "limit-at-1", None, "b", **fields)
        if slope > SLOPE_TOL:
            return ChernoffResult(h0, "limit-at-0", None, "c", **fields)
        return ChernoffResult(min(h0, h1), "flat", None, "d", **fields)

    lo, hi = EPS_END, 1.0 - EPS_END
    slope0 = arc.dH(lo)
    slope1 = arc.dH(hi)
    fields = dict(masses, slope0=slope0, slope1=slope1)
    falling = slope0 < -SLOPE_TOL
    rising = slope1 > SLOPE_TOL
    if falling and rising:
        sigma = golden_section(arc.H, lo, hi)
        sigma = _polish_root(arc, sigma, lo, hi)
        return ChernoffResult(arc.H(sigma), "interior", sigma, "a", **fields)
    if falling:
        return ChernoffResult(h1, "limit-at-1", None, "b", **fields)
    if rising:
        return ChernoffResult(h0, "limit-at-0", None, "c", **fields)
    return ChernoffResult(min(h0, h1), "flat", None, "d", **fields)


def kl(p, q) -> float:
    """Relative entropy ``sum_{p>0} p log(p/q)``; ``+inf`` unless ``supp p`` lies in ``supp q``."""
    p, q = check_pair(p, q)
    on = p > 0
    if np.any(q[on] == 0):
        return math.inf
    return float(np.sum(p[on] * (np.log(p[on]) - np.log(q[on]))))


def _conditional(p: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    out[B] = p[B] / np.sum(p[B])
    return out


def _kl_targets(q0: np.ndarray, q1: np.ndarray, log_b0: float, log_b1: float,
                ss: np.ndarray) -> np.ndarray:
    # Q_s is tilted from the conditionals Q0, Q1 directly, not from the arc of P0, P1
    on = q0 > 0
    l0 = np.log(q0[on])
    l1 = np.log(q1[on])
    ss = np.asarray(ss, dtype=float)[:, None]
    lw = (1.0 - ss) * l0 + ss * l1
    log_qs = lw - logsumexp(lw, axis=1, keepdims=True)
    qs = np.exp(log_qs)
    k0 = np.sum(qs * (log_qs - l0), axis=1)
    k1 = np.sum(qs * (log_qs - l1), axis=1)
    s = ss[:, 0]
    return -(1.0 - s) * k0 - s * k1 + (1.0 - s) * log_b0 + s * log_b1


def chernoff_kl_form(p0, p1, grid: int = 1001) -> float:
    """Chernoff distance through its relative-entropy representation.

    Minimizes ``-(1-s) K(Q_s||Q0) - s K(Q_s||Q1) + (1-s) log b0 + s log b1``
    over ``[0, 1]``, where ``Qi = Pi(.|B)``, ``bi = Pi(B)`` and ``Q_s`` is the
    normalized geometric mixture of ``Q0`` and ``Q1``. The target is scanned
    on ``grid`` points and then refined by bounded Brent search around the
    best grid point.

    Raises:
        EmptyArcError: when ``P0`` and ``P1`` have disjoint supports.
    """
    p0, p1 = check_pair(p0, p1)
    part = support_partition(p0, p1)
    if part.B.size == 0:
        raise EmptyArcError("P0 and P1 have disjoint supports; the KL form is undefined")
    q0 = _conditional(p0, part.B)
    q1 = _conditional(p1, part.B)
    log_b0 = math.log(float(np.sum(p0[part.B])))
    log_b1 = math.log(float(np.sum(p1[part.B])))

    ss = np.linspace(0.0, 1.0, grid)
    values = _kl_targets(q0, q1, log_b0, log_b1, ss)
    k = int(np.argmin(values))
    best = float(values[k])
    lo = ss[max(k - 1, 0)]
    hi = ss[min(k + 1, grid - 1)]
    res = minimize_scalar(
        lambda s: float(_kl_targets(q0, q1, log_b0, log_b1, np.array([s]))[0]),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return min(best, float(res.fun))


@dataclass(frozen=True)
class SigmaCharacterization:
    sigma: float
    value: float
    kl0: float
    kl1: float
    residual0: float
    residual1: float


def sigma_characterization(p0, p1) -> SigmaCharacterization:
    """Check the interior-minimum identities at the critical point ``sigma``.

    With ``Q_sigma`` the arc conditional at the critical point, the Chernoff
    value should equal both ``-K(Q_sigma||Q0) + log P0(B)`` and
    ``-K(Q_sigma||Q1) + log P1(B)``. Returns the two absolute residuals.

    Raises:
        PreconditionError: if the minimum is not interior (case ``a``).
    """
    p0, p1 = check_pair(p0, p1)
    res = chernoff(p0, p1)
    if res.case != "a":
        raise PreconditionError(
            f"sigma characterization needs an interior minimum (case a), got case {res.case}"
        )
    arc = _Arc(p0, p1)
    qs = arc.density(res.sigma)
    q0 = _conditional(p0, arc.B)
    q1 = _conditional(p1, arc.B)
    k0 = kl(qs, q0)
    k1 = kl(qs, q1)
    r0 = abs(res.value - (-k0 + math.log(arc.mass0)))
    r1 = abs(res.value - (-k1 + math.log(arc.mass1)))
    return SigmaCharacterization(res.sigma, res.value, k0, k1, r0, r1)


def n_type_classes(n: int, m: int) -> int:
    """Number of count vectors of length ``m`` summing to ``n``."""
    return math.comb(n + m - 1, m - 1)


def iter_type_classes(n: int, m: int, chunk: int = 65536):
    """Yield arrays of count vectors (one per row) covering all type classes, in lexicographic bar order."""
    bars_iter = itertools.combinations(range(n + m - 1), m - 1)
    while True:
        block = list(itertools.islice(bars_iter, chunk))
        if not block:
            return
        bars = np.array(block, dtype=np.int64).reshape(len(block), m - 1)
        edges = np.hstack(
            [
                np.full((len(block), 1), -1, dtype=np.int64),
                bars,
                np.full((len(block), 1), n + m - 1, dtype=np.int64),
            ]
        )
        yield np.diff(edges, axis=1) - 1


def _log_prod(counts: np.ndarray, p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        logp = np.where(p > 0, np.log(np.where(p > 0, p, 1.0)), 0.0)
    out = counts @ logp
    dead = counts @ (p == 0).astype(np.int64) > 0
    out[dead] = -np.inf
    return out


def log_product_min_error(p0, p1, n: int, priors=None, cap: int = TYPE_CLASS_CAP,
                          atol: float = DIST_ATOL) -> float:
    """Natural log of :func:`product_min_error`; ``-inf`` when the error is zero."""
    p0, p1 = check_pair(p0, p1, atol)
    n = check_positive_int(n)
    w0, w1 = check_priors(priors)
    m = p0.size
    count = n_type_classes(n, m)
    if count > cap:
        raise SizeCapError(
            f"{count} type classes for n={n}, m={m} exceed the cap of {cap}", count, cap
        )
    with np.errstate(divide="ignore"):
        lw0, lw1 = np.log(w0), np.log(w1)
    partial = []
    for counts in iter_type_classes(n, m):
        log_mult = gammaln(n + 1) - np.sum(gammaln(counts + 1), axis=1)
        term = log_mult + np.minimum(lw0 + _log_prod(counts, p0), lw1 + _log_prod(counts, p1))
        partial.append(logsumexp(term))
    return float(logsumexp(partial))


def product_min_error(p0, p1, n: int, priors=None, cap: int = TYPE_CLASS_CAP,
                      atol: float = DIST_ATOL) -> float:
    """Exact minimal Bayes error between the n-fold products ``P0**n`` and ``P1**n``.

    Sums ``multinomial(n, k) * min(w0 prod p0**k, w1 prod p1**k)`` over all
    count vectors ``k``, each term evaluated in log space.
    """
    return math.exp(log_product_min_error(p0, p1, n, priors, cap, atol))


def bernoulli(p: float) -> np.ndarray:
    """``(1 - p, p)``: outcome 1 means 'reject H0'."""
    return np.array([1.0 - p, p])


__all__ = [
    "ArcPoint",
    "ChernoffResult",
    "SigmaCharacterization",
    "SupportPartition",
    "H",
    "H_prime",
    "H_second",
    "arc_A",
    "arc_point",
    "bayes_error",
    "bernoulli",
    "check_distribution",
    "chernoff",
    "chernoff_kl_form",
    "gammas",
    "golden_section",
    "kl",
    "log_product_min_error",
    "min_error",
    "ml_test",
    "n_type_classes",
    "product_min_error",
    "sigma_characterization",
    "support_partition",
]
