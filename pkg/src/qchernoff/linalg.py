"""Dense Hermitian spectral calculus.

Everything here works on plain ``numpy`` arrays. Hermitian inputs are
symmetrized on entry, so callers may pass matrices carrying asymmetric
rounding noise from products.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from .exceptions import ConvergenceError, SizeCapError, ValidationError

#: Relative threshold (times the largest |eigenvalue|) below which an
#: eigenvalue counts as zero for supports and ``0**s``.
EPS_RANK = 1e-10
#: Reconstruction / unitarity tolerance used by the tests.
EPS_EIG = 1e-10
DEFAULT_SIZE_CAP = 4096
#: Matrices up to this dimension go through the Jacobi solver under ``method="auto"``.
JACOBI_MAX_DIM = 16

_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


class SpectralDecomposition(NamedTuple):
    """Eigenvalues sorted descending; column ``k`` of ``eigenvectors`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def size_cap() -> int:
    """Row-dimension cap for tensor powers; ``QCHERNOFF_SIZE_CAP`` overrides it."""
    raw = os.environ.get("QCHERNOFF_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"QCHERNOFF_SIZE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValidationError(f"QCHERNOFF_SIZE_CAP must be positive, got {cap}")
    return cap


def as_matrix(M) -> np.ndarray:
    """Return ``M`` as a finite 2-D complex array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValidationError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix has non-finite entries")
    return A


def hermitize(M) -> np.ndarray:
    """Return ``(M + M^dagger) / 2`` after checking that ``M`` is square and finite."""
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValidationError(f"Hermitian matrix must be square, got shape {A.shape}")
    return (A + A.conj().T) / 2


def _zero_mask(w: np.ndarray, eps_rank: float | None) -> np.ndarray:
    eps = EPS_RANK if eps_rank is None else eps_rank
    scale = np.max(np.abs(w)) if w.size else 0.0
    return np.abs(w) <= eps * scale


def _fix_phases(V: np.ndarray) -> np.ndarray:
    # make the first non-negligible component of each column real positive
    V = V.copy()
    for k in range(V.shape[1]):
        col = V[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            V[:, k] = col * (abs(z) / z)
    return V


def jacobi_eigh(
    H: np.ndarray, tol: float = _JACOBI_TOL, max_sweeps: int = _JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Sweeps pivot pairs ``(p, q)`` in row order and stops once the Frobenius
    norm of the off-diagonal part falls to ``tol * ||H||_F``.

    Returns:
        Unsorted eigenvalues and the unitary whose columns are the eigenvectors.

    Raises:
        ConvergenceError: if ``max_sweeps`` sweeps do not reach ``tol``.
    """
    A = np.array(H, dtype=complex)
    d = A.shape[0]
    V = np.eye(d, dtype=complex)
    norm = np.linalg.norm(A)
    if d == 1 or norm == 0.0:
        return A.diagonal().real.copy(), V
    threshold = tol * norm

    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(A.diagonal()))
        if off <= threshold:
            return A.diagonal().real.copy(), V
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # 2x2 unitary block acting on columns p, q
                g_pp, g_pq = c, s
                g_qp, g_qq = -s * np.conj(phase), c * np.conj(phase)
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = cp * g_pp + cq * g_qp
                A[:, q] = cp * g_pq + cq * g_qq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = np.conj(g_pp) * rp + np.conj(g_qp) * rq
                A[q, :] = np.conj(g_pq) * rp + np.conj(g_qq) * rq
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = vp * g_pp + vq * g_qp
                V[:, q] = vp * g_pq + vq * g_qq
    off = np.linalg.norm(A - np.diag(A.diagonal()))
    if off <= threshold:
        return A.diagonal().real.copy(), V
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {off:.3e}, target {threshold:.3e})",
        residual=float(off),
    )


def eig_hermitian(H, method: str = "auto") -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Args:
        H: square matrix; it is symmetrized before diagonalization.
        method: ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
            ``JACOBI_MAX_DIM``, LAPACK ``heevd`` beyond).

    Returns:
        Eigenvalues in descending order with phase-normalized eigenvectors
        (first non-negligible component of every column real positive).
    """
    A = hermitize(H)
    if method == "auto":
        method = "jacobi" if A.shape[0] <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        w, V = jacobi_eigh(A)
    elif method == "lapack":
        w, V = np.linalg.eigh(A)
    else:
        raise ValidationError(f"unknown eigensolver method {method!r}")
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order], _fix_phases(V[:, order]))


def eigvals_hermitian(H) -> np.ndarray:
    """Eigenvalues only, descending. Real input stays on the cheaper real path."""
    A = hermitize(H)
    if not np.any(A.imag):
        A = A.real
    return np.linalg.eigvalsh(A)[::-1]


def kron(A, B, cap: int | None = None) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``A[i, j] * B``."""
    A = as_matrix(A)
    B = as_matrix(B)
    cap = size_cap() if cap is None else cap
    rows = A.shape[0] * B.shape[0]
    cols = A.shape[1] * B.shape[1]
    if max(rows, cols) > cap:
        raise SizeCapError(
            f"kron result {rows}x{cols} exceeds the size cap of {cap}", max(rows, cols), cap
        )
    return np.kron(A, B)


def tensor_power(A, n: int, cap: int | None = None) -> np.ndarray:
    """n-fold tensor power ``A (x) A (x) ... (x) A``."""
    A = as_matrix(A)
    if int(n) != n or n < 1:
        raise ValidationError(f"tensor power needs an integer n >= 1, got {n}")
    n = int(n)
    cap = size_cap() if cap is None else cap
    dim = max(A.shape)
    if dim**n > cap:
        raise SizeCapError(
            f"tensor power dimension {dim}**{n} = {dim**n} exceeds the size cap of {cap}",
            dim**n,
            cap,
        )
    out = A
    for _ in range(n - 1):
        out = np.kron(out, A)
    return out


def positive_part(H, eps_rank: float | None = None) -> np.ndarray:
    """``sum_{lambda > 0} lambda E_lambda``; eigenvalues within ``eps_rank`` of zero are dropped."""
    w, V = eig_hermitian(H)
    keep = (w > 0) & ~_zero_mask(w, eps_rank)
    Vk = V[:, keep]
    return hermitize((Vk * w[keep]) @ Vk.conj().T)


def support_projection(H, eps_rank: float | None = None) -> np.ndarray:
    """Projection onto the span of eigenvectors with strictly positive eigenvalue."""
    w, V = eig_hermitian(H)
    keep = (w > 0) & ~_zero_mask(w, eps_rank)
    Vk = V[:, keep]
    return hermitize(Vk @ Vk.conj().T)


def powers_with_convention(w: np.ndarray, s: float, eps_rank: float | None = None) -> np.ndarray:
    """Map eigenvalues ``w -> w**s`` with ``0**0 = 1`` and ``0**s = 0`` for ``s > 0``.

    Eigenvalues within the rank tolerance of zero are treated as exact zeros.
    """
    w = np.asarray(w, dtype=float)
    zero = _zero_mask(w, eps_rank)
    if s == 0:
        return np.ones_like(w)
    out = np.zeros_like(w)
    pos = ~zero
    out[pos] = np.power(np.clip(w[pos], 0.0, None), s)
    return out


def frac_power(P, s: float, eps_rank: float | None = None) -> np.ndarray:
    """Fractional power ``P**s`` of a PSD matrix for ``s`` in ``[0, 1]``.

    ``P**0`` is the identity (including on the kernel) and ``P**1`` is ``P``.

    Raises:
        ValidationError: if ``s`` is outside ``[0, 1]`` or ``P`` has an
            eigenvalue below ``-eps_rank`` (relative).
    """
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"exponent s must lie in [0, 1], got {s}")
    w, V = eig_hermitian(P)
    eps = EPS_RANK if eps_rank is None else eps_rank
    scale = np.max(np.abs(w))
    if w.size and w[-1] < -eps * scale:
        raise ValidationError(f"matrix is not PSD: smallest eigenvalue {w[-1]:.3e}")
    mapped = powers_with_convention(w, s, eps_rank)
    return hermitize((V * mapped) @ V.conj().T)


def trace_norm(H) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvals_hermitian(H))))
