"""Density matrices, validated state pairs and random state generation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ValidationError
from .linalg import EPS_RANK, SpectralDecomposition, _zero_mask, eig_hermitian, hermitize

#: Absolute Frobenius threshold on the commutator.
EPS_COMM = 1e-10
#: Eigenvalues in ``[-NEG_TOL, 0)`` are clipped to zero, anything lower is rejected.
NEG_TOL = 1e-8
#: Accepted deviation of the trace from one before renormalization.
TRACE_TOL = 1e-6


@dataclass(frozen=True)
class DensityMatrix:
    """A PSD, unit-trace Hermitian matrix.

    Build instances through :func:`validate_density`, which does the checks.
    """

    matrix: np.ndarray
    spectrum: SpectralDecomposition = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.spectrum.eigenvalues))

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def validate_density(M, eps_rank: float | None = None) -> DensityMatrix:
    """Check that ``M`` is a density matrix and return a cleaned copy.

    Eigenvalues in ``[-1e-8, 0)`` and those within the relative rank
    tolerance of zero are set to exactly zero, and a trace within ``1e-6``
    of one is renormalized. The stored spectrum carries these cleaned
    eigenvalues, so downstream code sees exact zeros on the kernel.

    Raises:
        ValidationError: on a negative eigenvalue below ``-1e-8`` or a trace
            off by more than ``1e-6``.
    """
    if isinstance(M, DensityMatrix):
        return M
    H = hermitize(M)
    decomposition = eig_hermitian(H)
    w = decomposition.eigenvalues.copy()
    if w[-1] < -NEG_TOL:
        raise ValidationError(f"not a density matrix: negative eigenvalue {w[-1]:.6g}")
    trace = float(np.sum(w))
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValidationError(f"not a density matrix: trace {trace:.12g} differs from 1")
    w[w < 0] = 0.0
    w[_zero_mask(w, eps_rank)] = 0.0
    w = np.clip(w / np.sum(w), 0.0, 1.0)
    V = decomposition.eigenvectors
    matrix = hermitize((V * w) @ V.conj().T)
    return DensityMatrix(matrix, SpectralDecomposition(w, V))


def as_density(rho, eps_rank: float | None = None) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else validate_density(rho, eps_rank)


def pure_state(psi) -> DensityMatrix:
    """Projector onto the normalized vector ``psi``."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValidationError("cannot build a pure state from the zero vector")
    v = v / norm
    return validate_density(np.outer(v, v.conj()))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormalize a standard complex Gaussian matrix (QR with phase fix)."""
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    diag = np.diagonal(R)
    return Q * (diag / np.abs(diag))


def random_density(d: int, rank: int | None = None, seed: int = 0) -> DensityMatrix:
    """Seeded random state of the given rank.

    Eigenvectors come from a Haar-distributed unitary, the nonzero eigenvalues
    from a flat Dirichlet sample on ``rank`` coordinates.
    """
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValidationError(f"rank must satisfy 1 <= rank <= d, got rank={rank}, d={d}")
    rng = np.random.default_rng(seed)
    U = random_unitary(d, rng)
    w = np.zeros(d)
    w[:rank] = rng.dirichlet(np.ones(rank))
    return validate_density((U * w) @ U.conj().T)


class StatePair:
    """Two density matrices of equal dimension plus their spectral data.

    Attributes:
        rho0, rho1: the hypotheses.
        lambdas, x: eigenvalues and eigenvector columns of ``rho0``.
        gammas, y: eigenvalues and eigenvector columns of ``rho1``.
    """

    def __init__(self, rho0, rho1, eps_rank: float | None = None):
        self.rho0 = as_density(rho0, eps_rank)
        self.rho1 = as_density(rho1, eps_rank)
        if self.rho0.dim != self.rho1.dim:
            raise ValidationError(
                f"state dimensions differ: {self.rho0.dim} vs {self.rho1.dim}"
            )
        self.eps_rank = EPS_RANK if eps_rank is None else eps_rank
        self.lambdas, self.x = self.rho0.spectrum
        self.gammas, self.y = self.rho1.spectrum

    @property
    def dim(self) -> int:
        return self.rho0.dim

    def swapped(self) -> StatePair:
        return StatePair(self.rho1, self.rho0, self.eps_rank)

    def overlaps(self) -> np.ndarray:
        """Matrix of ``|<x_i|y_j>|**2``; rows index ``rho0`` eigenvectors.

        Amplitudes below ``eps_rank`` are rounding noise from orthogonal
        eigenvectors and are set to zero, so that support relations between
        the two states survive the embedding.
        """
        amp = np.abs(self.x.conj().T @ self.y)
        amp[amp < self.eps_rank] = 0.0
        return amp**2

    def __repr__(self) -> str:
        return f"StatePair(dim={self.dim}, ranks=({self.rho0.rank}, {self.rho1.rank}))"


def commutes(pair: StatePair, eps_comm: float = EPS_COMM) -> bool:
    """Whether ``||rho0 rho1 - rho1 rho0||_F <= eps_comm``."""
    a = pair.rho0.matrix
    b = pair.rho1.matrix
    return bool(np.linalg.norm(a @ b - b @ a) <= eps_comm)


def default_qubit_pair() -> StatePair:
    """``diag(3/4, 1/4)`` against ``[[1/2, 1/4], [1/4, 1/2]]``."""
    return StatePair(np.diag([0.75, 0.25]), np.array([[0.5, 0.25], [0.25, 0.5]]))
