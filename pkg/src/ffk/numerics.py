"""Dense linear-algebra substrate with explicit tolerance contracts.

Everything above this module (vector frames, weighted subspace families,
duality certificates) is phrased in terms of a handful of primitives:
rank-revealing orthonormalization, Hermitian eigenvalue ranges, kernel
dimensions, positive definite solves, and Haar sampling on the unit
sphere.  All cutoffs are relative to the largest singular or eigenvalue
so the results are invariant under rescaling of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    AllColumnsNumericallyZero,
    DimensionMismatch,
    NonFiniteEntries,
    NotPositiveDefinite,
    NotSquare,
)

REAL = "real"
COMPLEX = "complex"


@dataclass(frozen=True)
class Tolerance:
    """Numerical cutoffs used throughout the package.

    rank_rel   relative singular-value cutoff for rank decisions
    eig_rel    relative slack when comparing eigenvalues and bounds
    recon_abs  absolute residual allowed in reconstruction identities
    """

    rank_rel: float = 1e-10
    eig_rel: float = 1e-9
    recon_abs: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel", "eig_rel", "recon_abs"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value!r}")


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class FrameBounds:
    """Two-sided energy bounds (lower, upper) of a frame inequality.

    ``lower`` is ``None`` for Bessel-only families, which admit an upper
    bound but no positive lower one.  When present the bounds satisfy
    ``0 < lower <= upper < inf``.
    """

    lower: float | None
    upper: float

    def __post_init__(self):
        if not np.isfinite(self.upper) or self.upper <= 0.0:
            raise ValueError(f"upper bound must be positive and finite, got {self.upper!r}")
        if self.lower is not None:
            if not np.isfinite(self.lower) or self.lower <= 0.0:
                raise ValueError(f"lower bound must be positive and finite, got {self.lower!r}")
            if self.lower > self.upper:
                raise ValueError(f"bounds out of order: {self.lower!r} > {self.upper!r}")

    @property
    def ratio(self) -> float:
        """Condition ratio upper/lower; requires a positive lower bound."""
        if self.lower is None:
            raise ValueError("Bessel-only bounds have no condition ratio")
        return self.upper / self.lower


def field_of(array: np.ndarray) -> str:
    """Scalar field of an array: ``"complex"`` or ``"real"``."""
    return COMPLEX if np.iscomplexobj(array) else REAL


def _require_finite(M: np.ndarray, what: str = "matrix") -> np.ndarray:
    M = np.asarray(M)
    if M.size and not np.all(np.isfinite(M)):
        raise NonFiniteEntries(f"{what} contains NaN or infinite entries")
    return M


def _require_square(M: np.ndarray, what: str = "matrix") -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"{what} must be square, got shape {M.shape}")
    return M


def symmetrize(M: np.ndarray) -> np.ndarray:
    """Hermitian part (M + M*) / 2 of a square matrix."""
    M = _require_square(M)
    return (M + M.conj().T) / 2.0


def orthonormalize(vectors: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Orthonormal basis for the column span of ``vectors``.

    Uses the SVD; columns whose singular value falls at or below
    ``tol.rank_rel`` times the largest are treated as dependent.
    Returns an ``n x r`` matrix with orthonormal columns where ``r`` is
    the numerical rank.  Raises :class:`AllColumnsNumericallyZero` when
    the rank is zero.
    """
    A = np.asarray(vectors)
    if A.ndim != 2 or A.shape[1] < 1 or A.shape[0] < 1:
        raise DimensionMismatch(f"expected a nonempty 2-d matrix of column vectors, got shape {A.shape}")
    _require_finite(A, "column matrix")
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    if s[0] == 0.0:
        raise AllColumnsNumericallyZero("every column is numerically zero")
    rank = int(np.count_nonzero(s > tol.rank_rel * s[0]))
    return np.ascontiguousarray(U[:, :rank])


def hermitian_eigenrange(M: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a Hermitian matrix.

    The input is symmetrized before the decomposition, so tiny
    asymmetries from accumulated roundoff are harmless.
    """
    H = symmetrize(_require_finite(M))
    eigenvalues = np.linalg.eigvalsh(H)
    return float(eigenvalues[0]), float(eigenvalues[-1])


def kernel_dimension(M: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    """Dimension of the null space of ``M`` under the relative rank cutoff."""
    A = np.asarray(_require_finite(M))
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {A.shape}")
    s = np.linalg.svd(A, compute_uv=False)
    columns = A.shape[1]
    if s.size == 0 or s[0] == 0.0:
        return columns
    return columns - int(np.count_nonzero(s > tol.rank_rel * s[0]))


def solve_hermitian_positive(
    M: np.ndarray, rhs: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Solve ``M X = rhs`` for Hermitian positive definite ``M``.

    Positive definiteness is decided spectrally: the smallest eigenvalue
    must exceed ``tol.rank_rel`` times the largest.  The solve itself is
    a Cholesky factorization followed by one step of iterative
    refinement, which keeps the residual near machine level even for
    moderately ill-conditioned operators.
    """
    H = symmetrize(_require_finite(M))
    B = _require_finite(np.asarray(rhs), "right-hand side")
    if B.shape[0] != H.shape[0]:
        raise DimensionMismatch(f"right-hand side has {B.shape[0]} rows, expected {H.shape[0]}")
    low, high = hermitian_eigenrange(H, tol)
    if high <= 0.0 or low <= tol.rank_rel * high:
        raise NotPositiveDefinite(f"spectrum [{low:.3e}, {high:.3e}] fails the positivity cutoff")
    factor = scipy.linalg.cho_factor(H, check_finite=False)
    X = scipy.linalg.cho_solve(factor, B, check_finite=False)
    X = X + scipy.linalg.cho_solve(factor, B - H @ X, check_finite=False)
    return X


def principal_angles(basis_a: np.ndarray, basis_b: np.ndarray) -> np.ndarray:
    """Principal angles between the column spans of two orthonormal bases."""
    return scipy.linalg.subspace_angles(np.asarray(basis_a), np.asarray(basis_b))


def sample_unit_vectors(
    rng: np.random.Generator, dim: int, count: int = 1, field: str = COMPLEX
) -> np.ndarray:
    """Draw ``count`` Haar-uniform unit vectors in dimension ``dim``.

    Normalized i.i.d. Gaussian coordinates; for the complex field real
    and imaginary parts are drawn independently.  Returns an array of
    shape ``(count, dim)``.
    """
    if dim < 1 or count < 1:
        raise DimensionMismatch(f"need dim >= 1 and count >= 1, got {dim}, {count}")
    X = rng.standard_normal((count, dim))
    if field == COMPLEX:
        X = X + 1j * rng.standard_normal((count, dim))
    elif field != REAL:
        raise ValueError(f"unknown field {field!r}")
    norms = np.linalg.norm(X, axis=1)
    while np.any(norms < 1e-12):  # astronomically unlikely, but stay total
        bad = norms < 1e-12
        X[bad] = rng.standard_normal((int(bad.sum()), dim))
        if field == COMPLEX:
            X[bad] = X[bad] + 1j * rng.standard_normal((int(bad.sum()), dim))
        norms = np.linalg.norm(X, axis=1)
    return X / norms[:, None]


def rayleigh_samples(M: np.ndarray, rng: np.random.Generator, count: int) -> np.ndarray:
    """Rayleigh quotients x* M x of ``count`` sampled unit vectors."""
    H = symmetrize(_require_finite(M))
    X = sample_unit_vectors(rng, H.shape[0], count, field_of(H))
    return np.einsum("ij,jk,ik->i", X.conj(), H, X).real
