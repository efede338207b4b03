"""Seeded random constructions used by the property suites and scripts.

Everything takes an explicit ``numpy.random.Generator`` so sweeps are
reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np

from .errors import NotAFrame
from .fusion import FusionFrame, Subspace, WeightedSubspace, union
from .numerics import COMPLEX, DEFAULT_TOLERANCE, REAL, Tolerance, orthonormalize
from .systems import FusionFrameSystem, build_system
from .vector_frames import VectorFrame


def random_field(rng: np.random.Generator) -> str:
    return REAL if rng.integers(2) == 0 else COMPLEX


def _gaussian(rng: np.random.Generator, shape, field: str) -> np.ndarray:
    G = rng.standard_normal(shape)
    if field == COMPLEX:
        G = G + 1j * rng.standard_normal(shape)
    return G


def random_subspace(rng: np.random.Generator, n: int, d: int, field: str = COMPLEX) -> Subspace:
    return Subspace(orthonormalize(_gaussian(rng, (n, d), field)))


def random_fusion_frame(
    rng: np.random.Generator,
    n: int | None = None,
    members: int | None = None,
    max_dim: int | None = None,
    field: str | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> FusionFrame:
    """A random weighted subspace family that spans (retries otherwise)."""
    n = n or int(rng.integers(2, 9))
    field = field or random_field(rng)
    max_dim = max_dim or min(n, 4)
    while True:
        count = members or int(rng.integers(2, 9))
        dims = rng.integers(1, max_dim + 1, size=count)
        while dims.sum() < n:  # otherwise the family cannot span
            dims[rng.integers(count)] = min(max_dim, n)
        weights = rng.uniform(0.3, 2.0, size=count)
        frame = FusionFrame(
            [
                WeightedSubspace(random_subspace(rng, n, int(d), field), float(w))
                for d, w in zip(dims, weights)
            ],
            tol,
        )
        if frame.is_frame:
            return frame


def random_vector_frame(
    rng: np.random.Generator,
    n: int | None = None,
    count: int | None = None,
    field: str | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> VectorFrame:
    n = n or int(rng.integers(2, 7))
    field = field or random_field(rng)
    count = count or int(rng.integers(n, 2 * n + 3))
    while True:
        frame_matrix = _gaussian(rng, (n, count), field)
        try:
            return VectorFrame.from_matrix(frame_matrix, tol=tol)
        except NotAFrame:
            continue


def _invsqrt_psd(S: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh((S + S.conj().T) / 2.0)
    return (vectors * (1.0 / np.sqrt(values))) @ vectors.conj().T


def random_tight_vector_frame(
    rng: np.random.Generator,
    n: int | None = None,
    count: int | None = None,
    field: str | None = None,
    bound: float | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> VectorFrame:
    """A tight frame with the requested bound, by whitening a random frame."""
    base = random_vector_frame(rng, n, count, field, tol)
    bound = bound if bound is not None else float(rng.uniform(0.5, 3.0))
    S = base.matrix @ base.matrix.conj().T
    matrix = np.sqrt(bound) * (_invsqrt_psd(S) @ base.matrix)
    return VectorFrame.from_matrix(matrix, tol=tol)


def random_unitary(rng: np.random.Generator, n: int, field: str = COMPLEX) -> np.ndarray:
    Q, R = np.linalg.qr(_gaussian(rng, (n, n), field))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_invertible(
    rng: np.random.Generator, n: int, field: str = COMPLEX, condition: float | None = None
) -> np.ndarray:
    """An invertible operator, optionally with a prescribed condition number."""
    if condition is None:
        while True:
            M = _gaussian(rng, (n, n), field)
            s = np.linalg.svd(M, compute_uv=False)
            if s[-1] > 1e-6 * s[0]:
                return M
    singular = np.geomspace(condition, 1.0, n)
    return (random_unitary(rng, n, field) * singular) @ random_unitary(rng, n, field)


def random_orthogonal_decomposition(
    rng: np.random.Generator,
    n: int,
    parts: int | None = None,
    field: str = COMPLEX,
    weights: np.ndarray | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> FusionFrame:
    """Random orthogonal direct sum of the ambient space (unit weights).

    With unit weights this is an orthonormal fusion basis; it is the
    canonical example of a minimal family with zero excess.
    """
    parts = parts or int(rng.integers(1, n + 1))
    U = random_unitary(rng, n, field)
    cuts = np.sort(rng.choice(np.arange(1, n), size=parts - 1, replace=False)) if parts > 1 else np.array([], dtype=int)
    pieces = np.split(np.arange(n), cuts)
    if weights is None:
        weights = np.ones(len(pieces))
    members = [
        WeightedSubspace(Subspace(np.ascontiguousarray(U[:, piece])), float(w))
        for piece, w in zip(pieces, weights)
    ]
    return FusionFrame(members, tol)


def random_parseval_fusion_frame(
    rng: np.random.Generator, n: int, field: str = COMPLEX, layers: int = 2, tol: Tolerance = DEFAULT_TOLERANCE
) -> FusionFrame:
    """Overlay of random orthogonal decompositions scaled to Parseval.

    ``layers`` decompositions with all weights ``1/sqrt(layers)`` sum to
    the identity; with ``layers=1`` this is an orthonormal fusion basis.
    """
    scale = 1.0 / np.sqrt(layers)
    overlay = random_orthogonal_decomposition(rng, n, None, field, tol=tol)
    members = [WeightedSubspace(m.subspace, scale) for m in overlay.members]
    frame = FusionFrame(members, tol)
    for _ in range(layers - 1):
        layer = random_orthogonal_decomposition(rng, n, None, field, tol=tol)
        frame = union(frame, FusionFrame([WeightedSubspace(m.subspace, scale) for m in layer.members], tol))
    return frame


def random_tight_uniform_fusion_frame(
    rng: np.random.Generator, n: int, layers: int = 2, field: str = COMPLEX, tol: Tolerance = DEFAULT_TOLERANCE
) -> FusionFrame:
    """Union of ``layers`` orthonormal fusion bases: layers-tight, unit weights."""
    frame = random_orthogonal_decomposition(rng, n, None, field, tol=tol)
    for _ in range(layers - 1):
        frame = union(frame, random_orthogonal_decomposition(rng, n, None, field, tol=tol))
    return frame


def random_local_vectors(
    rng: np.random.Generator, frame: FusionFrame, kind: str = "orthogonal"
) -> list[np.ndarray]:
    """Per-member local vector lists for a system over ``frame``.

    ``orthogonal``  scaled rotated orthonormal bases of each subspace
    ``parseval``    Parseval frames for each subspace (possibly overcomplete)
    ``generic``     overcomplete Gaussian families inside each subspace
    """
    locals_ = []
    for member in frame.members:
        Q = member.subspace.basis
        d = member.subspace.dim
        field = member.subspace.field
        if kind == "orthogonal":
            rotation = random_unitary(rng, d, field) if d > 1 else np.ones((1, 1))
            scales = rng.uniform(0.5, 2.0, size=d)
            local = Q @ (rotation * scales)
        elif kind == "parseval":
            m = int(rng.integers(d, d + 3))
            C = _gaussian(rng, (d, m), field)
            local = Q @ (_invsqrt_psd(C @ C.conj().T) @ C)
        elif kind == "generic":
            m = int(rng.integers(d + 1, d + 4))
            C = _gaussian(rng, (d, m), field)
            local = Q @ C
        else:
            raise ValueError(f"unknown local family kind {kind!r}")
        locals_.append([np.ascontiguousarray(local[:, j]) for j in range(local.shape[1])])
    return locals_


def random_system(
    rng: np.random.Generator, frame: FusionFrame, kind: str = "orthogonal"
) -> FusionFrameSystem:
    return build_system(frame, random_local_vectors(rng, frame, kind))
