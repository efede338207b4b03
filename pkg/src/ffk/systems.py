"""Fusion frame systems: subspace families with local vector frames.

A system attaches to each weighted subspace a finite vector frame for
that subspace.  Local and global structure interact in two ways tested
here: pointwise redundancy is additive across members exactly when each
local family is orthogonal, and the weighted flattened family
``{v_i f_ij}`` is Parseval for the ambient space exactly when the local
families are Parseval and the fusion frame itself is Parseval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    LocalNotAFrame,
    LocalNotParseval,
    MemberCountMismatch,
    NotUniformWeights,
    VectorOutsideSubspace,
)
from .fusion import FusionFrame, classify, redundancy_at, redundancy_range
from .numerics import hermitian_eigenrange
from .vector_frames import VectorFrame, redundancy_function

LOCAL_MEMBERSHIP_TOL = 1e-10
LOCAL_PARSEVAL_TOL = 1e-10
LOCAL_ORTHOGONALITY_TOL = 1e-10


class FusionFrameSystem:
    """A fusion frame together with one local frame per member."""

    def __init__(self, frame: FusionFrame, local_frames):
        local_frames = tuple(local_frames)
        if len(local_frames) != frame.member_count:
            raise MemberCountMismatch(
                f"{len(local_frames)} local frames for {frame.member_count} members"
            )
        for i, (member, local) in enumerate(zip(frame.members, local_frames)):
            if not isinstance(local, VectorFrame):
                raise MemberCountMismatch(f"local family {i} is not a VectorFrame")
            if local.ambient_dim != frame.ambient_dim:
                raise MemberCountMismatch(
                    f"local family {i} lives in dimension {local.ambient_dim}, "
                    f"expected {frame.ambient_dim}"
                )
            basis = member.subspace.basis
            inside = basis @ (basis.conj().T @ local.matrix)
            defect = np.linalg.norm(local.matrix - inside, axis=0).max()
            if defect > LOCAL_MEMBERSHIP_TOL:
                raise VectorOutsideSubspace(
                    f"local family {i} leaves its subspace by {defect:.3e}"
                )
            local_rank = np.linalg.matrix_rank(
                basis.conj().T @ local.matrix, tol=frame.tol.rank_rel
            )
            if local_rank < member.subspace.dim:
                raise LocalNotAFrame(
                    f"local family {i} spans {local_rank} of {member.subspace.dim} dimensions"
                )
        self.frame = frame
        self.local_frames = local_frames

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FusionFrameSystem(members={self.frame.member_count}, ambient={self.frame.ambient_dim})"


def build_system(frame: FusionFrame, local_vectors) -> FusionFrameSystem:
    """Assemble a system from per-member lists of local vectors."""
    locals_ = [
        VectorFrame(vectors, require_spanning=False, tol=frame.tol) for vectors in local_vectors
    ]
    return FusionFrameSystem(frame, locals_)


@dataclass(frozen=True)
class LocalAdditivityCheck:
    """Pointwise comparison of fusion redundancy to summed local redundancies."""

    fusion_value: float
    local_sum: float
    orthogonal_locals: bool
    equal: bool


def _locals_orthogonal(system: FusionFrameSystem) -> bool:
    for local in system.local_frames:
        gram = local.matrix.conj().T @ local.matrix
        off = gram - np.diag(np.diag(gram))
        if np.abs(off).max() > LOCAL_ORTHOGONALITY_TOL:
            return False
    return True


def check_local_additivity(system: FusionFrameSystem, x, equality_tol: float = 1e-9) -> LocalAdditivityCheck:
    """Compare fusion redundancy at ``x`` with the sum of local redundancies.

    Orthogonal local families (any norms) make the two quantities agree
    exactly; overcomplete or slanted local families generically break
    the identity.
    """
    fusion_value = redundancy_at(system.frame, x)
    local_sum = float(sum(redundancy_function(local, x) for local in system.local_frames))
    return LocalAdditivityCheck(
        fusion_value=fusion_value,
        local_sum=local_sum,
        orthogonal_locals=_locals_orthogonal(system),
        equal=abs(fusion_value - local_sum) <= equality_tol,
    )


def _require_local_parseval(system: FusionFrameSystem) -> None:
    for i, (member, local) in enumerate(zip(system.frame.members, system.local_frames)):
        defect = np.abs(
            local.matrix @ local.matrix.conj().T - member.subspace.projection()
        ).max()
        if defect > LOCAL_PARSEVAL_TOL:
            raise LocalNotParseval(f"local family {i} misses its projection by {defect:.3e}")


def _flattened_matrix(system: FusionFrameSystem, weighted: bool) -> np.ndarray:
    blocks = []
    for member, local in zip(system.frame.members, system.local_frames):
        scale = member.weight if weighted else 1.0
        blocks.append(scale * local.matrix)
    return np.concatenate(blocks, axis=1)


@dataclass(frozen=True)
class ParsevalEquivalenceCheck:
    """Agreement between flattened-family and fusion-frame Parsevality."""

    global_parseval: bool
    fusion_parseval: bool
    consistent: bool


def parseval_equivalences(system: FusionFrameSystem) -> ParsevalEquivalenceCheck:
    """Test whether {v_i f_ij} is Parseval exactly when the fusion frame is.

    Requires every local family to be Parseval for its subspace.  The
    two flags are computed independently and must agree.
    """
    _require_local_parseval(system)
    tol = system.frame.tol
    flat = _flattened_matrix(system, weighted=True)
    low, high = hermitian_eigenrange(flat @ flat.conj().T, tol)
    global_parseval = abs(low - 1.0) <= tol.eig_rel and abs(high - 1.0) <= tol.eig_rel
    fusion_parseval = classify(system.frame).parseval
    return ParsevalEquivalenceCheck(
        global_parseval=bool(global_parseval),
        fusion_parseval=bool(fusion_parseval),
        consistent=bool(global_parseval == fusion_parseval),
    )


@dataclass(frozen=True)
class RedundancyOneCheck:
    """Agreement between flat Parsevality and unit redundancy range."""

    flat_parseval: bool
    fusion_redundancy_one: bool
    consistent: bool


def redundancy_one_equivalence(system: FusionFrameSystem) -> RedundancyOneCheck:
    """For unit weights: {f_ij} Parseval iff redundancy is identically 1.

    Requires Parseval local families and every weight equal to 1; then
    the unweighted flattened family is Parseval exactly when the fusion
    frame's pointwise redundancy is 1 everywhere on the sphere.
    """
    _require_local_parseval(system)
    tol = system.frame.tol
    if np.abs(system.frame.weights - 1.0).max() > tol.eig_rel:
        raise NotUniformWeights("the redundancy-one equivalence is stated for unit weights")
    flat = _flattened_matrix(system, weighted=False)
    low, high = hermitian_eigenrange(flat @ flat.conj().T, tol)
    flat_parseval = abs(low - 1.0) <= tol.eig_rel and abs(high - 1.0) <= tol.eig_rel
    r_minus, r_plus = redundancy_range(system.frame)
    fusion_redundancy_one = abs(r_minus - 1.0) <= tol.eig_rel and abs(r_plus - 1.0) <= tol.eig_rel
    return RedundancyOneCheck(
        flat_parseval=bool(flat_parseval),
        fusion_redundancy_one=bool(fusion_redundancy_one),
        consistent=bool(flat_parseval == fusion_redundancy_one),
    )
