"""Dual families of fusion frames: the canonical dual and verified duals.

The canonical dual of a fusion frame maps each subspace through the
inverse frame operator, keeping the weight.  A more general dual is any
weighted Bessel family ``{(V_i, u_i)}`` satisfying the reconstruction
identity ``x = sum_i u_i v_i P_{V_i} S^{-1} P_{W_i} x``.

The ratio checks in this module compare pointwise redundancies of a
frame and a dual against claimed multiplicative brackets.  Those
brackets are reported as observations: sampled sweeps can and do land
outside them for well-conditioned tight families, so violations raise
only in strict mode and are otherwise left to the caller to log.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundViolation, NotADual, NotAFusionFrame, NotUniformWeights
from .fusion import (
    FusionFrame,
    Subspace,
    WeightedSubspace,
    frame_bounds,
    fusion_frame_operator,
)
from .numerics import (
    FrameBounds,
    hermitian_eigenrange,
    sample_unit_vectors,
    solve_hermitian_positive,
)


@dataclass(frozen=True)
class DualCertificate:
    """Outcome of the reconstruction check for a candidate dual family."""

    residual: float
    is_dual: bool
    bessel_bound: float


@dataclass(frozen=True)
class RatioBoundsCheck:
    """Observed redundancy ratios against a claimed bracket.

    ``observed`` holds the sampled (min, max) of the pointwise ratio;
    ``holds`` records whether every sample landed inside
    ``[lower, upper]`` up to eigenvalue slack.
    """

    lower: float
    observed: tuple[float, float]
    upper: float
    holds: bool
    samples: int


@dataclass(frozen=True)
class DualBoundsCheck:
    """Frame-bound and redundancy-ratio checks for a verified dual pair.

    ``floor`` is the guaranteed lower frame bound of the dual,
    ``dual_bounds`` its computed bounds, and ``bounds_hold`` whether the
    guarantee is met.  ``lower``/``upper`` bracket the pointwise
    redundancy ratio dual/frame with sampled ``observed`` extremes;
    ``ratios_hold`` records containment and ``holds`` conjoins both.
    """

    floor: float
    dual_bounds: FrameBounds
    bounds_hold: bool
    lower: float
    observed: tuple[float, float]
    upper: float
    ratios_hold: bool
    holds: bool


def _require_uniform_one(frame: FusionFrame, what: str) -> None:
    if np.abs(frame.weights - 1.0).max() > frame.tol.eig_rel:
        raise NotUniformWeights(f"{what} is stated for families with every weight equal to 1")


def canonical_dual_fusion(frame: FusionFrame) -> FusionFrame:
    """The canonical dual family {(S^-1 W_i, v_i)}."""
    if not frame.is_frame:
        raise NotAFusionFrame("Bessel-only families have no canonical dual")
    S = fusion_frame_operator(frame)
    members = [
        WeightedSubspace(
            Subspace.from_span(solve_hermitian_positive(S, m.subspace.basis, frame.tol), frame.tol),
            m.weight,
        )
        for m in frame.members
    ]
    return FusionFrame(members, frame.tol)


def canonical_ratio_bounds(
    frame: FusionFrame,
    rng: np.random.Generator,
    samples: int = 1000,
    strict: bool = False,
) -> RatioBoundsCheck:
    """Sweep the pointwise ratio R_frame / R_dual against [A^3/B, B^3/A].

    Stated for families with unit weights.  The bracket is a claimed
    one: tight non-Parseval families provably sit at ratio 1 while the
    bracket degenerates to {A^2}, so ``holds`` is an observation, not an
    invariant.  With ``strict`` a violation raises
    :class:`BoundViolation`.
    """
    _require_uniform_one(frame, "the canonical ratio bracket")
    bounds = frame_bounds(frame)
    A, B = bounds.lower, bounds.upper
    dual = canonical_dual_fusion(frame)
    S1 = fusion_frame_operator(frame, normalized=True)
    D1 = fusion_frame_operator(dual, normalized=True)
    X = sample_unit_vectors(rng, frame.ambient_dim, samples, frame.field)
    frame_values = np.einsum("ij,jk,ik->i", X.conj(), S1, X).real
    dual_values = np.einsum("ij,jk,ik->i", X.conj(), D1, X).real
    ratios = frame_values / dual_values
    lower, upper = A**3 / B, B**3 / A
    slack = frame.tol.eig_rel * max(1.0, upper)
    holds = bool(lower - slack <= ratios.min() and ratios.max() <= upper + slack)
    if strict and not holds:
        raise BoundViolation(
            f"observed ratio range [{ratios.min():.6g}, {ratios.max():.6g}] "
            f"escapes [{lower:.6g}, {upper:.6g}]"
        )
    return RatioBoundsCheck(
        lower=lower,
        observed=(float(ratios.min()), float(ratios.max())),
        upper=upper,
        holds=holds,
        samples=samples,
    )


def verify_alternate_dual(frame: FusionFrame, candidate: FusionFrame) -> DualCertificate:
    """Test the reconstruction identity for a candidate dual family.

    The reconstruction operator ``sum_i u_i v_i P_{V_i} S^-1 P_{W_i}``
    is applied to the ambient basis; the residual is the worst column
    deviation from the identity.  The certificate also reports the
    candidate's Bessel bound (largest eigenvalue of its weighted
    operator), which is always finite.
    """
    if not frame.is_frame:
        raise NotAFusionFrame("duals are defined against a fusion frame")
    if candidate.ambient_dim != frame.ambient_dim or candidate.field != frame.field:
        raise NotADual("candidate lives in a different space")
    if candidate.member_count != frame.member_count:
        raise NotADual(
            f"candidate has {candidate.member_count} members, expected {frame.member_count}"
        )
    S = fusion_frame_operator(frame)
    n = frame.ambient_dim
    reconstruction = np.zeros_like(S)
    for w_member, v_member in zip(frame.members, candidate.members):
        inner = solve_hermitian_positive(S, w_member.subspace.projection(), frame.tol)
        reconstruction += (
            w_member.weight * v_member.weight * v_member.subspace.projection() @ inner
        )
    residual = float(np.linalg.norm(np.eye(n) - reconstruction, axis=0).max())
    _, bessel = hermitian_eigenrange(fusion_frame_operator(candidate), candidate.tol)
    return DualCertificate(
        residual=residual,
        is_dual=residual <= frame.tol.recon_abs,
        bessel_bound=float(bessel),
    )


def alternate_dual_bounds(
    frame: FusionFrame,
    dual: FusionFrame,
    rng: np.random.Generator,
    samples: int = 1000,
    strict: bool = False,
) -> DualBoundsCheck:
    """Check a verified dual's bounds and redundancy ratio brackets.

    The dual's lower frame bound is guaranteed to be at least
    ``1 / (B ||S^-1||^2)``; that check is an invariant.  The pointwise
    ratio R_dual / R_frame is swept against the claimed bracket
    ``[1 / ||S^-1||^2, C / A]`` (``C`` the dual's Bessel bound), which
    degenerates for tight non-Parseval self-dual families; containment
    is therefore reported, and raises only in strict mode.
    """
    certificate = verify_alternate_dual(frame, dual)
    if not certificate.is_dual:
        raise NotADual(f"reconstruction residual {certificate.residual:.3e} exceeds tolerance")
    _require_uniform_one(frame, "the dual ratio bracket")
    _require_uniform_one(dual, "the dual ratio bracket")
    bounds = frame_bounds(frame)
    A, B = bounds.lower, bounds.upper
    inv_norm = 1.0 / A  # ||S^-1|| for the weighted operator
    floor = 1.0 / (B * inv_norm**2)
    dual_bounds = frame_bounds(dual)
    slack = frame.tol.eig_rel * max(1.0, floor)
    bounds_hold = dual_bounds.lower >= floor - slack
    S1 = fusion_frame_operator(frame, normalized=True)
    D1 = fusion_frame_operator(dual, normalized=True)
    X = sample_unit_vectors(rng, frame.ambient_dim, samples, frame.field)
    frame_values = np.einsum("ij,jk,ik->i", X.conj(), S1, X).real
    dual_values = np.einsum("ij,jk,ik->i", X.conj(), D1, X).real
    ratios = dual_values / frame_values
    lower = 1.0 / inv_norm**2
    upper = certificate.bessel_bound / A
    ratio_slack = frame.tol.eig_rel * max(1.0, abs(upper), abs(lower))
    ratios_hold = bool(lower - ratio_slack <= ratios.min() and ratios.max() <= upper + ratio_slack)
    holds = bool(bounds_hold and ratios_hold)
    if strict and not holds:
        raise BoundViolation(
            f"dual bounds {dual_bounds} vs floor {floor:.6g}; "
            f"ratio range [{ratios.min():.6g}, {ratios.max():.6g}] vs [{lower:.6g}, {upper:.6g}]"
        )
    return DualBoundsCheck(
        floor=floor,
        dual_bounds=dual_bounds,
        bounds_hold=bool(bounds_hold),
        lower=lower,
        observed=(float(ratios.min()), float(ratios.max())),
        upper=upper,
        ratios_hold=ratios_hold,
        holds=holds,
    )
