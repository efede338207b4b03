"""Weighted subspace families: bounds, redundancy, erasures, and excess.

A fusion frame is a finite family of closed subspaces ``W_i`` with
positive weights ``v_i`` such that the weighted projection energy
``sum_i v_i^2 ||P_i x||^2`` is bounded above and below by positive
multiples of ``||x||^2``.  The pointwise redundancy drops the weights:
``R(x) = sum_i ||P_i x||^2`` for unit ``x``, the Rayleigh quotient of
the normalized operator ``sum_i P_i``; its extremes over the sphere are
the eigenvalue range of that operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllColumnsNumericallyZero,
    DimensionMismatch,
    EmptyRemainder,
    NonPositiveWeight,
    NotAFusionFrame,
    SingularOperator,
    ZeroSubspace,
)
from .numerics import (
    COMPLEX,
    DEFAULT_TOLERANCE,
    FrameBounds,
    REAL,
    Tolerance,
    field_of,
    hermitian_eigenrange,
    kernel_dimension,
    orthonormalize,
    principal_angles,
    sample_unit_vectors,
    _require_finite,
    _require_square,
)
from .vector_frames import _as_unit_vector

ORTHONORMALITY_TOL = 1e-10
SUBSPACE_ANGLE_TOL = 1e-8
EXHAUSTIVE_MEMBER_LIMIT = 22
PROJECTION_CHECK_TOL = 1e-10


class Subspace:
    """A nonzero subspace, stored as an orthonormal basis of columns."""

    def __init__(self, basis: np.ndarray):
        B = np.asarray(basis)
        if B.ndim != 2 or not (1 <= B.shape[1] <= B.shape[0]):
            raise DimensionMismatch(f"basis must be n x d with 1 <= d <= n, got shape {B.shape}")
        _require_finite(B, "basis")
        gram_defect = np.abs(B.conj().T @ B - np.eye(B.shape[1])).max()
        if gram_defect > ORTHONORMALITY_TOL:
            raise DimensionMismatch(f"basis columns are not orthonormal (defect {gram_defect:.3e})")
        B = B.astype(np.complex128 if np.iscomplexobj(B) else np.float64)
        B.setflags(write=False)
        self.basis = B

    @classmethod
    def from_span(cls, vectors: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> "Subspace":
        """Subspace spanned by arbitrary column vectors (orthonormalized)."""
        try:
            return cls(orthonormalize(vectors, tol))
        except AllColumnsNumericallyZero as exc:
            raise ZeroSubspace(str(exc)) from exc

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def field(self) -> str:
        return field_of(self.basis)

    def projection(self) -> np.ndarray:
        """The orthogonal projection onto the subspace."""
        return self.basis @ self.basis.conj().T

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


@dataclass(frozen=True)
class WeightedSubspace:
    """One fusion frame member: a subspace with a positive weight."""

    subspace: Subspace
    weight: float

    def __post_init__(self):
        w = float(self.weight)
        if not np.isfinite(w) or w <= 0.0:
            raise NonPositiveWeight(f"weight must be strictly positive, got {self.weight!r}")
        object.__setattr__(self, "weight", w)


class FusionFrame:
    """A weighted subspace family over a fixed ambient space.

    Construction never fails on span deficiencies: a family whose
    weighted operator has numerically zero smallest eigenvalue is kept
    and tagged Bessel-only (``is_frame`` is ``False``); operations that
    need a positive lower bound raise :class:`NotAFusionFrame` instead.
    """

    def __init__(self, members, tol: Tolerance = DEFAULT_TOLERANCE):
        members = tuple(members)
        if not members:
            raise DimensionMismatch("a fusion frame needs at least one member")
        for i, member in enumerate(members):
            if not isinstance(member, WeightedSubspace):
                raise DimensionMismatch(f"member {i} is not a WeightedSubspace")
        ambient = members[0].subspace.ambient_dim
        fields = {m.subspace.field for m in members}
        if len(fields) > 1:
            raise DimensionMismatch("members mix real and complex scalar fields")
        for i, member in enumerate(members):
            if member.subspace.ambient_dim != ambient:
                raise DimensionMismatch(
                    f"member {i} lives in dimension {member.subspace.ambient_dim}, expected {ambient}"
                )
        self.members = members
        self.tol = tol
        low, high = hermitian_eigenrange(_weighted_operator(members, ambient), tol)
        self._operator_range = (low, high)
        self.is_frame = low > tol.rank_rel * high
        self._ambient_dim = ambient

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def member_count(self) -> int:
        return len(self.members)

    @property
    def field(self) -> str:
        return self.members[0].subspace.field

    @property
    def weights(self) -> np.ndarray:
        return np.array([m.weight for m in self.members])

    @property
    def dims(self) -> np.ndarray:
        return np.array([m.subspace.dim for m in self.members])

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"FusionFrame(members={self.member_count}, ambient={self.ambient_dim}, "
            f"field={self.field}, is_frame={self.is_frame})"
        )


@dataclass(frozen=True)
class AnalysisReport:
    """Structural summary of a weighted subspace family."""

    bounds: FrameBounds
    redundancy: tuple[float, float]
    tight: bool
    parseval: bool
    uniform_weights: bool
    orthonormal_fusion_basis: bool
    minimal: bool
    excess: int
    uniform_redundancy: bool
    bessel_only: bool


def _weighted_operator(members, ambient: int) -> np.ndarray:
    dtype = np.complex128 if members[0].subspace.field == COMPLEX else np.float64
    S = np.zeros((ambient, ambient), dtype=dtype)
    for member in members:
        S += member.weight**2 * member.subspace.projection()
    return S


def build_fusion_frame(spans, ambient_dim: int, tol: Tolerance = DEFAULT_TOLERANCE) -> FusionFrame:
    """Assemble a fusion frame from raw (span matrix, weight) pairs.

    Span matrices hold generating vectors as columns; each is
    orthonormalized, so redundant generators are harmless.
    """
    members = []
    for i, (vectors, weight) in enumerate(spans):
        V = np.asarray(vectors)
        if V.ndim != 2 or V.shape[0] != ambient_dim:
            raise DimensionMismatch(
                f"member {i}: span matrix has shape {V.shape}, expected {ambient_dim} rows"
            )
        try:
            subspace = Subspace.from_span(V, tol)
        except ZeroSubspace as exc:
            raise ZeroSubspace(f"member {i}: {exc}") from exc
        try:
            members.append(WeightedSubspace(subspace, weight))
        except NonPositiveWeight as exc:
            raise NonPositiveWeight(f"member {i}: {exc}") from exc
    return FusionFrame(members, tol)


def fusion_frame_operator(frame: FusionFrame, normalized: bool = False) -> np.ndarray:
    """The operator ``sum_i v_i^2 P_i``; with ``normalized`` the weights drop."""
    dtype = np.complex128 if frame.field == COMPLEX else np.float64
    S = np.zeros((frame.ambient_dim, frame.ambient_dim), dtype=dtype)
    for member in frame.members:
        scale = 1.0 if normalized else member.weight**2
        S += scale * member.subspace.projection()
    return S


def frame_bounds(frame: FusionFrame) -> FrameBounds:
    """Optimal frame bounds: the eigenvalue range of the weighted operator."""
    low, high = frame._operator_range
    if not frame.is_frame:
        raise NotAFusionFrame(
            f"family is Bessel-only: operator spectrum [{low:.3e}, {high:.3e}]"
        )
    return FrameBounds(low, high)


def redundancy_at(frame: FusionFrame, x) -> float:
    """Pointwise redundancy sum_i ||P_i x||^2 at a unit vector."""
    v = _as_unit_vector(x, frame.ambient_dim)
    S1 = fusion_frame_operator(frame, normalized=True)
    return float(np.real(v.conj() @ S1 @ v))


def redundancy_range(frame: FusionFrame) -> tuple[float, float]:
    """Extremes (R-, R+) of pointwise redundancy over the unit sphere.

    Defined for Bessel-only families too; there the lower extreme is
    numerically zero.
    """
    return hermitian_eigenrange(fusion_frame_operator(frame, normalized=True), frame.tol)


def redundancy_samples(frame: FusionFrame, rng: np.random.Generator, count: int) -> np.ndarray:
    """Redundancy values at ``count`` Haar-sampled unit vectors."""
    S1 = fusion_frame_operator(frame, normalized=True)
    X = sample_unit_vectors(rng, frame.ambient_dim, count, frame.field)
    return np.einsum("ij,jk,ik->i", X.conj(), S1, X).real


def synthesis_matrix(frame: FusionFrame) -> np.ndarray:
    """Synthesis operator in local orthonormal coordinates.

    The block matrix ``[v_1 Q_1 | ... | v_N Q_N]`` mapping stacked local
    coefficients to ``sum_i v_i f_i``.  Its kernel dimension is the
    excess of the family.
    """
    blocks = [member.weight * member.subspace.basis for member in frame.members]
    return np.concatenate(blocks, axis=1)


def excess(frame: FusionFrame) -> int:
    """Dimension of the synthesis kernel: local degrees of freedom minus rank."""
    return kernel_dimension(synthesis_matrix(frame), frame.tol)


def is_minimal(frame: FusionFrame) -> bool:
    """True when the synthesis operator is injective (zero excess)."""
    return excess(frame) == 0


def classify(frame: FusionFrame) -> AnalysisReport:
    """Full structural classification of a weighted subspace family.

    Bessel-only families are classified too: their report has no lower
    bound and all frame-dependent flags are false.
    """
    tol = frame.tol
    low, high = frame._operator_range
    bessel_only = not frame.is_frame
    bounds = FrameBounds(None if bessel_only else low, high)
    r_minus, r_plus = redundancy_range(frame)
    weights = frame.weights
    tight = (not bessel_only) and (high - low) <= tol.eig_rel * high
    parseval = tight and abs(high - 1.0) <= tol.eig_rel
    uniform_weights = (weights.max() - weights.min()) <= tol.eig_rel * weights.max()
    orthonormal_fusion_basis = parseval and np.abs(weights - 1.0).max() <= tol.eig_rel
    excess_value = excess(frame)
    return AnalysisReport(
        bounds=bounds,
        redundancy=(r_minus, r_plus),
        tight=tight,
        parseval=parseval,
        uniform_weights=bool(uniform_weights),
        orthonormal_fusion_basis=bool(orthonormal_fusion_basis),
        minimal=excess_value == 0,
        excess=excess_value,
        uniform_redundancy=(not bessel_only) and (r_plus - r_minus) <= tol.eig_rel * r_plus,
        bessel_only=bessel_only,
    )


def union(a: FusionFrame, b: FusionFrame) -> FusionFrame:
    """Concatenation of two families over the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise DimensionMismatch(f"scalar fields differ: {a.field} vs {b.field}")
    return FusionFrame(a.members + b.members, a.tol)


def erase(frame: FusionFrame, indices) -> tuple[FusionFrame, float | None]:
    """Remove the members at the given positions (0-based).

    Returns the remaining family together with the guaranteed lower
    bound ``A - a`` (``a`` the erased weighted energy ``sum v_i^2``)
    when ``a < A``; otherwise ``None``.  The remaining family may be
    Bessel-only, in which case its ``is_frame`` flag is false.
    """
    J = sorted(set(int(i) for i in indices))
    if any(i < 0 or i >= frame.member_count for i in J):
        raise DimensionMismatch(f"erasure indices {J} out of range for {frame.member_count} members")
    if len(J) == frame.member_count:
        raise EmptyRemainder("erasing every member leaves nothing to analyze")
    keep = [m for i, m in enumerate(frame.members) if i not in set(J)]
    remaining = FusionFrame(keep, frame.tol)
    guaranteed: float | None = None
    if frame.is_frame:
        A = frame._operator_range[0]
        a = float(sum(frame.members[i].weight ** 2 for i in J))
        if a < A:
            guaranteed = A - a
            # Deleting weighted energy a < A cannot push the operator below A - a.
            assert remaining._operator_range[0] >= guaranteed - frame.tol.eig_rel * max(1.0, A)
    return remaining, guaranteed


@dataclass(frozen=True)
class ErasureCertificate:
    """Erasure robustness of a fusion frame up to a removal budget.

    ``certified``    largest k <= budget for which some k-subset removal
                     verifiably leaves a fusion frame (a witness subset's
                     remaining operator has positive smallest eigenvalue)
    ``universal``    largest k <= budget for which *every* k-subset
                     removal leaves a fusion frame
    ``weight_rule``  largest k <= budget certified by the weight-sum
                     rule alone: some k-subset has erased energy
                     ``sum v_i^2`` strictly below the lower bound
    ``rule``         "weight-sum-bound" when the weight rule already
                     certifies ``certified``, "spectral" when only the
                     eigenvalue check does, "none" when nothing is
                     certified
    ``mode``         "exhaustive" (all subsets enumerated) or "greedy"
                     (heuristic search; ``certified`` is still a sound
                     witness-backed count, but may be an undercount, and
                     ``universal`` is only an upper-bound estimate)
    """

    budget: int
    certified: int
    universal: int
    weight_rule: int
    rule: str
    mode: str


def _weight_rule_level(weights_sq: np.ndarray, lower_bound: float, budget: int, eig_rel: float) -> int:
    ordered = np.sort(weights_sq)
    level = 0
    for k in range(1, budget + 1):
        if ordered[:k].sum() < lower_bound * (1.0 - eig_rel):
            level = k
        else:
            break
    return level


def erasure_certificate(
    frame: FusionFrame, budget: int | None = None, mode: str | None = None
) -> ErasureCertificate:
    """Determine how many members can be erased, verified spectrally.

    Exhaustive mode enumerates every subset up to the budget and is
    limited to families with at most 22 members; greedy mode follows
    the strongest (respectively weakest) removal path instead.
    """
    if not frame.is_frame:
        raise NotAFusionFrame("erasure robustness is defined for fusion frames only")
    N = frame.member_count
    budget = N - 1 if budget is None else int(budget)
    budget = max(0, min(budget, N - 1))
    if mode is None:
        mode = "exhaustive" if N <= EXHAUSTIVE_MEMBER_LIMIT else "greedy"
    if mode not in ("exhaustive", "greedy"):
        raise ValueError(f"unknown erasure search mode {mode!r}")
    if mode == "exhaustive" and N > EXHAUSTIVE_MEMBER_LIMIT:
        raise ValueError(f"exhaustive mode supports at most {EXHAUSTIVE_MEMBER_LIMIT} members, got {N}")

    tol = frame.tol
    terms = [m.weight**2 * m.subspace.projection() for m in frame.members]
    total = sum(terms)
    A = frame._operator_range[0]

    def survives(removed) -> bool:
        S = total - sum(terms[i] for i in removed)
        low, high = hermitian_eigenrange(S, tol)
        return high > 0.0 and low > tol.rank_rel * high

    certified = 0
    universal = 0
    universal_alive = True
    if mode == "exhaustive":
        for k in range(1, budget + 1):
            any_survivor = False
            all_survive = True
            for J in itertools.combinations(range(N), k):
                if survives(J):
                    any_survivor = True
                    if not universal_alive:
                        break  # existential answered; universal already settled
                else:
                    all_survive = False
                    if any_survivor and not universal_alive:
                        break
            if universal_alive and all_survive:
                universal = k
            if not all_survive:
                universal_alive = False
            if not any_survivor:
                break  # supersets of failing removals also fail
            certified = k
    else:
        strong_path: list[int] = []
        weak_path: list[int] = []
        weak_alive = True
        for k in range(1, budget + 1):
            best = None
            for i in range(N):
                if i in strong_path:
                    continue
                S = total - sum(terms[j] for j in strong_path) - terms[i]
                low, _ = hermitian_eigenrange(S, tol)
                if best is None or low > best[1]:
                    best = (i, low)
            candidate = strong_path + [best[0]]
            if survives(candidate):
                strong_path = candidate
                certified = k
            else:
                break
        for k in range(1, budget + 1):
            if not weak_alive:
                break
            worst = None
            for i in range(N):
                if i in weak_path:
                    continue
                S = total - sum(terms[j] for j in weak_path) - terms[i]
                low, _ = hermitian_eigenrange(S, tol)
                if worst is None or low < worst[1]:
                    worst = (i, low)
            weak_path = weak_path + [worst[0]]
            if survives(weak_path):
                universal = k
            else:
                weak_alive = False

    weight_rule = _weight_rule_level(frame.weights**2, A, budget, tol.eig_rel)
    if certified == 0:
        rule = "none"
    elif weight_rule >= certified:
        rule = "weight-sum-bound"
    else:
        rule = "spectral"
    return ErasureCertificate(
        budget=budget,
        certified=certified,
        universal=universal,
        weight_rule=weight_rule,
        rule=rule,
        mode=mode,
    )


def max_robust_erasures(frame: FusionFrame, budget: int | None = None) -> int:
    """Largest verified number of erasable members within the budget."""
    return erasure_certificate(frame, budget).certified


def apply_operator(frame: FusionFrame, U: np.ndarray, tol: Tolerance | None = None) -> FusionFrame:
    """Image family {(U W_i, v_i)} under an invertible operator."""
    tol = tol or frame.tol
    M = _require_square(_require_finite(np.asarray(U), "operator"), "operator")
    if M.shape[0] != frame.ambient_dim:
        raise DimensionMismatch(f"operator is {M.shape[0]} x {M.shape[0]}, ambient dimension is {frame.ambient_dim}")
    if np.iscomplexobj(M) and frame.field == REAL:
        raise DimensionMismatch("complex operator applied to a real-field family")
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol.rank_rel * s[0]:
        raise SingularOperator(f"singular values span [{s[-1]:.3e}, {s[0]:.3e}]")
    members = [
        WeightedSubspace(Subspace.from_span(M @ m.subspace.basis, tol), m.weight)
        for m in frame.members
    ]
    return FusionFrame(members, tol)


@dataclass(frozen=True)
class OperatorImageReport:
    """Predicted versus computed behavior of a frame under an operator.

    The invertible image of a fusion frame has bounds within the
    conditioning bracket ``[A / k^2, B k^2]`` with ``k = ||U|| ||U^-1||``,
    and each redundancy extreme moves by at most a factor ``k^2`` in
    either direction.
    """

    image: FusionFrame
    condition: float
    predicted_bounds: tuple[float, float]
    computed_bounds: FrameBounds
    bounds_hold: bool
    redundancy_brackets: tuple[tuple[float, float], tuple[float, float]]
    image_redundancy: tuple[float, float]
    redundancy_holds: bool


def operator_image_report(frame: FusionFrame, U: np.ndarray, tol: Tolerance | None = None) -> OperatorImageReport:
    """Apply an invertible operator and check the conditioning brackets."""
    tol = tol or frame.tol
    image = apply_operator(frame, U, tol)
    bounds = frame_bounds(frame)
    s = np.linalg.svd(np.asarray(U), compute_uv=False)
    k = float(s[0] / s[-1])
    predicted = (bounds.lower / k**2, bounds.upper * k**2)
    image_bounds = frame_bounds(image)
    slack = tol.eig_rel * max(1.0, predicted[1])
    bounds_hold = predicted[0] - slack <= image_bounds.lower and image_bounds.upper <= predicted[1] + slack
    r_minus, r_plus = redundancy_range(frame)
    brackets = ((r_minus / k**2, r_minus * k**2), (r_plus / k**2, r_plus * k**2))
    image_r = redundancy_range(image)
    r_slack = tol.eig_rel * max(1.0, brackets[1][1])
    redundancy_holds = all(
        lo - r_slack <= value <= hi + r_slack
        for (lo, hi), value in zip(brackets, image_r)
    )
    return OperatorImageReport(
        image=image,
        condition=k,
        predicted_bounds=predicted,
        computed_bounds=image_bounds,
        bounds_hold=bool(bounds_hold),
        redundancy_brackets=brackets,
        image_redundancy=image_r,
        redundancy_holds=bool(redundancy_holds),
    )


def redundancy_equivalent(
    a: FusionFrame, b: FusionFrame, samples: int = 0, rng: np.random.Generator | None = None
) -> bool:
    """Whether two families have identical redundancy functions.

    Redundancy functions agree pointwise exactly when the normalized
    operators coincide; that operator test decides the answer.  When
    ``samples`` is positive and the operators agree, sampled values are
    compared as a consistency check.
    """
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise DimensionMismatch("families live in different spaces")
    Sa = fusion_frame_operator(a, normalized=True)
    Sb = fusion_frame_operator(b, normalized=True)
    equivalent = bool(np.abs(Sa - Sb).max() <= a.tol.eig_rel)
    if equivalent and samples > 0:
        rng = rng or np.random.default_rng(0)
        X = sample_unit_vectors(rng, a.ambient_dim, samples, a.field)
        va = np.einsum("ij,jk,ik->i", X.conj(), Sa, X).real
        vb = np.einsum("ij,jk,ik->i", X.conj(), Sb, X).real
        assert np.abs(va - vb).max() <= 10 * a.tol.eig_rel
    return equivalent


def subspaces_equal(a: Subspace, b: Subspace, angle_tol: float = SUBSPACE_ANGLE_TOL) -> bool:
    """Subspace equality via principal angles."""
    if a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        return False
    angles = principal_angles(a.basis, b.basis)
    return bool(angles.size == 0 or angles.max() <= angle_tol)


@dataclass(frozen=True)
class ProjectionDecompositionCheck:
    """Whether a positive operator splits as a sum of rank-m projections."""

    is_decomposition: bool
    projections_valid: bool
    common_rank: int | None
    sum_residual: float
    trace_residual: float


def verify_projection_decomposition(T: np.ndarray, projections) -> ProjectionDecompositionCheck:
    """Check ``T = sum_i P_i`` for rank-m orthogonal projections ``P_i``.

    Each candidate must be Hermitian, idempotent, and of one common rank
    ``m``; the sum must reproduce ``T`` entrywise within 1e-10, which
    forces ``tr T = m N``.
    """
    T = _require_square(_require_finite(np.asarray(T)))
    mats = [_require_square(_require_finite(np.asarray(P)), f"projection {i}") for i, P in enumerate(projections)]
    if not mats:
        raise DimensionMismatch("need at least one projection")
    for i, P in enumerate(mats):
        if P.shape != T.shape:
            raise DimensionMismatch(f"projection {i} has shape {P.shape}, expected {T.shape}")
    valid = True
    ranks = []
    for P in mats:
        hermitian = np.abs(P - P.conj().T).max() <= PROJECTION_CHECK_TOL
        idempotent = np.abs(P @ P - P).max() <= PROJECTION_CHECK_TOL
        trace = float(np.real(np.trace(P)))
        rank = round(trace)
        valid = valid and hermitian and idempotent and abs(trace - rank) <= PROJECTION_CHECK_TOL * max(1, P.shape[0])
        ranks.append(rank)
    common_rank = ranks[0] if valid and len(set(ranks)) == 1 else None
    sum_residual = float(np.abs(T - sum(mats)).max())
    expected_trace = (common_rank or 0) * len(mats)
    trace_residual = float(abs(np.real(np.trace(T)) - expected_trace)) if common_rank else float("inf")
    is_decomposition = (
        valid
        and common_rank is not None
        and sum_residual <= PROJECTION_CHECK_TOL
        and trace_residual <= PROJECTION_CHECK_TOL * max(1, T.shape[0] * len(mats))
    )
    return ProjectionDecompositionCheck(
        is_decomposition=bool(is_decomposition),
        projections_valid=bool(valid and common_rank is not None),
        common_rank=common_rank,
        sum_residual=sum_residual,
        trace_residual=trace_residual,
    )
