import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffk.errors import (
    DimensionMismatch,
    EmptyRemainder,
    NonPositiveWeight,
    NotAFusionFrame,
    SingularOperator,
    UnknownExample,
    ZeroSubspace,
)
from ffk.fusion import (
    FusionFrame,
    Subspace,
    WeightedSubspace,
    apply_operator,
    build_fusion_frame,
    classify,
    erase,
    erasure_certificate,
    excess,
    frame_bounds,
    fusion_frame_operator,
    is_minimal,
    max_robust_erasures,
    operator_image_report,
    redundancy_at,
    redundancy_equivalent,
    redundancy_range,
    redundancy_samples,
    subspaces_equal,
    synthesis_matrix,
    union,
    verify_projection_decomposition,
)
from ffk.gallery import EXAMPLE_NAMES, example_frame
from ffk.generators import (
    random_fusion_frame,
    random_invertible,
    random_orthogonal_decomposition,
    random_subspace,
    random_tight_uniform_fusion_frame,
    random_unitary,
)
from ffk.numerics import COMPLEX, REAL


def coordinate_vector(i: int, n: int) -> np.ndarray:
    e = np.zeros(n)
    e[i] = 1.0
    return e


def embed_blockwise(frame: FusionFrame, total: int, offset: int) -> FusionFrame:
    """Lift a frame into a larger ambient space as a block at ``offset``."""
    members = []
    for member in frame.members:
        basis = member.subspace.basis
        lifted = np.zeros((total, basis.shape[1]), dtype=basis.dtype)
        lifted[offset : offset + basis.shape[0], :] = basis
        members.append(WeightedSubspace(Subspace(lifted), member.weight))
    return FusionFrame(members, frame.tol)


class TestSubspace:
    def test_orthonormal_basis_accepted(self):
        s = Subspace(np.eye(3)[:, :2])
        assert s.dim == 2
        assert s.ambient_dim == 3

    def test_from_span_orthonormalizes(self):
        s = Subspace.from_span(np.array([[1.0, 2.0], [1.0, 2.0], [0.0, 0.0]]))
        assert s.dim == 1
        p = s.projection()
        assert np.allclose(p, p @ p, atol=1e-12)

    def test_zero_span_rejected(self):
        with pytest.raises(ZeroSubspace):
            Subspace.from_span(np.zeros((3, 2)))

    def test_non_orthonormal_basis_rejected(self):
        with pytest.raises(Exception):
            Subspace(np.array([[1.0], [1.0]]))

    def test_equality_by_principal_angles(self, rng):
        s = random_subspace(rng, 5, 2)
        mixing = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        t = Subspace.from_span(s.basis @ mixing)
        assert subspaces_equal(s, t)
        assert not subspaces_equal(s, random_subspace(rng, 5, 2))

    def test_nonpositive_weight_rejected(self, rng):
        s = random_subspace(rng, 3, 1)
        with pytest.raises(NonPositiveWeight):
            WeightedSubspace(s, 0.0)
        with pytest.raises(NonPositiveWeight):
            WeightedSubspace(s, -2.0)


class TestGalleryOracles:
    """Frozen expected values for the four named presets."""

    def test_names(self):
        assert EXAMPLE_NAMES == ("7.1", "7.1-V", "7.2", "7.3")
        with pytest.raises(UnknownExample):
            example_frame("nope")

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_repeated_line_family(self, n):
        frame = example_frame("7.1", n)
        assert frame.member_count == 2 * n
        report = classify(frame)
        assert report.redundancy[0] == pytest.approx(1.0, abs=1e-9)
        assert report.redundancy[1] == pytest.approx(n + 1.0, abs=1e-9)
        assert not report.tight
        assert not report.uniform_redundancy
        assert report.excess == n
        assert not report.minimal
        assert abs(redundancy_at(frame, coordinate_vector(0, n)) - (n + 1)) < 1e-9
        assert abs(redundancy_at(frame, coordinate_vector(n - 1, n)) - 1.0) < 1e-9

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_doubled_line_family(self, n):
        frame = example_frame("7.1-V", n)
        report = classify(frame)
        assert report.redundancy[0] == pytest.approx(2.0, abs=1e-9)
        assert report.redundancy[1] == pytest.approx(2.0, abs=1e-9)
        assert report.tight
        assert not report.parseval
        assert report.uniform_redundancy
        assert report.uniform_weights
        assert report.excess == n

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_orthonormal_fusion_basis(self, n):
        frame = example_frame("7.2", n)
        report = classify(frame)
        assert report.bounds.lower == pytest.approx(1.0, abs=1e-12)
        assert report.bounds.upper == pytest.approx(1.0, abs=1e-12)
        assert report.tight and report.parseval and report.orthonormal_fusion_basis
        assert report.minimal and report.excess == 0
        assert report.uniform_redundancy and report.uniform_weights
        assert not report.bessel_only

    def test_weighted_coordinate_family(self):
        frame = example_frame("7.3")
        assert frame.ambient_dim == 5
        assert frame.field == COMPLEX
        assert tuple(frame.dims) == (3, 3, 2, 2)
        assert np.allclose(
            frame.weights**2, [2.0 / 3.0, 4.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0]
        )
        assert np.allclose(fusion_frame_operator(frame), 2.0 * np.eye(5), atol=1e-12)
        report = classify(frame)
        assert report.bounds.lower == pytest.approx(2.0, abs=1e-12)
        assert report.bounds.upper == pytest.approx(2.0, abs=1e-12)
        assert report.tight and not report.parseval
        assert not report.uniform_weights
        assert report.uniform_redundancy
        assert report.redundancy == pytest.approx((2.0, 2.0), abs=1e-12)
        assert report.excess == 5

    def test_weighted_family_rejects_other_dimensions(self):
        with pytest.raises(DimensionMismatch):
            example_frame("7.3", 4)

    def test_scalable_preset_needs_dimension_at_least_two(self):
        with pytest.raises(DimensionMismatch):
            example_frame("7.1", 1)


class TestConstruction:
    def test_build_from_spans(self):
        frame = build_fusion_frame(
            [(np.array([[1.0], [0.0]]), 1.0), (np.array([[0.0], [1.0]]), 1.0)], 2
        )
        assert frame.is_frame
        assert frame.member_count == 2

    def test_member_indexed_zero_span(self):
        with pytest.raises(ZeroSubspace, match="member 1"):
            build_fusion_frame(
                [(np.array([[1.0], [0.0]]), 1.0), (np.zeros((2, 1)), 1.0)], 2
            )

    def test_member_indexed_bad_weight(self):
        with pytest.raises(NonPositiveWeight, match="member 0"):
            build_fusion_frame([(np.array([[1.0], [0.0]]), -1.0)], 2)

    def test_mixed_ambient_dimensions_rejected(self, rng):
        a = WeightedSubspace(random_subspace(rng, 3, 1), 1.0)
        b = WeightedSubspace(random_subspace(rng, 4, 1), 1.0)
        with pytest.raises(DimensionMismatch):
            FusionFrame([a, b])

    def test_mixed_fields_rejected(self, rng):
        a = WeightedSubspace(random_subspace(rng, 3, 1, REAL), 1.0)
        b = WeightedSubspace(random_subspace(rng, 3, 1, COMPLEX), 1.0)
        with pytest.raises(DimensionMismatch):
            FusionFrame([a, b])

    def test_empty_family_rejected(self):
        with pytest.raises(DimensionMismatch):
            FusionFrame([])

    def test_bessel_only_is_tagged_not_raised(self):
        frame = build_fusion_frame([(np.array([[1.0], [0.0]]), 1.0)], 2)
        assert not frame.is_frame
        with pytest.raises(NotAFusionFrame):
            frame_bounds(frame)

    def test_bessel_only_classification(self):
        frame = build_fusion_frame([(np.array([[1.0], [0.0]]), 2.0)], 2)
        report = classify(frame)
        assert report.bessel_only
        assert report.bounds.lower is None
        assert report.bounds.upper == pytest.approx(4.0, abs=1e-12)
        assert report.redundancy[0] == pytest.approx(0.0, abs=1e-12)
        assert not (report.tight or report.parseval or report.uniform_redundancy)


class TestRedundancy:
    def test_values_are_rayleigh_quotients(self, rng):
        frame = random_fusion_frame(rng, n=4)
        values = redundancy_samples(frame, rng, 100)
        low, high = redundancy_range(frame)
        assert values.min() >= low - 1e-9
        assert values.max() <= high + 1e-9

    def test_range_brackets_member_count(self, rng):
        frame = random_fusion_frame(rng)
        low, high = redundancy_range(frame)
        assert 0.0 <= low <= high <= frame.member_count + 1e-9

    def test_tight_uniform_weight_one_frame_has_constant_redundancy(self, rng):
        frame = random_tight_uniform_fusion_frame(rng, n=4, layers=3)
        low, high = redundancy_range(frame)
        assert low == pytest.approx(3.0, abs=1e-9)
        assert high == pytest.approx(3.0, abs=1e-9)
        bounds = frame_bounds(frame)
        assert bounds.lower == pytest.approx(3.0, abs=1e-9)
        assert bounds.upper == pytest.approx(3.0, abs=1e-9)

    def test_redundancy_ignores_weights(self, rng):
        frame = random_fusion_frame(rng, n=4, members=5)
        scaled = FusionFrame(
            [WeightedSubspace(m.subspace, 3.0 * m.weight) for m in frame.members],
            frame.tol,
        )
        assert redundancy_equivalent(frame, scaled, samples=32, rng=rng)


class TestExcessAndMinimality:
    def test_excess_counts_synthesis_kernel(self, rng):
        frame = random_fusion_frame(rng, n=5)
        m = synthesis_matrix(frame)
        assert excess(frame) == int(frame.dims.sum()) - np.linalg.matrix_rank(m)

    def test_orthogonal_decomposition_is_minimal(self, rng):
        frame = random_orthogonal_decomposition(rng, 6, parts=3)
        assert is_minimal(frame)
        assert excess(frame) == 0
        assert redundancy_range(frame) == pytest.approx((1.0, 1.0), abs=1e-9)

    def test_minimal_does_not_force_uniform_redundancy(self):
        """Two lines at 45 degrees: zero excess, redundancy 1 -/+ sqrt(2)/2."""
        diag = np.array([[1.0], [1.0]]) / math.sqrt(2)
        frame = build_fusion_frame(
            [(np.array([[1.0], [0.0]]), 1.0), (diag, 1.0)], 2
        )
        assert is_minimal(frame)
        low, high = redundancy_range(frame)
        assert low == pytest.approx(1.0 - math.sqrt(2) / 2, abs=1e-9)
        assert high == pytest.approx(1.0 + math.sqrt(2) / 2, abs=1e-9)
        assert not classify(frame).uniform_redundancy

    def test_excess_invariant_under_unitary(self, rng):
        frame = random_fusion_frame(rng, n=4)
        image = apply_operator(frame, random_unitary(rng, 4, frame.field))
        assert excess(image) == excess(frame)

    def test_excess_invariant_under_weight_scaling(self, rng):
        frame = random_fusion_frame(rng, n=4)
        for alpha in (0.5, 3.0):
            scaled = FusionFrame(
                [
                    WeightedSubspace(m.subspace, alpha * m.weight)
                    for m in frame.members
                ],
                frame.tol,
            )
            assert excess(scaled) == excess(frame)

    def test_excess_adds_over_orthogonal_direct_sums(self, rng):
        a = random_fusion_frame(rng, n=3, field=COMPLEX)
        b = random_fusion_frame(rng, n=4, field=COMPLEX)
        total = union(embed_blockwise(a, 7, 0), embed_blockwise(b, 7, 3))
        assert total.is_frame
        assert excess(total) == excess(a) + excess(b)


class TestUnion:
    def test_union_with_orthonormal_fusion_basis_shifts_redundancy_by_one(self, rng):
        for parts in (1, 2, 4):
            frame = random_fusion_frame(rng, n=4, field=COMPLEX)
            basis = random_orthogonal_decomposition(rng, 4, parts=parts)
            combined = union(frame, basis)
            low, high = redundancy_range(frame)
            lo2, hi2 = redundancy_range(combined)
            assert lo2 == pytest.approx(low + 1.0, abs=1e-9)
            assert hi2 == pytest.approx(high + 1.0, abs=1e-9)
            assert excess(combined) == excess(frame) + 4

    def test_union_redundancy_extremes_are_sub_and_superadditive(self, rng):
        for _ in range(10):
            a = random_fusion_frame(rng, n=4, field=REAL)
            b = random_fusion_frame(rng, n=4, field=REAL)
            la, ha = redundancy_range(a)
            lb, hb = redundancy_range(b)
            lu, hu = redundancy_range(union(a, b))
            assert lu >= la + lb - 1e-9
            assert hu <= ha + hb + 1e-9

    def test_union_requires_matching_spaces(self, rng):
        a = random_fusion_frame(rng, n=3, field=REAL)
        b = random_fusion_frame(rng, n=4, field=REAL)
        with pytest.raises(DimensionMismatch):
            union(a, b)


class TestErasure:
    def test_erase_returns_guaranteed_bound(self):
        frame = example_frame("7.3")
        remaining, guaranteed = erase(frame, [0, 2])
        assert remaining.member_count == 2
        assert guaranteed == pytest.approx(2.0 - 4.0 / 3.0, abs=1e-12)
        low, _ = redundancy_range(remaining)
        bounds = frame_bounds(remaining)
        assert bounds.lower == pytest.approx(4.0 / 3.0, abs=1e-9)
        assert bounds.lower >= guaranteed - 1e-9

    def test_erase_can_leave_bessel_only_family(self):
        frame = example_frame("7.3")
        remaining, guaranteed = erase(frame, [0, 1])
        assert guaranteed is None
        assert not remaining.is_frame

    def test_erase_rejects_bad_indices(self):
        frame = example_frame("7.2", 3)
        with pytest.raises(DimensionMismatch):
            erase(frame, [5])
        with pytest.raises(EmptyRemainder):
            erase(frame, [0, 1, 2])

    def test_certificate_for_weighted_coordinate_family(self):
        frame = example_frame("7.3")
        cert = erasure_certificate(frame, budget=2)
        assert cert.budget == 2
        assert cert.certified == 2
        assert cert.universal == 1
        assert cert.weight_rule == 2
        assert cert.rule == "weight-sum-bound"
        assert cert.mode == "exhaustive"
        assert max_robust_erasures(frame, budget=2) == 2

    def test_only_two_pairs_survive(self):
        frame = example_frame("7.3")
        surviving = []
        for i in range(4):
            for j in range(i + 1, 4):
                remaining, _ = erase(frame, [i, j])
                if remaining.is_frame:
                    surviving.append((i, j))
        assert surviving == [(0, 2), (1, 3)]

    def test_certificate_for_doubled_lines(self):
        frame = example_frame("7.1-V", 4)
        cert = erasure_certificate(frame, budget=1)
        assert cert.certified == 1
        assert cert.universal == 1
        both_copies_gone, _ = erase(frame, [0, 1])
        assert not both_copies_gone.is_frame

    def test_doubled_lines_spectral_rule_beats_weight_rule(self):
        frame = example_frame("7.1-V", 4)
        cert = erasure_certificate(frame, budget=2)
        assert cert.certified == 2
        assert cert.universal == 1
        assert cert.weight_rule == 1
        assert cert.rule == "spectral"

    def test_basis_certifies_zero(self):
        frame = example_frame("7.2", 4)
        cert = erasure_certificate(frame, budget=2)
        assert cert.certified == 0
        assert cert.universal == 0
        assert cert.rule == "none"

    def test_greedy_mode_is_a_sound_undercount(self):
        frame = example_frame("7.3")
        greedy = erasure_certificate(frame, budget=2, mode="greedy")
        exhaustive = erasure_certificate(frame, budget=2, mode="exhaustive")
        assert greedy.mode == "greedy"
        assert greedy.certified <= exhaustive.certified
        assert greedy.certified == 2

    def test_certificate_requires_frame(self):
        bessel = build_fusion_frame([(np.array([[1.0], [0.0]]), 1.0)], 2)
        with pytest.raises(NotAFusionFrame):
            erasure_certificate(bessel, budget=1)

    def test_random_frames_certified_levels_are_witnessed(self, rng):
        for _ in range(5):
            frame = random_fusion_frame(rng, n=3, members=5)
            cert = erasure_certificate(frame, budget=2)
            assert 0 <= cert.universal <= cert.certified <= cert.budget
            assert cert.weight_rule <= cert.certified


class TestOperatorImages:
    def test_identity_changes_nothing(self, rng):
        frame = random_fusion_frame(rng, n=4)
        report = operator_image_report(frame, np.eye(4))
        assert report.condition == pytest.approx(1.0, abs=1e-12)
        assert report.bounds_hold and report.redundancy_holds
        assert redundancy_equivalent(frame, report.image)

    def test_unitary_preserves_spectrum(self, rng):
        frame = random_fusion_frame(rng, n=4, field=COMPLEX)
        u = random_unitary(rng, 4, COMPLEX)
        report = operator_image_report(frame, u)
        assert report.condition == pytest.approx(1.0, abs=1e-9)
        original = frame_bounds(frame)
        assert report.computed_bounds.lower == pytest.approx(original.lower, abs=1e-9)
        assert report.computed_bounds.upper == pytest.approx(original.upper, abs=1e-9)

    def test_conditioning_brackets_hold(self, rng):
        for _ in range(10):
            frame = random_fusion_frame(rng, n=4)
            op = random_invertible(rng, 4, frame.field, condition=5.0)
            report = operator_image_report(frame, op)
            assert report.bounds_hold
            assert report.redundancy_holds

    def test_singular_operator_rejected(self, rng):
        frame = random_fusion_frame(rng, n=3)
        with pytest.raises(SingularOperator):
            apply_operator(frame, np.diag([1.0, 1.0, 0.0]))

    def test_complex_operator_on_real_frame_rejected(self, rng):
        frame = random_fusion_frame(rng, n=3, field=REAL)
        with pytest.raises(DimensionMismatch):
            apply_operator(frame, 1j * np.eye(3))


class TestRedundancyEquivalence:
    def test_permutation_invariance(self, rng):
        frame = random_fusion_frame(rng, n=4, members=5)
        permuted = FusionFrame(
            [frame.members[i] for i in rng.permutation(5)], frame.tol
        )
        assert redundancy_equivalent(frame, permuted, samples=16, rng=rng)

    def test_distinct_families_detected(self):
        assert not redundancy_equivalent(example_frame("7.1", 4), example_frame("7.2", 4))

    def test_dimension_mismatch_rejected(self, rng):
        with pytest.raises(DimensionMismatch):
            redundancy_equivalent(
                random_fusion_frame(rng, n=3, field=REAL),
                random_fusion_frame(rng, n=4, field=REAL),
            )


class TestProjectionDecomposition:
    def test_identity_splits_into_coordinate_projections(self):
        p1 = np.diag([1.0, 1.0, 0.0, 0.0])
        p2 = np.diag([0.0, 0.0, 1.0, 1.0])
        check = verify_projection_decomposition(np.eye(4), [p1, p2])
        assert check.is_decomposition
        assert check.common_rank == 2
        assert check.sum_residual < 1e-12
        assert check.trace_residual < 1e-12

    def test_random_projection_sums(self, rng):
        parts = [random_subspace(rng, 5, 2).projection() for _ in range(3)]
        t = sum(parts)
        check = verify_projection_decomposition(t, parts)
        assert check.is_decomposition
        assert check.common_rank == 2

    def test_rejects_non_projection(self):
        check = verify_projection_decomposition(np.eye(2), [np.array([[1.0, 1.0], [0.0, 1.0]])])
        assert not check.projections_valid
        assert not check.is_decomposition

    def test_rejects_wrong_sum(self):
        p = np.diag([1.0, 0.0])
        check = verify_projection_decomposition(np.eye(2), [p])
        assert check.projections_valid
        assert not check.is_decomposition

    def test_rejects_mixed_ranks(self):
        p1 = np.diag([1.0, 0.0, 0.0])
        p2 = np.diag([0.0, 1.0, 1.0])
        check = verify_projection_decomposition(np.eye(3), [p1, p2])
        assert check.common_rank is None
        assert not check.is_decomposition


@settings(deadline=None, max_examples=20)
@given(
    n=st.integers(min_value=2, max_value=5),
    members=st.integers(min_value=2, max_value=6),
    seed=st.integers(min_value=0, max_value=2**31 - 1),
)
def test_sampled_redundancy_always_inside_range(n, members, seed):
    gen = np.random.default_rng(seed)
    frame = random_fusion_frame(gen, n=n, members=members)
    low, high = redundancy_range(frame)
    values = redundancy_samples(frame, gen, 24)
    assert np.all(values >= low - 1e-9)
    assert np.all(values <= high + 1e-9)


@settings(deadline=None, max_examples=20)
@given(
    n=st.integers(min_value=2, max_value=5),
    seed=st.integers(min_value=0, max_value=2**31 - 1),
    alpha=st.floats(min_value=0.1, max_value=10.0, allow_nan=False),
)
def test_weight_scaling_never_changes_redundancy_or_excess(n, seed, alpha):
    gen = np.random.default_rng(seed)
    frame = random_fusion_frame(gen, n=n)
    scaled = FusionFrame(
        [WeightedSubspace(m.subspace, alpha * m.weight) for m in frame.members],
        frame.tol,
    )
    assert redundancy_equivalent(frame, scaled)
    assert excess(scaled) == excess(frame)
