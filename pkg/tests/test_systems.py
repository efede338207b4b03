import math

import numpy as np
import pytest

from ffk.errors import (
    LocalNotAFrame,
    LocalNotParseval,
    MemberCountMismatch,
    NotUniformWeights,
    VectorOutsideSubspace,
)
from ffk.fusion import build_fusion_frame, fusion_frame_operator
from ffk.gallery import example_frame
from ffk.generators import (
    random_fusion_frame,
    random_orthogonal_decomposition,
    random_parseval_fusion_frame,
    random_system,
)
from ffk.numerics import COMPLEX, sample_unit_vectors
from ffk.systems import (
    FusionFrameSystem,
    build_system,
    check_local_additivity,
    parseval_equivalences,
    redundancy_one_equivalence,
)
from ffk.vector_frames import VectorFrame


def basis_locals(frame):
    """One exact orthonormal basis per member: the tightest local choice."""
    return [
        [member.subspace.basis[:, j] for j in range(member.subspace.dim)]
        for member in frame.members
    ]


def overcomplete_plane_system():
    """Plane-plus-axis frame whose plane family is slanted and overcomplete."""
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    e3 = np.array([0.0, 0.0, 1.0])
    frame = build_fusion_frame(
        [(np.stack([e1, e2], axis=1), 1.0), (e3[:, None], 1.0)], 3
    )
    locals_ = [[e1, e2, (e1 + e2) / math.sqrt(2)], [e3]]
    return build_system(frame, locals_)


class TestConstruction:
    def test_happy_path(self):
        frame = example_frame("7.2", 3)
        system = build_system(frame, basis_locals(frame))
        assert len(system.local_frames) == frame.member_count

    def test_wrong_local_count(self):
        frame = example_frame("7.2", 3)
        with pytest.raises(MemberCountMismatch):
            build_system(frame, basis_locals(frame)[:-1])

    def test_local_vector_outside_subspace(self):
        frame = example_frame("7.2", 3)
        locals_ = basis_locals(frame)
        locals_[0] = [np.array([0.0, 1.0, 0.0])]  # second axis claimed for the first
        with pytest.raises(VectorOutsideSubspace):
            build_system(frame, locals_)

    def test_local_family_must_span_its_subspace(self):
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.array([0.0, 1.0, 0.0])
        e3 = np.array([0.0, 0.0, 1.0])
        frame = build_fusion_frame(
            [(np.stack([e1, e2], axis=1), 1.0), (e3[:, None], 1.0)], 3
        )
        with pytest.raises(LocalNotAFrame):
            build_system(frame, [[e1], [e3]])

    def test_local_in_wrong_ambient_dimension(self):
        frame = example_frame("7.2", 3)
        bad = VectorFrame([np.array([1.0, 0.0])], require_spanning=False)
        with pytest.raises(MemberCountMismatch):
            FusionFrameSystem(frame, [bad] * frame.member_count)


class TestLocalAdditivity:
    def test_orthogonal_locals_make_redundancy_additive(self, rng):
        for _ in range(10):
            frame = random_fusion_frame(rng, n=4)
            system = random_system(rng, frame, kind="orthogonal")
            for x in sample_unit_vectors(rng, 4, 5, frame.field):
                check = check_local_additivity(system, x)
                assert check.orthogonal_locals
                assert check.equal
                assert check.fusion_value == pytest.approx(check.local_sum, abs=1e-9)

    def test_scaled_orthogonal_locals_still_additive(self, rng):
        """Orthogonality of the local family suffices; norms are irrelevant."""
        frame = random_orthogonal_decomposition(rng, 5, parts=2)
        scaled = [
            [3.0 * member.subspace.basis[:, j] for j in range(member.subspace.dim)]
            for member in frame.members
        ]
        system = build_system(frame, scaled)
        x = sample_unit_vectors(rng, 5, 1, frame.field)[0]
        check = check_local_additivity(system, x)
        assert check.orthogonal_locals and check.equal

    def test_slanted_overcomplete_locals_break_additivity(self):
        system = overcomplete_plane_system()
        x = np.array([1.0, 1.0, 0.0]) / math.sqrt(2)
        check = check_local_additivity(system, x)
        assert not check.orthogonal_locals
        assert not check.equal
        assert check.fusion_value == pytest.approx(1.0, abs=1e-12)
        assert check.local_sum == pytest.approx(2.0, abs=1e-12)
        assert abs(check.fusion_value - check.local_sum) > 1e-3


class TestParsevalEquivalences:
    def test_weighted_coordinate_family_is_consistently_non_parseval(self):
        frame = example_frame("7.3")
        system = build_system(frame, basis_locals(frame))
        check = parseval_equivalences(system)
        assert not check.global_parseval
        assert not check.fusion_parseval
        assert check.consistent

    def test_parseval_fusion_frame_flattens_to_parseval(self, rng):
        frame = random_parseval_fusion_frame(rng, n=5, layers=2)
        system = build_system(frame, basis_locals(frame))
        check = parseval_equivalences(system)
        assert check.global_parseval
        assert check.fusion_parseval
        assert check.consistent

    def test_parseval_locals_required(self, rng):
        frame = random_parseval_fusion_frame(rng, n=4, layers=2)
        system = random_system(rng, frame, kind="orthogonal")
        with pytest.raises(LocalNotParseval):
            parseval_equivalences(system)

    def test_overcomplete_parseval_locals_accepted(self, rng):
        frame = random_parseval_fusion_frame(rng, n=4, layers=2)
        system = random_system(rng, frame, kind="parseval")
        assert parseval_equivalences(system).consistent

    def test_consistency_is_generic(self, rng):
        for _ in range(20):
            frame = random_fusion_frame(rng, n=4)
            system = random_system(rng, frame, kind="parseval")
            assert parseval_equivalences(system).consistent


class TestRedundancyOneEquivalence:
    def test_orthonormal_fusion_basis(self, rng):
        frame = random_orthogonal_decomposition(rng, 5, parts=3)
        system = build_system(frame, basis_locals(frame))
        check = redundancy_one_equivalence(system)
        assert check.flat_parseval
        assert check.fusion_redundancy_one
        assert check.consistent

    def test_doubled_lines_are_consistently_overcomplete(self):
        frame = example_frame("7.1-V", 4)
        system = build_system(frame, basis_locals(frame))
        check = redundancy_one_equivalence(system)
        assert not check.flat_parseval
        assert not check.fusion_redundancy_one
        assert check.consistent

    def test_weighted_family_rejected(self):
        frame = example_frame("7.3")
        system = build_system(frame, basis_locals(frame))
        with pytest.raises(NotUniformWeights):
            redundancy_one_equivalence(system)

    def test_non_parseval_locals_rejected(self, rng):
        frame = random_orthogonal_decomposition(rng, 4, parts=2)
        scaled = [
            [2.0 * member.subspace.basis[:, j] for j in range(member.subspace.dim)]
            for member in frame.members
        ]
        system = build_system(frame, scaled)
        with pytest.raises(LocalNotParseval):
            redundancy_one_equivalence(system)


class TestFlattenedOperator:
    def test_weighted_flattening_reproduces_fusion_operator(self, rng):
        """With Parseval locals {v_i f_ij} has the fusion frame operator."""
        frame = random_fusion_frame(rng, n=4, field=COMPLEX)
        system = random_system(rng, frame, kind="parseval")
        flat = np.concatenate(
            [
                member.weight * local.matrix
                for member, local in zip(frame.members, system.local_frames)
            ],
            axis=1,
        )
        assert np.allclose(
            flat @ flat.conj().T, fusion_frame_operator(frame), atol=1e-9
        )
