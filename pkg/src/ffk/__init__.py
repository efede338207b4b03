"""Finite frame and fusion frame analysis.

Frame bounds, pointwise redundancy and its extremes, canonical and
alternate duals, erasure robustness, excess, and local-frame systems,
with a JSON document format and a command-line driver.
"""

__version__ = "0.1.0"

from .errors import FrameError
from .numerics import DEFAULT_TOLERANCE, FrameBounds, Tolerance
from .vector_frames import (
    VectorFrame,
    VectorFrameReport,
    alternate_dual,
    analyze_vector_frame,
    canonical_dual,
    check_norm_inequality,
    dual_redundancy_sandwich,
    frame_operator,
    redundancy_function,
    vector_redundancy_range,
)
from .fusion import (
    AnalysisReport,
    ErasureCertificate,
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
    redundancy_at,
    redundancy_equivalent,
    redundancy_range,
    synthesis_matrix,
    union,
    verify_projection_decomposition,
)
from .duality import (
    DualCertificate,
    alternate_dual_bounds,
    canonical_dual_fusion,
    canonical_ratio_bounds,
    verify_alternate_dual,
)
from .systems import (
    FusionFrameSystem,
    build_system,
    check_local_additivity,
    parseval_equivalences,
    redundancy_one_equivalence,
)
from .documents import FrameDocument, ReportDocument, emit_example, load_frame
from .gallery import EXAMPLE_NAMES, example_frame

__all__ = [
    "AnalysisReport",
    "DualCertificate",
    "DEFAULT_TOLERANCE",
    "ErasureCertificate",
    "EXAMPLE_NAMES",
    "FrameBounds",
    "FrameDocument",
    "FrameError",
    "FusionFrame",
    "FusionFrameSystem",
    "ReportDocument",
    "Subspace",
    "Tolerance",
    "VectorFrame",
    "VectorFrameReport",
    "WeightedSubspace",
    "alternate_dual",
    "alternate_dual_bounds",
    "analyze_vector_frame",
    "apply_operator",
    "build_fusion_frame",
    "build_system",
    "canonical_dual",
    "canonical_dual_fusion",
    "canonical_ratio_bounds",
    "check_local_additivity",
    "check_norm_inequality",
    "classify",
    "dual_redundancy_sandwich",
    "emit_example",
    "erase",
    "erasure_certificate",
    "example_frame",
    "excess",
    "frame_bounds",
    "frame_operator",
    "fusion_frame_operator",
    "is_minimal",
    "load_frame",
    "max_robust_erasures",
    "parseval_equivalences",
    "redundancy_at",
    "redundancy_equivalent",
    "redundancy_function",
    "redundancy_one_equivalence",
    "redundancy_range",
    "synthesis_matrix",
    "union",
    "vector_redundancy_range",
    "verify_alternate_dual",
    "verify_projection_decomposition",
]
