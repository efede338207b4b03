"""Frame and report documents: a small, stable JSON wire format.

Frame documents declare a scalar field, an ambient dimension, and one
entry per weighted subspace whose vectors are coordinate rows spanning
the subspace (orthonormality is not required; spans are orthonormalized
on load).  Complex entries are two-element ``[re, im]`` arrays, real
entries are plain numbers.  Serialization is canonical: fixed key
order, two-space indentation, and floats printed with 17 significant
digits so every double round-trips exactly and equal documents emit
byte-identical text.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import (
    MemberCountMismatch,
    NonPositiveWeight,
    ParseError,
    SchemaVersionUnsupported,
)
from .fusion import (
    AnalysisReport,
    ErasureCertificate,
    FusionFrame,
    build_fusion_frame,
    fusion_frame_operator,
)
from .gallery import example_frame
from .numerics import COMPLEX, DEFAULT_TOLERANCE, REAL, Tolerance, sample_unit_vectors
from .systems import FusionFrameSystem, build_system

SCHEMA_VERSION = "ffk/1"


# --- canonical JSON --------------------------------------------------------

def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    text = format(float(value), ".17g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def _render(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            return "[]"
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in items):
            return "[" + ", ".join(_render(x, 0) for x in items) + "]"
        body = ",\n".join(inner + _render(x, indent + 1) for x in items)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{inner}{json.dumps(str(key))}: {_render(item, indent + 1)}"
            for key, item in value.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(tree) -> str:
    """Deterministic JSON text for a tree of plain Python values."""
    return _render(tree, 0) + "\n"


# --- parse helpers ----------------------------------------------------------

def _expect_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{path}: expected an array, got {type(value).__name__}")
    return value


def _expect_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ParseError(f"{path}: number must be finite, got {value!r}")
    return float(value)


def _expect_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{path}: expected an integer, got {value!r}")
    return value


def _parse_entry(entry, field: str, path: str):
    if field == REAL:
        return _expect_number(entry, path)
    pair = _expect_list(entry, path)
    if len(pair) != 2:
        raise ParseError(f"{path}: expected an [re, im] pair, got {entry!r}")
    return complex(_expect_number(pair[0], path + "[0]"), _expect_number(pair[1], path + "[1]"))


def _entry_tree(value, field: str):
    if field == REAL:
        return float(np.real(value))
    z = complex(value)
    return [z.real, z.imag]


def _parse_vector_rows(rows, field: str, dimension: int, path: str) -> tuple:
    rows = _expect_list(rows, path)
    if not rows:
        raise ParseError(f"{path}: a subspace needs at least one spanning vector")
    parsed = []
    for r, row in enumerate(rows):
        entries = _expect_list(row, f"{path}[{r}]")
        if len(entries) != dimension:
            raise ParseError(
                f"{path}[{r}]: vector has {len(entries)} entries, expected {dimension}"
            )
        parsed.append(
            tuple(_parse_entry(entry, field, f"{path}[{r}][{e}]") for e, entry in enumerate(entries))
        )
    return tuple(parsed)


# --- frame documents --------------------------------------------------------

@dataclass(frozen=True)
class DocumentSubspace:
    """One serialized member: a weight and spanning vectors (as rows)."""

    weight: float
    vectors: tuple

    def __post_init__(self):
        if not math.isfinite(self.weight) or self.weight <= 0.0:
            raise NonPositiveWeight(f"weight must be strictly positive, got {self.weight!r}")


@dataclass(frozen=True)
class FrameDocument:
    """Serialized fusion frame (optionally with local frames)."""

    field: str
    dimension: int
    subspaces: tuple[DocumentSubspace, ...]
    local_frames: tuple | None = None
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise SchemaVersionUnsupported(
                f"schema_version {self.schema_version!r} is not supported (expected {SCHEMA_VERSION!r})"
            )
        if self.field not in (REAL, COMPLEX):
            raise ParseError(f"field: expected 'real' or 'complex', got {self.field!r}")
        if self.dimension < 1:
            raise ParseError(f"dimension: must be a positive integer, got {self.dimension!r}")
        if not self.subspaces:
            raise ParseError("subspaces: a frame document needs at least one subspace")
        if self.local_frames is not None and len(self.local_frames) != len(self.subspaces):
            raise MemberCountMismatch(
                f"local_frames has {len(self.local_frames)} entries for {len(self.subspaces)} subspaces"
            )

    # -- construction ---------------------------------------------------

    @classmethod
    def from_json_text(cls, text: str) -> "FrameDocument":
        try:
            tree = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        root = _expect_dict(tree, "document")
        version = root.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionUnsupported(
                f"schema_version {version!r} is not supported (expected {SCHEMA_VERSION!r})"
            )
        field = root.get("field")
        if field not in (REAL, COMPLEX):
            raise ParseError(f"field: expected 'real' or 'complex', got {field!r}")
        dimension = _expect_int(root.get("dimension"), "dimension")
        members = []
        for i, item in enumerate(_expect_list(root.get("subspaces"), "subspaces")):
            entry = _expect_dict(item, f"subspaces[{i}]")
            weight = _expect_number(entry.get("weight"), f"subspaces[{i}].weight")
            vectors = _parse_vector_rows(
                entry.get("vectors"), field, dimension, f"subspaces[{i}].vectors"
            )
            try:
                members.append(DocumentSubspace(weight, vectors))
            except NonPositiveWeight as exc:
                raise NonPositiveWeight(f"subspaces[{i}]: {exc}") from exc
        local_frames = None
        if "local_frames" in root and root["local_frames"] is not None:
            local_frames = tuple(
                _parse_vector_rows(rows, field, dimension, f"local_frames[{i}]")
                for i, rows in enumerate(_expect_list(root["local_frames"], "local_frames"))
            )
        return cls(
            field=field,
            dimension=dimension,
            subspaces=tuple(members),
            local_frames=local_frames,
        )

    @classmethod
    def from_fusion_frame(
        cls, frame: FusionFrame, system: FusionFrameSystem | None = None
    ) -> "FrameDocument":
        def _scalar(value, field):
            return complex(value) if field == COMPLEX else float(np.real(value))

        def columns(matrix) -> tuple:
            return tuple(
                tuple(_scalar(matrix[r, c], frame.field) for r in range(matrix.shape[0]))
                for c in range(matrix.shape[1])
            )

        members = tuple(
            DocumentSubspace(m.weight, columns(m.subspace.basis)) for m in frame.members
        )
        local_frames = None
        if system is not None:
            local_frames = tuple(columns(local.matrix) for local in system.local_frames)
        return cls(
            field=frame.field,
            dimension=frame.ambient_dim,
            subspaces=members,
            local_frames=local_frames,
        )

    # -- output -----------------------------------------------------------

    def to_tree(self) -> dict:
        tree = {
            "schema_version": self.schema_version,
            "field": self.field,
            "dimension": self.dimension,
            "subspaces": [
                {
                    "weight": member.weight,
                    "vectors": [
                        [_entry_tree(entry, self.field) for entry in row]
                        for row in member.vectors
                    ],
                }
                for member in self.subspaces
            ],
        }
        if self.local_frames is not None:
            tree["local_frames"] = [
                [[_entry_tree(entry, self.field) for entry in row] for row in rows]
                for rows in self.local_frames
            ]
        return tree

    def to_json_text(self) -> str:
        return canonical_json(self.to_tree())

    # -- realization -------------------------------------------------------

    def build(self, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[FusionFrame, FusionFrameSystem | None]:
        dtype = np.complex128 if self.field == COMPLEX else np.float64
        spans = [
            (np.array(member.vectors, dtype=dtype).T, member.weight)
            for member in self.subspaces
        ]
        frame = build_fusion_frame(spans, self.dimension, tol)
        system = None
        if self.local_frames is not None:
            system = build_system(
                frame,
                [[np.array(row, dtype=dtype) for row in rows] for rows in self.local_frames],
            )
        return frame, system


def load_frame(path, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[FusionFrame, FusionFrameSystem | None]:
    """Read a frame document and realize it (frame plus optional system)."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return FrameDocument.from_json_text(text).build(tol)


def emit_example(name: str, n: int | None = None) -> FrameDocument:
    """Serialize a catalog example as a frame document."""
    return FrameDocument.from_fusion_frame(example_frame(name, n))


# --- report documents --------------------------------------------------------

FLAG_ORDER = (
    "tight",
    "parseval",
    "uniform_weights",
    "orthonormal_fusion_basis",
    "minimal",
    "uniform_redundancy",
    "bessel_only",
)


@dataclass(frozen=True)
class ReportDocument:
    """Serialized analysis outcome, mirroring the in-memory report."""

    bounds_lower: float | None
    bounds_upper: float
    redundancy: tuple[float, float]
    flags: tuple[tuple[str, bool], ...]
    excess: int
    erasure: tuple | None
    seed: int
    tolerances: tuple[tuple[str, float], ...]
    sampled_checks: tuple | None
    tool_version: str = __version__

    @classmethod
    def from_analysis(
        cls,
        report: AnalysisReport,
        seed: int,
        tol: Tolerance,
        erasure: ErasureCertificate | None = None,
        sampled_checks: dict | None = None,
    ) -> "ReportDocument":
        flags = tuple((name, bool(getattr(report, name))) for name in FLAG_ORDER)
        erasure_items = None
        if erasure is not None:
            erasure_items = (
                ("budget", erasure.budget),
                ("certified", erasure.certified),
                ("universal", erasure.universal),
                ("weight_rule", erasure.weight_rule),
                ("rule", erasure.rule),
                ("mode", erasure.mode),
            )
        sampled_items = tuple(sampled_checks.items()) if sampled_checks is not None else None
        return cls(
            bounds_lower=report.bounds.lower,
            bounds_upper=report.bounds.upper,
            redundancy=(report.redundancy[0], report.redundancy[1]),
            flags=flags,
            excess=report.excess,
            erasure=erasure_items,
            seed=seed,
            tolerances=(
                ("rank_rel", tol.rank_rel),
                ("eig_rel", tol.eig_rel),
                ("recon_abs", tol.recon_abs),
            ),
            sampled_checks=sampled_items,
        )

    @classmethod
    def from_json_text(cls, text: str) -> "ReportDocument":
        try:
            tree = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        root = _expect_dict(tree, "report")
        bounds = _expect_dict(root.get("bounds"), "bounds")
        lower = bounds.get("lower")
        rng_pair = _expect_list(root.get("redundancy_range"), "redundancy_range")
        flags_dict = _expect_dict(root.get("flags"), "flags")
        erasure = None
        if root.get("erasure") is not None:
            erasure = tuple(_expect_dict(root["erasure"], "erasure").items())
        sampled = None
        if root.get("sampled_checks") is not None:
            sampled = tuple(_expect_dict(root["sampled_checks"], "sampled_checks").items())
        return cls(
            bounds_lower=None if lower is None else _expect_number(lower, "bounds.lower"),
            bounds_upper=_expect_number(bounds.get("upper"), "bounds.upper"),
            redundancy=(
                _expect_number(rng_pair[0], "redundancy_range[0]"),
                _expect_number(rng_pair[1], "redundancy_range[1]"),
            ),
            flags=tuple((name, bool(flags_dict.get(name))) for name in FLAG_ORDER),
            excess=_expect_int(root.get("excess"), "excess"),
            erasure=erasure,
            seed=_expect_int(root.get("seed"), "seed"),
            tolerances=tuple(
                (name, _expect_number(value, f"tolerances.{name}"))
                for name, value in _expect_dict(root.get("tolerances"), "tolerances").items()
            ),
            sampled_checks=sampled,
            tool_version=str(root.get("tool_version")),
        )

    def to_tree(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "bounds": {"lower": self.bounds_lower, "upper": self.bounds_upper},
            "redundancy_range": [self.redundancy[0], self.redundancy[1]],
            "flags": dict(self.flags),
            "excess": self.excess,
            "erasure": dict(self.erasure) if self.erasure is not None else None,
            "sampled_checks": dict(self.sampled_checks) if self.sampled_checks is not None else None,
        }

    def to_json_text(self) -> str:
        return canonical_json(self.to_tree())


def sampled_consistency_checks(frame: FusionFrame, seed: int, count: int = 64) -> dict:
    """Seeded spot checks recorded in analysis reports.

    Compares the quadratic-form redundancy against the direct projection
    sum at sampled unit vectors, and verifies the weighted energy lands
    inside the computed bounds.
    """
    rng = np.random.default_rng(seed)
    X = sample_unit_vectors(rng, frame.ambient_dim, count, frame.field)
    S1 = fusion_frame_operator(frame, normalized=True)
    quadratic = np.einsum("ij,jk,ik->i", X.conj(), S1, X).real
    direct = np.zeros(count)
    for member in frame.members:
        direct += np.linalg.norm(X @ member.subspace.basis.conj(), axis=1) ** 2
    S = fusion_frame_operator(frame)
    energy = np.einsum("ij,jk,ik->i", X.conj(), S, X).real
    low, high = frame._operator_range
    slack = frame.tol.eig_rel * max(1.0, high)
    lower_ok = (not frame.is_frame) or bool(np.all(energy >= low - slack))
    return {
        "samples": count,
        "max_rayleigh_deviation": float(np.abs(quadratic - direct).max()),
        "energy_bounds_ok": bool(lower_ok and np.all(energy <= high + slack)),
    }
