"""Command-line driver.

Subcommands operate on frame documents (see :mod:`ffk.documents`) and
print canonical JSON to stdout.  Failures are reported as a one-line
JSON object on stderr with exit code 1; ``analyze`` exits with code 2
when the family is Bessel-only (an upper bound exists but no positive
lower one).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .documents import (
    FrameDocument,
    ReportDocument,
    canonical_json,
    emit_example,
    load_frame,
    sampled_consistency_checks,
)
from .duality import canonical_dual_fusion, canonical_ratio_bounds, verify_alternate_dual
from .errors import FrameError, LocalNotParseval, NotUniformWeights, ParseError
from .fusion import (
    classify,
    erasure_certificate,
    operator_image_report,
    redundancy_at,
)
from .numerics import COMPLEX, DEFAULT_TOLERANCE, Tolerance, sample_unit_vectors
from .systems import (
    check_local_additivity,
    parseval_equivalences,
    redundancy_one_equivalence,
)

ANALYZE_ERASURE_MEMBER_LIMIT = 12
ANALYZE_ERASURE_BUDGET_CAP = 4


def _fail(exc: Exception) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(payload), file=sys.stderr)
    return 1


def _tolerance(args) -> Tolerance:
    eig_rel = getattr(args, "tol_eig", None)
    if eig_rel is None:
        return DEFAULT_TOLERANCE
    return Tolerance(eig_rel=eig_rel)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_array(path: str, field: str, expect_matrix: bool):
    """Read a vector (or square matrix) of entries in the frame's field."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            tree = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    if isinstance(tree, dict):
        tree = tree.get("rows" if expect_matrix else "vector")
    if not isinstance(tree, list):
        raise ParseError(f"{path}: expected an array of entries")

    def entry(value, where):
        if field == COMPLEX:
            if not (isinstance(value, list) and len(value) == 2):
                raise ParseError(f"{path}: {where}: expected an [re, im] pair, got {value!r}")
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{path}: {where}: expected a number, got {value!r}")
        return float(value)

    if expect_matrix:
        rows = [
            [entry(value, f"rows[{r}][{c}]") for c, value in enumerate(row)]
            for r, row in enumerate(tree)
        ]
        return np.array(rows)
    return np.array([entry(value, f"[{i}]") for i, value in enumerate(tree)])


# --- subcommands -------------------------------------------------------------

def _cmd_analyze(args) -> int:
    tol = _tolerance(args)
    frame, _ = load_frame(args.frame, tol)
    report = classify(frame)
    erasure = None
    if frame.is_frame and frame.member_count <= ANALYZE_ERASURE_MEMBER_LIMIT:
        budget = min(frame.member_count - 1, ANALYZE_ERASURE_BUDGET_CAP)
        if budget > 0:
            erasure = erasure_certificate(frame, budget)
    document = ReportDocument.from_analysis(
        report,
        seed=args.seed,
        tol=tol,
        erasure=erasure,
        sampled_checks=sampled_consistency_checks(frame, args.seed),
    )
    text = document.to_json_text()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 2 if report.bessel_only else 0


def _cmd_redundancy(args) -> int:
    frame, _ = load_frame(args.frame)
    x = _load_array(args.at, frame.field, expect_matrix=False)
    value = redundancy_at(frame, x)
    print(canonical_json({"redundancy": value}), end="")
    return 0


def _cmd_dual(args) -> int:
    frame, _ = load_frame(args.frame)
    dual = canonical_dual_fusion(frame)
    _write_or_print(FrameDocument.from_fusion_frame(dual).to_json_text(), args.out)
    rng = np.random.default_rng(args.seed)
    try:
        check = canonical_ratio_bounds(frame, rng, samples=args.samples)
        summary = {
            "applicable": True,
            "lower": check.lower,
            "observed": [check.observed[0], check.observed[1]],
            "upper": check.upper,
            "holds": check.holds,
            "samples": check.samples,
            "seed": args.seed,
        }
    except NotUniformWeights as exc:
        summary = {"applicable": False, "reason": str(exc)}
    if args.out:
        sys.stdout.write(canonical_json({"dual_written": args.out, "ratio_bounds": summary}))
    else:
        sys.stderr.write(canonical_json({"ratio_bounds": summary}))
    return 0


def _cmd_verify_dual(args) -> int:
    frame, _ = load_frame(args.frame)
    candidate, _ = load_frame(args.candidate)
    certificate = verify_alternate_dual(frame, candidate)
    print(
        canonical_json(
            {
                "residual": certificate.residual,
                "is_dual": certificate.is_dual,
                "bessel_bound": certificate.bessel_bound,
            }
        ),
        end="",
    )
    return 0


def _cmd_erasure(args) -> int:
    frame, _ = load_frame(args.frame)
    mode = "exhaustive" if args.exhaustive else ("greedy" if args.greedy else None)
    certificate = erasure_certificate(frame, args.budget, mode)
    print(
        canonical_json(
            {
                "budget": certificate.budget,
                "certified": certificate.certified,
                "universal": certificate.universal,
                "weight_rule": certificate.weight_rule,
                "rule": certificate.rule,
                "mode": certificate.mode,
            }
        ),
        end="",
    )
    return 0


def _cmd_transform(args) -> int:
    frame, _ = load_frame(args.frame)
    U = _load_array(args.operator, frame.field, expect_matrix=True)
    report = operator_image_report(frame, U)
    if args.out:
        _write_or_print(FrameDocument.from_fusion_frame(report.image).to_json_text(), args.out)
    print(
        canonical_json(
            {
                "condition": report.condition,
                "predicted_bounds": [report.predicted_bounds[0], report.predicted_bounds[1]],
                "computed_bounds": [report.computed_bounds.lower, report.computed_bounds.upper],
                "bounds_hold": report.bounds_hold,
                "redundancy_brackets": [
                    [report.redundancy_brackets[0][0], report.redundancy_brackets[0][1]],
                    [report.redundancy_brackets[1][0], report.redundancy_brackets[1][1]],
                ],
                "image_redundancy": [report.image_redundancy[0], report.image_redundancy[1]],
                "redundancy_holds": report.redundancy_holds,
                "image_written": args.out,
            }
        ),
        end="",
    )
    return 0


def _cmd_system(args) -> int:
    frame, system = load_frame(args.frame)
    if system is None:
        raise ParseError("the frame document carries no local_frames")
    rng = np.random.default_rng(args.seed)
    X = sample_unit_vectors(rng, frame.ambient_dim, args.samples, frame.field)
    worst_gap = 0.0
    orthogonal = True
    for row in X:
        check = check_local_additivity(system, row)
        worst_gap = max(worst_gap, abs(check.fusion_value - check.local_sum))
        orthogonal = check.orthogonal_locals
    tree = {
        "seed": args.seed,
        "samples": args.samples,
        "additivity": {
            "orthogonal_locals": orthogonal,
            "max_gap": worst_gap,
            "additive": worst_gap <= 1e-9,
        },
    }
    try:
        parseval = parseval_equivalences(system)
        tree["parseval_equivalence"] = {
            "applicable": True,
            "global_parseval": parseval.global_parseval,
            "fusion_parseval": parseval.fusion_parseval,
            "consistent": parseval.consistent,
        }
    except LocalNotParseval as exc:
        tree["parseval_equivalence"] = {"applicable": False, "reason": str(exc)}
    try:
        ones = redundancy_one_equivalence(system)
        tree["redundancy_one"] = {
            "applicable": True,
            "flat_parseval": ones.flat_parseval,
            "fusion_redundancy_one": ones.fusion_redundancy_one,
            "consistent": ones.consistent,
        }
    except (LocalNotParseval, NotUniformWeights) as exc:
        tree["redundancy_one"] = {"applicable": False, "reason": str(exc)}
    print(canonical_json(tree), end="")
    return 0


def _cmd_example(args) -> int:
    document = emit_example(args.name, args.n)
    _write_or_print(document.to_json_text(), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffk",
        description="Analyze finite fusion frames: bounds, redundancy, duals, erasures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify a frame document")
    analyze.add_argument("frame")
    analyze.add_argument("--report", help="also write the report to this path")
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--tol-eig", type=float, dest="tol_eig", default=None)
    analyze.set_defaults(handler=_cmd_analyze)

    redundancy = sub.add_parser("redundancy", help="pointwise redundancy at a unit vector")
    redundancy.add_argument("frame")
    redundancy.add_argument("--at", required=True, help="path to a JSON vector")
    redundancy.set_defaults(handler=_cmd_redundancy)

    dual = sub.add_parser("dual", help="canonical dual family")
    dual.add_argument("frame")
    dual.add_argument("--canonical", action="store_true", required=True)
    dual.add_argument("--out", help="write the dual frame document here")
    dual.add_argument("--seed", type=int, default=0)
    dual.add_argument("--samples", type=int, default=1000)
    dual.set_defaults(handler=_cmd_dual)

    verify = sub.add_parser("verify-dual", help="test a candidate dual family")
    verify.add_argument("frame")
    verify.add_argument("candidate")
    verify.set_defaults(handler=_cmd_verify_dual)

    erasure = sub.add_parser("erasure", help="erasure robustness certificate")
    erasure.add_argument("frame")
    erasure.add_argument("--budget", type=int, default=None)
    group = erasure.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--greedy", action="store_true")
    erasure.set_defaults(handler=_cmd_erasure)

    transform = sub.add_parser("transform", help="apply an invertible operator")
    transform.add_argument("frame")
    transform.add_argument("--operator", required=True, help="path to a JSON matrix")
    transform.add_argument("--out", help="write the image frame document here")
    transform.set_defaults(handler=_cmd_transform)

    system = sub.add_parser("system", help="local-frame checks for a system document")
    system.add_argument("frame")
    system.add_argument("--seed", type=int, default=0)
    system.add_argument("--samples", type=int, default=100)
    system.set_defaults(handler=_cmd_system)

    example = sub.add_parser("example", help="emit a built-in example document")
    example.add_argument("--name", required=True)
    example.add_argument("-n", type=int, default=None, help="dimension for scalable presets")
    example.add_argument("--out", help="write the document here")
    example.set_defaults(handler=_cmd_example)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FrameError as exc:
        return _fail(exc)
    except OSError as exc:
        return _fail(exc)
    except ValueError as exc:
        return _fail(exc)


if __name__ == "__main__":
    raise SystemExit(main())
