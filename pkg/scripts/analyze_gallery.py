#!/usr/bin/env python3
"""Tabulate the built-in example families across ambient dimensions.

Usage:
    python scripts/analyze_gallery.py [--dims 2 4 8] [--budget 2]
"""

import argparse

from ffk.fusion import erasure_certificate
from ffk.gallery import EXAMPLE_NAMES, example_frame
from ffk.fusion import classify

COLUMNS = (
    ("example", 8),
    ("n", 3),
    ("members", 7),
    ("bounds", 18),
    ("redundancy", 18),
    ("excess", 6),
    ("tight", 5),
    ("parseval", 8),
    ("minimal", 7),
    ("erasures", 8),
)


def format_row(values) -> str:
    return "  ".join(str(v).ljust(width) for (_, width), v in zip(COLUMNS, values))


def describe(name: str, n: int | None, budget: int) -> tuple:
    frame = example_frame(name, n)
    report = classify(frame)
    certificate = erasure_certificate(frame, budget=budget)
    bounds = f"[{report.bounds.lower:.4g}, {report.bounds.upper:.4g}]"
    redundancy = f"[{report.redundancy[0]:.4g}, {report.redundancy[1]:.4g}]"
    return (
        name,
        frame.ambient_dim,
        frame.member_count,
        bounds,
        redundancy,
        report.excess,
        "yes" if report.tight else "no",
        "yes" if report.parseval else "no",
        "yes" if report.minimal else "no",
        certificate.certified,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8])
    parser.add_argument("--budget", type=int, default=2)
    args = parser.parse_args()

    print(format_row(header for header, _ in COLUMNS))
    print(format_row("-" * width for _, width in COLUMNS))
    for name in EXAMPLE_NAMES:
        if name == "7.3":
            print(format_row(describe(name, None, args.budget)))
            continue
        for n in args.dims:
            print(format_row(describe(name, n, args.budget)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
