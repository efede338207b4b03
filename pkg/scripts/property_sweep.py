#!/usr/bin/env python3
"""Random property sweep over generated frames.

For each generated frame the sweep checks:
  * sampled redundancy values stay inside the computed extremes,
  * adjoining an orthonormal fusion basis shifts both extremes by one,
  * the canonical dual satisfies the reconstruction identity,
  * invertible images respect the conditioning brackets.

Usage:
    python scripts/property_sweep.py [--count 100] [--seed 0] [--field real|complex]
"""

import argparse
from dataclasses import dataclass

import numpy as np

from ffk.duality import canonical_dual_fusion, verify_alternate_dual
from ffk.fusion import (
    operator_image_report,
    redundancy_range,
    redundancy_samples,
    union,
)
from ffk.generators import (
    random_fusion_frame,
    random_invertible,
    random_orthogonal_decomposition,
)


@dataclass(frozen=True)
class SweepConfig:
    count: int = 100
    seed: int = 0
    field: str | None = None
    samples: int = 64
    max_dim: int = 6


def run_sweep(config: SweepConfig) -> dict:
    rng = np.random.default_rng(config.seed)
    tallies = {"containment": 0, "union_shift": 0, "dual": 0, "operator": 0}
    failures = []
    for index in range(config.count):
        n = int(rng.integers(2, config.max_dim + 1))
        frame = random_fusion_frame(rng, n=n, field=config.field)

        low, high = redundancy_range(frame)
        values = redundancy_samples(frame, rng, config.samples)
        if values.min() >= low - 1e-9 and values.max() <= high + 1e-9:
            tallies["containment"] += 1
        else:
            failures.append((index, "containment"))

        basis = random_orthogonal_decomposition(rng, n, field=frame.field)
        lo2, hi2 = redundancy_range(union(frame, basis))
        if abs(lo2 - low - 1.0) <= 1e-9 and abs(hi2 - high - 1.0) <= 1e-9:
            tallies["union_shift"] += 1
        else:
            failures.append((index, "union_shift"))

        certificate = verify_alternate_dual(frame, canonical_dual_fusion(frame))
        if certificate.is_dual:
            tallies["dual"] += 1
        else:
            failures.append((index, "dual"))

        operator = random_invertible(rng, n, frame.field, condition=float(rng.uniform(1, 10)))
        outcome = operator_image_report(frame, operator)
        if outcome.bounds_hold and outcome.redundancy_holds:
            tallies["operator"] += 1
        else:
            failures.append((index, "operator"))
    return {"tallies": tallies, "failures": failures}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--field", choices=["real", "complex"], default=None)
    parser.add_argument("--samples", type=int, default=64)
    args = parser.parse_args()

    config = SweepConfig(
        count=args.count, seed=args.seed, field=args.field, samples=args.samples
    )
    outcome = run_sweep(config)
    for name, passed in outcome["tallies"].items():
        print(f"{name:12s} {passed}/{config.count}")
    if outcome["failures"]:
        for index, check in outcome["failures"]:
            print(f"FAIL frame {index}: {check}")
        return 1
    print("all checks passed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
