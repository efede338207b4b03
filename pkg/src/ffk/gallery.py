"""Built-in example families, addressable by catalog name.

Four presets are provided:

``7.1``    in dimension n: the span of the first coordinate vector
           repeated n+1 times, followed by the remaining coordinate
           spans once each; unit weights.  Redundancy range (1, n+1).
``7.1-V``  in dimension n: every coordinate span repeated twice, unit
           weights.  A 2-tight family with redundancy identically 2.
``7.2``    in dimension n: the coordinate spans once each, unit
           weights: an orthonormal fusion basis.
``7.3``    a fixed complex 5-dimensional family of four subspaces with
           two distinct weights; 2-tight with redundancy identically 2
           but robust only against selected erasures.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, UnknownExample
from .fusion import FusionFrame, Subspace, WeightedSubspace
from .numerics import COMPLEX, DEFAULT_TOLERANCE, REAL, Tolerance

EXAMPLE_NAMES = ("7.1", "7.1-V", "7.2", "7.3")


def _coordinate_subspace(indices, n: int, field: str) -> Subspace:
    dtype = np.complex128 if field == COMPLEX else np.float64
    basis = np.zeros((n, len(indices)), dtype=dtype)
    for column, index in enumerate(indices):
        basis[index, column] = 1.0
    return Subspace(basis)


def example_frame(name: str, n: int | None = None, tol: Tolerance = DEFAULT_TOLERANCE) -> FusionFrame:
    """Construct a catalog example.

    ``n`` selects the dimension of the scalable presets (default 4) and
    must be omitted (or 5) for the fixed preset ``7.3``.
    """
    if name not in EXAMPLE_NAMES:
        raise UnknownExample(f"no example named {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    if name == "7.3":
        if n not in (None, 5):
            raise DimensionMismatch("example 7.3 is fixed in dimension 5")
        spans = ([0, 1, 2], [1, 2, 3], [3, 4], [0, 4])
        weights = (math.sqrt(2.0 / 3.0), 2.0 * math.sqrt(3.0) / 3.0) * 2
        members = [
            WeightedSubspace(_coordinate_subspace(idx, 5, COMPLEX), w)
            for idx, w in zip(spans, (weights[0], weights[1], weights[0], weights[1]))
        ]
        return FusionFrame(members, tol)
    n = 4 if n is None else int(n)
    if n < 2:
        raise DimensionMismatch(f"example {name} requires dimension n >= 2, got {n}")
    lines = [_coordinate_subspace([i], n, REAL) for i in range(n)]
    if name == "7.1":
        members = [WeightedSubspace(lines[0], 1.0)] * (n + 1)
        members += [WeightedSubspace(lines[i], 1.0) for i in range(1, n)]
    elif name == "7.1-V":
        members = [WeightedSubspace(lines[i], 1.0) for i in range(n) for _ in range(2)]
    else:  # "7.2"
        members = [WeightedSubspace(lines[i], 1.0) for i in range(n)]
    return FusionFrame(members, tol)
