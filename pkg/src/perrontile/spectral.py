"""Subdivision-matrix analysis: primitivity, dominant eigenpair, area checks.

The subdivision matrix of a self-similar tiling counts, per tile type, the
tiles of each type appearing in the lambda-image.  Its dominant eigenvalue
is |lambda|^2 and the eigenvector is the vector of tile areas; primitivity
(together with an origin-interior tile) certifies quasiperiodicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "SubdivisionMatrix",
    "is_primitive",
    "perron_eigen",
    "check_area_eigenvector",
    "quasiperiodicity_certificate",
]


@dataclass(frozen=True)
class SubdivisionMatrix:
    """Square nonnegative integer matrix of tile-type counts."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square and nonempty")
        if any(v < 0 for row in rows for v in row):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_json(cls, data) -> "SubdivisionMatrix":
        return cls(tuple(tuple(row) for row in data))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def has_zero_row(self) -> bool:
        return any(not any(row) for row in self.entries)

    def to_json(self):
        return [list(row) for row in self.entries]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)


def is_primitive(matrix: SubdivisionMatrix) -> bool:
    """True iff some power of the matrix is strictly positive.

    Boolean matrix powers up to the Wielandt bound n^2 - 2n + 2; integer
    powers are never materialized, so entries cannot overflow.
    """
    n = matrix.size
    if matrix.has_zero_row:
        return False
    bool_rows = [sum(1 << j for j, v in enumerate(row) if v) for row in matrix.entries]
    full = (1 << n) - 1
    power = list(bool_rows)
    bound = n * n - 2 * n + 2
    for _ in range(bound):
        if all(row == full for row in power):
            return True
        nxt = []
        for i in range(n):
            acc = 0
            row = power[i]
            for j in range(n):
                if row >> j & 1:
                    acc |= bool_rows[j]
            nxt.append(acc)
        if nxt == power:
            break
        power = nxt
    return all(row == full for row in power)


def perron_eigen(matrix: SubdivisionMatrix, tol: float = 1e-12, max_iter: int = 100000):
    """Dominant eigenvalue and positive sum-normalized eigenvector.

    Power iteration from the all-ones vector with sum normalization;
    deterministic, so reports are reproducible.  Requires primitivity.
    """
    if not is_primitive(matrix):
        raise ValueError("matrix is not primitive")
    A = matrix.as_array()
    v = np.ones(matrix.size)
    v /= v.sum()
    prev = 0.0
    for _ in range(max_iter):
        w = A @ v
        eig = float(w @ v) / float(v @ v)
        w_sum = w.sum()
        v = w / w_sum
        if abs(eig - prev) < tol * max(1.0, abs(eig)):
            return eig, v
        prev = eig
    return prev, v


def check_area_eigenvector(
    matrix: SubdivisionMatrix,
    areas: Sequence[float],
    lambda_sq: float,
    tol: float = 1e-9,
) -> dict:
    """Verify M * areas == lambda_sq * areas componentwise (relative tol)."""
    areas = np.asarray(areas, dtype=float)
    if areas.shape != (matrix.size,):
        raise ValueError("area vector size mismatch")
    lhs = matrix.as_array() @ areas
    rhs = lambda_sq * areas
    scale = np.maximum(np.abs(rhs), 1e-300)
    residuals = np.abs(lhs - rhs) / scale
    return {
        "passed": bool(np.all(residuals < tol)),
        "residuals": [float(r) for r in residuals],
        "tolerance": tol,
        "lambda_sq": float(lambda_sq),
    }


def quasiperiodicity_certificate(
    origin_tile_has_interior_origin: bool,
    matrix: SubdivisionMatrix,
) -> dict:
    """Certificate that a subdivision tiling is quasiperiodic, or a refusal.

    Criterion: a tiling satisfying the subdivision axioms that has a tile
    with the origin in its interior and a primitive subdivision matrix is
    quasiperiodic (every finite arrangement recurs within bounded distance
    of every point).
    """
    primitive = is_primitive(matrix)
    granted = bool(origin_tile_has_interior_origin and primitive)
    reasons = []
    if not origin_tile_has_interior_origin:
        reasons.append("no tile with the origin in its interior")
    if not primitive:
        reasons.append("subdivision matrix is not primitive")
    return {
        "granted": granted,
        "criterion": (
            "origin-interior tile + primitive subdivision matrix "
            "implies quasiperiodicity"
        ),
        "origin_tile_has_interior_origin": bool(origin_tile_has_interior_origin),
        "primitive": primitive,
        "reasons": reasons,
    }
