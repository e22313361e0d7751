"""Planar coordinate frames for the lattice Z[lambda].

Degree-2 nonreal contexts admit an exact integer frame: writing the
minimal polynomial as x^2 + b1 x + b0, the element a + b*lambda sits at
the physical point ((U/q), (V/q)*sqrt(w)) with integer frame coordinates

    q = 1, U = a - (b1/2) b   (b1 even)      w = b0 - (b1/2)^2
    q = 2, U = 2a - b1 b      (b1 odd)       w = 4 b0 - b1^2

and V = b.  Physical squared distance is (dU^2 + w dV^2) / q^2, so every
predicate and bound comparison is integer/rational arithmetic.  Higher
degrees fall back to float frames (growth is validated on the exact
degree-2 path only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..number_field import FieldContext, FieldElement

__all__ = ["LatticeFrame", "FramePoint"]

FramePoint = Tuple[int, int]


@dataclass(frozen=True)
class LatticeFrame:
    ctx: FieldContext
    exact: bool
    q: int
    w: object  # int for exact frames, float for float frames
    b0: int = 0
    b1: int = 0

    @classmethod
    def for_context(cls, ctx: FieldContext) -> "LatticeFrame":
        if ctx.degree == 2 and not ctx.is_real_lambda:
            b0, b1, _ = ctx.poly.coefficients
            if b1 % 2 == 0:
                return cls(ctx, True, 1, b0 - (b1 // 2) ** 2, b0, b1)
            return cls(ctx, True, 2, 4 * b0 - b1 * b1, b0, b1)
        return cls(ctx, False, 1, 1.0)

    # -- conversions ------------------------------------------------------
    #
    # A "frame point" is the canonical hashable key of a lattice element:
    # the integer pair (U, V) on exact frames and the full integer
    # coefficient tuple on float frames.  ``planar`` maps a key to the
    # (x, y) pair fed to the geometric predicates (ints resp. floats).

    def to_frame(self, elem: FieldElement) -> FramePoint:
        if not self.exact:
            if not elem.in_lattice:
                raise ValueError("frame points require lattice elements")
            return tuple(int(c) for c in elem.coeffs)
        a, b = elem.coeffs
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("frame points require lattice elements")
        a, b = int(a), int(b)
        if self.q == 1:
            return (a - (self.b1 // 2) * b, b)
        return (2 * a - self.b1 * b, b)

    def coeffs_of(self, p: FramePoint) -> Tuple[int, ...]:
        if not self.exact:
            return tuple(p)
        U, V = p
        if self.q == 1:
            return (U + (self.b1 // 2) * V, V)
        num = U + self.b1 * V
        if num % 2 != 0:
            raise ValueError("frame point %s is not a lattice point" % (p,))
        return (num // 2, V)

    def element_of(self, p: FramePoint) -> FieldElement:
        return self.ctx.element(self.coeffs_of(p))

    def is_lattice_point(self, p: FramePoint) -> bool:
        if not self.exact or self.q == 1:
            return True
        return (p[0] + self.b1 * p[1]) % 2 == 0

    def planar(self, p: FramePoint):
        """Coordinates for the planar predicates (exact ints or floats)."""
        if self.exact:
            return p
        z = self.ctx.numeric(self.ctx.element(p))
        return (z.real, z.imag)

    def numeric(self, p: FramePoint) -> complex:
        if not self.exact:
            return self.ctx.numeric(self.ctx.element(p))
        return complex(p[0] / self.q, p[1] * math.sqrt(self.w) / self.q)

    # -- metric -----------------------------------------------------------

    @property
    def scale_sq(self) -> Fraction:
        """Physical squared length of one frame x-unit."""
        return Fraction(1, self.q * self.q) if self.exact else Fraction(1)

    def frame_dist_sq(self, p: FramePoint, r: FramePoint):
        if not self.exact:
            return abs(self.numeric(p) - self.numeric(r)) ** 2
        du = p[0] - r[0]
        dv = p[1] - r[1]
        return du * du + self.w * dv * dv

    def physical_dist_sq(self, p: FramePoint, r: FramePoint):
        d = self.frame_dist_sq(p, r)
        return d * self.scale_sq if self.exact else d

    def physical_bound_to_frame(self, bound_sq) -> Fraction:
        """Convert a physical squared-length bound to frame units."""
        return Fraction(bound_sq) / self.scale_sq

    @property
    def abs_lambda_sq(self):
        """|lambda|^2, exact for quadratic frames."""
        if self.exact:
            return Fraction(self.b0)
        return self.ctx.abs_lambda_sq

    # -- lattice action ---------------------------------------------------

    def mul_lambda(self, p: FramePoint) -> FramePoint:
        """Frame key of lambda * (element at p); exact companion action."""
        if not self.exact:
            C = self.ctx.companion
            d = self.ctx.degree
            return tuple(sum(C[i][j] * p[j] for j in range(d)) for i in range(d))
        a, b = self.coeffs_of(p)
        a2, b2 = -self.b0 * b, a - self.b1 * b
        if self.q == 1:
            return (a2 - (self.b1 // 2) * b2, b2)
        return (2 * a2 - self.b1 * b2, b2)

    def mul_lambda_n(self, p: FramePoint, n: int) -> FramePoint:
        for _ in range(n):
            p = self.mul_lambda(p)
        return p

    def translate(self, p: FramePoint, dp: FramePoint) -> FramePoint:
        return tuple(a + b for a, b in zip(p, dp))

    # -- enumeration ------------------------------------------------------

    def lattice_points_in_box(self, umin: int, umax: int, vmin: int, vmax: int):
        """All lattice frame points in the closed box, as int64 arrays."""
        us = np.arange(umin, umax + 1, dtype=np.int64)
        vs = np.arange(vmin, vmax + 1, dtype=np.int64)
        U, V = np.meshgrid(us, vs, indexing="ij")
        U = U.ravel()
        V = V.ravel()
        if self.q == 2:
            keep = (U + self.b1 * V) % 2 == 0
            U, V = U[keep], V[keep]
        return U, V

    def vertical_norm_of(self, p: FramePoint) -> float:
        if self.exact and self.ctx.degree == 2:
            return 0.0
        from ..number_field import vertical_norm

        return vertical_norm(self.ctx, self.element_of(p))
