"""Bounded planar regions and lattice-point enumeration.

Regions carry exact (Fraction) data so strict membership is decided
exactly on degree-2 integer frames; enumeration walks the integer
coefficient box obtained from the region's bounding box (plus the
vertical bound for embedding dimensions above 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..geometry import orient2, point_in_convex_polygon
from ..number_field import FieldContext, FieldElement, vertical_norm
from .frame import LatticeFrame

__all__ = ["Disk", "ConvexPolygon", "lattice_points_in_region"]


@dataclass(frozen=True)
class Disk:
    """Open disk: |p - center| < radius."""

    center: complex
    radius: Fraction

    def bbox(self):
        r = float(self.radius)
        return (self.center.real - r, self.center.real + r,
                self.center.imag - r, self.center.imag + r)

    def contains(self, x, y) -> bool:
        cx, cy = Fraction(self.center.real), Fraction(self.center.imag)
        return (Fraction(x) - cx) ** 2 + (Fraction(y) - cy) ** 2 < Fraction(self.radius) ** 2

    @property
    def empty(self) -> bool:
        return self.radius <= 0


@dataclass(frozen=True)
class ConvexPolygon:
    """Closed convex polygon (ccw vertices); set strict=True for the interior."""

    vertices: tuple
    strict: bool = False

    def bbox(self):
        xs = [float(x) for x, _ in self.vertices]
        ys = [float(y) for _, y in self.vertices]
        return (min(xs), max(xs), min(ys), max(ys))

    def contains(self, x, y) -> bool:
        return point_in_convex_polygon(self.vertices, (x, y), strict=self.strict)

    @property
    def empty(self) -> bool:
        return len(self.vertices) < 3


def lattice_points_in_region(
    ctx: FieldContext,
    region,
    vertical_bound: Optional[float] = None,
    reference_surface=None,
) -> List[FieldElement]:
    """Lattice elements whose planar image lies in the (bounded) region.

    ``vertical_bound`` filters on the vertical distance (strict) of the
    embedded point to the reference surface; without a surface the
    distance to the expanding plane itself is used.  A bound of 0 keeps
    nothing (strictness), None disables the filter.
    """
    if getattr(region, "empty", False):
        return []
    frame = LatticeFrame.for_context(ctx)
    x0, x1, y0, y1 = region.bbox()
    if not all(math.isfinite(v) for v in (x0, x1, y0, y1)):
        raise ValueError("region is unbounded")
    if vertical_bound is not None and vertical_bound <= 0:
        return []

    out: List[FieldElement] = []
    if frame.exact:
        # planar = (U/q, V*sqrt(w)/q)
        sw = math.sqrt(frame.w)
        umin = math.floor(x0 * frame.q) - 1
        umax = math.ceil(x1 * frame.q) + 1
        vmin = math.floor(y0 * frame.q / sw) - 1
        vmax = math.ceil(y1 * frame.q / sw) + 1
        U, V = frame.lattice_points_in_box(umin, umax, vmin, vmax)
        unit_grid = frame.q == 1 and frame.w == 1
        for u, v in zip(U.tolist(), V.tolist()):
            if unit_grid:
                # planar coordinates are the integers (u, v): exact
                hit = region.contains(u, v)
            else:
                z = frame.numeric((int(u), int(v)))
                hit = region.contains(z.real, z.imag)
            if hit:
                out.append(frame.element_of((int(u), int(v))))
        return out

    # float frame: bound the integer coefficient box through the inverse
    # embedding of (planar box) x (vertical ball)
    d = ctx.degree
    vb = vertical_bound if vertical_bound is not None else _default_vertical_extent(ctx)
    inv = np.linalg.inv(ctx.sigma_matrix)
    corners = []
    vert_dims = ctx.embed_dim - 2
    for cx in (x0, x1):
        for cy in (y0, y1):
            for signs in np.ndindex(*(2,) * vert_dims):
                w = np.zeros(ctx.embed_dim)
                w[0], w[1] = cx, cy
                for k in range(vert_dims):
                    w[2 + k] = vb if signs[k] else -vb
                corners.append(inv @ w)
    corners = np.array(corners)
    los = np.floor(corners.min(axis=0)).astype(int) - 1
    his = np.ceil(corners.max(axis=0)).astype(int) + 1
    if np.prod(his - los + 1) > 5_000_000:
        raise ValueError("coefficient box too large to enumerate")
    for coeffs in np.ndindex(*(his - los + 1)):
        vec = tuple(int(lo + c) for lo, c in zip(los, coeffs))
        elem = ctx.element(vec)
        z = ctx.numeric(elem)
        if not region.contains(z.real, z.imag):
            continue
        if vertical_bound is not None:
            dist = _vertical_distance(ctx, elem, z, reference_surface)
            if dist is None or not dist < vertical_bound:
                continue
        out.append(elem)
    return out


def _default_vertical_extent(ctx) -> float:
    return 8.0


def _vertical_distance(ctx, elem, z, surface) -> Optional[float]:
    if surface is None:
        return vertical_norm(ctx, elem)
    return surface.vertical_distance(ctx, elem, z)
