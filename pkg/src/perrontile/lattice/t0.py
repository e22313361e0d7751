"""The central tile T0 and the triangulated annulus between T0 and lambda*T0.

T0 is a convex lattice polygon with the origin strictly inside and
lambda*T0 strictly containing it; the annulus between them is triangulated
on the boundary vertices only (an angular merge of the two cycles), which
keeps later constants small.  All containment and cover checks are exact
rational computations on degree-2 frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..geometry import angular_less, convex_hull, orient2, point_in_convex_polygon, polygon_area2
from ..number_field import FieldContext, FieldElement, cyclotomic_in_field
from .frame import LatticeFrame

__all__ = ["CentralTile", "LatticeTriangle", "build_T0", "triangulate_annulus", "T0SearchError"]


class T0SearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class LatticeTriangle:
    """Triangle with vertices in the lattice, stored in frame coordinates."""

    frame: LatticeFrame
    pts: Tuple[Tuple, Tuple, Tuple]

    def __post_init__(self):
        o = orient2(*(self.frame.planar(p) for p in self.pts))
        if o == 0:
            raise ValueError("degenerate lattice triangle")
        if o < 0:
            object.__setattr__(self, "pts", (self.pts[0], self.pts[2], self.pts[1]))

    @property
    def planar_pts(self):
        return tuple(self.frame.planar(p) for p in self.pts)

    @property
    def vertices(self) -> Tuple[FieldElement, FieldElement, FieldElement]:
        return tuple(self.frame.element_of(p) for p in self.pts)

    def edge_lengths_sq(self):
        f = self.frame
        a, b, c = self.pts
        return (f.physical_dist_sq(a, b), f.physical_dist_sq(b, c), f.physical_dist_sq(c, a))

    def area(self):
        """Area in frame units (rational/exact on integer frames)."""
        doubled = polygon_area2(self.planar_pts)
        if self.frame.exact:
            from fractions import Fraction

            return Fraction(abs(doubled), 2) * Fraction(1, self.frame.q ** 2)
        return abs(doubled) / 2.0

    def min_angle(self) -> float:
        zs = [self.frame.numeric(p) for p in self.pts]
        best = math.pi
        for k in range(3):
            u = zs[(k + 1) % 3] - zs[k]
            v = zs[(k + 2) % 3] - zs[k]
            ang = abs(math.remainder(math.atan2(v.imag, v.real) - math.atan2(u.imag, u.real), 2 * math.pi))
            best = min(best, ang)
        return best

    def inradius(self) -> float:
        zs = [self.frame.numeric(p) for p in self.pts]
        a = abs(zs[1] - zs[2])
        b = abs(zs[2] - zs[0])
        c = abs(zs[0] - zs[1])
        area = abs((zs[1] - zs[0]).real * (zs[2] - zs[0]).imag - (zs[1] - zs[0]).imag * (zs[2] - zs[0]).real) / 2
        return 2 * area / (a + b + c)

    def translated(self, dp) -> "LatticeTriangle":
        return LatticeTriangle(self.frame, tuple(self.frame.translate(p, dp) for p in self.pts))

    def scaled_by_lambda(self, n: int = 1) -> "LatticeTriangle":
        return LatticeTriangle(self.frame, tuple(self.frame.mul_lambda_n(p, n) for p in self.pts))


@dataclass(frozen=True)
class CentralTile:
    """T0 as a convex lattice polygon (frame coordinates, ccw)."""

    frame: LatticeFrame
    pts: Tuple[Tuple, ...]

    @property
    def vertices(self) -> Tuple[FieldElement, ...]:
        return tuple(self.frame.element_of(p) for p in self.pts)

    @property
    def planar_pts(self):
        return tuple(self.frame.planar(p) for p in self.pts)

    def scaled_by_lambda(self, n: int = 1) -> "CentralTile":
        return CentralTile(self.frame, tuple(self.frame.mul_lambda_n(p, n) for p in self.pts))

    def translated(self, dp) -> "CentralTile":
        return CentralTile(self.frame, tuple(self.frame.translate(p, dp) for p in self.pts))

    def area(self):
        doubled = polygon_area2(self.planar_pts)
        if self.frame.exact:
            from fractions import Fraction

            return Fraction(doubled, 2) * Fraction(1, self.frame.q ** 2)
        return doubled / 2.0

    def diameter(self) -> float:
        zs = [self.frame.numeric(p) for p in self.pts]
        return max(abs(a - b) for a in zs for b in zs)

    def contains_origin_strictly(self) -> bool:
        origin = (0, 0) if self.frame.exact else (0.0, 0.0)
        return point_in_convex_polygon(self.planar_pts, origin, strict=True)

    def contains_planar_point_strictly(self, xy) -> bool:
        return point_in_convex_polygon(self.planar_pts, xy, strict=True)

    def contains_polygon_strictly(self, other: "CentralTile") -> bool:
        return all(self.contains_planar_point_strictly(xy) for xy in other.planar_pts)


def _snap_to_lattice(frame: LatticeFrame, target: complex):
    """Nearest lattice frame point to a physical target (deterministic)."""
    if frame.exact:
        u0 = target.real * frame.q
        v0 = target.imag * frame.q / math.sqrt(frame.w)
        best = None
        for du in range(-2, 3):
            for dv in range(-2, 3):
                U, V = round(u0) + du, round(v0) + dv
                if not frame.is_lattice_point((U, V)):
                    continue
                z = frame.numeric((U, V))
                key = (abs(z - target), U, V)
                if best is None or key < best:
                    best = key
        return best[1:]
    # float frame: invert the full embedding with zero vertical part and
    # search the surrounding integer box, preferring small vertical norm
    from ..number_field import vertical_norm

    ctx = frame.ctx
    d = ctx.degree
    w = np.zeros(ctx.embed_dim)
    w[0], w[1] = target.real, target.imag
    base = np.linalg.solve(ctx.sigma_matrix, w[: ctx.sigma_matrix.shape[0]])
    best = None
    for offsets in np.ndindex(*(3,) * d):
        coeffs = tuple(int(round(base[k])) + offsets[k] - 1 for k in range(d))
        elem = ctx.element(coeffs)
        z = ctx.numeric(elem)
        key = (abs(z - target) + vertical_norm(ctx, elem), coeffs)
        if best is None or key < best:
            best = key
    return best[1]


def build_T0(ctx: FieldContext, symmetric_order: Optional[int] = None,
             sides: int = 8, max_scale: float = 40.0) -> CentralTile:
    """Search for a valid central tile.

    Near-regular polygons are scaled and snapped to the lattice until the
    origin is strictly interior and lambda*T0 strictly contains T0 (exact
    half-plane tests on degree-2 frames).  With ``symmetric_order`` m the
    vertex set is closed under multiplication by the m-th root of unity,
    which must exist in the field and preserve the lattice.
    """
    frame = LatticeFrame.for_context(ctx)
    zeta = None
    if symmetric_order is not None:
        zeta = cyclotomic_in_field(ctx, symmetric_order)
        if zeta is None:
            raise T0SearchError(
                "no %d-fold rotation: exp(2*pi*i/%d) is not in this field"
                % (symmetric_order, symmetric_order)
            )
        if not zeta.in_lattice:
            raise T0SearchError(
                "%d-fold rotation does not preserve the lattice Z[lambda]"
                % symmetric_order
            )

    radius = 2.0
    while radius <= max_scale:
        k = sides
        if symmetric_order:
            k = max(sides, symmetric_order)
        targets = [radius * complex(math.cos(2 * math.pi * j / k), math.sin(2 * math.pi * j / k)) for j in range(k)]
        snapped = [_snap_to_lattice(frame, t) for t in targets]
        if zeta is not None:
            orbit = set()
            for p in snapped:
                elem = frame.element_of(p)
                for _ in range(symmetric_order):
                    orbit.add(frame.to_frame(elem))
                    elem = ctx.mul(zeta, elem)
            snapped = list(orbit)
        if frame.exact:
            hull = convex_hull(set(snapped))
        else:
            planar = {frame.planar(p): p for p in snapped}
            hull = [planar[xy] for xy in convex_hull(planar.keys())]
        if len(hull) >= 3:
            t0 = CentralTile(frame, tuple(hull))
            lam_t0 = t0.scaled_by_lambda()
            if t0.contains_origin_strictly() and lam_t0.contains_polygon_strictly(t0):
                if zeta is None:
                    return t0
                elem_set = {frame.to_frame(ctx.mul(zeta, frame.element_of(p))) for p in t0.pts}
                if elem_set == set(t0.pts):
                    return t0
        radius *= 1.25
    raise T0SearchError("no valid central tile up to radius %.1f" % max_scale)


def _angular_rank_sort(frame, cycle):
    """Rotate a ccw cycle around the origin to start at its angular minimum."""
    k = 0
    for i in range(1, len(cycle)):
        if angular_less(frame.planar(cycle[i]), frame.planar(cycle[k])):
            k = i
    return list(cycle[k:]) + list(cycle[:k])


def triangulate_annulus(ctx: FieldContext, t0: CentralTile) -> List[LatticeTriangle]:
    """Triangulate lambda*T0 minus T0 on the two boundary vertex cycles.

    Angular merge of the inner and outer cycles (both star-shaped around
    the origin): walking the combined angular order, each inner event
    closes a triangle against the current outer vertex and vice versa.
    The result is verified as an exact cover of the annulus.
    """
    from .cover import check_exact_cover

    frame0 = t0.frame
    inner = _angular_rank_sort(frame0, t0.pts)
    outer = _angular_rank_sort(frame0, t0.scaled_by_lambda().pts)
    ni, no = len(inner), len(outer)

    def _pl(p):
        return frame0.planar(p)

    # merged angular order of all events; same-ray ties take inner first
    events = []
    i = o = 0
    while i < ni or o < no:
        take_inner = o >= no or (
            i < ni and (angular_less(_pl(inner[i]), _pl(outer[o])) or not angular_less(_pl(outer[o]), _pl(inner[i])))
        )
        if take_inner:
            events.append(("i", i))
            i += 1
        else:
            events.append(("o", o))
            o += 1

    tris: List[LatticeTriangle] = []
    frame = t0.frame
    cur_i, cur_o = ni - 1, no - 1
    for tag, idx in events:
        if tag == "i":
            tris.append(LatticeTriangle(frame, (inner[cur_i], inner[idx], outer[cur_o])))
            cur_i = idx
        else:
            tris.append(LatticeTriangle(frame, (inner[cur_i], outer[cur_o], outer[idx])))
            cur_o = idx

    if frame.exact:
        check_exact_cover(
            [t.pts for t in tris],
            region_boundary=[t0.scaled_by_lambda().pts],
            region_holes=[t0.pts],
        )
    else:
        area_sum = sum(abs(polygon_area2(t.planar_pts)) for t in tris)
        expected = abs(polygon_area2(t0.scaled_by_lambda().planar_pts)) - abs(polygon_area2(t0.planar_pts))
        if abs(area_sum - expected) > 1e-6 * max(1.0, abs(expected)):
            raise RuntimeError(
                "annulus triangulation does not cover the annulus "
                "(area %s vs %s)" % (area_sum, expected)
            )
    return tris
