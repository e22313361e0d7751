"""Subdividing a surrounded triangle into lattice triangles (and a central tile).

For a surrounding X of t, the scaled copy lambda^(n+2) t is covered by the
Delaunay triangulation of the lattice points collected in its vertex
disks (radius r1), edge tubes (radius r2) and interior, keeping only
triangles whose circumdisk stays inside the r2-neighborhood of the scaled
triangle.  The empty-circumdisk property plus the covering-radius bound
force every kept edge under M/|lambda| (and under the 3M bounds of the
archtype family after one more scaling).  Optionally a translate of
lambda*T0 is inserted near the incenter and the leftover moat around it
is stitched by the closest-common-neighbor rule.

Everything on degree-2 frames is integer/rational arithmetic; numpy int64
does the bulk filtering and the compiled Delaunay core the triangulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..delaunay import triangulate_indices
from ..geometry import (
    circumcenter,
    dist_sq,
    orient2,
    point_in_convex_polygon,
    seg_point_dist_sq,
    segments_intersect,
    sqrt_sum_leq,
)
from ..number_field import FieldContext
from .constants import ConstructionConstants
from .cover import check_exact_cover, edge_residual, residual_cycles
from .frame import LatticeFrame
from .t0 import CentralTile, LatticeTriangle

__all__ = [
    "Surrounding",
    "SubdivisionResult",
    "build_surrounding",
    "subdivide_surrounding",
    "overlap_agreement",
    "collect_zone_points",
]


@dataclass(frozen=True)
class Surrounding:
    """A triangle with an edge-to-edge ring of neighbors touching it."""

    center: LatticeTriangle
    ring: Tuple[LatticeTriangle, ...]

    def __post_init__(self):
        cset = set(self.center.pts)
        for t in self.ring:
            if not cset & set(t.pts):
                raise ValueError("ring triangle does not touch the center")

    @property
    def frame(self) -> LatticeFrame:
        return self.center.frame

    def all_triangles(self):
        return (self.center,) + tuple(self.ring)

    def check_archtype_bounds(self, consts: ConstructionConstants) -> bool:
        """All member triangles within the 3M planar/vertical bounds."""
        frame = self.frame
        lim = frame.physical_bound_to_frame(Fraction(9 * consts.M * consts.M))
        for t in self.all_triangles():
            a, b, c = t.pts
            for u, v in ((a, b), (b, c), (c, a)):
                if frame.exact:
                    if not frame.frame_dist_sq(u, v) < lim:
                        return False
                else:
                    if not frame.frame_dist_sq(u, v) < float(lim):
                        return False
            if not frame.exact:
                elems = t.vertices
                from ..number_field import vertical_norm

                for k in range(3):
                    if not vertical_norm(frame.ctx, elems[k] - elems[(k + 1) % 3]) < 3 * consts.M:
                        return False
        return True


def build_surrounding(annulus: Sequence[LatticeTriangle], index: int) -> Surrounding:
    """Surrounding of one annulus triangle by its vertex-sharing neighbors."""
    center = annulus[index]
    cset = set(center.pts)
    ring = tuple(
        t for i, t in enumerate(annulus) if i != index and cset & set(t.pts)
    )
    return Surrounding(center=center, ring=ring)


@dataclass
class SubdivisionResult:
    """Output triangles (frame-point triples) of one subdivision."""

    frame: LatticeFrame
    scaled_pts: Tuple[Tuple, Tuple, Tuple]
    triangles: List[Tuple]
    central: Optional[CentralTile]
    ring_triangles: List[Tuple]
    report: Dict

    def all_triangle_pts(self) -> List[Tuple]:
        return self.triangles + self.ring_triangles

    def lattice_triangles(self):
        for pts in self.all_triangle_pts():
            yield LatticeTriangle(self.frame, pts)


# ---------------------------------------------------------------------------
# point collection


def _disk_keys(frame: LatticeFrame, center, thresh_num: int, thresh_den: int):
    """Lattice keys with frame_dist_sq(p, center)*den <= num (int64)."""
    cu, cv = center
    rad = math.isqrt(thresh_num // thresh_den) + 2
    U, V = frame.lattice_points_in_box(cu - rad, cu + rad, cv - rad, cv + rad)
    dU = U - cu
    dV = V - cv
    d2 = dU * dU + int(frame.w) * dV * dV
    keep = d2 * thresh_den <= thresh_num
    return U[keep], V[keep]


def _tube_keys(frame: LatticeFrame, a, b, r2q_sq: int):
    """Lattice keys within (closed) distance r2 of segment [a, b]."""
    w = int(frame.w)
    rad = math.isqrt(r2q_sq) + 2
    umin = min(a[0], b[0]) - rad
    umax = max(a[0], b[0]) + rad
    vmin = min(a[1], b[1]) - rad
    vmax = max(a[1], b[1]) + rad
    U, V = frame.lattice_points_in_box(umin, umax, vmin, vmax)
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    denom = abx * abx + w * aby * aby
    apx = U - a[0]
    apy = V - a[1]
    bpx = U - b[0]
    bpy = V - b[1]
    ap2 = apx * apx + w * apy * apy
    bp2 = bpx * bpx + w * bpy * bpy
    tnum = apx * abx + w * apy * aby
    mid = (tnum > 0) & (tnum < denom) & (ap2 * denom - tnum * tnum <= r2q_sq * denom)
    ends = (ap2 <= r2q_sq) | (bp2 <= r2q_sq)
    keep = mid | ends
    return U[keep], V[keep]


def _triangle_keys(frame: LatticeFrame, pts):
    """Lattice keys inside the closed triangle."""
    (ax, ay), (bx, by), (cx, cy) = pts
    U, V = frame.lattice_points_in_box(
        min(ax, bx, cx), max(ax, bx, cx), min(ay, by, cy), max(ay, by, cy)
    )
    o1 = (bx - ax) * (V - ay) - (by - ay) * (U - ax)
    o2 = (cx - bx) * (V - by) - (cy - by) * (U - bx)
    o3 = (ax - cx) * (V - cy) - (ay - cy) * (U - cx)
    keep = (o1 >= 0) & (o2 >= 0) & (o3 >= 0)
    return U[keep], V[keep]


def collect_zone_points(frame: LatticeFrame, consts: ConstructionConstants,
                        scaled_pts, surrounding: Optional[Surrounding] = None,
                        exponent: Optional[int] = None) -> Set[Tuple[int, int]]:
    """The point set Y: vertex disks, edge tubes and the triangle interior.

    On float frames the set is additionally filtered by the vertical
    distance to the lifted surrounding surface (< M/|lambda|); exact
    degree-2 frames have no vertical direction.
    """
    if not frame.exact:
        raise NotImplementedError(
            "zone collection is implemented for exact degree-2 frames; "
            "growth is validated on the nonreal quadratic path"
        )
    q = frame.q
    r1x = consts.r1_exact * q
    t1_num = r1x.numerator ** 2
    t1_den = r1x.denominator ** 2
    r2q_sq = (consts.r2 * q) ** 2

    keys: Set[Tuple[int, int]] = set()
    a, b, c = scaled_pts
    for p in scaled_pts:
        U, V = _disk_keys(frame, p, t1_num, t1_den)
        keys.update(zip(U.tolist(), V.tolist()))
    for u, v in ((a, b), (b, c), (c, a)):
        U, V = _tube_keys(frame, u, v, r2q_sq)
        keys.update(zip(U.tolist(), V.tolist()))
    U, V = _triangle_keys(frame, scaled_pts)
    keys.update(zip(U.tolist(), V.tolist()))
    return keys


# ---------------------------------------------------------------------------
# trimming predicates


def _circum_data(frame: LatticeFrame, tri_pts):
    center = circumcenter(*tri_pts, w=frame.w)
    rad2 = dist_sq(center, tri_pts[0], frame.w)
    return center, rad2


def _point_seg_d2(frame, p, a, b):
    return seg_point_dist_sq(a, b, p, frame.w)


def _disk_inside_tri_neighborhood(frame, center, rad2, tri_pts, r2q) -> bool:
    """circumdisk(center, rad) inside N_(r2)(triangle), exact."""
    if point_in_convex_polygon(tri_pts, center, strict=False):
        return rad2 <= r2q * r2q
    best = None
    a, b, c = tri_pts
    for u, v in ((a, b), (b, c), (c, a)):
        d2 = _point_seg_d2(frame, center, u, v)
        if best is None or d2 < best:
            best = d2
    return sqrt_sum_leq(best, rad2, Fraction(r2q))


def _disk_hits_polygon(frame, center, rad2, poly_pts) -> bool:
    """Open circumdisk meets the (closed) convex polygon."""
    if point_in_convex_polygon(poly_pts, center, strict=False):
        return True
    n = len(poly_pts)
    for i in range(n):
        d2 = _point_seg_d2(frame, center, poly_pts[i], poly_pts[(i + 1) % n])
        if d2 < rad2:
            return True
    return False


# ---------------------------------------------------------------------------
# the subdivision


def _place_central_tile(frame: LatticeFrame, consts: ConstructionConstants,
                        t0: CentralTile, scaled_pts) -> CentralTile:
    """Translate of lambda*T0 near the incenter, clear of the edge zones."""
    zs = [frame.numeric(p) for p in scaled_pts]
    la = abs(zs[1] - zs[2])
    lb = abs(zs[2] - zs[0])
    lc = abs(zs[0] - zs[1])
    peri = la + lb + lc
    inc = (la * zs[0] + lb * zs[1] + lc * zs[2]) / peri
    # snap the incenter to the lattice
    from .t0 import _snap_to_lattice

    tau = _snap_to_lattice(frame, inc)
    c_tile = t0.scaled_by_lambda().translated(tau)
    # clearance from every scaled edge zone, checked exactly
    q = frame.q
    r2q_sq = (consts.r2 * q) ** 2
    a, b, c = scaled_pts
    for u, v in ((a, b), (b, c), (c, a)):
        npts = len(c_tile.pts)
        for i in range(npts):
            p1 = c_tile.pts[i]
            p2 = c_tile.pts[(i + 1) % npts]
            if segments_intersect(p1, p2, u, v):
                raise RuntimeError("central tile crosses an edge zone")
            for p in (p1,):
                if _point_seg_d2(frame, p, u, v) <= r2q_sq:
                    raise RuntimeError("central tile touches an edge zone")
    return c_tile


def subdivide_surrounding(ctx: FieldContext, consts: ConstructionConstants,
                          X: Surrounding, with_central_tile: bool = False,
                          t0: Optional[CentralTile] = None) -> SubdivisionResult:
    """Subdivide lambda^(n+2) * center into archtype triangles.

    Returns the kept triangles (all with planar edges < M/|lambda| and,
    after one more lambda scaling, still inside the archtype bounds), the
    optional central tile with its stitched ring, and a report with the
    exact cover residual and bound checks.
    """
    frame = X.frame
    if not frame.exact:
        raise NotImplementedError("subdivision runs on exact degree-2 frames")
    if not X.check_archtype_bounds(consts):
        raise ValueError("surrounding is not within the archtype bounds for these constants")
    if with_central_tile and t0 is None:
        raise ValueError("central-tile insertion needs the T0 polygon")
    N = consts.subdivision_exponent
    scaled_pts = tuple(frame.mul_lambda_n(p, N) for p in X.center.pts)

    keys = collect_zone_points(frame, consts, scaled_pts, X, N)

    central = None
    if with_central_tile:
        central = _place_central_tile(frame, consts, t0, scaled_pts)
        cset = tuple(central.pts)
        keys = {k for k in keys if not point_in_convex_polygon(cset, k, strict=True)}
        keys.update(cset)

    key_list = sorted(keys)
    tri_idx = triangulate_indices(key_list, y_weight=int(frame.w))

    q = frame.q
    r2q = consts.r2 * q
    kept: List[Tuple] = []
    sq_scale = max(abs(v) for p in scaled_pts for v in p) + 4 * r2q
    for (ia, ib, ic) in tri_idx:
        tri = (key_list[ia], key_list[ib], key_list[ic])
        center, rad2 = None, None
        # float prefilter, exact decision near the margin
        cx, cy, rr, ok = _fast_disk_slack(tri, scaled_pts, r2q, frame.w)
        if ok == 1:
            inside = True
        elif ok == -1:
            inside = False
        else:
            center, rad2 = _circum_data(frame, tri)
            inside = _disk_inside_tri_neighborhood(frame, center, rad2, scaled_pts, r2q)
        if not inside:
            continue
        if central is not None:
            hit = _fast_disk_vs_polygon(tri, central.pts, frame.w)
            if hit == 0:
                if center is None:
                    center, rad2 = _circum_data(frame, tri)
                hit = 1 if _disk_hits_polygon(frame, center, rad2, central.pts) else -1
            if hit == 1:
                # triangles inside C are dropped entirely; others only if
                # their circumdisk penetrates C
                continue
        kept.append(tri)

    ring: List[Tuple] = []
    if central is not None:
        kept, ring = _stitch_central_ring(frame, kept, central)

    report = _verify_subdivision(frame, consts, scaled_pts, kept, ring, central)
    return SubdivisionResult(
        frame=frame,
        scaled_pts=scaled_pts,
        triangles=kept,
        central=central,
        ring_triangles=ring,
        report=report,
    )


def _fast_disk_slack(tri, scaled_pts, r2q, w):
    """Float check of circumdisk-in-neighborhood; 0 means too close to call."""
    sw = math.sqrt(w)
    pts = [(float(x), float(y) * sw) for x, y in tri]
    (ax, ay), (bx, by), (cx, cy) = pts
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return 0.0, 0.0, 0.0, 0
    na = ax * ax + ay * ay
    nb = bx * bx + by * by
    nc = cx * cx + cy * cy
    ux = (na * (by - cy) + nb * (cy - ay) + nc * (ay - by)) / d
    uy = (na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)) / d
    rad = math.hypot(ax - ux, ay - uy)
    tpts = [(float(x), float(y) * sw) for x, y in scaled_pts]
    if _point_in_tri_float(tpts, (ux, uy)):
        dist = 0.0
    else:
        dist = min(_seg_d_float(tpts[i], tpts[(i + 1) % 3], (ux, uy)) for i in range(3))
    slack = r2q - (dist + rad)
    if slack > 1e-4:
        return ux, uy, rad, 1
    if slack < -1e-4:
        return ux, uy, rad, -1
    return ux, uy, rad, 0


def _fast_disk_vs_polygon(tri, poly, w):
    sw = math.sqrt(w)
    pts = [(float(x), float(y) * sw) for x, y in tri]
    (ax, ay), (bx, by), (cx, cy) = pts
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return 0
    na = ax * ax + ay * ay
    nb = bx * bx + by * by
    nc = cx * cx + cy * cy
    ux = (na * (by - cy) + nb * (cy - ay) + nc * (ay - by)) / d
    uy = (na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)) / d
    rad = math.hypot(ax - ux, ay - uy)
    ppts = [(float(x), float(y) * sw) for x, y in poly]
    if _point_in_poly_float(ppts, (ux, uy)):
        return 1
    dist = min(_seg_d_float(ppts[i], ppts[(i + 1) % len(ppts)], (ux, uy)) for i in range(len(ppts)))
    if dist < rad - 1e-4:
        return 1
    if dist > rad + 1e-4:
        return -1
    return 0


def _point_in_tri_float(pts, p):
    (ax, ay), (bx, by), (cx, cy) = pts
    o1 = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
    o2 = (cx - bx) * (p[1] - by) - (cy - by) * (p[0] - bx)
    o3 = (ax - cx) * (p[1] - cy) - (ay - cy) * (p[0] - cx)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


def _point_in_poly_float(pts, p):
    n = len(pts)
    sign = 0
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        o = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
        if o > 0:
            if sign < 0:
                return False
            sign = 1
        elif o < 0:
            if sign > 0:
                return False
            sign = -1
    return True


def _seg_d_float(a, b, p):
    abx, aby = b[0] - a[0], b[1] - a[1]
    apx, apy = p[0] - a[0], p[1] - a[1]
    denom = abx * abx + aby * aby
    if denom == 0:
        return math.hypot(apx, apy)
    t = max(0.0, min(1.0, (apx * abx + apy * aby) / denom))
    return math.hypot(apx - t * abx, apy - t * aby)


# ---------------------------------------------------------------------------
# the moat around the central tile


def _stitch_central_ring(frame: LatticeFrame, kept: List[Tuple], central: CentralTile):
    """Triangulate the annulus between the kept set and the central tile.

    Each edge of the central tile is joined to the closest common neighbor
    on the moat's outer cycle Z; leftover Z vertices fan to the central
    vertex between their adjacent chosen neighbors.
    """
    from ..geometry import point_in_polygon, polygon_area2

    residual = edge_residual([t for t in kept])
    cycles = residual_cycles(residual)
    # the hole cycle encloses the central tile and is traversed clockwise
    cn = len(central.pts)
    c_probe = (
        Fraction(sum(p[0] for p in central.pts), cn),
        Fraction(sum(p[1] for p in central.pts), cn),
    )
    hole = None
    for cyc in cycles:
        if polygon_area2(cyc) < 0 and point_in_polygon(cyc, c_probe):
            hole = cyc
            break
    if hole is None:
        raise RuntimeError("no moat cycle found around the central tile")
    Z = list(reversed(hole))  # ccw around the tile

    cpts = list(central.pts)
    nc = len(cpts)
    nz = len(Z)
    w = frame.w

    # closest common neighbor on Z for every central edge; the neighbor
    # must lie strictly outside the edge's line or the triangle degenerates
    choice = []
    for i in range(nc):
        c1, c2 = cpts[i], cpts[(i + 1) % nc]
        best = None
        for j, z in enumerate(Z):
            if orient2(c1, c2, z) >= 0:
                continue
            score = (dist_sq(z, c1, w) + dist_sq(z, c2, w), z)
            if best is None or score < (best[0], best[1]):
                best = (score[0], score[1], j)
        if best is None:
            raise RuntimeError("no valid stitch neighbor for a central-tile edge")
        choice.append(best[2])

    ring: List[Tuple] = []
    for i in range(nc):
        c1, c2 = cpts[i], cpts[(i + 1) % nc]
        ring.append((c1, c2, Z[choice[i]]))
    # fans between consecutive chosen neighbors share the central vertex
    for i in range(nc):
        j_prev = choice[i - 1]
        j_cur = choice[i]
        cshared = cpts[i]
        j = j_prev
        while j != j_cur:
            j2 = (j + 1) % nz
            ring.append((Z[j], Z[j2], cshared))
            j = j2
    ring = [r for r in ring if orient2(*r) != 0]
    return kept, ring


# ---------------------------------------------------------------------------
# verification


def _verify_subdivision(frame, consts, scaled_pts, kept, ring, central) -> Dict:
    q = frame.q
    M = consts.M
    lam_sq = frame.abs_lambda_sq
    # (abssmall): |w_i - w_j| < M/|lambda|, exact
    small_lim = Fraction(M * M * q * q) / lam_sq
    ring_lim = Fraction(9 * M * M * q * q) / lam_sq
    arch_lim = Fraction(9 * M * M * q * q)

    def max_edge_sq(tris):
        best = Fraction(0)
        for (a, b, c) in tris:
            for u, v in ((a, b), (b, c), (c, a)):
                d = Fraction(frame.frame_dist_sq(u, v))
                if d > best:
                    best = d
        return best

    kept_max = max_edge_sq(kept)
    ring_max = max_edge_sq(ring) if ring else Fraction(0)
    abssmall_ok = kept_max < small_lim and (not ring or ring_max < small_lim)
    ring_bound_ok = not ring or ring_max < ring_lim
    arch_ok = max(kept_max, ring_max) < arch_lim

    from ..geometry import polygon_area2

    polygons = [list(t) for t in kept] + [list(t) for t in ring]
    if central is not None:
        polygons.append(list(central.pts))
    cycles = check_exact_cover(polygons)
    zero_area = sum(1 for c in cycles if polygon_area2(c) == 0)
    report = {
        "triangles": len(kept),
        "ring_triangles": len(ring),
        "central_tile": central is not None,
        "max_edge_sq_over_limit": float(kept_max / small_lim),
        "abssmall_ok": bool(abssmall_ok),
        "ring_bound_ok": bool(ring_bound_ok),
        "archtype_bounds_ok": bool(arch_ok),
        "cover_residual": 0,
        "cover_cycles": len(cycles),
        "zero_area_cycles": zero_area,
    }
    if not arch_ok:
        raise RuntimeError("subdivision produced a triangle outside the archtype bounds")
    if not ring_bound_ok:
        raise RuntimeError("central-ring triangle exceeds 3M/|lambda|")
    return report


# ---------------------------------------------------------------------------
# overlap agreement


def overlap_agreement(ctx: FieldContext, consts: ConstructionConstants,
                      X1: Surrounding, X2: Surrounding,
                      sub1: Optional[SubdivisionResult] = None,
                      sub2: Optional[SubdivisionResult] = None) -> Dict:
    """Do two overlapping subdivisions agree near their common boundary?

    The zone is the r2-tube of the shared scaled edge plus the r1-disks of
    the shared scaled vertices; the triangles whose circumdisk lies inside
    the zone must be identical sets (a consequence of Delaunay locality
    plus the coordinate-only tie rule).
    """
    frame = X1.frame
    shared = set(X1.center.pts) & set(X2.center.pts)
    if not shared:
        return {"passed": True, "vacuous": True, "zone_triangles": 0}
    if sub1 is None:
        sub1 = subdivide_surrounding(ctx, consts, X1)
    if sub2 is None:
        sub2 = subdivide_surrounding(ctx, consts, X2)

    N = consts.subdivision_exponent
    shared_scaled = [frame.mul_lambda_n(p, N) for p in sorted(shared)]
    edge = None
    if len(shared_scaled) >= 2:
        edge = (shared_scaled[0], shared_scaled[1])
    q = frame.q
    r2q = consts.r2 * q
    r1x = consts.r1_exact * q
    sw = math.sqrt(float(frame.w))
    r1f = float(r1x)

    def zone_slack_float(tri):
        """Best slack (zone radius - dist - rad) over the zone pieces."""
        pts = [(float(x), float(y) * sw) for x, y in tri]
        (ax, ay), (bx, by), (cx, cy) = pts
        d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if d == 0:
            return 0.0
        na, nb, nc = (
            ax * ax + ay * ay,
            bx * bx + by * by,
            cx * cx + cy * cy,
        )
        ux = (na * (by - cy) + nb * (cy - ay) + nc * (ay - by)) / d
        uy = (na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)) / d
        rad = math.hypot(ax - ux, ay - uy)
        best = -math.inf
        if edge is not None:
            e0 = (float(edge[0][0]), float(edge[0][1]) * sw)
            e1 = (float(edge[1][0]), float(edge[1][1]) * sw)
            best = max(best, r2q - (_seg_d_float(e0, e1, (ux, uy)) + rad))
        for v in shared_scaled:
            vv = (float(v[0]), float(v[1]) * sw)
            best = max(best, r1f - (math.hypot(ux - vv[0], uy - vv[1]) + rad))
        return best

    def in_shared_support(tri):
        slack = zone_slack_float(tri)
        if slack > 1e-4:
            return True
        if slack < -1e-4:
            return False
        center, rad2 = _circum_data(frame, tri)
        if edge is not None:
            d2 = _point_seg_d2(frame, center, edge[0], edge[1])
            if sqrt_sum_leq(d2, rad2, Fraction(r2q)):
                return True
        for v in shared_scaled:
            d2 = Fraction(dist_sq(center, v, frame.w))
            if sqrt_sum_leq(d2, rad2, r1x):
                return True
        return False

    def in_trim_zone(tri, scaled_pts):
        # circumdisk inside N_(r2) of the scaled triangle (the trim rule of
        # that triangle's own subdivision)
        _, _, _, flag = _fast_disk_slack(tri, scaled_pts, r2q, frame.w)
        if flag != 0:
            return flag == 1
        center, rad2 = _circum_data(frame, tri)
        return _disk_inside_tri_neighborhood(frame, center, rad2, scaled_pts, r2q)

    def in_zone(tri):
        # decided by shared data AND surviving both trims
        return (
            in_shared_support(tri)
            and in_trim_zone(tri, sub1.scaled_pts)
            and in_trim_zone(tri, sub2.scaled_pts)
        )

    zone1 = {t for t in sub1.triangles if in_zone(t)}
    zone2 = {t for t in sub2.triangles if in_zone(t)}
    passed = zone1 == zone2
    return {
        "passed": bool(passed),
        "vacuous": False,
        "zone_triangles": len(zone1),
        "only_in_first": len(zone1 - zone2),
        "only_in_second": len(zone2 - zone1),
    }
