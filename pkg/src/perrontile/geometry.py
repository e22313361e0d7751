"""Planar predicates shared by the Delaunay engine and the tiling geometry.

Points are (x, y) pairs of ints, Fractions or floats.  All predicates are
exact when fed ints/Fractions.  An optional ``w`` weight makes the squared
norm x*x + w*y*y, which lets quadratic-field lattices run the same code on
pure integer coordinates (the physical y unit is sqrt(w) times the x unit;
orientation and incidence signs are unaffected because the anisotropy is a
fixed positive per-axis scale).
"""

from __future__ import annotations

from fractions import Fraction
from math import isfinite

__all__ = [
    "orient2",
    "incircle_det",
    "incircle_sos",
    "norm_sq",
    "dist_sq",
    "seg_point_dist_sq",
    "segments_intersect",
    "point_in_convex_polygon",
    "polygon_area2",
    "circumcenter",
    "circumradius_sq",
    "sqrt_sum_leq",
]


def orient2(a, b, c):
    """Twice the signed area of (a, b, c); > 0 for counterclockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def norm_sq(p, w=1):
    return p[0] * p[0] + w * p[1] * p[1]


def dist_sq(a, b, w=1):
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + w * dy * dy


def incircle_det(a, b, c, d, w=1):
    """Positive iff d lies strictly inside the circle through ccw (a, b, c)."""
    adx = a[0] - d[0]
    ady = a[1] - d[1]
    bdx = b[0] - d[0]
    bdy = b[1] - d[1]
    cdx = c[0] - d[0]
    cdy = c[1] - d[1]
    ad = adx * adx + w * ady * ady
    bd = bdx * bdx + w * bdy * bdy
    cd = cdx * cdx + w * cdy * cdy
    return (
        adx * (bdy * cd - cdy * bd)
        - ady * (bdx * cd - cdx * bd)
        + ad * (bdx * cdy - cdx * bdy)
    )


def incircle_sos(a, b, c, d, w=1):
    """Tie-broken in-circle test: (a, b, c) counterclockwise.

    Exact cocircularity is resolved by an infinitesimal lift that lowers
    lexicographically smaller points more, which triangulates every
    cocircular polygon as a fan from its lexicographically least vertex.
    The rule reads only the four coordinates, so it is invariant under
    translation of the whole configuration.
    """
    det = incircle_det(a, b, c, d, w)
    if det > 0:
        return True
    if det < 0:
        return False
    # det' = -delta_a*A + delta_b*B - delta_c*C + delta_d*O, largest delta on
    # the lexicographically least point.
    coeffs = (
        (a, -orient2(d, b, c)),
        (b, orient2(d, a, c)),
        (c, -orient2(d, a, b)),
        (d, orient2(a, b, c)),
    )
    for _, coeff in sorted(coeffs, key=lambda pc: (pc[0][0], pc[0][1])):
        if coeff > 0:
            return True
        if coeff < 0:
            return False
    return False


def seg_point_dist_sq(a, b, p, w=1):
    """Squared distance from p to segment [a, b]; exact on rational input."""
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    apx = p[0] - a[0]
    apy = p[1] - a[1]
    denom = abx * abx + w * aby * aby
    if denom == 0:
        return dist_sq(a, p, w)
    t_num = apx * abx + w * apy * aby
    if t_num <= 0:
        return dist_sq(a, p, w)
    if t_num >= denom:
        return dist_sq(b, p, w)
    # |ap|^2 - (ap.ab)^2/|ab|^2, kept rational
    ap2 = apx * apx + w * apy * apy
    if isinstance(denom, float) or isinstance(t_num, float) or isinstance(ap2, float):
        return ap2 - (t_num * t_num) / denom
    return ap2 - Fraction(t_num * t_num, denom)


def _on_segment(a, b, p):
    """p collinear with [a, b]: is it within the closed segment?"""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(p1, p2, p3, p4, closed=True):
    """Whether [p1,p2] and [p3,p4] share a point.

    ``closed=False`` ignores intersections at shared endpoints (touching
    only at p1/p2 == p3/p4 does not count), which is what non-adjacency
    checks on polygon sides need.
    """
    if not closed:
        shared = {p1, p2} & {p3, p4}
        if shared:
            # Allowed to touch at the shared endpoint only; any additional
            # contact (overlap or crossing through it) still counts.
            if len(shared) == 2:
                return True
            s = shared.pop()
            other1 = p2 if p1 == s else p1
            other2 = p4 if p3 == s else p3
            if orient2(s, other1, other2) != 0:
                return False
            # collinear through the shared endpoint: overlap iff the others
            # point the same way
            d1 = (other1[0] - s[0], other1[1] - s[1])
            d2 = (other2[0] - s[0], other2[1] - s[1])
            return d1[0] * d2[0] + d1[1] * d2[1] > 0
    o1 = orient2(p1, p2, p3)
    o2 = orient2(p1, p2, p4)
    o3 = orient2(p3, p4, p1)
    o4 = orient2(p3, p4, p2)
    if ((o1 > 0) != (o2 > 0)) and (o1 != 0 and o2 != 0) and ((o3 > 0) != (o4 > 0)) and (o3 != 0 and o4 != 0):
        return True
    if o1 == 0 and _on_segment(p1, p2, p3):
        return True
    if o2 == 0 and _on_segment(p1, p2, p4):
        return True
    if o3 == 0 and _on_segment(p3, p4, p1):
        return True
    if o4 == 0 and _on_segment(p3, p4, p2):
        return True
    return False


def point_in_polygon(vertices, p):
    """Nonzero-winding membership for arbitrary simple polygons.

    Boundary points are not reliably classified; use for strictly
    interior/exterior probes.  Exact on rational input.
    """
    wind = 0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if a[1] <= p[1]:
            if b[1] > p[1] and orient2(a, b, p) > 0:
                wind += 1
        else:
            if b[1] <= p[1] and orient2(a, b, p) < 0:
                wind -= 1
    return wind != 0


def point_in_convex_polygon(vertices, p, strict=False):
    """Membership in a convex ccw polygon; exact on rational input."""
    n = len(vertices)
    for i in range(n):
        o = orient2(vertices[i], vertices[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def polygon_area2(vertices):
    """Twice the shoelace area (signed; ccw positive)."""
    total = 0
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def circumcenter(a, b, c, w=1):
    """Circumcenter in the (possibly weighted) metric; Fractions on ints.

    In the weighted metric |(x,y)|^2 = x^2 + w y^2 the center of the circle
    through a, b, c solves two linear equations; returns (cx, cy) with cy in
    y units (so the physical center is (cx, sqrt(w)*cy)).
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        raise ValueError("collinear points have no circumcenter")
    na = ax * ax + w * ay * ay
    nb = bx * bx + w * by * by
    nc = cx * cx + w * cy * cy
    ux = na * (by - cy) + nb * (cy - ay) + nc * (ay - by)
    uy = na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)
    if isinstance(d, float) or isinstance(ux, float):
        return ux / d, uy / (w * d)
    return Fraction(ux, d), Fraction(uy, w * d)


def circumradius_sq(a, b, c, w=1):
    center = circumcenter(a, b, c, w)
    return dist_sq(center, a, w)


def convex_hull(points):
    """Counterclockwise convex hull (monotone chain); collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def angular_less(u, v):
    """Counterclockwise-from-positive-x order on nonzero vectors (exact)."""
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu < hv
    cross = u[0] * v[1] - u[1] * v[0]
    return cross > 0


def sqrt_sum_leq(a2, c2, bound):
    """Decide sqrt(a2) + sqrt(c2) <= bound exactly for rational a2, c2 >= 0.

    Used for disk-in-region tests (distance + radius vs. tube width) where
    both lengths are only known by their squares.
    """
    if bound < 0:
        return False
    t = bound * bound - a2 - c2
    if t < 0:
        return False
    return t * t >= 4 * a2 * c2
