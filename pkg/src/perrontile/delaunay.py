"""Delaunay triangulation with exact predicates and a local tie rule.

Incremental Bowyer-Watson with a ghost vertex for the hull.  Predicates
are exact on int/Fraction coordinates; exactly cocircular point sets are
resolved by the symbolic perturbation of geometry.incircle_sos, which
triangulates every cocircular polygon as a fan from its lexicographically
least vertex.  Both the predicate and the tie rule read only point
coordinates, so two triangulations agree wherever an empty circumdisk is
supported by points present in both inputs: subdivisions of overlapping
surroundings match on their common zone.

The optional ``y_weight`` runs the same code in the metric
|(x, y)|^2 = x^2 + w y^2 (quadratic-field lattice frames on integer
coordinates).
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .geometry import incircle_sos, orient2

__all__ = ["delaunay", "triangulate_indices"]

GHOST = -1


def _dedupe_check(points):
    seen = {}
    for i, p in enumerate(points):
        key = (p[0], p[1])
        if key in seen:
            raise ValueError("duplicate point at indices %d and %d" % (seen[key], i))
        seen[key] = i


def _int64_safe(pts, w):
    if not isinstance(w, int) or w < 1 or w > 4096:
        return False
    for x, y in pts:
        if type(x) is not int or type(y) is not int:
            return False
        if abs(x) > 12000 or abs(y) > 12000:
            return False
    return True


def triangulate_indices(points: Sequence[Tuple], y_weight=1, force_pure: bool = False) -> List[Tuple[int, int, int]]:
    """Delaunay triangles as index triples (min index first, ccw order).

    Raises ValueError for fewer than 3 points, duplicates, or an
    all-collinear input.  Large all-integer inputs run on a compiled
    version of the same algorithm; ``force_pure`` pins the reference
    implementation (results are identical either way).
    """
    pts = [(p[0], p[1]) for p in points]
    n = len(pts)
    if n < 3:
        raise ValueError("need at least 3 points")
    _dedupe_check(pts)
    w = y_weight

    order = sorted(range(n), key=lambda i: pts[i])

    if not force_pure and n >= 512 and _int64_safe(pts, w):
        try:
            from ._delaunay_fast import HAVE_NUMBA, triangulate_int64
        except Exception:
            HAVE_NUMBA = False
        if HAVE_NUMBA:
            tris = triangulate_int64(pts, w, order)
            out = []
            for a, b, c in tris:
                m = min(a, b, c)
                if a == m:
                    out.append((a, b, c))
                elif b == m:
                    out.append((b, c, a))
                else:
                    out.append((c, a, b))
            out.sort()
            return out

    # First non-collinear triple in insertion order seeds the triangulation.
    i0, i1 = order[0], order[1]
    seed_k = None
    for k in range(2, n):
        if orient2(pts[i0], pts[i1], pts[order[k]]) != 0:
            seed_k = k
            break
    if seed_k is None:
        raise ValueError("all points are collinear")
    i2 = order[seed_k]
    rest = [order[k] for k in range(2, n) if k != seed_k]

    if orient2(pts[i0], pts[i1], pts[i2]) < 0:
        i1, i2 = i2, i1

    # Triangle store: verts[t] = [a, b, c] ccw; a ghost triangle keeps
    # GHOST in slot 2 and stores the hull edge reversed, so the exterior
    # lies on the LEFT of its stored (a -> b).  neigh[t][k] is the
    # triangle across the edge opposite slot k.
    verts: List[List[int]] = [[i0, i1, i2], [i1, i0, GHOST], [i2, i1, GHOST], [i0, i2, GHOST]]
    neigh: List[List[int]] = [
        [2, 3, 1],  # solid: across (i1,i2) / (i2,i0) / (i0,i1)
        [3, 2, 0],  # ghost (i1,i0): across (i0,G) g20, (G,i1) g12, hull edge solid
        [1, 3, 0],  # ghost (i2,i1)
        [2, 1, 0],  # ghost (i0,i2)
    ]
    alive = [True, True, True, True]
    free: List[int] = []

    def ghost_contains(t, p):
        a, b = verts[t][0], verts[t][1]
        pa, pb = pts[a], pts[b]
        o = orient2(pa, pb, p)
        if o > 0:
            return True
        if o < 0:
            return False
        # collinear: inside the ghost exactly when strictly within the
        # closed hull edge (paraboloid lift puts it below the chord)
        lo, hi = (pa, pb) if pa <= pb else (pb, pa)
        return lo < p < hi

    def tri_contains_cavity(t, p):
        a, b, c = verts[t]
        if c == GHOST:
            return ghost_contains(t, p)
        return incircle_sos(pts[a], pts[b], pts[c], p, w)

    def locate(t_start, p):
        t = t_start
        prev = -1
        for _ in range(4 * n + 64):
            a, b, c = verts[t]
            if c == GHOST:
                if ghost_contains(t, p):
                    return t
                # step inside through the hull edge
                nxt = neigh[t][2]
                if nxt == prev:
                    # walk along the hull instead
                    nxt = neigh[t][0]
                prev, t = t, nxt
                continue
            pa, pb, pc = pts[a], pts[b], pts[c]
            stepped = False
            # edge opposite slot k is (v[k+1], v[k+2])
            for k, (u, v) in enumerate(((b, c), (c, a), (a, b))):
                nxt = neigh[t][k]
                if nxt == prev:
                    continue
                if orient2(pts[u], pts[v], p) < 0:
                    prev, t = t, nxt
                    stepped = True
                    break
            if not stepped:
                return t
        raise RuntimeError("point location walk failed to terminate")

    def new_tri(a, b, c):
        if free:
            t = free.pop()
            verts[t] = [a, b, c]
            neigh[t] = [-2, -2, -2]
            alive[t] = True
            return t
        verts.append([a, b, c])
        neigh.append([-2, -2, -2])
        alive.append(True)
        return len(verts) - 1

    last = 0
    for p_idx in rest:
        p = pts[p_idx]
        if not alive[last]:
            last = next(t for t in range(len(verts)) if alive[t])
        seed = locate(last, p)
        if not tri_contains_cavity(seed, p):
            # p lies on an edge/ghost boundary; try neighbors
            found = None
            for k in range(3):
                t2 = neigh[seed][k]
                if t2 >= 0 and alive[t2] and tri_contains_cavity(t2, p):
                    found = t2
                    break
            if found is None:
                raise RuntimeError("no cavity seed found (duplicate point?)")
            seed = found
        # cavity BFS
        cavity = {seed}
        stack = [seed]
        while stack:
            t = stack.pop()
            for t2 in neigh[t]:
                if t2 >= 0 and t2 not in cavity and alive[t2] and tri_contains_cavity(t2, p):
                    cavity.add(t2)
                    stack.append(t2)
        # boundary directed edges (u -> v) with their outside triangle
        boundary = []
        for t in cavity:
            a, b, c = verts[t]
            for k, (u, v) in enumerate(((b, c), (c, a), (a, b))):
                t2 = neigh[t][k]
                if t2 not in cavity:
                    boundary.append((u, v, t2))
        # stitch the fan around p
        created = {}
        for u, v, t_out in boundary:
            t_new = new_tri(u, v, p_idx) if GHOST not in (u, v) else None
            if t_new is None:
                # keep GHOST in slot 2: rotate (u, v, p) accordingly
                if u == GHOST:
                    t_new = new_tri(v, p_idx, GHOST)
                else:
                    t_new = new_tri(p_idx, u, GHOST)
            # slot of p_idx: find it
            kp = verts[t_new].index(p_idx)
            neigh[t_new][kp] = t_out
            # fix the outside triangle's back pointer
            if t_out >= 0:
                for k2, (u2, v2) in enumerate(
                    ((verts[t_out][1], verts[t_out][2]),
                     (verts[t_out][2], verts[t_out][0]),
                     (verts[t_out][0], verts[t_out][1]))
                ):
                    if (u2, v2) == (v, u):
                        neigh[t_out][k2] = t_new
                        break
            created[(u, v)] = t_new
        # link fan neighbors: edge (v, p) of (u,v,p) meets edge (p, v) of the
        # next boundary edge starting at v
        start_of = {u: (u, v) for (u, v, _) in boundary}
        for (u, v), t_new in created.items():
            nxt_edge = start_of[v]
            t_next = created[nxt_edge]
            # in t_new, edge (v, p_idx) is opposite u
            ku = verts[t_new].index(u)
            neigh[t_new][ku] = t_next
            # in t_next, edge (p_idx, v) is opposite its second endpoint
            kv2 = verts[t_next].index(nxt_edge[1])
            neigh[t_next][kv2] = t_new
        for t in cavity:
            alive[t] = False
            free.append(t)
        last = next(iter(created.values()))

    out = []
    for t in range(len(verts)):
        if not alive[t]:
            continue
        a, b, c = verts[t]
        if a == GHOST or b == GHOST or c == GHOST:
            continue
        m = min(a, b, c)
        if a == m:
            tri = (a, b, c)
        elif b == m:
            tri = (b, c, a)
        else:
            tri = (c, a, b)
        out.append(tri)
    out.sort()
    return out


def delaunay(points: Sequence[Tuple], y_weight=1) -> List[Tuple[Tuple, Tuple, Tuple]]:
    """Delaunay triangulation returned as coordinate triples (ccw).

    Every triangle's circumcircle is empty; exactly cocircular groups are
    triangulated as a fan from their lexicographically least point.
    """
    idx = triangulate_indices(points, y_weight)
    pts = [(p[0], p[1]) for p in points]
    return [(pts[a], pts[b], pts[c]) for a, b, c in idx]
