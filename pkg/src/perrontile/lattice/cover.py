"""Exact cover verification by directed-edge cancellation.

A family of positively oriented triangles (plus optional polygon tiles)
tiles a region exactly iff their directed edges cancel in pairs down to
the region boundary and the areas add up to the region area.  With
degree-1 winding both checks together rule out overlaps and gaps up to
measure zero; on integer frames everything is integer arithmetic.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, List, Sequence, Tuple

from ..geometry import orient2, polygon_area2

__all__ = ["edge_residual", "residual_cycles", "check_exact_cover", "CoverError"]


class CoverError(RuntimeError):
    pass


def _ccw(poly):
    if polygon_area2(poly) < 0:
        return tuple(reversed(poly))
    return tuple(poly)


def edge_residual(polygons: Iterable[Sequence[Tuple]]) -> Counter:
    """Uncancelled directed edges of the union of ccw polygon boundaries."""
    count: Counter = Counter()
    for poly in polygons:
        poly = _ccw(tuple(poly))
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            if count[(b, a)] > 0:
                count[(b, a)] -= 1
                if count[(b, a)] == 0:
                    del count[(b, a)]
            else:
                count[(a, b)] += 1
    return count


def residual_cycles(residual: Counter) -> List[List[Tuple]]:
    """Stitch residual directed edges into closed cycles.

    Raises CoverError if any directed edge appears twice (a double cover)
    or the edges do not close up.
    """
    for (a, b), mult in residual.items():
        if mult != 1:
            raise CoverError("directed edge %s->%s covered %d times" % (a, b, mult))
    out_edges = {}
    for (a, b) in residual:
        out_edges.setdefault(a, []).append(b)
    for a in out_edges:
        out_edges[a].sort()
    cycles = []
    while out_edges:
        start = min(out_edges)
        cycle = [start]
        cur = start
        while True:
            nxts = out_edges.get(cur)
            if not nxts:
                raise CoverError("residual edges do not close at %s" % (cur,))
            nxt = nxts.pop(0)
            if not nxts:
                del out_edges[cur]
            if nxt == start:
                break
            cycle.append(nxt)
            cur = nxt
        cycles.append(cycle)
    return cycles


def check_exact_cover(polygons: Sequence[Sequence[Tuple]],
                      region_boundary: Sequence[Sequence[Tuple]] = None,
                      region_holes: Sequence[Sequence[Tuple]] = None):
    """Verify that the polygons tile a region exactly.

    With ``region_boundary`` (outer cycles, ccw) and optional
    ``region_holes`` (hole cycles, ccw polygons to be excluded), the
    residual must equal the region's boundary exactly and the areas must
    match.  Without a region, the residual just has to close into simple
    cycles whose enclosed area equals the total tile area; returns the
    cycles.  All comparisons are exact on int/Fraction coordinates.
    """
    polys = [_ccw(tuple(p)) for p in polygons]
    residual = edge_residual(polys)
    total2 = sum(abs(polygon_area2(p)) for p in polys)

    if region_boundary is not None:
        expected: Counter = Counter()
        area2 = 0
        for cyc in region_boundary:
            cyc = _ccw(tuple(cyc))
            area2 += abs(polygon_area2(cyc))
            for i in range(len(cyc)):
                expected[(cyc[i], cyc[(i + 1) % len(cyc)])] += 1
        for hole in region_holes or ():
            hole = _ccw(tuple(hole))
            area2 -= abs(polygon_area2(hole))
            rev = tuple(reversed(hole))
            for i in range(len(rev)):
                expected[(rev[i], rev[(i + 1) % len(rev)])] += 1
        if residual != expected:
            missing = expected - residual
            extra = residual - expected
            raise CoverError(
                "cover boundary mismatch: %d missing, %d extra directed edges"
                % (sum(missing.values()), sum(extra.values()))
            )
        if total2 != area2:
            raise CoverError("cover area mismatch: tiles %s vs region %s" % (total2, area2))
        return None

    cycles = residual_cycles(residual)
    cyc_area2 = sum(polygon_area2(c) for c in cycles)
    if cyc_area2 != total2:
        raise CoverError(
            "tile areas (%s) do not match the residual boundary area (%s)"
            % (total2, cyc_area2)
        )
    return cycles
