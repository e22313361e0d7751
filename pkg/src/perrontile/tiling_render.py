"""Paths, areas, boundary-curve iteration and SVG output.

A word maps to a polygonal path from the origin (one segment per letter);
commutator-subgroup words give closed loops.  Iterating an endomorphism on
a basic commutator and rescaling by lambda^-k produces the boundary
approximants of the archtiles; this module measures their convergence
(Hausdorff metric), checks simplicity, lays out subdivision placements and
writes deterministic SVG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .free_group import (
    Endomorphism,
    Word,
    abelianize,
    apply_endo,
    commutator_word,
    consistency_check,
    decompose_commutator_word,
)
from .geometry import segments_intersect

__all__ = [
    "Polyline",
    "TilePlacement",
    "RenderConfig",
    "word_to_path",
    "signed_area",
    "boundary_approx",
    "subdivision_layout",
    "hausdorff_distance",
    "simplicity_check",
    "render_svg",
]


@dataclass(frozen=True)
class Polyline:
    """Planar polyline; a closed one stores each vertex once."""

    vertices: Tuple[Tuple[float, float], ...]
    closed: bool = False

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        for a, b in zip(verts, verts[1:]):
            if a == b:
                raise ValueError("consecutive vertices must be distinct")
        if self.closed and len(verts) >= 2 and verts[0] == verts[-1]:
            raise ValueError("closed polylines store the first vertex only once")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_complex(cls, points: Sequence[complex], closed: bool = False) -> "Polyline":
        return cls(tuple((z.real, z.imag) for z in points), closed)

    @property
    def segments(self):
        verts = self.vertices
        segs = list(zip(verts, verts[1:]))
        if self.closed and len(verts) >= 2:
            segs.append((verts[-1], verts[0]))
        return segs

    def translated(self, dz: complex) -> "Polyline":
        return Polyline(
            tuple((x + dz.real, y + dz.imag) for x, y in self.vertices), self.closed
        )

    def scaled(self, factor: complex) -> "Polyline":
        pts = [complex(x, y) * factor for x, y in self.vertices]
        return Polyline(tuple((z.real, z.imag) for z in pts), self.closed)


@dataclass(frozen=True)
class TilePlacement:
    """A translated copy of an archtile type inside a subdivision."""

    type_index: Tuple[int, int]
    translation: complex
    level: int = 0

    def to_json(self):
        return {
            "type": list(self.type_index),
            "translation": [self.translation.real, self.translation.imag],
            "level": self.level,
        }


def word_to_path(w: Word, gen_vectors: Sequence[complex]) -> Polyline:
    """Path from the origin, one segment per letter (vector or negation)."""
    pts = [0j]
    for g, e in w.letters:
        if g > len(gen_vectors):
            raise ValueError("word uses generator %d but only %d vectors given" % (g, len(gen_vectors)))
        pts.append(pts[-1] + e * complex(gen_vectors[g - 1]))
    return Polyline.from_complex(pts, closed=False)


def _close(path: Polyline, tol: float = 1e-9) -> Polyline:
    verts = path.vertices
    first, last = verts[0], verts[-1]
    if math.hypot(first[0] - last[0], first[1] - last[1]) > tol * max(1.0, _scale_of(verts)):
        raise ValueError("path endpoint does not return to the start")
    return Polyline(verts[:-1], closed=True)


def _scale_of(verts) -> float:
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    return max(max(xs) - min(xs), max(ys) - min(ys), 1e-300)


def signed_area(p: Polyline) -> float:
    """Shoelace area; positive means counterclockwise."""
    if not p.closed:
        raise ValueError("signed area needs a closed polyline")
    total = 0.0
    verts = p.vertices
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return 0.5 * total


def _lambda_of(ctx) -> complex:
    return complex(getattr(ctx, "lam", ctx))


def gen_vectors_for(ctx, n: int) -> List[complex]:
    lam = _lambda_of(ctx)
    return [lam**k for k in range(n)]


def boundary_approx(phi: Endomorphism, x: Tuple[int, int], k: int, ctx) -> Polyline:
    """The k-th rescaled boundary approximant of archtile [a_i, a_j].

    Applies the endomorphism k times to the basic commutator, draws the
    path with generator vectors 1, lambda, ..., lambda^(n-1), and rescales
    by lambda^-k; the result is a closed curve.
    """
    lam = _lambda_of(ctx)
    report = consistency_check(phi, lam)
    if not report["passed"]:
        raise ValueError("endomorphism endpoints do not scale by lambda; residuals=%s" % report["residuals"])
    w = commutator_word(*x)
    for _ in range(k):
        w = apply_endo(phi, w)
    # The iterate is g * core * g^-1; the loop of the conjugator is a
    # zero-area slit at the basepoint, so the curve drawn is the core.
    core, _ = w.cyclic_core()
    path = word_to_path(core, gen_vectors_for(lam, phi.n))
    return _close(path.scaled(lam ** (-k)))


def subdivision_layout(phi: Endomorphism, x: Tuple[int, int], ctx) -> List[TilePlacement]:
    """Placements of the archtiles inside the lambda-image of archtile x.

    One placement per collection factor; the translation is the endpoint
    of the conjugator's path.  Conjugation is translation on loops, so the
    placed copies cover the image loop's region exactly (area identity).
    """
    lam = _lambda_of(ctx)
    vectors = gen_vectors_for(lam, phi.n)
    image = apply_endo(phi, commutator_word(*x))
    decomp = decompose_commutator_word(image)
    placements = []
    for f in decomp.factors:
        if f.sign < 0:
            raise ValueError("negative factor; endomorphism is not a subdivision rule")
        endpoint = sum(e * vectors[g - 1] for g, e in f.conjugator.letters)
        placements.append(TilePlacement(type_index=f.pair, translation=endpoint, level=0))
    return placements


def _densified(p: Polyline, spacing: float) -> np.ndarray:
    pts = []
    for (x1, y1), (x2, y2) in p.segments:
        seg_len = math.hypot(x2 - x1, y2 - y1)
        steps = max(1, int(math.ceil(seg_len / spacing)))
        for t in range(steps):
            f = t / steps
            pts.append((x1 + f * (x2 - x1), y1 + f * (y2 - y1)))
    if not p.closed:
        pts.append(p.vertices[-1])
    return np.array(pts)


def hausdorff_distance(p1: Polyline, p2: Polyline, spacing: Optional[float] = None) -> float:
    """Symmetric Hausdorff distance between two polylines as curves.

    Segments are densified to roughly 1e-3 of the curve scale before the
    two-sided nearest-point query; zero (up to the densification
    tolerance) iff the point sets coincide.
    """
    from scipy.spatial import cKDTree

    if not p1.vertices or not p2.vertices:
        raise ValueError("polylines must be nonempty")
    if spacing is None:
        scale = max(_scale_of(p1.vertices), _scale_of(p2.vertices))
        spacing = 1e-3 * scale
    a = _densified(p1, spacing)
    b = _densified(p2, spacing)
    d_ab = cKDTree(b).query(a, k=1)[0].max()
    d_ba = cKDTree(a).query(b, k=1)[0].max()
    return float(max(d_ab, d_ba))


def simplicity_check(p: Polyline) -> bool:
    """No two non-adjacent sides of the closed curve may touch."""
    if not p.closed:
        raise ValueError("simplicity is defined for closed polylines")
    segs = p.segments
    n = len(segs)
    if n < 3:
        return False
    boxes = np.empty((n, 4))
    for i, ((x1, y1), (x2, y2)) in enumerate(segs):
        boxes[i] = (min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2))
    for i in range(n):
        js = np.nonzero(
            (boxes[i + 1 :, 0] <= boxes[i, 2])
            & (boxes[i + 1 :, 2] >= boxes[i, 0])
            & (boxes[i + 1 :, 1] <= boxes[i, 3])
            & (boxes[i + 1 :, 3] >= boxes[i, 1])
        )[0]
        for off in js:
            j = i + 1 + int(off)
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if segments_intersect(*segs[i], *segs[j], closed=not adjacent):
                return False
    return True


# ---------------------------------------------------------------------------
# SVG


DEFAULT_PALETTE = (
    "#4c72b0",
    "#dd8452",
    "#55a868",
    "#c44e52",
    "#8172b3",
    "#937860",
    "#da8bc3",
    "#8c8c8c",
)


@dataclass(frozen=True)
class RenderConfig:
    scale: float = 100.0
    stroke_width: float = 1.0
    palette: Tuple[str, ...] = DEFAULT_PALETTE
    margin: float = 10.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _fmt(value: float) -> str:
    return ("%.6f" % value).rstrip("0").rstrip(".")


def render_svg(items: Sequence, config: RenderConfig = RenderConfig()) -> str:
    """Deterministic SVG 1.1 for polylines and (polyline, placement) tiles.

    ``items`` holds Polyline objects and/or (Polyline, TilePlacement)
    pairs (the polyline being the archtile outline to translate).  The
    y axis is flipped so counterclockwise curves render counterclockwise.
    """
    shapes = []  # (points, color_index, closed)
    for item in items:
        if isinstance(item, Polyline):
            shapes.append((item, 0))
        else:
            outline, placement = item
            color = 1 + (placement.type_index[0] + placement.type_index[1]) % (len(config.palette) - 1)
            shapes.append((outline.translated(placement.translation), color))

    s = config.scale
    pts_all = [(x * s, -y * s) for poly, _ in shapes for (x, y) in poly.vertices]
    if pts_all:
        xs = [p[0] for p in pts_all]
        ys = [p[1] for p in pts_all]
        x0, y0 = min(xs) - config.margin, min(ys) - config.margin
        x1, y1 = max(xs) + config.margin, max(ys) + config.margin
    else:
        x0, y0, x1, y1 = 0.0, 0.0, 2 * config.margin, 2 * config.margin

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%s %s %s %s">' % (_fmt(x0), _fmt(y0), _fmt(x1 - x0), _fmt(y1 - y0)),
    ]
    for poly, color in shapes:
        coords = [(x * s, -y * s) for x, y in poly.vertices]
        d = "M" + " L".join("%s %s" % (_fmt(x), _fmt(y)) for x, y in coords)
        if poly.closed:
            d += " Z"
        fill = config.palette[color] if color else "none"
        lines.append(
            '<path d="%s" fill="%s" fill-opacity="%s" stroke="%s" stroke-width="%s"/>'
            % (d, fill, "0.55" if color else "0", config.palette[0] if not color else "#222222", _fmt(config.stroke_width))
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
