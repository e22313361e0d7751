"""The size constants of the lattice construction.

M bounds the annulus triangulation's edge data (planar and vertical) and
the lattice covering radius; r2 = 2M is the edge-zone width, r1 =
r2/sin(theta/2) the vertex-zone radius (theta the smallest realized vertex
angle, so the r2-tubes of two edges only meet inside the r1-disks of the
shared vertex); n makes every scaled triangle lambda^n t flat (projection
3/2-biLipschitz) and roomy (inscribed radius >= 2 diam(lambda T0) + 2 r2,
leaving space for a central tile clear of the edge zones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from ..number_field import FieldContext, bilipschitz_constant, covering_radius_bound
from .frame import LatticeFrame
from .t0 import CentralTile, LatticeTriangle

__all__ = ["ConstructionConstants", "compute_constants"]


@dataclass(frozen=True)
class ConstructionConstants:
    M: int
    theta: float
    r1: float
    r2: int
    n: int
    lambda_abs: float
    flatness_n: int
    inradius_n: int

    def __post_init__(self):
        if self.r2 != 2 * self.M:
            raise ValueError("r2 must equal 2M")

    @property
    def r1_exact(self) -> Fraction:
        """Rational radius >= r1 used by the integer predicates."""
        return Fraction(math.ceil(self.r1 * 1024), 1024)

    @property
    def subdivision_exponent(self) -> int:
        """The construction subdivides lambda^(n+2) t."""
        return self.n + 2

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "theta": self.theta,
            "r1": self.r1,
            "r2": self.r2,
            "n": self.n,
            "lambda_abs": self.lambda_abs,
            "flatness_n": self.flatness_n,
            "inradius_n": self.inradius_n,
        }


def _strict_int_above(bound: float) -> int:
    m = int(math.floor(bound)) + 1
    while m <= bound:
        m += 1
    return m


def compute_constants(ctx: FieldContext, t0: CentralTile,
                      annulus: Sequence[LatticeTriangle]) -> ConstructionConstants:
    """Smallest constants satisfying all the side conditions.

    M is the least integer exceeding 2|lambda|^2 * (max vertical edge
    span), |lambda|^2 * (max planar edge length), and 2|lambda| times the
    covering-radius bound of the embedded lattice.  theta and n are taken
    over the realized (annulus) triangles; n additionally satisfies the
    flatness and inscribed-radius conditions per triangle.
    """
    frame = t0.frame
    lam_abs = math.sqrt(float(frame.abs_lambda_sq)) if frame.exact else abs(ctx.lam)
    lam_sq = float(frame.abs_lambda_sq) if frame.exact else ctx.abs_lambda_sq

    # condition 2 (planar): M > |lambda|^2 |v_i - v_j| over triangle edges;
    # exact on integer frames via squared comparisons
    m_planar = 1
    if frame.exact:
        best_sq = Fraction(0)
        for t in annulus:
            a, b, c = t.pts
            for u, v in ((a, b), (b, c), (c, a)):
                d = frame.physical_dist_sq(u, v)
                if d > best_sq:
                    best_sq = Fraction(d)
        bound_sq = Fraction(frame.abs_lambda_sq) ** 2 * best_sq
        m_planar = 1
        while Fraction(m_planar * m_planar) <= bound_sq:
            m_planar += 1
    else:
        best = 0.0
        for t in annulus:
            zs = [frame.numeric(p) for p in t.pts]
            for k in range(3):
                best = max(best, abs(zs[k] - zs[(k + 1) % 3]))
        m_planar = _strict_int_above(lam_sq * best)

    # condition 1 (vertical): M > 2 |lambda|^2 |||v_i - v_j|||
    max_vert = 0.0
    for t in annulus:
        elems = t.vertices
        for k in range(3):
            from ..number_field import vertical_norm

            max_vert = max(max_vert, vertical_norm(ctx, elems[k] - elems[(k + 1) % 3]))
    m_vert = _strict_int_above(2 * lam_sq * max_vert) if max_vert > 0 else 1

    # condition 3: covering radius of sigma(A) at most M / (2 |lambda|)
    cov = covering_radius_bound(ctx)
    m_cov = max(1, int(math.ceil(2 * lam_abs * cov * (1 + 1e-12))))

    M = max(m_planar, m_vert, m_cov, 2)

    theta = min(t.min_angle() for t in annulus)
    r2 = 2 * M
    r1 = r2 / math.sin(theta / 2)

    diam = t0.scaled_by_lambda().diameter()
    target = 2 * diam + 2 * r2
    flatness_n = 0
    inradius_n = 0
    for t in annulus:
        k = 0
        while bilipschitz_constant(ctx, list(t.vertices), k) > 1.5:
            k += 1
            if k > 200:
                raise RuntimeError("flatness exponent search exceeded budget")
        flatness_n = max(flatness_n, k)
        rho = t.inradius()
        k = 0
        while (lam_abs ** k) * rho < target * (1 + 1e-12):
            k += 1
            if k > 200:
                raise RuntimeError("inradius exponent search exceeded budget")
        inradius_n = max(inradius_n, k)
    n = max(flatness_n, inradius_n)

    return ConstructionConstants(
        M=M,
        theta=theta,
        r1=r1,
        r2=r2,
        n=n,
        lambda_abs=lam_abs,
        flatness_n=flatness_n,
        inradius_n=inradius_n,
    )
