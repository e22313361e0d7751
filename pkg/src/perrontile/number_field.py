"""Arithmetic in Q[lambda] for a Perron expansion candidate lambda.

The expanding plane of the tiling construction lives inside the embedding
space W (R^d for nonreal lambda, R^d x R^d for real lambda).  This module
builds that space: root finding with residual error radii, the Perron
classifier, the companion-matrix action m_lambda, the embedding sigma, the
projection pi onto the expanding plane, the vertical norm, covering-radius
bounds for the lattice Z[lambda], and exact membership of roots of unity.

Exact claims use Fraction arithmetic; floats are confined to embeddings,
eigen-structure and rendering.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "IntPolynomial",
    "FieldContext",
    "FieldElement",
    "EmbeddedPoint",
    "PerronClass",
    "find_roots",
    "classify_perron",
    "build_context",
    "sigma",
    "pi_project",
    "mul_lambda",
    "vertical_norm",
    "bilipschitz_constant",
    "covering_radius_bound",
    "covering_bound_for_basis",
    "cyclotomic_in_field",
    "lll_reduce_int",
]

DEFAULT_TOL = 1e-9
_ROOT_TOL = 1e-12


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_string(cls, text: str) -> "IntPolynomial":
        """Parse a comma-separated coefficient list, lowest degree first."""
        parts = [p.strip() for p in text.replace("−", "-").split(",")]
        return cls(tuple(int(p) for p in parts if p))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, z):
        acc = 0.0 if not isinstance(z, complex) else 0j
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derivative_at(self, z):
        acc = 0j
        n = self.degree
        for k in range(n, 0, -1):
            acc = acc * z + k * self.coefficients[k]
        return acc

    def is_irreducible(self) -> bool:
        """Irreducibility over Q; result cached on first use."""
        cached = _IRREDUCIBLE_CACHE.get(self.coefficients)
        if cached is None:
            import sympy

            x = sympy.Symbol("x")
            expr = sum(c * x**k for k, c in enumerate(self.coefficients))
            cached = bool(sympy.Poly(expr, x, domain="QQ").is_irreducible)
            _IRREDUCIBLE_CACHE[self.coefficients] = cached
        return cached

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


_IRREDUCIBLE_CACHE: dict = {}


class RootFindingError(RuntimeError):
    """Simultaneous iteration failed to certify roots; carries residuals."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or []


def find_roots(poly: IntPolynomial, tol: float = _ROOT_TOL, max_iter: int = 400):
    """All complex roots with residual error radii, conjugates matched.

    Aberth-style simultaneous iteration from perturbed-circle starting
    values.  The radius for an approximation z is d*|q(z)/q'(z)|, which
    bounds the distance to the nearest true root.
    """
    if not poly.is_monic:
        raise ValueError("root finder expects a monic polynomial")
    d = poly.degree
    coeffs = poly.coefficients
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    z = [
        radius * cmath.exp(2j * math.pi * (k + 0.28) / d + 0.13j / (k + 1))
        for k in range(d)
    ]
    radii = [math.inf] * d
    for _ in range(max_iter):
        done = True
        for k in range(d):
            p = poly(complex(z[k]))
            dp = poly.derivative_at(complex(z[k]))
            if dp == 0:
                z[k] += 1e-8 + 1e-8j
                done = False
                continue
            newton = p / dp
            corr = sum(1.0 / (z[k] - z[j]) for j in range(d) if j != k)
            denom = 1.0 - newton * corr
            step = newton / denom if denom != 0 else newton
            z[k] -= step
            radii[k] = d * abs(poly(complex(z[k]))) / max(abs(poly.derivative_at(complex(z[k]))), 1e-300)
            if radii[k] >= tol:
                done = False
        if done:
            break
    else:
        raise RootFindingError(
            "root iteration did not converge below tol=%g" % tol,
            residuals=[abs(poly(complex(v))) for v in z],
        )
    return _symmetrize_conjugates(z, radii)


def _symmetrize_conjugates(roots, radii):
    """Snap near-real roots to the real axis and pair conjugates exactly."""
    out = []
    used = [False] * len(roots)
    order = sorted(range(len(roots)), key=lambda k: (-abs(roots[k]), roots[k].imag))
    for k in order:
        if used[k]:
            continue
        z, r = roots[k], radii[k]
        if abs(z.imag) <= max(r, 1e-13) * 10:
            out.append((complex(z.real, 0.0), r))
            used[k] = True
            continue
        mate, best = None, math.inf
        for j in range(len(roots)):
            if j == k or used[j]:
                continue
            dist = abs(roots[j] - z.conjugate())
            if dist < best:
                mate, best = j, dist
        if mate is None:
            out.append((z, r))
            used[k] = True
            continue
        used[k] = used[mate] = True
        avg = (z + roots[mate].conjugate()) / 2
        rr = max(r, radii[mate])
        if avg.imag < 0:
            avg = avg.conjugate()
        out.append((avg, rr))
        out.append((avg.conjugate(), rr))
    out.sort(key=lambda zr: (-abs(zr[0]), -zr[0].imag))
    return [z for z, _ in out], [r for _, r in out]


# ---------------------------------------------------------------------------
# Perron classification


class PerronClass:
    NOT_ALGEBRAICALLY_VALID = "NotAlgebraicallyValid"
    NOT_PERRON = "NotPerron"
    REAL_PERRON = "RealPerron"
    COMPLEX_PERRON = "ComplexPerron"


def classify_perron(poly: IntPolynomial) -> str:
    """Classify the dominant root of a monic irreducible polynomial.

    ComplexPerron: |lambda| > 1 and |lambda| strictly exceeds every
    conjugate except the complex conjugate of lambda.  The |lambda| > 1
    requirement is what makes multiplication by lambda an expansion; it is
    enforced here even though some definitions leave it implicit.
    """
    if not poly.is_monic or not poly.is_irreducible():
        return PerronClass.NOT_ALGEBRAICALLY_VALID
    roots, radii = find_roots(poly)
    lam, rad = roots[0], radii[0]
    slack = 4 * (max(radii) + rad)
    if abs(lam) <= 1.0 + slack:
        return PerronClass.NOT_PERRON
    if lam.imag == 0.0:
        for z in roots[1:]:
            if abs(lam) - abs(z) <= slack:
                return PerronClass.NOT_PERRON
        return PerronClass.REAL_PERRON
    for z in roots[1:]:
        if abs(z - lam.conjugate()) <= slack:
            continue
        if abs(lam) - abs(z) <= slack:
            return PerronClass.NOT_PERRON
    return PerronClass.COMPLEX_PERRON


# ---------------------------------------------------------------------------
# field elements


def _as_fraction_tuple(values, d):
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != d:
        raise ValueError("expected %d coefficients, got %d" % (d, len(vals)))
    return vals


@dataclass(frozen=True)
class FieldElement:
    """Element of Q[lambda] as coefficients in the basis 1..lambda^(d-1).

    For real-lambda contexts an element of the ambient plane is a pair
    (x, y) of field elements; ``second`` holds y's coefficients.
    """

    coeffs: tuple
    second: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if self.second is not None:
            object.__setattr__(self, "second", tuple(Fraction(c) for c in self.second))

    @property
    def is_pair(self) -> bool:
        return self.second is not None

    @property
    def in_lattice(self) -> bool:
        parts = self.coeffs + (self.second or ())
        return all(c.denominator == 1 for c in parts)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        if self.is_pair != other.is_pair:
            raise ValueError("mixed pair/non-pair elements")
        if self.is_pair:
            return FieldElement(
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                tuple(a + b for a, b in zip(self.second, other.second)),
            )
        return FieldElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __neg__(self) -> "FieldElement":
        return FieldElement(
            tuple(-a for a in self.coeffs),
            None if self.second is None else tuple(-a for a in self.second),
        )

    def scale(self, k) -> "FieldElement":
        k = Fraction(k)
        return FieldElement(
            tuple(k * a for a in self.coeffs),
            None if self.second is None else tuple(k * a for a in self.second),
        )


@dataclass(frozen=True)
class EmbeddedPoint:
    """Point of the embedding space W, optionally tagged with its source."""

    coords: np.ndarray
    provenance: Optional[FieldElement] = None


# ---------------------------------------------------------------------------
# the field context


@dataclass(frozen=True)
class FieldContext:
    """Everything the constructions need to know about Q[lambda].

    Immutable after construction; all operations on it are pure functions,
    so a context can be shared freely across workers.
    """

    poly: IntPolynomial
    roots: tuple
    root_radii: tuple
    lambda_index: int
    r: int
    c: int
    is_real_lambda: bool
    embed_dim: int
    companion: tuple
    sigma_matrix: np.ndarray = field(repr=False)
    pi_matrix: np.ndarray = field(repr=False)
    mlambda_matrix: np.ndarray = field(repr=False)
    v_lambda_basis: np.ndarray = field(repr=False)
    vertical_projector: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def lam(self) -> complex:
        return self.roots[self.lambda_index]

    @property
    def abs_lambda_sq(self) -> float:
        return abs(self.lam) ** 2

    def element(self, coeffs: Sequence, second: Optional[Sequence] = None) -> FieldElement:
        d = self.degree
        first = _as_fraction_tuple(tuple(coeffs) + (0,) * (d - len(tuple(coeffs))), d)
        if self.is_real_lambda:
            sec = (0,) * d if second is None else tuple(second) + (0,) * (d - len(tuple(second)))
            return FieldElement(first, _as_fraction_tuple(sec, d))
        if second is not None:
            raise ValueError("pair elements only exist for real-lambda contexts")
        return FieldElement(first)

    def zero(self) -> FieldElement:
        return self.element((0,) * self.degree)

    def one(self) -> FieldElement:
        return self.element((1,) + (0,) * (self.degree - 1))

    def lambda_element(self) -> FieldElement:
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def numeric(self, elem: FieldElement) -> complex:
        """The designated planar value sigma_lambda(elem) (pair -> x + i y)."""
        if self.is_real_lambda:
            lam = self.lam.real
            x = sum(float(c) * lam**k for k, c in enumerate(elem.coeffs))
            y = sum(float(c) * lam**k for k, c in enumerate(elem.second))
            return complex(x, y)
        return sum(complex(c) * self.lam**k for k, c in enumerate(elem.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        """Product in Q[lambda] (non-pair elements only)."""
        if a.is_pair or b.is_pair:
            raise ValueError("field multiplication is defined on Q[lambda] only")
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return FieldElement(tuple(_poly_mod(prod, self._q_fractions())))

    def _q_fractions(self):
        return [Fraction(c) for c in self.poly.coefficients]


def build_context(poly: IntPolynomial) -> FieldContext:
    """Construct the embedding space W and companion action for lambda."""
    kind = classify_perron(poly)
    if kind not in (PerronClass.REAL_PERRON, PerronClass.COMPLEX_PERRON):
        raise ValueError("polynomial is %s; a Perron root is required" % kind)
    roots, radii = find_roots(poly)
    d = poly.degree
    lam = roots[0]
    is_real = lam.imag == 0.0

    real_roots = [z for z in roots if z.imag == 0.0]
    pos_imag = [z for z in roots if z.imag > 0.0]
    r, c = len(real_roots), len(pos_imag)

    # Embedding rows: the lambda plane first, then the remaining real
    # embeddings, then one (Re, Im) block per remaining conjugate pair.
    if is_real:
        axis_roots = [lam] + [z for z in real_roots if z != lam] + pos_imag
    else:
        axis_roots = [lam] + real_roots + [z for z in pos_imag if z != lam]

    rows = []
    kinds = []  # ('re', root) or ('im', root)
    for z in axis_roots:
        if z.imag == 0.0:
            rows.append([(z.real**k) for k in range(d)])
            kinds.append(("re", z))
        else:
            rows.append([(z**k).real for k in range(d)])
            rows.append([(z**k).imag for k in range(d)])
            kinds.append(("re", z))
            kinds.append(("im", z))
    S = np.array(rows, dtype=float)  # d x d

    # Block form of multiplication by lambda in these coordinates.
    M = np.zeros((d, d))
    i = 0
    while i < d:
        z = kinds[i][1]
        if z.imag == 0.0:
            M[i, i] = z.real
            i += 1
        else:
            M[i, i] = z.real
            M[i, i + 1] = -z.imag
            M[i + 1, i] = z.imag
            M[i + 1, i + 1] = z.real
            i += 2

    companion = _companion_matrix(poly)

    if is_real:
        D = 2 * d
        sigma_matrix = np.zeros((D, 2 * d))
        sigma_matrix[:d, :d] = S
        sigma_matrix[d:, d:] = S
        pi_matrix = np.zeros((2, D))
        pi_matrix[0, 0] = 1.0
        pi_matrix[1, d] = 1.0
        mlam = np.zeros((D, D))
        mlam[:d, :d] = M
        mlam[d:, d:] = M
        v_basis = np.zeros((2, D))
        v_basis[0, 0] = 1.0
        v_basis[1, d] = 1.0
        vert = np.eye(D)
        vert[0, 0] = 0.0
        vert[d, d] = 0.0
    else:
        D = d
        sigma_matrix = S
        pi_matrix = np.zeros((2, D))
        pi_matrix[0, 0] = 1.0
        pi_matrix[1, 1] = 1.0
        mlam = M
        v_basis = np.zeros((2, D))
        v_basis[0, 0] = 1.0
        v_basis[1, 1] = 1.0
        vert = np.eye(D)
        vert[0, 0] = 0.0
        vert[1, 1] = 0.0

    ctx = FieldContext(
        poly=poly,
        roots=tuple(roots),
        root_radii=tuple(radii),
        lambda_index=0,
        r=r,
        c=c,
        is_real_lambda=is_real,
        embed_dim=D,
        companion=companion,
        sigma_matrix=sigma_matrix,
        pi_matrix=pi_matrix,
        mlambda_matrix=mlam,
        v_lambda_basis=v_basis,
        vertical_projector=vert,
    )
    _check_context(ctx)
    return ctx


def _companion_matrix(poly: IntPolynomial):
    d = poly.degree
    mat = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        mat[j + 1][j] = 1
    for i in range(d):
        mat[i][d - 1] = -poly.coefficients[i]
    return tuple(tuple(row) for row in mat)


def _check_context(ctx: FieldContext, tol: float = 1e-7) -> None:
    d = ctx.degree
    C = np.array(ctx.companion, dtype=float)
    if ctx.is_real_lambda:
        C2 = np.zeros((2 * d, 2 * d))
        C2[:d, :d] = C
        C2[d:, d:] = C
        C = C2
    lhs = ctx.sigma_matrix @ C
    rhs = ctx.mlambda_matrix @ ctx.sigma_matrix
    err = float(np.max(np.abs(lhs - rhs)))
    if err > tol * max(1.0, float(np.max(np.abs(rhs)))):
        raise AssertionError("sigma does not intertwine multiplication by lambda (err=%g)" % err)


# ---------------------------------------------------------------------------
# the embedding operations


def _coeff_vector(ctx: FieldContext, elem: FieldElement) -> np.ndarray:
    d = ctx.degree
    if ctx.is_real_lambda:
        if not elem.is_pair:
            raise ValueError("real-lambda context needs pair elements")
        vals = [float(c) for c in elem.coeffs] + [float(c) for c in elem.second]
        if len(vals) != 2 * d:
            raise ValueError("coefficient length mismatch")
        return np.array(vals)
    if elem.is_pair:
        raise ValueError("pair element in a nonreal-lambda context")
    if len(elem.coeffs) != d:
        raise ValueError("coefficient length mismatch")
    return np.array([float(c) for c in elem.coeffs])


def sigma(ctx: FieldContext, elem: FieldElement) -> EmbeddedPoint:
    """Embed into W = R^D; the expanding plane occupies the lead coordinates."""
    coords = ctx.sigma_matrix @ _coeff_vector(ctx, elem)
    return EmbeddedPoint(coords=coords, provenance=elem)


def pi_project(ctx: FieldContext, point: Union[EmbeddedPoint, FieldElement]) -> complex:
    """Project W onto the expanding plane, returned as a complex number."""
    if isinstance(point, FieldElement):
        point = sigma(ctx, point)
    xy = ctx.pi_matrix @ np.asarray(point.coords, dtype=float)
    return complex(xy[0], xy[1])


def mul_lambda(ctx: FieldContext, elem: FieldElement) -> FieldElement:
    """Multiply by lambda via the integer companion matrix (exact)."""
    C = ctx.companion
    d = ctx.degree

    def apply(coeffs):
        return tuple(sum(Fraction(C[i][j]) * coeffs[j] for j in range(d)) for i in range(d))

    if ctx.is_real_lambda:
        return FieldElement(apply(elem.coeffs), apply(elem.second))
    return FieldElement(apply(elem.coeffs))


def vertical_norm(ctx: FieldContext, elem: FieldElement) -> float:
    """Distance from sigma(elem) to the expanding plane."""
    coords = ctx.sigma_matrix @ _coeff_vector(ctx, elem)
    return float(np.linalg.norm(ctx.vertical_projector @ coords))


def bilipschitz_constant(ctx: FieldContext, triangle: Sequence[FieldElement], n: int = 0) -> float:
    """How far pi restricted to sigma(lambda^n t) is from an isometry.

    Computed from the singular values of pi on an orthonormal basis of the
    plane spanned by the triangle's embedded edge vectors; always >= 1,
    exactly 1 when the triangle is parallel to the expanding plane.
    """
    if len(triangle) != 3:
        raise ValueError("triangle needs three vertices")
    e1 = triangle[1] - triangle[0]
    e2 = triangle[2] - triangle[0]
    for _ in range(n):
        e1 = mul_lambda(ctx, e1)
        e2 = mul_lambda(ctx, e2)
    E = np.column_stack([ctx.sigma_matrix @ _coeff_vector(ctx, e1),
                         ctx.sigma_matrix @ _coeff_vector(ctx, e2)])
    q, rr = np.linalg.qr(E)
    if abs(rr[0, 0] * rr[1, 1]) < 1e-300:
        raise ValueError("degenerate (collinear) triangle")
    svals = np.linalg.svd(ctx.pi_matrix @ q, compute_uv=False)
    smin = float(svals.min())
    if smin <= 0:
        raise ValueError("projection collapses the triangle plane")
    return max(float(svals.max()), 1.0 / smin)


# ---------------------------------------------------------------------------
# covering radius of sigma(Z[lambda])


def covering_bound_for_basis(basis: np.ndarray) -> float:
    """Upper bound on the covering radius of the lattice spanned by ``basis``.

    LLL-reduces (floating point), then returns half the Euclidean norm of
    the vector of Gram-Schmidt lengths: nearest-plane reaches any target
    within that distance.
    """
    B = [np.array(row, dtype=float) for row in np.asarray(basis, dtype=float).T]
    B = _lll_float(B)
    lengths = []
    ortho: list = []
    for b in B:
        v = b.copy()
        for u in ortho:
            nu = float(u @ u)
            if nu > 0:
                v = v - (float(b @ u) / nu) * u
        ortho.append(v)
        lengths.append(float(np.linalg.norm(v)))
    return 0.5 * math.sqrt(sum(l * l for l in lengths))


def _lll_float(basis, delta=0.75):
    B = [b.astype(float).copy() for b in basis]
    n = len(B)

    def gram(Bv):
        ortho, mu = [], [[0.0] * n for _ in range(n)]
        for i, b in enumerate(Bv):
            v = b.copy()
            for j in range(i):
                nu = float(ortho[j] @ ortho[j])
                mu[i][j] = float(b @ ortho[j]) / nu if nu > 0 else 0.0
                v = v - mu[i][j] * ortho[j]
            ortho.append(v)
        return ortho, mu

    ortho, mu = gram(B)
    k = 1
    guard = 0
    while k < n and guard < 10000:
        guard += 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q != 0:
                B[k] = B[k] - q * B[j]
        ortho, mu = gram(B)
        lhs = float(ortho[k] @ ortho[k])
        rhs = (delta - mu[k][k - 1] ** 2) * float(ortho[k - 1] @ ortho[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            ortho, mu = gram(B)
            k = max(k - 1, 1)
    return B


def covering_radius_bound(ctx: FieldContext) -> float:
    """Covering-radius upper bound for sigma(Z[lambda]) in W."""
    return covering_bound_for_basis(ctx.sigma_matrix)


# ---------------------------------------------------------------------------
# exact rational polynomial helpers (for the root-of-unity test)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_mod(p, q):
    """p mod q for monic q, Fraction coefficients; returns deg(q)-1 values."""
    p = [Fraction(c) for c in p]
    dq = len(q) - 1
    while len(p) > dq:
        lead = p[-1]
        if lead:
            off = len(p) - 1 - dq
            for i in range(dq):
                p[off + i] -= lead * q[i]
        p.pop()
    return p + [Fraction(0)] * (dq - len(p))


def _compose_mod(outer_int_coeffs, inner, q):
    """outer(inner(x)) mod q(x) by Horner; outer has integer coefficients."""
    acc = [Fraction(0)] * (len(q) - 1)
    for c in reversed(outer_int_coeffs):
        acc = _poly_mod(_poly_mul(acc, inner) if any(acc) else [Fraction(0)], q)
        acc = acc + [Fraction(0)] * (len(q) - 1 - len(acc))
        acc[0] += Fraction(c)
    return _poly_trim(list(acc))


# ---------------------------------------------------------------------------
# exact integer LLL (for the integer-relation candidate search)


def lll_reduce_int(rows, delta=Fraction(3, 4)):
    """Exact LLL over the integers; rows are the lattice basis."""
    B = [[Fraction(x) for x in row] for row in rows]
    n = len(B)

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def gso(Bv):
        ortho, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = list(Bv[i])
            for j in range(i):
                denom = dot(ortho[j], ortho[j])
                mu[i][j] = dot(Bv[i], ortho[j]) / denom if denom else Fraction(0)
                v = [a - mu[i][j] * b for a, b in zip(v, ortho[j])]
            ortho.append(v)
        return ortho, mu

    ortho, mu = gso(B)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
        ortho, mu = gso(B)
        if dot(ortho[k], ortho[k]) >= (delta - mu[k][k - 1] ** 2) * dot(ortho[k - 1], ortho[k - 1]):
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            ortho, mu = gso(B)
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in B]


def _cyclotomic_coeffs(m: int):
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return [int(c) for c in reversed(poly.all_coeffs())]


def cyclotomic_in_field(ctx: FieldContext, m: int) -> Optional[FieldElement]:
    """Exact representation of exp(2*pi*i/m) in Q[lambda], if one exists.

    A lattice-reduction search over numeric embeddings proposes rational
    coefficients; the proposal only counts if Phi_m applied to it vanishes
    identically modulo the minimal polynomial (exact Fraction arithmetic).
    Returns None when no representation exists.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    d = ctx.degree
    if m == 2:
        minus_one = (-1,) + (0,) * (d - 1)
        return FieldElement(_as_fraction_tuple(minus_one, d))
    if ctx.is_real_lambda:
        return None
    import sympy

    if d % int(sympy.totient(m)) != 0:
        return None

    zeta = cmath.exp(2j * math.pi / m)
    lam = ctx.lam
    values = [lam**k for k in range(d)] + [zeta]
    scale = 10**12
    rows = []
    for k, v in enumerate(values):
        row = [0] * (d + 1) + [round(scale * v.real), round(scale * v.imag)]
        row[k] = 1
        rows.append(row)
    reduced = lll_reduce_int(rows)

    q = ctx._q_fractions()
    phi_m = _cyclotomic_coeffs(m)
    for cand in reduced:
        denom = cand[d]
        if denom == 0:
            continue
        inner = [Fraction(-cand[k], denom) for k in range(d)]
        value = sum(complex(c) * lam**k for k, c in enumerate(inner))
        if abs(value) < 0.5 or abs(value) > 2.0:
            continue
        residue = _compose_mod(phi_m, inner, q)
        if any(residue):
            continue
        elem = FieldElement(tuple(inner))
        # The candidate is some primitive m-th root; take the exact power
        # that lands on exp(2*pi*i/m) itself.
        for k in range(1, m):
            if math.gcd(k, m) != 1:
                continue
            if abs(value - cmath.exp(2j * math.pi * k / m)) < 1e-6:
                inv = pow(k, -1, m)
                return _element_power(ctx, elem, inv)
    return None


def _element_power(ctx: FieldContext, elem: FieldElement, n: int) -> FieldElement:
    out = ctx.one()
    base = elem
    while n:
        if n & 1:
            out = ctx.mul(out, base)
        base = ctx.mul(base, base)
        n >>= 1
    return out
