"""Free-group machinery for subdivision rules from endomorphisms.

Reduced words over generators a_1..a_n, endomorphisms given by generator
images, and the collection process that rewrites the image of a basic
commutator [a_i, a_j] as an ordered product of conjugated basic
commutators.  The factor counts of that product are the subdivision
matrix of the induced tiling; factors of negative sign mean the
endomorphism does not define a tiling subdivision rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

__all__ = [
    "Word",
    "Endomorphism",
    "ConjugatedCommutator",
    "Decomposition",
    "NegativeExponentError",
    "reduce_letters",
    "multiply",
    "invert",
    "conjugate",
    "commutator",
    "commutator_word",
    "apply_endo",
    "abelianize",
    "abelianization_matrix",
    "decompose_commutator_word",
    "pair_basis",
    "endo_subdivision",
    "lambda2_matrix",
    "standard_endo",
    "consistency_check",
    "polynomial_from_endo",
]

Letter = Tuple[int, int]  # (generator index 1..n, sign +-1)


def reduce_letters(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Free reduction: cancel adjacent (g, e), (g, -e) pairs."""
    stack: List[Letter] = []
    for g, e in letters:
        if e not in (1, -1) or g < 1:
            raise ValueError("letters are (generator >= 1, sign +-1)")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Reduced word in a free group; a segment is never followed by its inverse."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(tuple(self.letters)))

    @classmethod
    def from_string(cls, text: str) -> "Word":
        """Parse strings like "ab^-2c": a..z are generators 1..26."""
        letters: List[Letter] = []
        i = 0
        text = text.strip()
        while i < len(text):
            ch = text[i]
            if not ch.isalpha() or not ch.islower():
                raise ValueError("bad generator %r in %r" % (ch, text))
            gen = ord(ch) - ord("a") + 1
            i += 1
            exp = 1
            if i < len(text) and text[i] == "^":
                i += 1
                j = i
                if j < len(text) and text[j] == "-":
                    j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i or text[i:j] == "-":
                    raise ValueError("bad exponent in %r" % text)
                exp = int(text[i:j])
                i = j
            sign = 1 if exp > 0 else -1
            letters.extend([(gen, sign)] * abs(exp))
        return cls(tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        out = []
        i = 0
        letters = self.letters
        while i < len(letters):
            g, e = letters[i]
            j = i
            while j < len(letters) and letters[j] == (g, e):
                j += 1
            run = (j - i) * e
            name = chr(ord("a") + g - 1)
            out.append(name if run == 1 else "%s^%d" % (name, run))
            i = j
        return "".join(out)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def cyclic_core(self) -> Tuple["Word", "Word"]:
        """Split as (core, g) with self == g * core * g^-1, core cyclically reduced."""
        letters = list(self.letters)
        prefix: List[Letter] = []
        while letters and letters[0] == (letters[-1][0], -letters[-1][1]):
            prefix.append(letters[0])
            letters = letters[1:-1]
        return Word(tuple(letters)), Word(tuple(prefix))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(w: Word) -> Word:
    return w.inverse()


def conjugate(w: Word, by: Word) -> Word:
    """by * w * by^-1."""
    return by * w * by.inverse()


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def commutator_word(i: int, j: int) -> Word:
    """The basic commutator [a_i, a_j]."""
    return Word(((i, 1), (j, 1), (i, -1), (j, -1)))


@dataclass(frozen=True)
class Endomorphism:
    """Map of the free group on n generators given by generator images."""

    n: int
    images: Tuple[Word, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.images) != self.n:
            raise ValueError("need one image per generator")
        for w in self.images:
            if w.max_generator() > self.n:
                raise ValueError("image uses a generator out of range")
        object.__setattr__(self, "images", tuple(self.images))

    @classmethod
    def identity(cls, n: int) -> "Endomorphism":
        return cls(n, tuple(Word(((g, 1),)) for g in range(1, n + 1)))

    @classmethod
    def from_json(cls, data: dict) -> "Endomorphism":
        """JSON map generator letter -> image string, e.g. {"a": "b"}."""
        items = sorted((ord(k) - ord("a") + 1, v) for k, v in data.items())
        gens = [g for g, _ in items]
        if gens != list(range(1, len(gens) + 1)):
            raise ValueError("images must cover generators a..%s" % chr(ord("a") + len(gens) - 1))
        return cls(len(gens), tuple(Word.from_string(v) for _, v in items))

    def to_json(self) -> dict:
        return {chr(ord("a") + g): str(w) for g, w in enumerate(self.images)}


def apply_endo(phi: Endomorphism, w: Word) -> Word:
    out: List[Letter] = []
    for g, e in w.letters:
        if g > phi.n:
            raise ValueError("generator %d out of range for n=%d" % (g, phi.n))
        img = phi.images[g - 1].letters
        out.extend(img if e == 1 else tuple((h, -s) for h, s in reversed(img)))
    return Word(tuple(out))


def abelianize(w: Word, n: Optional[int] = None) -> Tuple[int, ...]:
    """Exponent-sum vector of length n."""
    size = n if n is not None else w.max_generator()
    sums = [0] * size
    for g, e in w.letters:
        if g > size:
            raise ValueError("generator %d out of range for n=%d" % (g, size))
        sums[g - 1] += e
    return tuple(sums)


def abelianization_matrix(phi: Endomorphism) -> Tuple[Tuple[int, ...], ...]:
    """A[i][j] = exponent sum of a_(i+1) in the image of a_(j+1)."""
    cols = [abelianize(w, phi.n) for w in phi.images]
    return tuple(tuple(cols[j][i] for j in range(phi.n)) for i in range(phi.n))


# ---------------------------------------------------------------------------
# collection into conjugated basic commutators


@dataclass(frozen=True)
class ConjugatedCommutator:
    """conjugator * [a_i, a_j]^sign * conjugator^-1 with i < j."""

    conjugator: Word
    pair: Tuple[int, int]
    sign: int

    def __post_init__(self):
        i, j = self.pair
        if not (1 <= i < j):
            raise ValueError("pair must be ordered (i < j)")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")

    def as_word(self) -> Word:
        base = commutator_word(*self.pair)
        if self.sign < 0:
            base = base.inverse()
        return conjugate(base, self.conjugator)


@dataclass(frozen=True)
class Decomposition:
    """Ordered factors whose reduced product equals the source word."""

    factors: Tuple[ConjugatedCommutator, ...]

    def product(self) -> Word:
        out = Word()
        for f in self.factors:
            out = out * f.as_word()
        return out

    def counts(self, n: int) -> dict:
        basis = pair_basis(n)
        tally = {p: 0 for p in basis}
        for f in self.factors:
            tally[f.pair] += 1
        return tally

    def signed_counts(self, n: int) -> dict:
        basis = pair_basis(n)
        tally = {p: 0 for p in basis}
        for f in self.factors:
            tally[f.pair] += f.sign
        return tally


def _letter_pair_factor(u: Letter, v: Letter) -> Optional[Tuple[Word, Tuple[int, int], int]]:
    """[u, v] for single letters as (conjugator, base pair, sign); None if trivial."""
    gu, eu = u
    gv, ev = v
    if gu == gv:
        return None
    if gu < gv:
        if eu == 1 and ev == 1:
            return Word(), (gu, gv), 1
        if eu == -1 and ev == 1:
            return Word((u,)), (gu, gv), -1
        if eu == 1 and ev == -1:
            return Word((v,)), (gu, gv), -1
        return Word((v, u)), (gu, gv), 1
    conj, pair, sign = _letter_pair_factor(v, u)
    return conj, pair, -sign


def _letter_word_factors(u: Letter, m: Sequence[Letter]) -> List[ConjugatedCommutator]:
    """Factors of [u, m] via [x, yz] = [x, y] * y [x, z] y^-1."""
    factors: List[ConjugatedCommutator] = []
    prefix: List[Letter] = []
    for v in m:
        hit = _letter_pair_factor(u, v)
        if hit is not None:
            conj, pair, sign = hit
            factors.append(
                ConjugatedCommutator(Word(tuple(prefix)) * conj, pair, sign)
            )
        prefix.append(v)
    return factors


def decompose_commutator_word(w: Word) -> Decomposition:
    """Collect a commutator-subgroup word into conjugated basic commutators.

    Deterministic: repeatedly peel the leading letter u to its first
    cancelling occurrence (w = u m u^-1 t = [u, m] * m t) and expand
    [u, m] one letter transposition at a time; the transposition's
    orientation fixes each factor's sign.  The reduced product of the
    emitted factors equals the input exactly.
    """
    if any(abelianize(w)):
        raise ValueError("word has nonzero abelianization")
    factors: List[ConjugatedCommutator] = []
    letters = list(w.letters)
    while letters:
        g, e = letters[0]
        k = next(i for i in range(1, len(letters)) if letters[i] == (g, -e))
        m = letters[1:k]
        tail = letters[k + 1 :]
        factors.extend(_letter_word_factors((g, e), m))
        letters = list(reduce_letters(m + tail))
    return Decomposition(tuple(factors))


# ---------------------------------------------------------------------------
# subdivision data


def pair_basis(n: int) -> List[Tuple[int, int]]:
    """Canonical order of the (n^2-n)/2 commutator pairs.

    Sorted by gap j-i then by i; for n = 3 this is (a,b), (b,c), (a,c),
    matching the tile order T1, T2, T3 of the worked subdivision example.
    """
    return sorted(
        ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)),
        key=lambda p: (p[1] - p[0], p[0]),
    )


class NegativeExponentError(ValueError):
    """A commutator image needs a negatively-signed factor."""

    def __init__(self, source_pair, factor):
        self.source_pair = source_pair
        self.factor = factor
        super().__init__(
            "image of [a_%d, a_%d] requires factor [a_%d, a_%d]^-1; "
            "the endomorphism does not define a nonnegative subdivision rule"
            % (source_pair + factor.pair)
        )


def endo_subdivision(phi: Endomorphism):
    """Subdivision matrix and tile placements of an endomorphism.

    Decomposes the image of every basic commutator; entry (i, j) of the
    matrix counts the factors of type j in the image of type i.  Raises
    NegativeExponentError if any factor appears with sign -1.
    """
    from .spectral import SubdivisionMatrix

    basis = pair_basis(phi.n)
    index = {p: k for k, p in enumerate(basis)}
    rows = []
    placements = {}
    for src in basis:
        image = apply_endo(phi, commutator_word(*src))
        decomp = decompose_commutator_word(image)
        row = [0] * len(basis)
        placed = []
        for f in decomp.factors:
            if f.sign < 0:
                raise NegativeExponentError(src, f)
            row[index[f.pair]] += 1
            placed.append((f.pair, f.conjugator, f.sign))
        rows.append(tuple(row))
        placements[src] = placed
    return SubdivisionMatrix(tuple(rows)), placements


def lambda2_matrix(phi: Endomorphism):
    """Induced map on the pair basis: the second exterior power of the
    abelianization.  Entry (i, j) is the signed count of pair_j in the
    image of pair_i; returns (matrix, all entries nonnegative?).
    """
    A = abelianization_matrix(phi)
    basis = pair_basis(phi.n)
    mat = []
    for (i, j) in basis:
        row = []
        for (k, l) in basis:
            row.append(
                A[k - 1][i - 1] * A[l - 1][j - 1] - A[l - 1][i - 1] * A[k - 1][j - 1]
            )
        mat.append(tuple(row))
    matrix = tuple(mat)
    return matrix, all(v >= 0 for row in matrix for v in row)


def standard_endo(n: int, p: int, q: int, r: int) -> Endomorphism:
    """The shift endomorphism a_i -> a_(i+1) with the closing relation.

    For n = 3 the last image is c^p a^-r b^-q; for n > 3 it is
    a_n^p a_1^-q a_2^-r.  (The two forms wire q and r differently; any
    consumer needing the expansion polynomial derives it from the
    abelianization, see polynomial_from_endo.)
    """
    if n < 3 or p < 0 or q < 0 or r < 1:
        raise ValueError("need n >= 3, p,q >= 0, r >= 1")
    images = [Word(((i + 1, 1),)) for i in range(1, n)]
    if n == 3:
        last = [(3, 1)] * p + [(1, -1)] * r + [(2, -1)] * q
    else:
        last = [(n, 1)] * p + [(1, -1)] * q + [(2, -1)] * r
    images.append(Word(tuple(last)))
    return Endomorphism(n, tuple(images))


def consistency_check(phi: Endomorphism, lam, tol: float = 1e-9) -> dict:
    """Check that path endpoints scale by lambda under the endomorphism.

    With generator vectors 1, lambda, ..., lambda^(n-1), the endpoint of
    the image path of a_j must equal lambda^j.  ``lam`` is a complex
    number or a FieldContext designating one.
    """
    lam_value = complex(getattr(lam, "lam", lam))
    n = phi.n
    A = abelianization_matrix(phi)
    residuals = []
    for j in range(n):
        endpoint = sum(A[i][j] * lam_value**i for i in range(n))
        target = lam_value ** (j + 1)
        residuals.append(abs(endpoint - target) / max(1.0, abs(target)))
    return {
        "passed": all(res < tol for res in residuals),
        "residuals": residuals,
        "lambda": lam_value,
        "tolerance": tol,
    }


def polynomial_from_endo(phi: Endomorphism):
    """Monic polynomial that a consistent expansion for phi must satisfy.

    Derived from the abelianization of the last generator image
    (lambda^n = sum A[i][n] lambda^(i-1)); for shift-type endomorphisms
    the other generator conditions hold automatically, and
    consistency_check verifies them regardless.
    """
    from .number_field import IntPolynomial

    A = abelianization_matrix(phi)
    n = phi.n
    coeffs = tuple(-A[i][n - 1] for i in range(n)) + (1,)
    return IntPolynomial(coeffs)
