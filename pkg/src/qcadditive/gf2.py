"""Arithmetic over GF(2).

Polynomials are immutable :class:`GF2Poly` values backed by a Python int
whose bit ``i`` is the coefficient of ``x^i``.  Binary matrices are plain
``numpy.uint8`` arrays holding 0/1 entries, one codeword per row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidInput,
    InvalidModulus,
    NotAGenerator,
    ParseError,
    PolyDivisionByZero,
    ShapeError,
    UndefinedGcd,
)

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


@dataclass(frozen=True, order=False)
class GF2Poly:
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise InvalidInput("polynomial bitmask must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> GF2Poly:
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise InvalidInput(f"coefficient {c!r} is not binary")
            if c:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> GF2Poly:
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> GF2Poly:
        """Parse an ascending 0/1 string, e.g. ``"1101"`` is 1+x+x^3."""
        text = text.strip()
        if not text:
            raise ParseError("empty polynomial string", 0)
        for pos, ch in enumerate(text):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r}", pos)
        return cls(int(text[::-1], 2))

    @classmethod
    def x_pow(cls, e: int) -> GF2Poly:
        return cls(1 << e)

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Ascending coefficients up to the degree; ``()`` for zero."""
        return tuple((self.bits >> i) & 1 for i in range(self.bits.bit_length()))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_binary(self, length: int | None = None) -> str:
        """Ascending 0/1 string, padded with zeros to ``length``."""
        width = self.bits.bit_length() if length is None else length
        if self.bits.bit_length() > width:
            raise InvalidInput(f"degree {self.degree} does not fit in {width} coefficients")
        if width == 0:
            return "0"
        return format(self.bits, f"0{width}b")[::-1]

    def to_array(self, length: int) -> np.ndarray:
        return np.array([int(c) for c in self.to_binary(length)], dtype=np.uint8)

    def __add__(self, other: GF2Poly) -> GF2Poly:
        return GF2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: GF2Poly) -> GF2Poly:
        return GF2Poly(_clmul(self.bits, other.bits))

    def __divmod__(self, other: GF2Poly) -> tuple[GF2Poly, GF2Poly]:
        return poly_divrem(self, other)

    def __floordiv__(self, other: GF2Poly) -> GF2Poly:
        return poly_divrem(self, other)[0]

    def __mod__(self, other: GF2Poly) -> GF2Poly:
        return poly_divrem(self, other)[1]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for i in range(self.bits.bit_length()):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"GF2Poly({self})"


ZERO = GF2Poly(0)
ONE = GF2Poly(1)
X = GF2Poly(2)


def _clmul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _reduce_cyclic(bits: int, n: int) -> int:
    mask = (1 << n) - 1
    while bits >> n:
        bits = (bits & mask) ^ (bits >> n)
    return bits


def x_n_minus_1(n: int) -> GF2Poly:
    return GF2Poly((1 << n) | 1)


def poly_mul_mod(a: GF2Poly, b: GF2Poly, n: int) -> GF2Poly:
    """Product of ``a`` and ``b`` in GF(2)[x]/(x^n - 1)."""
    if n < 1:
        raise InvalidModulus(f"modulus x^{n}-1 requires n >= 1")
    return GF2Poly(_reduce_cyclic(_clmul(a.bits, b.bits), n))


def poly_reduce(a: GF2Poly, n: int) -> GF2Poly:
    if n < 1:
        raise InvalidModulus(f"modulus x^{n}-1 requires n >= 1")
    return GF2Poly(_reduce_cyclic(a.bits, n))


def poly_divrem(a: GF2Poly, b: GF2Poly) -> tuple[GF2Poly, GF2Poly]:
    if not b.bits:
        raise PolyDivisionByZero("division by the zero polynomial")
    r = a.bits
    q = 0
    db = b.bits.bit_length()
    while r.bit_length() >= db:
        shift = r.bit_length() - db
        q |= 1 << shift
        r ^= b.bits << shift
    return GF2Poly(q), GF2Poly(r)


def poly_gcd(a: GF2Poly, b: GF2Poly) -> GF2Poly:
    if not a.bits and not b.bits:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    x, y = a.bits, b.bits
    while y:
        dy = y.bit_length()
        while x.bit_length() >= dy:
            x ^= y << (x.bit_length() - dy)
        x, y = y, x
    return GF2Poly(x)


def poly_reciprocal(p: GF2Poly) -> GF2Poly:
    """x^deg(p) * p(1/x): the coefficient sequence reversed."""
    if not p.bits:
        raise InvalidInput("reciprocal of the zero polynomial")
    return GF2Poly(int(format(p.bits, "b")[::-1], 2))


def ring_conjugate(f: GF2Poly, n: int) -> GF2Poly:
    """f(x^{-1}) in GF(2)[x]/(x^n - 1): coefficient i moves to (n - i) mod n."""
    if n < 1:
        raise InvalidModulus(f"modulus x^{n}-1 requires n >= 1")
    if f.degree >= n:
        raise InvalidInput(f"degree {f.degree} is not reduced modulo x^{n}-1")
    out = f.bits & 1
    for i in range(1, n):
        if (f.bits >> i) & 1:
            out |= 1 << (n - i)
    return GF2Poly(out)


def divides(d: GF2Poly, p: GF2Poly) -> bool:
    return not poly_divrem(p, d)[1].bits


def cyclotomic_quotient(g: GF2Poly, n: int) -> GF2Poly:
    """(x^n - 1)/g, the check polynomial of the cyclic code <g>."""
    if n < 1:
        raise InvalidModulus(f"modulus x^{n}-1 requires n >= 1")
    q, r = poly_divrem(x_n_minus_1(n), g)
    if r.bits:
        raise NotAGenerator(f"{g} does not divide x^{n}-1")
    return q


# -- binary matrices -------------------------------------------------------


def as_matrix(rows: Sequence[Sequence[int]] | np.ndarray, width: int | None = None) -> np.ndarray:
    """Coerce ``rows`` to a 2-D uint8 0/1 array (``width`` fixes the shape of an empty input)."""
    if isinstance(rows, np.ndarray):
        m = rows.astype(np.uint8, copy=False)
    else:
        rows = list(rows)
        if not rows:
            return np.zeros((0, width or 0), dtype=np.uint8)
        lengths = {len(r) for r in rows}
        if len(lengths) != 1:
            raise ShapeError(f"rows have differing lengths {sorted(lengths)}")
        m = np.array(rows, dtype=np.uint8)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros((0, width or 0), dtype=np.uint8)
    if m.ndim != 2:
        raise ShapeError("binary matrix must be two-dimensional")
    if m.size and m.max() > 1:
        m = m & 1
    return m


def matrix_from_strings(rows: Iterable[str]) -> np.ndarray:
    rows = [r.strip() for r in rows if r.strip()]
    for r in rows:
        if set(r) - {"0", "1"}:
            raise ParseError(f"row {r!r} is not a 0/1 string")
    return as_matrix([[int(c) for c in r] for r in rows])


def matrix_to_strings(m: np.ndarray) -> list[str]:
    return ["".join("1" if b else "0" for b in row) for row in m]


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns (nonzero rows, pivot columns)."""
    a = as_matrix(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def row_reduce(m: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    """Rank, a row-space basis (in RREF), and a basis of {v : m v^T = 0}."""
    m = as_matrix(m)
    cols = m.shape[1]
    basis, pivots = rref(m)
    rank = len(pivots)
    free = [c for c in range(cols) if c not in set(pivots)]
    null = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        null[i, f] = 1
        for r, p in enumerate(pivots):
            null[i, p] = basis[r, f]
    return rank, basis, null


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def in_rowspace(v: np.ndarray, basis: np.ndarray) -> bool:
    m = as_matrix(basis)
    if m.shape[0] == 0:
        return not np.any(v)
    return rank(np.vstack([m, as_matrix(v)])) == rank(m)


def same_rowspace(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[1]:
        return False
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(np.vstack([a, b])) == ra


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2)."""
    return (as_matrix(a).astype(np.int64) @ as_matrix(b).astype(np.int64) % 2).astype(np.uint8)
