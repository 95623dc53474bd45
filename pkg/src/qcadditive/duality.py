"""Symplectic Gram matrices, hulls and ACD constructions.

Over GF(2) the symplectic form is symmetric, so the Gram matrix of a
generator matrix ``(X | Y)`` is ``X Y^T + Y X^T``.  A code is ACD (binary
symplectic LCD) exactly when that matrix has full rank, and trace-Hermitian
self-orthogonal exactly when it vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import gf2
from .additive import AdditiveCode, complement_rows, construction_x, juxtapose, puncture, shorten
from .codes import BinaryCode
from .distance import min_distance
from .errors import InvalidForm, InvalidIndex, NotACD, NotASubcode, NotSelfOrthogonal, ShapeError
from .gf2 import GF2Poly

Verdict = Literal["lcd", "self-orthogonal", "mixed"]


@dataclass(frozen=True, eq=False)
class GramReport:
    gram: np.ndarray
    gram_rank: int
    hull_dim: int
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "gram_rank": self.gram_rank,
            "hull_dim": self.hull_dim,
            "verdict": self.verdict,
            "gram": gf2.matrix_to_strings(self.gram),
        }


def _binary(c: BinaryCode | AdditiveCode) -> BinaryCode:
    return c.preimage if isinstance(c, AdditiveCode) else c


def gram_matrix(rows: np.ndarray) -> np.ndarray:
    rows = gf2.as_matrix(rows)
    if rows.shape[1] % 2:
        raise InvalidForm("symplectic Gram matrix needs even length")
    n = rows.shape[1] // 2
    x, y = rows[:, :n].astype(np.int64), rows[:, n:].astype(np.int64)
    return ((x @ y.T + y @ x.T) % 2).astype(np.uint8)


def symplectic_gram(c: BinaryCode | AdditiveCode) -> GramReport:
    b = _binary(c)
    if b.length % 2:
        raise InvalidForm("symplectic Gram matrix needs even length")
    gram = gram_matrix(b.generators)
    r = gf2.rank(gram) if b.rank else 0
    if b.rank == 0 or r == b.rank:
        verdict: Verdict = "lcd"
    elif r == 0:
        verdict = "self-orthogonal"
    else:
        verdict = "mixed"
    # the zero code is both; report it as LCD (trivial hull)
    return GramReport(gram, r, b.rank - r, verdict)


def hull(c: BinaryCode | AdditiveCode) -> BinaryCode:
    """C intersected with its symplectic dual."""
    b = _binary(c)
    if b.rank == 0:
        return BinaryCode(b.length, np.zeros((0, b.length), np.uint8), True)
    gram = gram_matrix(b.generators)
    _, _, null = gf2.row_reduce(gram)
    rows = gf2.mat_mul(null, b.generators) if null.shape[0] else np.zeros((0, b.length), np.uint8)
    return BinaryCode(b.length, rows, True)


def is_acd(c: BinaryCode | AdditiveCode) -> tuple[bool, GramReport]:
    rep = symplectic_gram(c)
    return rep.hull_dim == 0, rep


def is_trace_hermitian_self_orthogonal(c: BinaryCode | AdditiveCode) -> bool:
    return symplectic_gram(c).gram_rank == 0


def remove_hull(c: AdditiveCode) -> AdditiveCode:
    """Replace ``c`` by a complement of its hull inside it (always ACD)."""
    h = hull(c)
    if h.rank == 0:
        return c
    rows = complement_rows(c.preimage, h)
    return AdditiveCode.from_rows(rows, c.n)


@dataclass(frozen=True)
class Lemma8Result:
    holds: bool
    self_reciprocal: bool
    gcd_is_one: bool
    lam: GF2Poly
    gcd: GF2Poly
    full_dimension: bool = True  # gcd(h, f_0, ..., f_{l-1}) = 1, i.e. k2 = n - deg g

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "self_reciprocal": self.self_reciprocal,
            "gcd_is_one": self.gcd_is_one,
            "full_dimension": self.full_dimension,
            "lambda": str(self.lam),
            "gcd": str(self.gcd),
        }


def lemma8_criterion(n: int, g: GF2Poly, fs: Sequence[GF2Poly]) -> Lemma8Result:
    """Polynomial LCD test for the 1-generator code of (g, f_0..f_{l-1}).

    Uses ``f_bar(x) = f(x^{-1}) mod x^n - 1``; in characteristic 2 the
    difference in the cross term becomes a sum.  The criterion describes
    codes of dimension n - deg g; when every f_i shares a factor with h the
    code is smaller and ``full_dimension`` is False, and the Gram test is
    the one to trust.
    """
    if len(fs) % 2 or not fs:
        raise InvalidIndex(f"index {len(fs)} is not even")
    h = gf2.cyclotomic_quotient(g, n)
    m = len(fs) // 2
    lam = GF2Poly(0)
    for j in range(m):
        a, b = fs[j], fs[m + j]
        lam = lam + gf2.poly_mul_mod(a, gf2.ring_conjugate(gf2.poly_reduce(b, n), n), n)
        lam = lam + gf2.poly_mul_mod(b, gf2.ring_conjugate(gf2.poly_reduce(a, n), n), n)
    d = gf2.poly_gcd(lam, h)
    common = h
    for f in fs:
        common = gf2.poly_gcd(common, gf2.poly_reduce(f, n))
    sr = gf2.poly_reciprocal(g) == g
    one = d == GF2Poly(1)
    return Lemma8Result(sr and one, sr, one, lam, d, common == GF2Poly(1))


def acd_juxtapose(c1: AdditiveCode, c2: AdditiveCode) -> AdditiveCode:
    """(A, C | B, D) for an ACD code (A | B) and a self-orthogonal code (C | D)."""
    if c2.n == 0:
        return c1
    if not is_acd(c1)[0]:
        raise NotACD("first code is not ACD")
    if not is_trace_hermitian_self_orthogonal(c2):
        raise NotSelfOrthogonal("second code is not trace-Hermitian self-orthogonal")
    if c1.k2 != c2.k2:
        raise ShapeError(f"dimension mismatch: k2={c1.k2} vs k2={c2.k2}")
    return juxtapose(c1, c2)


def acd_construction_x(c1: AdditiveCode, c2: AdditiveCode, aux: AdditiveCode) -> AdditiveCode:
    """Construction X with an ACD outer code and a self-orthogonal auxiliary.

    The Gram matrix of the output is that of ``c1`` (in the basis
    ``G_ax, G_c2``) plus that of ``aux`` padded with zeros, so the output is
    ACD whenever ``c1`` is.  The subcode itself need not be ACD.
    """
    if not c1.preimage.contains_code(c2.preimage):
        raise NotASubcode("second code is not a subcode of the first")
    if not is_acd(c1)[0]:
        raise NotACD("outer code is not ACD")
    if not is_trace_hermitian_self_orthogonal(aux):
        raise NotSelfOrthogonal("auxiliary code is not trace-Hermitian self-orthogonal")
    return construction_x(c1, c2, aux)


@dataclass(frozen=True, eq=False)
class ShortenResult:
    code: AdditiveCode
    position: int
    hull_dim: int
    acd: bool
    method: Literal["shorten", "row-deletion"] = "shorten"
    value: int | None = None


def _restrict_value(c: AdditiveCode, position: int, value: int) -> AdditiveCode:
    """Codewords whose coordinate ``position`` lies in {0, value}."""
    if value not in (1, 2, 3):
        raise InvalidIndex(f"GF(4) value must be 1, w or W, got {value}")
    ax, ay = value & 1, value >> 1
    g = c.generators
    col = ((ay * g[:, position]) ^ (ax * g[:, c.n + position])).reshape(1, -1) & 1
    _, _, null = gf2.row_reduce(col)
    return AdditiveCode.from_rows(gf2.mat_mul(null, g), c.n)


def acd_shorten(c: AdditiveCode, position: int, value: int | None = None) -> ShortenResult:
    """Shorten an ACD code at one coordinate.

    With ``value=None`` this is ordinary shortening: the dimension drops by
    2 and the distance cannot fall, but the hull of the result has even
    dimension and is only removed when it is 1-dimensional, so for most
    codes the result is reported with ``acd=False``.

    With a GF(4) ``value`` the code first loses one binary generator (the
    coordinate may then only take 0 or ``value``), the coordinate is
    deleted, and the 1-dimensional hull that appears is stripped.  The
    result is ACD with k2 - 2 but its distance may be one less than ``c``'s.
    """
    if not is_acd(c)[0]:
        raise NotACD("code is not ACD")
    if c.k2 < 2:
        raise ShapeError("ACD shortening needs k2 >= 2")
    if not 0 <= position < c.n:
        raise InvalidIndex(f"position {position} out of range for n={c.n}")
    if value is None:
        s = shorten(c, [position]) if c.n > 1 else c
        h = hull(s).rank
        out = remove_hull(s) if h == 1 else s
        return ShortenResult(out, position, h, is_acd(out)[0])
    s = puncture(_restrict_value(c, position, value), [position])
    h = hull(s).rank
    out = remove_hull(s)
    return ShortenResult(out, position, h, is_acd(out)[0], "row-deletion", value)


def acd_shorten_to(
    c: AdditiveCode, k2: int, target_d: int | None = None, budget: int = 1 << 26
) -> ShortenResult | None:
    """An ACD code of length n - 1 and dimension ``k2`` obtained by shortening.

    Ordinary shortenings are tried first (their distance never drops).  If
    none is ACD, row deletions are tried at every coordinate and value; the
    first reaching ``target_d`` is returned, else the one of largest
    measured distance (ties go to the first found).  None if nothing fits.
    """
    for p in range(c.n):
        res = acd_shorten(c, p)
        if res.acd and res.code.k2 == k2:
            return res
    best, best_d = None, -1
    for p in range(c.n):
        for v in (1, 2, 3):
            res = acd_shorten(c, p, v)
            if not res.acd or res.code.k2 != k2:
                continue
            if res.code.k2 == 0 or (1 << res.code.k2) - 1 > budget:
                return res
            d = min_distance(res.code.preimage, "symplectic", budget).value
            if target_d is not None and d >= target_d:
                return res
            if d > best_d:
                best, best_d = res, d
    return best
