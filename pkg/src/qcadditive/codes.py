"""Binary cyclic and quasi-cyclic codes built from polynomials over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from . import gf2
from .errors import InvalidForm, InvalidInput, NotAGenerator, ParseError, ShapeError
from .gf2 import GF2Poly

Form = Literal["euclidean", "symplectic"]


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """A binary linear code given by a basis of its row space.

    ``generators`` is normalised on construction to a full-rank basis, so
    ``rank`` is simply its row count.  With ``symplectic_view`` set the code
    is read as a length-2n symplectic code whose words are ``(x | y)``.
    """

    length: int
    generators: np.ndarray
    symplectic_view: bool = False
    _pivots: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        m = gf2.as_matrix(self.generators, width=self.length)
        if m.shape[0] == 0:
            m = np.zeros((0, self.length), dtype=np.uint8)
        if m.shape[1] != self.length:
            raise ShapeError(f"generator rows have length {m.shape[1]}, expected {self.length}")
        if self.symplectic_view and self.length % 2:
            raise InvalidForm(f"symplectic view needs even length, got {self.length}")
        basis, pivots = gf2.rref(m)
        object.__setattr__(self, "generators", basis)
        object.__setattr__(self, "_pivots", tuple(pivots))
        basis.setflags(write=False)

    @property
    def rank(self) -> int:
        return self.generators.shape[0]

    @property
    def half_length(self) -> int:
        return self.length // 2

    def contains(self, word: np.ndarray) -> bool:
        w = gf2.as_matrix(word).reshape(-1).copy()
        if w.size != self.length:
            return False
        for r, p in enumerate(self._pivots):
            if w[p]:
                w ^= self.generators[r]
        return not w.any()

    def contains_code(self, other: BinaryCode) -> bool:
        return other.length == self.length and all(self.contains(r) for r in other.generators)

    def same_code(self, other: BinaryCode) -> bool:
        return (
            self.length == other.length
            and self.rank == other.rank
            and np.array_equal(self.generators, other.generators)
        )

    def with_view(self, symplectic: bool) -> BinaryCode:
        return BinaryCode(self.length, self.generators, symplectic)

    def encode(self, info: int) -> np.ndarray:
        """Codeword for the information word whose bit ``i`` selects row ``i``."""
        out = np.zeros(self.length, dtype=np.uint8)
        for i in range(self.rank):
            if (info >> i) & 1:
                out ^= self.generators[i]
        return out

    def to_record(self) -> dict:
        return {
            "length": self.length,
            "rank": self.rank,
            "symplectic_view": self.symplectic_view,
            "generators": gf2.matrix_to_strings(self.generators),
        }

    @classmethod
    def from_record(cls, rec: dict) -> BinaryCode:
        rows = gf2.matrix_from_strings(rec.get("generators", []))
        code = cls(int(rec["length"]), rows, bool(rec.get("symplectic_view", False)))
        if "rank" in rec and int(rec["rank"]) != code.rank:
            raise ShapeError(f"record claims rank {rec['rank']}, rows have rank {code.rank}")
        return code

    def to_text(self) -> str:
        lines = [
            f"length {self.length}",
            f"rank {self.rank}",
            f"symplectic {int(self.symplectic_view)}",
        ]
        lines += gf2.matrix_to_strings(self.generators)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BinaryCode:
        header: dict[str, str] = {}
        rows: list[str] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] in ("length", "rank", "symplectic"):
                if len(parts) != 2:
                    raise ParseError(f"malformed header line {raw!r}", lineno)
                header[parts[0]] = parts[1]
            else:
                rows.append(line)
        if "length" not in header:
            raise ParseError("missing 'length' header")
        rec = {
            "length": int(header["length"]),
            "symplectic_view": header.get("symplectic", "0") == "1",
            "generators": rows,
        }
        if "rank" in header:
            rec["rank"] = int(header["rank"])
        return cls.from_record(rec)

    def __repr__(self) -> str:
        tag = "s" if self.symplectic_view else ""
        return f"BinaryCode[{self.length},{self.rank}]{tag}"


@dataclass(frozen=True)
class QCGenerator:
    """Data of a 1-generator quasi-cyclic code ([g f_0], ..., [g f_{l-1}])."""

    n: int
    g: GF2Poly
    fs: tuple[GF2Poly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fs", tuple(self.fs))
        if self.n < 1:
            raise InvalidInput("circulant size must be positive")
        if not self.fs:
            raise InvalidInput("index must be at least 1")
        for j, f in enumerate(self.fs):
            if f.degree >= self.n:
                raise InvalidInput(f"f_{j} has degree {f.degree} >= n = {self.n}")
        if self.g.degree >= self.n + 1 or self.g.is_zero():
            raise NotAGenerator(f"{self.g} cannot divide x^{self.n}-1")

    @property
    def index(self) -> int:
        return len(self.fs)

    @property
    def m(self) -> int:
        return len(self.fs) // 2


def circulant_expand(p: GF2Poly, n: int) -> np.ndarray:
    """n x n matrix whose row i holds the coefficients of x^i p mod x^n - 1."""
    if n < 1:
        raise InvalidInput("circulant size must be positive")
    if p.degree >= n:
        raise InvalidInput(f"degree {p.degree} >= circulant size {n}")
    first = p.to_array(n)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return first[idx]


def _check_divisor(g: GF2Poly, n: int) -> None:
    gf2.cyclotomic_quotient(g, n)


def build_cyclic(n: int, g: GF2Poly) -> BinaryCode:
    _check_divisor(g, n)
    k = n - g.degree
    return BinaryCode(n, circulant_expand(gf2.poly_reduce(g, n), n)[:k])


def _qc_block(n: int, g: GF2Poly, fs: Sequence[GF2Poly]) -> np.ndarray:
    _check_divisor(g, n)
    return np.hstack([circulant_expand(gf2.poly_mul_mod(g, f, n), n) for f in fs])


def build_qc_1gen(spec: QCGenerator, symplectic: bool | None = None) -> BinaryCode:
    """All n shifts of ([g f_0], ..., [g f_{l-1}]), row-reduced.

    The symplectic view defaults to on for even index.
    """
    if symplectic is None:
        symplectic = spec.index % 2 == 0
    return BinaryCode(spec.n * spec.index, _qc_block(spec.n, spec.g, spec.fs), symplectic)


def build_qc_multi(
    n: int,
    gens: Sequence[tuple[GF2Poly, Sequence[GF2Poly]]],
    symplectic: bool | None = None,
) -> BinaryCode:
    """Stack the circulant row blocks of several generator tuples."""
    if not gens:
        raise InvalidInput("at least one generator tuple is required")
    ells = {len(fs) for _, fs in gens}
    if len(ells) != 1:
        raise ShapeError(f"generator tuples have differing index {sorted(ells)}")
    ell = ells.pop()
    for g, fs in gens:
        QCGenerator(n, g, tuple(fs))
    if symplectic is None:
        symplectic = ell % 2 == 0
    blocks = [_qc_block(n, g, fs) for g, fs in gens]
    return BinaryCode(n * ell, np.vstack(blocks), symplectic)


def theorem2_spec(spec: QCGenerator, f_l: GF2Poly, f_r: GF2Poly) -> QCGenerator:
    n = spec.n
    left = [gf2.poly_mul_mod(f, f_l, n) for f in spec.fs]
    right = [gf2.poly_mul_mod(f, f_r, n) for f in spec.fs]
    return QCGenerator(n, spec.g, tuple(left + right))


def theorem2_double(spec: QCGenerator, f_l: GF2Poly, f_r: GF2Poly) -> BinaryCode:
    """Index-doubled code generated by (g(x) f_l | g(x) f_r) for the generator g(x) of ``spec``.

    The result is read symplectically with the f_l part as the x-half.
    The gcd side conditions are checked separately by
    :func:`qcadditive.bounds.theorem2_conditions`.
    """
    return build_qc_1gen(theorem2_spec(spec, f_l, f_r), symplectic=True)


def swap_halves(m: np.ndarray) -> np.ndarray:
    n = m.shape[1] // 2
    return np.hstack([m[:, n:], m[:, :n]])


def dual_code(c: BinaryCode, form: Form = "euclidean") -> BinaryCode:
    if form == "euclidean":
        _, _, null = gf2.row_reduce(c.generators if c.rank else np.zeros((0, c.length), np.uint8))
        return BinaryCode(c.length, null, c.symplectic_view and c.length % 2 == 0)
    if form == "symplectic":
        if c.length % 2:
            raise InvalidForm("symplectic dual needs even length")
        _, _, null = gf2.row_reduce(swap_halves(c.generators))
        return BinaryCode(c.length, null, True)
    raise InvalidInput(f"unknown form {form!r}")


def symplectic_product(u: np.ndarray, v: np.ndarray) -> int:
    n = u.shape[-1] // 2
    return int((np.dot(u[:n].astype(np.int64), v[n:]) + np.dot(u[n:].astype(np.int64), v[:n])) % 2)


def polys_from_strings(items: Iterable[str]) -> tuple[GF2Poly, ...]:
    return tuple(GF2Poly.parse(s) for s in items)
