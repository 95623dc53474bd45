"""Quaternary additive codes via their binary symplectic preimages.

A GF(4) symbol ``x + w y`` is stored as the int ``x | (y << 1)``:
0 -> 0, 1 -> 1, w -> 2, w^2 -> 3.  An additive code of length n is the
image under Phi of a binary code of length 2n whose words are ``(x | y)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from . import gf2
from .codes import BinaryCode
from .distance import (
    DEFAULT_BUDGET,
    DistanceReport,
    codewords_of_weight,
    macwilliams,
    min_distance,
    weight_distribution,
)
from .errors import (
    AugmentForbidden,
    EmptyCode,
    InvalidForm,
    InvalidInput,
    NotASubcode,
    ParseError,
    ShapeError,
)

GF4_SYMBOLS = ("0", "1", "w", "W")
_SYMBOL_VALUES = {"0": 0, "1": 1, "w": 2, "W": 3, "w^2": 3, "w2": 3}


def gf4_add(a: int, b: int) -> int:
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    """Product in GF(4) with w^2 = w + 1."""
    if a == 0 or b == 0:
        return 0
    log = {1: 0, 2: 1, 3: 2}
    return (1, 2, 3)[(log[a] + log[b]) % 3]


def phi_map(v: np.ndarray) -> np.ndarray:
    """(x | y) -> x + w y coordinatewise."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape[-1] % 2:
        raise InvalidForm(f"Phi needs even length, got {v.shape[-1]}")
    n = v.shape[-1] // 2
    return (v[..., :n] | (v[..., n:] << 1)).astype(np.uint8)


def phi_inverse(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.uint8)
    if u.size and u.max() > 3:
        raise InvalidInput("GF(4) symbols must lie in 0..3")
    return np.concatenate([u & 1, (u >> 1) & 1], axis=-1).astype(np.uint8)


def parse_gf4(text: str) -> np.ndarray:
    """Parse a word such as ``"1 w W 0"`` or ``"1wW0"`` (``w^2`` also accepted)."""
    tokens = text.replace(",", " ").replace("w^2", "W").split()
    if len(tokens) == 1:
        tokens = list(tokens[0])
    out = []
    for pos, tok in enumerate(tokens):
        if tok not in _SYMBOL_VALUES:
            raise ParseError(f"unknown GF(4) symbol {tok!r}", pos)
        out.append(_SYMBOL_VALUES[tok])
    return np.array(out, dtype=np.uint8)


def format_gf4(u: Sequence[int]) -> str:
    return " ".join(GF4_SYMBOLS[int(s)] for s in u)


def format_k(k2: int) -> str:
    return str(k2 // 2) if k2 % 2 == 0 else f"{k2 / 2:.1f}"


def format_params(n: int, k2: int, d: int | str | None = None) -> str:
    return f"({n},{format_k(k2)},{'?' if d is None else d})_4"


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """GF(4)-additive code of length ``n`` held as its binary preimage."""

    n: int
    preimage: BinaryCode

    def __post_init__(self) -> None:
        if self.preimage.length != 2 * self.n:
            raise ShapeError(f"preimage length {self.preimage.length} != 2 * {self.n}")
        if not self.preimage.symplectic_view:
            object.__setattr__(self, "preimage", self.preimage.with_view(True))

    @classmethod
    def from_binary(cls, code: BinaryCode) -> AdditiveCode:
        if code.length % 2:
            raise InvalidForm("additive codes need an even-length preimage")
        return cls(code.length // 2, code)

    @classmethod
    def from_rows(cls, rows: np.ndarray, n: int) -> AdditiveCode:
        return cls(n, BinaryCode(2 * n, gf2.as_matrix(rows, width=2 * n), True))

    @classmethod
    def from_gf4(cls, rows: Iterable[Sequence[int]] | np.ndarray, n: int | None = None) -> AdditiveCode:
        rows = np.asarray(list(rows) if not isinstance(rows, np.ndarray) else rows, dtype=np.uint8)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1) if rows.size else rows.reshape(0, n or 0)
        length = rows.shape[1] if n is None else n
        return cls.from_rows(phi_inverse(rows), length)

    @property
    def k2(self) -> int:
        return self.preimage.rank

    @property
    def k(self) -> float:
        return self.k2 / 2

    @property
    def generators(self) -> np.ndarray:
        return self.preimage.generators

    def gf4_generators(self) -> np.ndarray:
        return phi_map(self.generators)

    def measure(self, budget: int = DEFAULT_BUDGET, **kw) -> DistanceReport:
        return min_distance(self.preimage, "symplectic", budget, **kw)

    def params(self, d: int | None = None) -> str:
        return format_params(self.n, self.k2, d)

    def __repr__(self) -> str:
        return f"AdditiveCode{self.params()}"


def span_subcode(rows: np.ndarray, n: int) -> AdditiveCode:
    return AdditiveCode.from_rows(rows, n)


def _split(c: AdditiveCode) -> tuple[np.ndarray, np.ndarray]:
    g = c.generators
    return g[:, : c.n], g[:, c.n :]


def _join(x: np.ndarray, y: np.ndarray) -> AdditiveCode:
    return AdditiveCode.from_rows(np.hstack([x, y]), x.shape[1])


def extend(c: AdditiveCode, mode: Literal["zero-pad", "even-like"] = "even-like", count: int = 1) -> AdditiveCode:
    """Append ``count`` coordinates.

    ``even-like`` makes each new coordinate the GF(4) sum of all previous
    ones (a parity bit on each binary half); only the first is nonzero.
    """
    if count < 1:
        raise InvalidInput("extension count must be at least 1")
    if mode not in ("zero-pad", "even-like"):
        raise InvalidInput(f"unknown extension mode {mode!r}")
    x, y = _split(c)
    for _ in range(count):
        if mode == "zero-pad":
            px = np.zeros((x.shape[0], 1), dtype=np.uint8)
            py = px
        else:
            px = (x.sum(axis=1, dtype=np.int64) % 2).astype(np.uint8)[:, None]
            py = (y.sum(axis=1, dtype=np.int64) % 2).astype(np.uint8)[:, None]
        x, y = np.hstack([x, px]), np.hstack([y, py])
    return _join(x, y)


def _positions(c: AdditiveCode, positions: Iterable[int]) -> list[int]:
    pos = sorted(set(int(p) for p in positions))
    for p in pos:
        if not 0 <= p < c.n:
            raise InvalidInput(f"coordinate {p} out of range for length {c.n}")
    return pos


def _keep(n: int, pos: list[int]) -> np.ndarray:
    return np.array([i for i in range(n) if i not in set(pos)], dtype=np.int64)


def puncture(c: AdditiveCode, positions: Iterable[int]) -> AdditiveCode:
    """Delete GF(4) coordinates (both binary halves)."""
    pos = _positions(c, positions)
    x, y = _split(c)
    keep = _keep(c.n, pos)
    return _join(x[:, keep], y[:, keep])


def shorten(c: AdditiveCode, positions: Iterable[int]) -> AdditiveCode:
    """Keep the codewords vanishing at ``positions`` and delete those coordinates."""
    pos = _positions(c, positions)
    g = c.generators
    cols = pos + [c.n + p for p in pos]
    # information words u with (u G)[cols] = 0
    _, _, null = gf2.row_reduce(g[:, cols].T) if pos else (0, None, np.eye(c.k2, dtype=np.uint8))
    sub = gf2.mat_mul(null, g) if null.shape[0] else np.zeros((0, 2 * c.n), dtype=np.uint8)
    keep = _keep(c.n, pos)
    x, y = sub[:, : c.n][:, keep], sub[:, c.n :][:, keep]
    out = _join(x, y)
    if out.k2 == 0 and c.k2 > 0:
        raise EmptyCode("shortening left only the zero word")
    return out


def all_one(n: int) -> np.ndarray:
    v = np.zeros(2 * n, dtype=np.uint8)
    v[:n] = 1
    return v


def all_w(n: int) -> np.ndarray:
    v = np.zeros(2 * n, dtype=np.uint8)
    v[n:] = 1
    return v


def augment(
    c: AdditiveCode,
    mode: Literal["half", "full"] = "half",
    budget: int = DEFAULT_BUDGET,
    *,
    strict: bool = True,
) -> AdditiveCode:
    """Adjoin 1_n (``half``) or 1_n and w_n (``full``).

    With ``strict`` the code must have no word of weight n.  Otherwise it is
    enough that the adjoined words raise k2 by 1 (or 2); the distance of the
    result must then be measured.
    """
    if mode not in ("half", "full"):
        raise InvalidInput(f"unknown augmentation mode {mode!r}")
    extra = [all_one(c.n)] if mode == "half" else [all_one(c.n), all_w(c.n)]
    if strict and c.k2:
        full = codewords_of_weight(c.preimage, "symplectic", c.n, budget)
        if full.shape[0]:
            raise AugmentForbidden(f"code has {full.shape[0]} codewords of full weight {c.n}")
    out = AdditiveCode.from_rows(np.vstack([c.generators, *extra]), c.n)
    if out.k2 != c.k2 + len(extra):
        raise AugmentForbidden(f"adjoining constant words raises k2 by {out.k2 - c.k2}, not {len(extra)}")
    return out


def complement_rows(big: BinaryCode, small: BinaryCode) -> np.ndarray:
    """Rows of ``big`` completing a basis of ``small`` to a basis of ``big``."""
    if not big.contains_code(small):
        raise NotASubcode("code is not contained in the larger code")
    basis = small.generators.copy()
    picked = []
    r = small.rank
    for row in big.generators:
        cand = np.vstack([basis, row]) if basis.size else row.reshape(1, -1)
        if gf2.rank(cand) > r:
            basis = cand
            r += 1
            picked.append(row)
    return np.array(picked, dtype=np.uint8).reshape(len(picked), big.length)


def construction_x(c1: AdditiveCode, c2: AdditiveCode, aux: AdditiveCode) -> AdditiveCode:
    """Generator ((G_ax, G_aux), (G_c2, 0)) where G_ax completes G_c2 to G_c1."""
    if c1.n != c2.n:
        raise ShapeError("code and subcode must have the same length")
    if not c1.preimage.contains_code(c2.preimage):
        raise NotASubcode("second code is not a subcode of the first")
    if aux.k2 != c1.k2 - c2.k2:
        raise ShapeError(f"auxiliary code has k2={aux.k2}, need {c1.k2 - c2.k2}")
    n, l = c1.n, aux.n
    gax = complement_rows(c1.preimage, c2.preimage)
    ax_x, ax_y = gax[:, :n], gax[:, n:]
    aux_x, aux_y = _split(aux)
    c2_x, c2_y = _split(c2)
    z = np.zeros((c2.k2, l), dtype=np.uint8)
    x = np.vstack([np.hstack([ax_x, aux_x]), np.hstack([c2_x, z])])
    y = np.vstack([np.hstack([ax_y, aux_y]), np.hstack([c2_y, z])])
    return _join(x, y)


def juxtapose(c1: AdditiveCode, c2: AdditiveCode) -> AdditiveCode:
    """Concatenate generator row i of ``c1`` with generator row i of ``c2``."""
    if c2.n == 0:
        return c1
    if c1.n == 0:
        return c2
    if c1.k2 != c2.k2:
        raise ShapeError(f"cannot juxtapose k2={c1.k2} with k2={c2.k2}")
    x1, y1 = _split(c1)
    x2, y2 = _split(c2)
    return _join(np.hstack([x1, x2]), np.hstack([y1, y2]))


def zero_code(n: int) -> AdditiveCode:
    return AdditiveCode.from_rows(np.zeros((0, 2 * n), dtype=np.uint8), n)


def extended_dual_distance(c: AdditiveCode, budget: int = DEFAULT_BUDGET) -> DistanceReport:
    """Exact distance of the even-like extension of the symplectic dual of ``c``.

    A dual word u gets the extra symbol s(u) = sum of its coordinates, and
    s(u) = 0 exactly when u is also orthogonal to 1_n and w_n.  So the words
    with s(u) = 0 form the dual of ``c + <1_n, w_n>``, and both weight
    distributions follow from MacWilliams after enumerating ``c`` and its
    augmentation (2^(k2+2) words instead of 2^(2n-k2)).
    """
    t0 = time.perf_counter()
    aug = AdditiveCode.from_rows(np.vstack([c.generators, all_one(c.n), all_w(c.n)]), c.n)
    b_all = macwilliams(weight_distribution(c.preimage, "symplectic", budget), 4)
    b_zero = macwilliams(weight_distribution(aug.preimage, "symplectic", budget), 4)
    cands = [j for j in range(1, c.n + 1) if b_zero[j]]
    cands += [j + 1 for j in range(1, c.n + 1) if b_all[j] - b_zero[j]]
    if not cands:
        raise EmptyCode("the dual code is the zero code")
    return DistanceReport(
        value=min(cands),
        certainty="exact",
        enumerated=(1 << c.k2) + (1 << aug.k2) - 2,
        budget=budget,
        elapsed=time.perf_counter() - t0,
        mode="symplectic",
    )
