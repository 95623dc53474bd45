"""Lower bounds from the quasi-cyclic structure and the Griesmer-type check."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Literal, Sequence

from . import gf2
from .codes import build_cyclic, dual_code
from .distance import DEFAULT_BUDGET, dual_min_distance, min_distance
from .errors import HypothesisViolated, InvalidIndex, InvalidInput
from .gf2 import GF2Poly

Classification = Literal["strong-sense-better", "higher-rate", "gap-filler", "not-better", "unknown"]


@dataclass(frozen=True)
class BoundReport:
    bound_value: int
    hypotheses_hold: bool
    failed_condition: str | None = None
    d_g: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def theorem1_bound(q: int, m: int, d_g: int) -> int:
    """m * ceil((q + 1) d_g / q)."""
    if q < 2 or m < 1 or d_g < 0:
        raise InvalidInput("need q >= 2, m >= 1, d_g >= 0")
    return m * _ceil_div((q + 1) * d_g, q)


def cyclic_distance(n: int, g: GF2Poly, budget: int = DEFAULT_BUDGET) -> int:
    """Hamming distance of <g>, or the trivial lower bound 1 when out of budget.

    When <g> is too large to enumerate but its dual is small, the distance
    comes exactly from the dual's weight distribution.
    """
    c = build_cyclic(n, g)
    if c.rank == 0:
        return 0
    if (1 << c.rank) - 1 <= budget:
        return min_distance(c, "hamming", budget).value
    dual = dual_code(c, "euclidean")
    if dual.rank == 0:
        return 1
    if (1 << dual.rank) - 1 <= budget:
        return dual_min_distance(dual, "hamming", budget).value
    return 1


def _coprime(p: GF2Poly, h: GF2Poly) -> bool:
    return gf2.poly_gcd(p, h) == GF2Poly(1)


def theorem1_conditions(
    n: int,
    g: GF2Poly,
    fs: Sequence[GF2Poly],
    d_g: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> BoundReport:
    """Check the gcd and degree hypotheses and evaluate the bound for q = 2.

    Required: gcd(f_i, h) = 1 for every i, gcd(f_j + f_{j+m}, h) = 1 and
    deg(f_j f_{j+m}) >= 1 for j < m, where h = (x^n - 1)/g.
    """
    if not fs or len(fs) % 2:
        raise InvalidIndex(f"index {len(fs)} is not even")
    h = gf2.cyclotomic_quotient(g, n)
    m = len(fs) // 2
    fs = [gf2.poly_reduce(f, n) for f in fs]
    failed = None
    for i, f in enumerate(fs):
        if not _coprime(f, h):
            failed = f"gcd(f_{i}, (x^n-1)/g) != 1"
            break
    if failed is None:
        for j in range(m):
            if (fs[j] * fs[j + m]).degree < 1:
                failed = f"deg(f_{j} f_{j + m}) < 1"
                break
            if not _coprime(fs[j] + fs[j + m], h):
                failed = f"gcd(f_{j} + f_{j + m}, (x^n-1)/g) != 1"
                break
    if failed is not None:
        return BoundReport(0, False, failed)
    if d_g is None:
        d_g = cyclic_distance(n, g, budget)
    return BoundReport(theorem1_bound(2, m, d_g), True, None, d_g)


def theorem2_conditions(
    n: int, g: GF2Poly, f_l: GF2Poly, f_r: GF2Poly, d: int
) -> BoundReport:
    """Hypotheses of the index-doubling bound ceil(3d/2), d the base distance."""
    h = gf2.cyclotomic_quotient(g, n)
    f_l, f_r = gf2.poly_reduce(f_l, n), gf2.poly_reduce(f_r, n)
    checks = [
        (_coprime(f_l, h), "gcd(f_l, (x^n-1)/g) != 1"),
        (_coprime(f_r, h), "gcd(f_r, (x^n-1)/g) != 1"),
        (_coprime(f_l + f_r, h), "gcd(f_l + f_r, (x^n-1)/g) != 1"),
        ((f_l * f_r).degree >= 1, "deg(f_l f_r) < 1"),
    ]
    for ok, msg in checks:
        if not ok:
            return BoundReport(0, False, msg)
    return BoundReport(_ceil_div(3 * d, 2), True, None)


def lemma2_check(n: int, g: GF2Poly, f: GF2Poly) -> bool:
    """True when f | g.

    For odd n this makes f coprime to h = (x^n-1)/g.  It does not settle
    f + 1: with f = g in length 31, gcd(g + 1, h) = 1 + x^3 + x^5.  Callers
    needing that condition check it directly, as theorem1_conditions does.
    """
    if n % 2 == 0:
        raise HypothesisViolated(f"n = {n} is not coprime to 2")
    gf2.cyclotomic_quotient(g, n)
    if f.is_zero():
        return False
    return gf2.divides(f, g)


def griesmer_concat_sum(k2: int, d: int) -> int:
    """sum_{i=0}^{k2-1} ceil(d / 2^(i-1)); the i = 0 term is 2d."""
    return sum(_ceil_div(2 * d, 1 << i) for i in range(k2))


def griesmer_concat_check(n: int, k2: int, d: int) -> bool:
    if k2 < 1 or d < 1:
        raise InvalidInput("need k2 >= 1 and d >= 1")
    return 3 * n >= griesmer_concat_sum(k2, d)


def griesmer_concat_max_d(n: int, k2: int) -> int:
    if k2 < 1:
        raise InvalidInput("need k2 >= 1")
    d = (3 * n) // 2
    while d > 0 and not griesmer_concat_check(n, k2, d):
        d -= 1
    return d


@dataclass(frozen=True)
class LinearRecord:
    n: int
    k: int
    d: int


def parse_reference(text: str) -> list[LinearRecord]:
    """Records ``n k d`` one per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidInput(f"reference line {lineno}: expected 'n k d', got {raw!r}")
        out.append(LinearRecord(*(int(p) for p in parts)))
    return out


def _lookup(reference: Iterable[LinearRecord], n: int, k: int) -> int | None:
    ds = [r.d for r in reference if r.n == n and r.k == k]
    return max(ds) if ds else None


def classify_vs_reference(params: tuple[int, int, int], reference: Iterable[LinearRecord]) -> Classification:
    """Compare an additive (n, k2/2, d) code with best linear codes.

    Even k2: better in the strong sense if d beats the linear [n, k2/2].
    Odd k2: ``higher-rate`` if d reaches the [n, floor] distance, a
    ``gap-filler`` if it lies strictly between the [n, ceil] and [n, floor]
    distances.
    """
    n, k2, d = params
    reference = list(reference)
    if k2 % 2 == 0:
        lin = _lookup(reference, n, k2 // 2)
        if lin is None:
            return "unknown"
        return "strong-sense-better" if d > lin else "not-better"
    d1 = _lookup(reference, n, k2 // 2)
    d2 = _lookup(reference, n, k2 // 2 + 1)
    if d1 is None:
        return "unknown"
    if d >= d1:
        return "higher-rate"
    if d2 is None:
        return "unknown"
    if d2 < d < d1:
        return "gap-filler"
    return "not-better"
