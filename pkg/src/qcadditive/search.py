"""Random search for f-polynomials giving large symplectic distance.

Trial ``i`` draws its polynomials from a generator seeded with
``(seed, i)``, so the outcome does not depend on how trials are spread
over workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import gf2
from .additive import format_params
from .bounds import cyclic_distance, theorem1_conditions
from .codes import QCGenerator, build_qc_1gen
from .distance import DEFAULT_BUDGET, DistanceReport, min_distance
from .errors import InvalidInput, NoCodewords
from .gf2 import GF2Poly
from .tables import QC_HEADER, format_runlength


@dataclass(frozen=True)
class SearchConfig:
    n: int
    g: GF2Poly
    index: int = 2
    trials: int = 100
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    keep: int = 10
    theorem1_filter: bool = True
    divisor_mode: bool = False
    max_degree: int | None = None  # f drawn with degree < max_degree (default n)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InvalidInput("trials must be at least 1")
        if self.index < 2 or self.index % 2:
            raise InvalidInput(f"index {self.index} must be even and positive")
        if self.keep < 1:
            raise InvalidInput("keep must be at least 1")
        if self.max_degree is not None and not 1 <= self.max_degree <= self.n:
            raise InvalidInput(f"max_degree must lie in 1..{self.n}")
        gf2.cyclotomic_quotient(self.g, self.n)  # raises NotAGenerator


@dataclass(frozen=True)
class Candidate:
    trial: int
    fs: tuple[GF2Poly, ...]
    k2: int
    length: int
    report: DistanceReport
    bound: int | None = None  # Theorem-1 lower bound when its hypotheses hold

    @property
    def distance(self) -> int:
        return self.report.value

    def params(self) -> str:
        d = self.report.value if self.report.exact else f">={self.report.value}"
        return format_params(self.length, self.k2, d)

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "fs": [format_runlength(f) for f in self.fs],
            "params": self.params(),
            "k2": self.k2,
            "distance": self.report.value,
            "certainty": self.report.certainty,
            "theorem1_bound": self.bound,
        }


def _draw(cfg: SearchConfig, trial: int) -> tuple[GF2Poly, ...]:
    rng = np.random.default_rng([cfg.seed, trial])
    width = cfg.max_degree or cfg.n
    out = []
    for _ in range(cfg.index):
        bits = rng.integers(0, 2, size=width)
        f = GF2Poly.from_coeffs(int(b) for b in bits)
        if cfg.divisor_mode:
            # gcd with a random polynomial is a random divisor of g
            f = gf2.poly_gcd(cfg.g, f) if not f.is_zero() else GF2Poly(1)
        out.append(f)
    return tuple(out)


def _evaluate(cfg: SearchConfig, trial: int, d_g: int) -> Candidate | None:
    fs = _draw(cfg, trial)
    bound = None
    if cfg.theorem1_filter:
        rep = theorem1_conditions(cfg.n, cfg.g, fs, d_g=d_g)
        if not rep.hypotheses_hold:
            return None
        bound = rep.bound_value
    code = build_qc_1gen(QCGenerator(cfg.n, cfg.g, fs), symplectic=True)
    try:
        dist = min_distance(code, "symplectic", cfg.budget, lower_bound=bound)
    except NoCodewords:
        return None
    return Candidate(trial, fs, code.rank, cfg.n * cfg.index // 2, dist, bound)


def _rank_key(c: Candidate) -> tuple:
    # larger distance first, then shorter codes, then larger k2; trial breaks ties
    return (-c.distance, c.length, -c.k2, c.trial)


def search_f_polynomials(cfg: SearchConfig) -> list[Candidate]:
    """Evaluate ``cfg.trials`` random f-lists and return the best ``cfg.keep``."""
    d_g = cyclic_distance(cfg.n, cfg.g, cfg.budget) if cfg.theorem1_filter else 0
    trials = range(cfg.trials)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            found = list(pool.map(lambda i: _evaluate(cfg, i, d_g), trials))
    else:
        found = [_evaluate(cfg, i, d_g) for i in trials]
    ranked = sorted((c for c in found if c is not None), key=_rank_key)
    return ranked[: cfg.keep]


def findings_lines(cfg: SearchConfig, found: list[Candidate], table: str = "S", start: int = 1) -> list[str]:
    """Dataset rows for exactly measured candidates (k2 stored as k2/2)."""
    lines = []
    for no, c in enumerate((c for c in found if c.report.exact), start):
        polys = [format_runlength(cfg.g)] + [format_runlength(f) for f in c.fs]
        params = format_params(c.length, c.k2, c.distance)
        lines.append("\t".join([table, str(no), params, str(cfg.index), *polys, "-"]))
    return lines


def append_findings(path: str | os.PathLike, cfg: SearchConfig, found: list[Candidate], table: str = "S") -> int:
    """Append candidates to a findings file readable by ``tables.parse_qc_rows``."""
    path = Path(path)
    existing = path.read_text().splitlines() if path.exists() else []
    start = sum(1 for line in existing if line.startswith(table + "\t")) + 1
    lines = findings_lines(cfg, found, table, start)
    with path.open("a") as fh:
        if not existing:
            fh.write(QC_HEADER + "\n")
        for line in lines:
            fh.write(line + "\n")
    return len(lines)
