"""Command-line front end.

Every subcommand builds a plain-dict report; ``--json`` prints it as JSON,
otherwise a short human-readable rendering is printed.  Exit codes: 0 on
success, 1 when a verification found a mismatch, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import gf2
from .additive import (
    AdditiveCode,
    augment,
    extend,
    format_params,
    juxtapose,
    parse_gf4,
    puncture,
    shorten,
)
from .bounds import (
    classify_vs_reference,
    griesmer_concat_check,
    griesmer_concat_max_d,
    parse_reference,
    theorem1_conditions,
)
from .codes import QCGenerator, build_cyclic, build_qc_1gen, build_qc_multi, theorem2_spec
from .distance import MAX_BUDGET, min_distance, sampled_upper_bound
from .duality import (
    acd_construction_x,
    acd_juxtapose,
    acd_shorten,
    hull,
    is_acd,
    is_trace_hermitian_self_orthogonal,
    lemma8_criterion,
)
from .errors import CodingError, InvalidInput
from .gf2 import GF2Poly
from .search import SearchConfig, append_findings, search_f_polynomials
from .tables import (
    NAMED,
    Params,
    format_runlength,
    load_matrices,
    load_table,
    matrix_code,
    named_code,
    parse_poly,
    read_data,
    summarize,
    verify_table,
)

TABLE_IDS = ("I", "II", "III", "IV", "V", "VI")
MAX_LOG_BUDGET = 30


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report: dict = field(default_factory=dict)
    text: str = ""


class _UsageError(Exception):
    def __init__(self, message: str, usage: str) -> None:
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(message, self.format_usage())

    def exit(self, status: int = 0, message: str | None = None):  # type: ignore[override]
        raise _HelpExit(status, message or "")


class _HelpExit(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status


# -- argument helpers --------------------------------------------------------


def _log_budget(text: str) -> int:
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be an integer log2, got {text!r}") from None
    if not 0 <= b <= MAX_LOG_BUDGET:
        raise argparse.ArgumentTypeError(f"budget must lie in 0..{MAX_LOG_BUDGET} (log2 of the word count)")
    return (1 << b) if b < MAX_LOG_BUDGET else MAX_BUDGET


def _poly(text: str) -> GF2Poly:
    return parse_poly(text)


_ROW = re.compile(r"^(I|II|III|IV|V|VI)\.(\d+)$")


def _row(label: str, directory):
    m = _ROW.match(label)
    if not m:
        return None
    rows = [r for r in load_table(m.group(1), directory) if r.no == int(m.group(2))]
    if not rows:
        raise InvalidInput(f"no row {label}")
    return rows[0]


def _resolve_code(spec: str, directory) -> AdditiveCode:
    """A named construction, a matrix section, a table row ``V.3`` or a file of GF(4) rows."""
    row = _row(spec, directory)
    if row is not None:
        return AdditiveCode.from_binary(build_qc_1gen(row.generator(), symplectic=True))
    if spec in NAMED:
        return named_code(spec, directory)
    if spec in load_matrices(directory):
        return matrix_code(spec, directory)
    path = Path(spec)
    if path.is_file():
        rows = [parse_gf4(line) for line in path.read_text().splitlines() if line.strip() and not line.startswith("#")]
        if not rows:
            raise InvalidInput(f"{spec}: no rows")
        return AdditiveCode.from_gf4(np.vstack(rows))
    raise InvalidInput(f"cannot resolve code {spec!r}: not a row label, construction, matrix or file")


def _qc_spec(args, directory) -> QCGenerator:
    if getattr(args, "row", None):
        row = _row(args.row, directory)
        if row is None:
            raise InvalidInput(f"bad row label {args.row!r}")
        return row.generator()
    if args.n is None or args.g is None or not args.f:
        raise InvalidInput("need --row, or --n, --g and --f")
    return QCGenerator(args.n, args.g, tuple(args.f))


def _distance_dict(code: AdditiveCode, budget: int, workers: int, trials: int, seed: int) -> dict:
    rep = min_distance(code.preimage, "symplectic", budget, workers=workers, trials=trials, seed=seed)
    d = rep.value if rep.exact else None
    return {
        "params": code.params(d),
        "n": code.n,
        "k2": code.k2,
        "distance": rep.to_dict(),
    }


def _code_text(rep: dict) -> str:
    dist = rep["distance"]
    if dist["certainty"] == "exact":
        return f"{rep['params']}  d = {dist['value']} (exact, {dist['enumerated']} words)"
    return f"{rep['params']}  d <= {dist['upper_bound']} (sampled; 2^{rep['k2']} words exceed the budget)"


# -- subcommands -------------------------------------------------------------


def _cmd_poly(args, directory) -> CommandOutcome:
    if args.action == "parse":
        p = parse_poly(args.text, args.n)
        rep = {"input": args.text, "poly": str(p), "degree": p.degree, "runlength": format_runlength(p)}
        return CommandOutcome(0, rep, str(p))
    p = parse_poly(args.text, args.n)
    rep = {"input": args.text, "runlength": format_runlength(p), "poly": str(p)}
    return CommandOutcome(0, rep, rep["runlength"])


def _cmd_cyclic(args, directory) -> CommandOutcome:
    c = build_cyclic(args.n, args.g)
    rep = {"n": args.n, "g": str(args.g), "k": c.rank}
    if c.rank:
        d = min_distance(c, "hamming", args.budget, workers=args.workers, trials=args.trials, seed=args.seed)
        rep["distance"] = d.to_dict()
        dtxt = d.value if d.exact else f"<= {d.upper_bound} (sampled)"
    else:
        dtxt = "-"
    return CommandOutcome(0, rep, f"[{args.n},{c.rank},{dtxt}] cyclic code")


def _cmd_qc(args, directory) -> CommandOutcome:
    if args.gen:
        gens = []
        for item in args.gen:
            g, *fs = (parse_poly(p) for p in item.split(";"))
            gens.append((g, tuple(fs)))
        code = AdditiveCode.from_binary(build_qc_multi(args.n, gens, symplectic=True))
        rep = _distance_dict(code, args.budget, args.workers, args.trials, args.seed)
        return CommandOutcome(0, rep, _code_text(rep))
    spec = _qc_spec(args, directory)
    if args.double:
        spec = theorem2_spec(spec, parse_poly(args.double[0]), parse_poly(args.double[1]))
    code = AdditiveCode.from_binary(build_qc_1gen(spec, symplectic=True))
    rep = _distance_dict(code, args.budget, args.workers, args.trials, args.seed)
    text = _code_text(rep)
    if spec.index % 2 == 0:
        b = theorem1_conditions(spec.n, spec.g, spec.fs, budget=args.budget)
        rep["theorem1"] = b.to_dict()
        text += f"\nTheorem-1 bound: {b.bound_value}" if b.hypotheses_hold else f"\nTheorem-1: {b.failed_condition}"
    return CommandOutcome(0, rep, text)


def _cmd_distance(args, directory) -> CommandOutcome:
    code = _resolve_code(args.code, directory)
    mode = args.mode
    binary = code.preimage
    if args.sample:
        r = sampled_upper_bound(binary, mode, trials=args.sample, seed=args.seed)
        rep = {"code": args.code, "params": code.params(), "distance": r.to_dict()}
        return CommandOutcome(0, rep, f"{code.params()}  sampled minimum {r.value} over {args.sample} words")
    r = min_distance(binary, mode, args.budget, workers=args.workers, trials=args.trials, seed=args.seed)
    rep = {"code": args.code, "params": code.params(r.value if r.exact else None), "distance": r.to_dict()}
    txt = f"{mode} distance {r.value}" if r.exact else f"{mode} distance <= {r.upper_bound} (sampled)"
    return CommandOutcome(0, rep, f"{rep['params']}  {txt}")


def _cmd_derive(args, directory) -> CommandOutcome:
    c = _resolve_code(args.code, directory)
    op = args.op
    extra: dict = {}
    if op == "extend":
        out = extend(c, args.extend_mode, args.count)
    elif op == "puncture":
        out = puncture(c, args.positions or [c.n - 1])
    elif op == "shorten":
        out = shorten(c, args.positions or [c.n - 1])
    elif op == "acd-shorten":
        res = acd_shorten(c, (args.positions or [0])[0], args.value)
        out = res.code
        extra = {"hull_dim": res.hull_dim, "acd": res.acd, "method": res.method}
    elif op == "augment":
        out = augment(c, args.augment_mode, args.budget, strict=not args.lenient)
    elif op in ("x", "acd-x"):
        if not args.sub or not args.aux:
            raise InvalidInput("construction X needs --sub and --aux")
        sub, aux = _resolve_code(args.sub, directory), _resolve_code(args.aux, directory)
        out = (acd_construction_x if op == "acd-x" else _plain_x)(c, sub, aux)
    elif op in ("juxtapose", "acd-juxtapose"):
        if not args.other:
            raise InvalidInput("juxtaposition needs --other")
        other = _resolve_code(args.other, directory)
        out = (acd_juxtapose if op == "acd-juxtapose" else juxtapose)(c, other)
    else:  # pragma: no cover - argparse restricts the choices
        raise InvalidInput(f"unknown derivation {op!r}")
    rep = _distance_dict(out, args.budget, args.workers, args.trials, args.seed)
    rep.update({"op": op, "input": c.params()}, **extra)
    return CommandOutcome(0, rep, f"{op}: {c.params()} -> " + _code_text(rep))


def _plain_x(c1, c2, aux):
    from .additive import construction_x

    return construction_x(c1, c2, aux)


def _cmd_check(args, directory) -> CommandOutcome:
    if args.kind == "lemma8":
        spec = _qc_spec(args, directory) if (args.row or args.n) else None
        if spec is None:
            raise InvalidInput("lemma8 needs --row or --n/--g/--f")
        res = lemma8_criterion(spec.n, spec.g, spec.fs)
        code = AdditiveCode.from_binary(build_qc_1gen(spec, symplectic=True))
        acd = is_acd(code)[0]
        rep = {**res.to_dict(), "gram_acd": acd, "agrees": res.holds == acd}
        text = f"Lemma 8: {res.holds} (Gram test: {acd})"
        if not res.full_dimension:
            text += "; code dimension is below n - deg g, so only the Gram test applies"
        return CommandOutcome(0, rep, text)
    if not args.code:
        raise InvalidInput(f"{args.kind} needs --code")
    c = _resolve_code(args.code, directory)
    ok, g = is_acd(c)
    rep = {"code": args.code, "params": c.params(), **g.to_dict()}
    if not args.show_gram:
        rep.pop("gram")
    if args.kind == "acd":
        rep["acd"] = ok
        text = f"{c.params()} {'ACD' if ok else 'not ACD'} (verdict {g.verdict}, hull dimension {g.hull_dim})"
    elif args.kind == "self-orthogonal":
        so = is_trace_hermitian_self_orthogonal(c)
        rep["self_orthogonal"] = so
        text = f"{c.params()} {'self-orthogonal' if so else 'not self-orthogonal'} (hull dimension {g.hull_dim})"
    else:
        h = hull(c)
        rep["hull_rank"] = h.rank
        text = f"{c.params()} hull dimension {g.hull_dim} (verdict {g.verdict})"
    return CommandOutcome(0, rep, text)


def _cmd_bound(args, directory) -> CommandOutcome:
    if args.kind == "theorem1":
        spec = _qc_spec(args, directory)
        b = theorem1_conditions(spec.n, spec.g, spec.fs, budget=args.budget)
        rep = b.to_dict()
        text = f"Theorem-1 bound {b.bound_value} (d(g) = {b.d_g})" if b.hypotheses_hold else (
            f"hypotheses fail: {b.failed_condition}"
        )
        return CommandOutcome(0, rep, text)
    if args.kind == "griesmer":
        if None in (args.n, args.k2, args.d):
            raise InvalidInput("griesmer needs --n, --k2 and --d")
        cap = griesmer_concat_max_d(args.n, args.k2)
        ok = griesmer_concat_check(args.n, args.k2, args.d)
        status = "tight/optimal" if args.d == cap else ("feasible" if ok else "violates the bound")
        rep = {"n": args.n, "k2": args.k2, "d": args.d, "max_d": cap, "satisfied": ok, "status": status}
        return CommandOutcome(0, rep, status)
    if not args.params:
        raise InvalidInput("classify needs --params")
    p = Params.parse(args.params)
    text = Path(args.reference).read_text() if args.reference else read_data("reference_linear.txt", directory)
    cls = classify_vs_reference((p.n, p.k2, p.d), parse_reference(text))
    return CommandOutcome(0, {"params": str(p), "classification": cls}, cls)


def _cmd_verify(args, directory) -> CommandOutcome:
    tables = TABLE_IDS if args.table == "all" else (args.table,)
    reports, lines = [], []
    mismatch = False
    for t in tables:
        reps = verify_table(
            t, args.budget, args.dim_cap, trials=args.trials, seed=args.seed, workers=args.workers,
            derived=not args.no_derived, directory=directory,
        )
        for r in reps:
            lines.append(r.summary())
            reports.append(r.to_dict())
            if r.verdict == "mismatch" or r.derived_verdict == "mismatch":
                mismatch = True
        counts = summarize(reps)
        lines.append(f"table {t}: " + ", ".join(f"{k} {v}" for k, v in counts.items() if v))
    rep = {"tables": list(tables), "rows": reports}
    return CommandOutcome(1 if mismatch else 0, rep, "\n".join(lines))


def _cmd_search(args, directory) -> CommandOutcome:
    cfg = SearchConfig(
        n=args.n, g=args.g, index=args.index, trials=args.trials, seed=args.seed, budget=args.budget,
        keep=args.keep, theorem1_filter=not args.no_filter, divisor_mode=args.divisors,
        max_degree=args.max_degree, workers=args.workers,
    )
    found = search_f_polynomials(cfg)
    rep = {"config": {"n": cfg.n, "g": str(cfg.g), "index": cfg.index, "trials": cfg.trials, "seed": cfg.seed},
           "candidates": [c.to_dict() for c in found]}
    lines = [f"#{c.trial:<6} {c.params():<18} f = {', '.join(format_runlength(f) for f in c.fs)}" for c in found]
    if args.findings:
        rep["appended"] = append_findings(args.findings, cfg, found)
        lines.append(f"appended {rep['appended']} rows to {args.findings}")
    return CommandOutcome(0, rep, "\n".join(lines) if lines else "no candidate passed the filter")


# -- parser --------------------------------------------------------------------


def _add_qc_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--row", help="table row label such as V.1")
    p.add_argument("--n", type=int, help="circulant size")
    p.add_argument("--g", type=_poly, help="generator polynomial (run-length, binary or sum notation)")
    p.add_argument("--f", type=_poly, action="append", help="f polynomial; repeat once per block")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=_log_budget, default=1 << 24, help="log2 of the enumeration budget (max 30)")
    p.add_argument("--trials", type=int, default=1 << 16, help="sampled words when out of budget")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcadditive", description="Quasi-cyclic additive GF(4) codes.")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--data-dir", help="dataset directory (default: packaged data or $QCADDITIVE_DATA)")
    parser.add_argument("--json", action="store_true", help="print the structured report as JSON")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("poly", help="parse or format polynomials")
    p.add_argument("action", choices=["parse", "format"])
    p.add_argument("text")
    p.add_argument("--n", type=int, help="ring size for (x^n-1)/p forms")

    p = sub.add_parser("cyclic", help="build <g> and measure its Hamming distance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_poly, required=True)
    _add_common(p)

    p = sub.add_parser("qc", help="build a quasi-cyclic code and measure it")
    _add_qc_flags(p)
    p.add_argument("--gen", action="append", help="multi-generator: 'g;f0;f1' (repeat), needs --n")
    p.add_argument("--double", nargs=2, metavar=("F_L", "F_R"), help="index doubling with these polynomials")
    _add_common(p)

    p = sub.add_parser("distance", help="minimum distance of a code")
    p.add_argument("code", help="row label, construction name, matrix name or file of GF(4) rows")
    p.add_argument("--mode", choices=["symplectic", "hamming"], default="symplectic")
    p.add_argument("--sample", type=int, help="only sample this many words")
    _add_common(p)

    p = sub.add_parser("derive", help="apply a derivation and measure the result")
    p.add_argument("op", choices=[
        "extend", "puncture", "shorten", "acd-shorten", "augment", "x", "acd-x", "juxtapose", "acd-juxtapose",
    ])
    p.add_argument("code")
    p.add_argument("--positions", type=int, nargs="+")
    p.add_argument("--value", type=int, choices=[1, 2, 3], help="acd-shorten by row deletion keeping this symbol")
    p.add_argument("--extend-mode", choices=["even-like", "zero-pad"], default="even-like")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--augment-mode", choices=["half", "full"], default="half")
    p.add_argument("--lenient", action="store_true", help="augment even if a full-weight word exists")
    p.add_argument("--sub")
    p.add_argument("--aux")
    p.add_argument("--other")
    _add_common(p)

    p = sub.add_parser("check", help="ACD / self-orthogonality / hull / Lemma 8")
    p.add_argument("kind", choices=["acd", "self-orthogonal", "hull", "lemma8"])
    p.add_argument("--code")
    p.add_argument("--show-gram", action="store_true")
    _add_qc_flags(p)

    p = sub.add_parser("bound", help="Theorem-1 bound, Griesmer-type check, comparison")
    p.add_argument("kind", choices=["theorem1", "griesmer", "classify"])
    _add_qc_flags(p)
    p.add_argument("--k2", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--params", help="e.g. '(47,35,7)'")
    p.add_argument("--reference", help="file of 'n k d' lines (default: packaged reference)")
    p.add_argument("--budget", type=_log_budget, default=1 << 24)

    p = sub.add_parser("verify-tables", help="rebuild and measure table rows")
    p.add_argument("--table", choices=[*TABLE_IDS, "all"], required=True)
    p.add_argument("--dim-cap", type=int, help="rows with k2 above this are only sampled")
    p.add_argument("--no-derived", action="store_true", help="skip derived codes")
    _add_common(p)

    p = sub.add_parser("search", help="random search for f-polynomials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_poly, required=True)
    p.add_argument("--index", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=_log_budget, default=1 << 24)
    p.add_argument("--keep", type=int, default=10)
    p.add_argument("--no-filter", action="store_true", help="do not require the Theorem-1 hypotheses")
    p.add_argument("--divisors", action="store_true", help="draw f among divisors of g")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--findings", help="append results to this dataset-format file")
    return parser


_COMMANDS: dict[str, Callable] = {
    "poly": _cmd_poly,
    "cyclic": _cmd_cyclic,
    "qc": _cmd_qc,
    "distance": _cmd_distance,
    "derive": _cmd_derive,
    "check": _cmd_check,
    "bound": _cmd_bound,
    "verify-tables": _cmd_verify,
    "search": _cmd_search,
}


def run(argv: Sequence[str] | None = None) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except _UsageError as exc:
        return CommandOutcome(2, {"error": str(exc)}, f"{exc.usage}error: {exc}")
    except _HelpExit as exc:
        return CommandOutcome(exc.status, {}, str(exc))
    if args.command is None:
        return CommandOutcome(2, {"error": "no subcommand"}, parser.format_help())
    if args.workers < 1:
        return CommandOutcome(2, {"error": "--workers must be positive"}, "error: --workers must be positive")
    try:
        return _COMMANDS[args.command](args, args.data_dir)
    except (CodingError, OSError) as exc:
        return CommandOutcome(2, {"error": str(exc), "type": type(exc).__name__}, f"error: {exc}")


def main(argv: Sequence[str] | None = None) -> int:
    out = run(argv)
    if "--json" in (sys.argv[1:] if argv is None else argv) and out.report:
        print(json.dumps(out.report, indent=2, default=str))
    elif out.text:
        stream = sys.stderr if out.exit_code == 2 else sys.stdout
        print(out.text, file=stream)
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
