"""Command line interface: ``apseq {seq,groups,sym,census,twin-scan,verify}``.

Exit codes: 0 success, 1 a claim was falsified or a cross-check disagreed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from . import __version__
from .arith import ArithmeticOverflow, NotCoprime, checked_mul
from .census import CensusRow, Falsification, census_row, twin_scan
from .grouping import Degenerate, check_symmetricity, detect_groupings
from .sequence import build_sequence
from .verify import summarize, verify_d0

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

CENSUS_COLUMNS = ["d0", "phi", "s_size", "tau_half", "twin", "count_claim_ok", "twin_claim_ok", "s_set"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Command:
    verb: str
    params: dict = field(default_factory=dict)
    format: str = "text"
    workers: int = 1


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {text!r}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--workers", type=_positive, default=1)

    parser = _Parser(prog="apseq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    seed = _Parser(add_help=False)
    seed.add_argument("--a0", type=_positive, required=True)
    seed.add_argument("--d0", type=_positive, required=True)
    seed.add_argument("--max-len", dest="max_len", type=_positive)

    p = sub.add_parser("seq", parents=[common, seed], help="print the progression table")
    p.add_argument("--terms", type=_positive, default=5)
    sub.add_parser("groups", parents=[common, seed], help="print groupings")
    sub.add_parser("sym", parents=[common, seed], help="symmetricity of the first grouping")

    span = _Parser(add_help=False)
    span.add_argument("--from", dest="d_min", type=_natural, required=True)
    span.add_argument("--to", dest="d_max", type=_natural, required=True)

    for verb in ("census", "twin-scan"):
        p = sub.add_parser(verb, parents=[common, span])
        p.add_argument("--mode", choices=["oracle", "divisor", "both"], default="auto")
    sub.add_parser("verify", parents=[common, span], help="run the exhaustive invariant suite")
    return parser


def parse_args(argv: list[str]) -> Command:
    args = vars(_build_parser().parse_args(argv))
    verb = args.pop("verb")
    fmt = args.pop("format")
    workers = args.pop("workers")
    if "d_min" in args:
        if args["d_min"] < 2:
            raise UsageError(f"argument --from: must be >= 2, got {args['d_min']}")
        if args["d_max"] < args["d_min"]:
            raise UsageError(f"argument --to: must be >= --from ({args['d_min']}), got {args['d_max']}")
    return Command(verb, args, fmt, workers)


# -- rendering ---------------------------------------------------------------


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([_cell(v) for v in row] for row in rows)
    return buf.getvalue()


def _cell(value):
    return str(value).lower() if isinstance(value, bool) else value


def _joined(values) -> str:
    return ";".join(str(v) for v in values)


def _json(cmd: Command, results: list, falsifications: list) -> str:
    doc = {
        "command": cmd.verb,
        "parameters": cmd.params,
        "results": results,
        "falsifications": [f.as_dict() for f in falsifications],
        "version": __version__,
    }
    return json.dumps(doc, indent=2) + "\n"


def _yes(flag) -> str:
    return "yes" if flag else "no"


# -- verbs -------------------------------------------------------------------


def _seq(cmd: Command):
    p = cmd.params
    s = build_sequence(p["a0"], p["d0"], p["max_len"])
    records = [{"index": i, "a": q.a, "d": q.d, "terms": q.terms(p["terms"])} for i, q in enumerate(s)]
    if cmd.format == "json":
        return _json(cmd, records, []), []
    if cmd.format == "csv":
        rows = [[r["index"], r["a"], r["d"], _joined(r["terms"])] for r in records]
        return _csv(["index", "a", "d", "terms"], rows), []
    width = max(len(f"A({q.a},{q.d})") for q in s)
    lines = [f"{str(q):<{width}}  " + ", ".join(map(str, q.terms(p["terms"]))) + ", ..." for q in s]
    if s.truncated:
        lines.append(f"(truncated after {len(s)} progressions; d = 1 not reached)")
    return "\n".join(lines) + "\n", []


def _groups(cmd: Command):
    p = cmd.params
    groups = detect_groupings(build_sequence(p["a0"], p["d0"], p["max_len"]))
    records = [
        {
            "alpha": g.alpha,
            "beta": g.beta,
            "delta": g.delta,
            "size": g.size,
            "members": [[q.a, q.d] for q in g.members],
        }
        for g in groups
    ]
    if cmd.format == "json":
        return _json(cmd, records, []), []
    if cmd.format == "csv":
        rows = [
            [g.alpha, g.beta, g.delta, g.size, _joined(f"{q.a}/{q.d}" for q in g.members)] for g in groups
        ]
        return _csv(["alpha", "beta", "delta", "size", "members"], rows), []
    lines = []
    for k, g in enumerate(groups, 1):
        members = ", ".join(map(str, g.members))
        lines.append(f"G{k}: indices {g.alpha}..{g.beta}, Δ={g.delta}, size {g.size}: {members}")
    for k, g in enumerate(groups[:-1], 1):
        lines.append(f"G{k} and G{k + 1} share {g.members[-1]}")
    return "\n".join(lines) + "\n", []


def _sym(cmd: Command):
    p = cmd.params
    d0 = p["d0"]
    s = build_sequence(p["a0"], d0, p["max_len"])
    g = detect_groupings(s)[0]
    n = checked_mul(d0, d0) - 1
    r = check_symmetricity(g, n)
    events = []
    if r.symmetric != r.delta_divides:
        events.append(
            Falsification("theorem", d0, f"symmetric={r.symmetric}, delta divides={r.delta_divides}", p["a0"])
        )
    record = {
        "alpha": g.alpha,
        "beta": g.beta,
        "delta": g.delta,
        "leading_terms": g.leading_terms,
        "symmetric": r.symmetric,
        "witness": r.witness,
        "d0_squared_minus_1": n,
        "delta_divides": r.delta_divides,
        "z0": r.z0,
        "d_beta": r.d_beta,
    }
    if cmd.format == "json":
        return _json(cmd, [record], events), events
    if cmd.format == "csv":
        row = [record[k] if k != "leading_terms" else _joined(g.leading_terms) for k in record]
        return _csv(list(record), [row]), events
    lines = [
        f"first grouping: indices {g.alpha}..{g.beta}; leading terms {', '.join(map(str, g.leading_terms))}",
        f"symmetric: {_yes(r.symmetric)}; Δ={g.delta}; d0²−1={n}; divides: {_yes(r.delta_divides)}; "
        f"z0={r.z0}; dβ={r.d_beta}",
    ]
    if r.witness is not None:
        j = r.witness - g.alpha
        lines.append(f"witness: a_{r.witness}={g.leading_terms[j]} ≠ a_{g.beta - j}={g.leading_terms[-1 - j]}")
    lines += [f"FALSIFIED: {e.detail}" for e in events]
    return "\n".join(lines) + "\n", events


def _row_for(mode: str, d0: int) -> CensusRow:
    try:
        return census_row(d0, mode)
    except ArithmeticOverflow as exc:
        raise ArithmeticOverflow(f"d0={d0}: {exc}") from exc


def _map_range(fn, d_min: int, d_max: int, workers: int) -> list:
    values = range(d_min, d_max + 1)
    if workers == 1:
        return [fn(d0) for d0 in values]
    chunk = max(1, len(values) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values, chunksize=chunk))


def _render_rows(cmd: Command, rows: list[CensusRow], events: list, summary: list[str]):
    if cmd.format == "json":
        return _json(cmd, [r.as_dict() for r in rows], events)
    if cmd.format == "csv":
        out = []
        for r in rows:
            d = r.as_dict()
            d["s_set"] = _joined(d["s_set"])
            out.append([d[c] for c in CENSUS_COLUMNS])
        return _csv(CENSUS_COLUMNS, out)
    lines = [
        f"d0={r.d0} phi={r.phi} |S|={r.s_size} tau/2={r.tau_half} twin={_yes(r.twin)} "
        f"count_claim={'ok' if r.count_claim_ok else 'FAIL'} twin_claim={'ok' if r.twin_claim_ok else 'FAIL'} "
        f"S={list(r.s_set)}"
        for r in rows
    ]
    lines += summary
    lines += [f"FALSIFIED [{e.kind}] d0={e.d0}: {e.detail}" for e in events]
    return "\n".join(lines) + "\n"


def _census(cmd: Command):
    p = cmd.params
    rows = _map_range(partial(_row_for, p["mode"]), p["d_min"], p["d_max"], cmd.workers)
    events = [f for r in rows for f in r.falsifications()]
    return _render_rows(cmd, rows, events, [f"rows: {len(rows)}; falsifications: {len(events)}"]), events


def _twin_scan(cmd: Command):
    p = cmd.params
    rows = _map_range(partial(_row_for, p["mode"]), p["d_min"], p["d_max"], cmd.workers)
    scan = twin_scan(p["d_min"], p["d_max"], rows=rows)
    summary = [
        f"scanned: {scan.scanned}; |S(d0)| = 2 at d0 in {[r.d0 for r in scan.rows]}; "
        f"falsifications: {len(scan.falsifications)}"
    ]
    return _render_rows(cmd, scan.rows, scan.falsifications, summary), scan.falsifications


def _verify(cmd: Command):
    p = cmd.params
    results = _map_range(verify_d0, p["d_min"], p["d_max"], cmd.workers)
    summary = summarize(results, p["d_min"], p["d_max"])
    events = summary.falsifications
    if cmd.format == "json":
        return _json(cmd, [summary.as_dict()], events), events
    if cmd.format == "csv":
        d = summary.as_dict()
        d["notes"] = " | ".join(d["notes"])
        return _csv(list(d), [list(d.values())]), events
    lines = summary.lines()
    lines += [f"note: {n}" for n in summary.notes]
    lines += [
        f"FALSIFIED [{e.kind}] d0={e.d0}" + (f" a0={e.a0}" if e.a0 is not None else "") + f": {e.detail}"
        for e in events
    ]
    lines.append("PASS" if summary.ok else "FAIL")
    return "\n".join(lines) + "\n", events


VERBS = {
    "seq": _seq,
    "groups": _groups,
    "sym": _sym,
    "census": _census,
    "twin-scan": _twin_scan,
    "verify": _verify,
}


def execute(cmd: Command, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        text, events = VERBS[cmd.verb](cmd)
    except NotCoprime:
        print("error: a0 and d0 must be co-prime", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticOverflow, Degenerate, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(text)
    return EXIT_FALSIFIED if events else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return execute(cmd)
