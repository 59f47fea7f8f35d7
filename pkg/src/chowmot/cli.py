"""Command-line front end.

Commands mirror the library: `fm` for configuration-space tables,
`quotient` for the symmetric quotient, `wonderful` for arrangement
files, `verify` for the cross-check suites.  Output formats are a human
table (default), deterministic JSON, or CSV; exit codes are 0 success,
1 verification failure, 2 bad input, 3 enumeration cap exceeded, 4
internal cross-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .arrangements import decompose, decompose_iterative, load_arrangement
from .errors import CapExceededError, CrossCheckError, ValidationError
from .fm import (chow_rank, decomposition_table, f_sigma_form, poincare,
                 projective_ranks, solve_N, RankProfile)
from .macdonald import BettiVector
from .quotient import quotient_decomposition, quotient_poincare
from .verify import run_suite


@dataclass
class Output:
    doc: dict
    columns: list[str]
    rows: list[list]
    headline: str = ""
    footer: list[str] = field(default_factory=list)
    exit_code: int = 0


def _document(command: str, params: dict, result: dict) -> dict:
    return {"command": command, "params": params, "result": result,
            "version": __version__}


def _parse_betti(text: str, dim: int) -> BettiVector:
    if text == "projective":
        return BettiVector.projective_space(dim)
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse Betti numbers from {text!r}") from exc
    return BettiVector(values)


def _summand(k: int, i: int) -> str:
    base = "h(X)" if k == 1 else f"h(X^{k})"
    return base if i == 0 else f"{base}({i})"


def _quotient_summand(nu: tuple[int, ...], m: int) -> str:
    factors = " x ".join(f"X^({p})" for p in nu)
    body = f"h({factors})"
    return body if m == 0 else f"{body}({m})"


def cmd_fm_decompose(args) -> Output:
    table = decomposition_table(args.n, args.dim)
    rows = [[k, i, m, _summand(k, i)] for k, i, m in table.sorted_entries()]
    return Output(
        doc=_document("fm decompose", {"n": args.n, "dim": args.dim}, table.to_document()),
        columns=["k", "i", "mult", "summand"],
        rows=rows,
        headline=f"h(X[{args.n}]) for dim X = {args.dim}:",
        footer=[f"total summands: {table.total_summands()}"],
    )


def cmd_fm_rank(args) -> Output:
    if args.ranks == "projective":
        profile = projective_ranks(args.n, args.dim)
    else:
        with open(args.ranks, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        try:
            profile = RankProfile(tuple(int(raw[str(k)]) for k in range(1, args.n + 1)))
        except KeyError as exc:
            raise ValueError(f"rank file is missing an entry for power {exc}") from exc
    table = decomposition_table(args.n, args.dim)
    total = chow_rank(args.n, args.dim, profile)
    rows = [[k, i, m, m * profile.rank(k)] for k, i, m in table.sorted_entries()]
    result = {
        "total_rank": total,
        "ranks": {str(k): profile.rank(k) for k in range(1, args.n + 1)},
        "entries": [{"k": k, "i": i, "mult": m, "rank": m * profile.rank(k)}
                    for k, i, m in table.sorted_entries()],
    }
    return Output(
        doc=_document("fm rank", {"n": args.n, "dim": args.dim, "ranks": args.ranks}, result),
        columns=["k", "i", "mult", "rank"],
        rows=rows,
        headline=f"rank of A(X[{args.n}]) for dim X = {args.dim}:",
        footer=[f"total rank: {total}"],
    )


def cmd_fm_genfun(args) -> Output:
    series = solve_N(args.dim, args.order)
    rows = []
    entries = []
    for n in range(1, args.order + 1):
        poly = series.coefficient(n)
        sform = f_sigma_form(n)
        rows.append([n, poly.to_string(), sform.to_string()])
        entries.append({"n": n, "coeffs": list(poly.coeffs), "poly": poly.to_string(),
                        "sigma_form": sform.to_string()})
    return Output(
        doc=_document("fm genfun", {"dim": args.dim, "order": args.order},
                      {"entries": entries}),
        columns=["n", "f_n(x)", "sigma form (s_j = x + ... + x^(d*j-1))"],
        rows=rows,
        headline=f"coefficients of the generating function, dim X = {args.dim}:",
    )


def cmd_fm_betti(args) -> Output:
    betti = _parse_betti(args.betti, args.dim)
    poly = poincare(args.n, args.dim, betti)
    rows = [[i, c] for i, c in poly.terms()]
    result = {"betti": list(betti.values), "poincare_coeffs": list(poly.coeffs),
              "poincare": poly.to_string("t"), "rank_at_1": poly(1)}
    return Output(
        doc=_document("fm betti", {"n": args.n, "dim": args.dim, "betti": args.betti}, result),
        columns=["degree", "betti_number"],
        rows=rows,
        headline=f"Poincare polynomial of X[{args.n}]:",
        footer=[f"P(t) = {poly.to_string('t')}", f"total: {poly(1)}"],
    )


def cmd_quotient_decompose(args) -> Output:
    table = quotient_decomposition(args.n, args.dim)
    rows = [["+".join(map(str, nu)), m, lam, _quotient_summand(nu, m)]
            for nu, m, lam in table.sorted_entries()]
    result = table.to_document(verbose=args.verbose_forests)
    footer = [f"total summands: {sum(table.entries.values())}"]
    if args.betti:
        betti = _parse_betti(args.betti, args.dim)
        poly = quotient_poincare(args.n, args.dim, betti)
        result["poincare"] = poly.to_string("t")
        result["poincare_coeffs"] = list(poly.coeffs)
        footer.append(f"P(t) = {poly.to_string('t')}")
    return Output(
        doc=_document("quotient decompose",
                      {"n": args.n, "dim": args.dim, "betti": args.betti}, result),
        columns=["nu", "m", "lambda", "summand"],
        rows=rows,
        headline=f"h(X[{args.n}]/S_{args.n}) for dim X = {args.dim}:",
        footer=footer,
    )


def cmd_quotient_betti(args) -> Output:
    betti = _parse_betti(args.betti, args.dim)
    poly = quotient_poincare(args.n, args.dim, betti)
    rows = [[i, c] for i, c in poly.terms()]
    result = {"betti": list(betti.values), "poincare_coeffs": list(poly.coeffs),
              "poincare": poly.to_string("t"), "rank_at_1": poly(1)}
    return Output(
        doc=_document("quotient betti", {"n": args.n, "dim": args.dim, "betti": args.betti}, result),
        columns=["degree", "betti_number"],
        rows=rows,
        headline=f"Poincare polynomial of X[{args.n}]/S_{args.n}:",
        footer=[f"P(t) = {poly.to_string('t')}", f"total: {poly(1)}"],
    )


def cmd_wonderful_decompose(args) -> Output:
    with open(args.file, "r", encoding="utf-8") as fh:
        document = json.load(fh)
    arr = load_arrangement(document)
    if args.iterative or args.order:
        order = args.order.split(",") if args.order else arr.compatible_order()
        dec = decompose_iterative(arr, order)
        mode = {"iterative": True, "order": list(order)}
    else:
        dec = decompose(arr)
        mode = {"iterative": False}
    result = dec.to_document(arr.labels)
    result.update(mode)
    rows = [[s, lab, dim, i, m]
            for (s, lab, dim, i, m) in
            ((s, arr.labels.get(s, s), dim, i, m)
             for s, i, m in dec.sorted_summands()
             for dim in [dec.dims[s]])]
    return Output(
        doc=_document("wonderful decompose", {"file": args.file, **mode}, result),
        columns=["stratum", "label", "dim", "twist", "mult"],
        rows=rows,
        headline=f"decomposition of the compactification of {arr.ambient}:",
        footer=[f"total summands: {dec.total_summands()}"],
    )


def cmd_verify(args) -> Output:
    results = run_suite(args.suite, args.max_n, args.max_dim)
    failed = [r for r in results if not r.passed]
    rows = [[r.suite, r.name, "pass" if r.passed else "FAIL", r.detail] for r in results]
    result = {
        "suite": args.suite,
        "checks": [{"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
                   for r in results],
        "failed": len(failed),
    }
    return Output(
        doc=_document("verify", {"suite": args.suite, "max_n": args.max_n,
                                 "max_dim": args.max_dim}, result),
        columns=["suite", "check", "status", "detail"],
        rows=rows,
        headline=f"verification suite {args.suite!r}:",
        footer=[f"{len(results) - len(failed)}/{len(results)} checks passed"],
        exit_code=1 if failed else 0,
    )


def _render_table(out: Output) -> str:
    lines = []
    if out.headline:
        lines.append(out.headline)
    if out.rows:
        cells = [[str(c) for c in row] for row in out.rows]
        widths = [max(len(h), *(len(r[j]) for r in cells))
                  for j, h in enumerate(out.columns)]
        lines.append("  ".join(h.ljust(w) for h, w in zip(out.columns, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    lines.extend(out.footer)
    return "\n".join(lines)


def _render_csv(out: Output) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(out.columns)
    writer.writerows(out.rows)
    return buf.getvalue().rstrip("\n")


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.doc, indent=2)
    if fmt == "csv":
        return _render_csv(out)
    return _render_table(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowmot",
        description="exact decomposition tables for blow-up compactifications")
    parser.add_argument("--version", action="version", version=f"chowmot {__version__}")
    top = parser.add_subparsers(dest="group", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--unsafe-cap", type=int, default=None,
                       help="raise the enumeration cap (exponential cost)")

    fm = top.add_parser("fm", help="configuration-space tables").add_subparsers(
        dest="command", required=True)

    p = fm.add_parser("decompose", help="multiplicity table of h(X[n])")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    add_common(p)
    p.set_defaults(handler=cmd_fm_decompose)

    p = fm.add_parser("rank", help="total rank from a rank profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ranks", default="projective",
                   help="'projective' or a JSON file mapping power -> rank")
    add_common(p)
    p.set_defaults(handler=cmd_fm_rank)

    p = fm.add_parser("genfun", help="coefficients of the generating function")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    add_common(p)
    p.set_defaults(handler=cmd_fm_genfun)

    p = fm.add_parser("betti", help="Poincare polynomial of X[n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--betti", required=True,
                   help="comma list b_0,..,b_2d or 'projective'")
    add_common(p)
    p.set_defaults(handler=cmd_fm_betti)

    quot = top.add_parser("quotient", help="symmetric quotient tables").add_subparsers(
        dest="command", required=True)

    p = quot.add_parser("decompose", help="lambda table of h(X[n]/S_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--betti", default=None)
    p.add_argument("--verbose-forests", action="store_true",
                   help="include canonical forest encodings in JSON output")
    add_common(p)
    p.set_defaults(handler=cmd_quotient_decompose)

    p = quot.add_parser("betti", help="Poincare polynomial of the quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--betti", required=True)
    add_common(p)
    p.set_defaults(handler=cmd_quotient_betti)

    wonder = top.add_parser("wonderful", help="arrangement-file engine").add_subparsers(
        dest="command", required=True)

    p = wonder.add_parser("decompose", help="decomposition of an arrangement file")
    p.add_argument("--file", required=True)
    p.add_argument("--iterative", action="store_true",
                   help="replay blow-ups and compare with the closed form")
    p.add_argument("--order", default=None,
                   help="comma list of building ids, inclusion-compatible")
    add_common(p)
    p.set_defaults(handler=cmd_wonderful_decompose)

    p = top.add_parser("verify", help="run cross-check suites")
    p.add_argument("--suite", default="all",
                   help="genfun|duality|quotient|orders|macdonald|chern|all")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-dim", type=int, default=None)
    add_common(p)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "unsafe_cap", None):
        os.environ["WONDERFUL_CAP_N"] = str(args.unsafe_cap)
    try:
        out = args.handler(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CrossCheckError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 4
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(out, args.format))
    return out.exit_code


def entry() -> None:
    raise SystemExit(main())
