"""Command-line front end.

Subcommands: gens, pair, perp, minors, series, verify, dims-chain.
Global flags: --json (machine-readable output), --out PATH (write the output
to a file), --threads K (advisory; the computations are exact-arithmetic
bound and currently run on one thread), --seed N (randomized property
sampling inside verify).  The exit code is 0 iff all requested checks pass.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .arcgen import arc_generators_up_to
from .hankel import build_matrix, iter_minors, minor_span
from .pairing import apply_pairing
from .perp import perp_graded_basis
from .reports import dimension_chain, dimension_series, run_verification
from .ring import PolynomialSyntaxError, format_polynomial, parse


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcperp",
        description="Exact inverse systems of arc ideals of double points.",
    )
    parser.add_argument("--version", action="version", version=f"arcperp {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", metavar="PATH", help="write output to a file")
    common.add_argument("--threads", type=int, default=1, metavar="K",
                        help="advisory parallelism hint (currently single-threaded)")
    common.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for randomized property sampling")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gens", parents=[common], help="list arc-ideal generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-order", type=int, required=True, help="largest t-power")

    p = sub.add_parser("pair", parents=[common], help="apply the apolarity pairing")
    p.add_argument("f", help="operator polynomial")
    p.add_argument("P", help="target polynomial")

    p = sub.add_parser("perp", parents=[common], help="graded inverse-system basis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("minors", parents=[common], help="minors and span dimensions")
    p.add_argument("--family", choices=["H", "T", "S", "S1"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, help="offset bound (H family only)")
    p.add_argument("--max-size", type=int, help="largest minor size to enumerate")

    p = sub.add_parser("series", parents=[common], help="truncated dimension series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h-max", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check battery")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="widen the sweeps")
    p.add_argument("--no-timings", action="store_true",
                   help="omit wall-clock timings for byte-identical reports")

    p = sub.add_parser("dims-chain", parents=[common],
                       help="triangular/scaled/augmented dimension agreement")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)

    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_gens(args) -> int:
    gens = arc_generators_up_to(args.n, args.max_order)
    if args.json:
        text = json.dumps([format_polynomial(g) for g in gens], indent=2)
    else:
        text = "\n".join(format_polynomial(g) for g in gens)
    _emit(text, args.out)
    return 0


def _cmd_pair(args) -> int:
    result = apply_pairing(parse(args.f), parse(args.P))
    text = json.dumps(format_polynomial(result)) if args.json else format_polynomial(result)
    _emit(text, args.out)
    return 0


def _cmd_perp(args) -> int:
    span = perp_graded_basis(args.n, args.degree, args.order)
    basis = [format_polynomial(p) for p in span.basis_polynomials()]
    if args.json:
        text = json.dumps(
            {
                "n": args.n,
                "degree": args.degree,
                "order": args.order,
                "dimension": span.dimension,
                "basis": basis,
            },
            indent=2,
        )
    else:
        lines = [f"dimension {span.dimension}"] + basis
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


def _cmd_minors(args) -> int:
    matrix = build_matrix(args.family, args.n, args.h, args.k)
    max_size = args.max_size
    if max_size is None:
        max_size = min(matrix.rows, matrix.cols)
    sizes = range(max_size + 1)
    listing = [
        {
            "size": size,
            "rows": list(rows),
            "cols": list(cols),
            "value": format_polynomial(value),
        }
        for size, rows, cols, value in iter_minors(matrix, sizes)
    ]
    graded = minor_span(matrix, sizes)
    dims = {str(d): graded.dimension(d) for d in graded.degrees()}
    if args.json:
        text = json.dumps(
            {
                "family": args.family,
                "n": args.n,
                "h": args.h,
                "k": args.k,
                "minors": listing,
                "span_dimensions_by_degree": dims,
                "total_dimension": graded.total_dimension,
            },
            indent=2,
        )
    else:
        lines = [
            f"minor size={m['size']} rows={m['rows']} cols={m['cols']}: {m['value']}"
            for m in listing
        ]
        lines.append(f"span dimensions by degree: {dims}")
        lines.append(f"total dimension: {graded.total_dimension}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


def _cmd_series(args) -> int:
    rows = dimension_series(args.n, args.h_max)
    if args.json:
        text = json.dumps([r.to_dict() for r in rows], indent=2)
    else:
        lines = [
            f"h={r.h}: dimension={r.dimension} closed_form={r.closed_form} "
            f"{'match' if r.match else 'MISMATCH'}"
            for r in rows
        ]
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if all(r.match for r in rows) else 1


def _cmd_verify(args) -> int:
    report = run_verification(args.n, args.h, deep=args.deep, seed=args.seed)
    include_timings = not args.no_timings
    if args.json:
        text = report.to_json(include_timings)
    else:
        lines = [f"arcperp {report.version} verify n={args.n} h={args.h} deep={args.deep}"]
        for c in report.checks:
            status = "pass" if c.passed else "FAIL"
            extra = f" witness: {c.witness}" if c.witness else ""
            timing = f" ({c.elapsed_ms:.1f} ms)" if include_timings else ""
            lines.append(f"  [{status}] {c.name}{timing}{extra}")
        lines.append("all checks passed" if report.passed else "SOME CHECKS FAILED")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if report.passed else 1


def _cmd_dims_chain(args) -> int:
    chain = dimension_chain(args.n, args.h)
    if args.json:
        text = json.dumps(chain.to_dict(), indent=2)
    else:
        text = (
            f"triangular={chain.triangular} scaled={chain.scaled} "
            f"scaled_augmented={chain.scaled_augmented} "
            f"equal={chain.equal} bijection={chain.bijection_lands_in_scaled}"
        )
    _emit(text, args.out)
    return 0 if (chain.equal and chain.bijection_lands_in_scaled) else 1


_COMMANDS = {
    "gens": _cmd_gens,
    "pair": _cmd_pair,
    "perp": _cmd_perp,
    "minors": _cmd_minors,
    "series": _cmd_series,
    "verify": _cmd_verify,
    "dims-chain": _cmd_dims_chain,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PolynomialSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
