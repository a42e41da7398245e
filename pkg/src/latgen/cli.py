"""Command-line interface: generation, counting, verification, statistics."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import core, d6, stats as stats_mod, verify as verify_mod
from .counts import CountTable, render_table
from .generator import run, spec_for

FAMILIES = ("graded", "semimodular", "lsm", "modular", "geometric")


def _add_family(p):
    p.add_argument("--family", required=True, choices=FAMILIES)


def _add_max_n(p, required=True):
    p.add_argument("--max-n", type=int, required=required, metavar="K")


def _check_max_n(parser, k):
    if not 3 <= k <= core.MAX_ELEMENTS:
        parser.error(f"--max-n must be in 3..{core.MAX_ELEMENTS}")


def cmd_generate(parser, args):
    _check_max_n(parser, args.max_n)
    if args.direct_semimodular and args.family != "semimodular":
        parser.error("--direct-semimodular only applies to --family semimodular")
    spec = spec_for(args.family, direct_semimodular=args.direct_semimodular)
    t0 = time.perf_counter()
    counts, lines = run(
        spec,
        args.max_n,
        threads=args.threads,
        want_payloads=args.out is not None,
        use_pair_budget=not args.no_pair_budget,
        use_shortcuts=not args.no_shortcuts,
    )
    elapsed = time.perf_counter() - t0
    if args.out is not None:
        d6.write_list(args.out, lines)
    print(f"# family={args.family} max-n={args.max_n} "
          f"elapsed={elapsed:.2f}s threads={args.threads}")
    print("n, vi, ratio")
    prev = None
    for n in range(1, args.max_n + 1):
        c = counts.get(n, 0)
        ratio = f"{c / prev:.2f}" if prev else "-"
        print(f"{n}, {c}, {ratio}")
        prev = c if c else None
    if args.out is not None:
        print(f"# wrote {len(lines)} records to {args.out}")
    return 0


def cmd_count(parser, args):
    _check_max_n(parser, args.max_n)
    spec = spec_for(args.family)
    counts, _ = run(spec, args.max_n, threads=args.threads)
    vi = {n: counts.get(n, 0) for n in range(1, args.max_n + 1)}
    table = CountTable.from_vi(args.family, vi)
    print(render_table(table, fmt=args.format))
    return 0


def cmd_verify(parser, args):
    try:
        if args.check == "isofree":
            res = verify_mod.check_isomorph_free(d6.read_list(args.lists[0]))
        elif args.check == "contain":
            if len(args.lists) != 2:
                parser.error("verify contain needs SUB and SUPER lists")
            res = verify_mod.check_containment(
                d6.read_list(args.lists[0]), d6.read_list(args.lists[1])
            )
        elif args.check == "dual":
            res = verify_mod.check_duality_closed(d6.read_list(args.lists[0]))
        elif args.check == "digest":
            algo = "md5" if args.md5 else "sha256"
            for path in args.lists:
                print(f"{d6.digest_list(path, algo)}  {path}")
            return 0
        else:  # pragma: no cover
            parser.error(f"unknown check {args.check}")
    except d6.CodecError as exc:
        print(f"FAIL: undecodable record: {exc}")
        return 1
    print(("PASS" if res.ok else "FAIL") + (f": {res.detail}" if res.detail else ""))
    return 0 if res.ok else 1


def cmd_oracle(parser, args):
    from . import oracle

    if args.max_n > oracle.ORACLE_MAX:
        parser.error(f"--max-n must be <= {oracle.ORACLE_MAX} for the oracle")
    preds = {
        "graded": core.is_graded,
        "semimodular": core.is_semimodular,
        "lsm": core.is_lower_semimodular,
        "modular": core.is_modular,
        "geometric": core.is_geometric,
    }
    pred = preds[args.family]
    print("n, vi, total")
    for n in range(1, args.max_n + 1):
        total = len(oracle.brute_force_family(n, pred))
        vi = len(oracle.brute_force_family(n, pred, vi_only=True))
        print(f"{n}, {vi}, {total}")
    return 0


def cmd_stats(parser, args):
    if args.stat == "length":
        rows = {}
        for path in args.lists:
            rows[Path(path).stem] = stats_mod.average_length(d6.read_list(path))
        print(stats_mod.length_csv(rows))
    else:
        if args.n is None:
            parser.error("stats widths needs --n")
        rows = {}
        for path in args.lists:
            lines = [ln for ln in d6.read_list(path) if ln[1] - 63 == args.n]
            rows[Path(path).stem] = stats_mod.average_level_widths(
                lines, args.n, align=args.align
            )
        print(stats_mod.widths_csv(rows, align=args.align))
    return 0


def cmd_convert(parser, args):
    from .canon import canonical_payload

    payloads = []
    for line in d6.read_list(args.input, strict=args.strict):
        n, arcs = d6.decode(line)
        lat = core.Lattice.from_arcs(n, arcs)
        payloads.append(canonical_payload(lat))
    n_written = d6.write_list(args.output, payloads)
    print(f"# canonicalized {n_written} records into {args.output}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latgen",
        description="Generate, count and verify graded, semimodular, modular "
        "and geometric lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="run the exhaustive generator")
    _add_family(p)
    _add_max_n(p)
    p.add_argument("--vi-only", action="store_true",
                   help="emit vertically indecomposable lattices only "
                   "(the default and only mode; flag kept for scripts)")
    p.add_argument("--out", metavar="FILE", help="write sorted digraph6 list")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-pair-budget", action="store_true",
                   help="debug: disable the pair-budget cutoff")
    p.add_argument("--no-shortcuts", action="store_true",
                   help="debug: disable mother-class isomorphism shortcuts")
    p.add_argument("--direct-semimodular", action="store_true",
                   help="debug: build semimodular lattices directly instead "
                   "of dualizing lower semimodular ones")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("count", help="print vi and total count tables")
    _add_family(p)
    _add_max_n(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="consistency checks over list files")
    p.add_argument("check", choices=("isofree", "contain", "dual", "digest"))
    p.add_argument("lists", nargs="+", metavar="LIST")
    p.add_argument("--md5", action="store_true",
                   help="use MD5 for digests instead of SHA-256")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force counts for small sizes")
    _add_family(p)
    _add_max_n(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stats", help="shape statistics as CSV")
    p.add_argument("stat", choices=("length", "widths"))
    p.add_argument("lists", nargs="+", metavar="LIST")
    p.add_argument("--n", type=int, help="lattice size for widths")
    p.add_argument("--align", choices=("top", "bottom"), default="top")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("convert", help="decode, canonicalize and re-encode")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--strict", action="store_true",
                   help="fail on duplicate input lines")
    p.set_defaults(func=cmd_convert)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (OSError, ValueError) as exc:
        print(f"latgen: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
