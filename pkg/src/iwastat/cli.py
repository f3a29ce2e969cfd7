"""Command-line surface.

Commands: scan, enumerate, bounds, dp, invariants, ip-count. Exit codes:
0 success, 1 input error (bad flags, bad files, bad math inputs), 2
internal error (assertion failures and other bugs). IWASTAT_THREADS sets
the default worker count; --workers wins when given.
"""

import argparse
import json
import os
import sys

from .charpoly import CharPoly, iwasawa_invariants, truncated_chi_valuation, vanishing_order
from .curves import DpMode, d_of_p
from .enumeration import bound_dp3, bound_dp2, count_Ip, empirical_densities, sadek_bounds
from .errors import IwastatError
from .io import density_report_dict, parse_records, scan_result_dict, write_density_report
from .prime_scan import scan_primes


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for bugs
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


def _default_workers():
    return int(os.environ.get("IWASTAT_THREADS", "1") or "1")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="iwastat", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan",
                       help="classify primes for each record in a CSV file")
    p.add_argument("records", help="ingest CSV (label,a,b,rank,...)")
    p.add_argument("--max-prime", type=int, default=100)
    p.add_argument("--label", default=None, help="restrict to one record label")
    p.add_argument("--allow-23", action="store_true",
                   help="run the full local algorithm at 2 and 3 when overrides are absent")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = sub.add_parser("enumerate",
                       help="height-box sweep: counts, loci, bounds")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--strict", action="store_true",
                   help="skip curves whose 2,3 Tamagawa part cannot be certified")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bounds",
                       help="density bounds at a prime, all census modes")
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("dp", help="order-p census count")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--mode", default="literal",
                   choices=["literal", "trace-pairs", "trace-classes"])

    p = sub.add_parser("invariants",
                       help="mu/lambda and leading-term data of a polynomial")
    p.add_argument("--poly", required=True,
                   help="comma-separated integer coefficients, constant term first")
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("ip-count",
                       help="exact multiplicative-locus count with sandwich bounds")
    p.add_argument("--l", dest="l", type=int, required=True)
    p.add_argument("--p", dest="p", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)

    return top


def _cmd_scan(args) -> int:
    records, errors = parse_records(args.records)
    for lineno, msg in errors:
        print(f"row {lineno}: {msg}", file=sys.stderr)
    if args.label is not None:
        records = [r for r in records if r.label == args.label]
        if not records:
            print(f"no record with label {args.label!r}", file=sys.stderr)
            return 1
    workers = args.workers if args.workers is not None else _default_workers()
    payload = []
    for rec in records:
        results = scan_primes(rec, args.max_prime, workers=workers,
                              allow_23=args.allow_23)
        payload.append({
            "label": rec.label,
            "results": [scan_result_dict(r) for r in results],
        })
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if not errors else 1


def _cmd_enumerate(args) -> int:
    rep = empirical_densities(args.prime, args.height, strict=args.strict,
                              workers=args.workers)
    if args.out:
        write_density_report(rep, args.out)
    else:
        print(json.dumps(density_report_dict(rep), indent=2, sort_keys=True))
    return 0


def _cmd_bounds(args) -> int:
    p = args.prime
    print(f"bound_dp2({p}) = {bound_dp2(p):.10g}")
    for mode in DpMode:
        d = d_of_p(p, mode)
        print(f"bound_dp3({p}, d={d} [{mode.value}]) = {bound_dp3(p, d):.10g}")
    return 0


def _cmd_dp(args) -> int:
    print(d_of_p(args.prime, args.mode))
    return 0


def _cmd_invariants(args) -> int:
    coeffs = [int(tok) for tok in args.poly.split(",")]
    f = CharPoly(args.prime, coeffs)
    mu, lam = iwasawa_invariants(f)
    print(f"mu = {mu}")
    print(f"lambda = {lam}")
    print(f"vanishing_order = {vanishing_order(f)}")
    print(f"truncated_chi_valuation = {truncated_chi_valuation(f)}")
    return 0


def _cmd_ip_count(args) -> int:
    n = count_Ip(args.l, args.p, args.height, workers=args.workers)
    lo, up = sadek_bounds(args.l, args.p, args.height) if args.height >= 4096 else (None, None)
    print(f"count = {n}")
    if lo is not None:
        print(f"lower = {lo:.6g}")
        print(f"upper = {up:.6g}")
        assert lo <= n <= up, "sandwich bound violated"
    return 0


_HANDLERS = {
    "scan": _cmd_scan,
    "enumerate": _cmd_enumerate,
    "bounds": _cmd_bounds,
    "dp": _cmd_dp,
    "invariants": _cmd_invariants,
    "ip-count": _cmd_ip_count,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except (IwastatError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2



if __name__ == "__main__":
    sys.exit(main())
