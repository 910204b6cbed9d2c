"""Command-line front end.

Every subcommand writes one deterministic report to stdout: JSON by default,
CSV for the two census tables.  Exit status is 0 on success, 1 when a law
check or family verification finds a counterexample, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
from decimal import Decimal, InvalidOperation
import json
import sys

from . import __version__
from .arith import RangeError, factorize
from .census import count_members, partial_density_product, residue_class_census
from .laws import run_law, theorem_family
from .msets import MSetSpec, factorization_evidence, is_member
from .represent import ReprQuery, find_nonrepresentable, is_representable

TOOL = "cyclonorm"
LAWS = ("l1", "l2", "l3", "l4", "l5", "l6", "l7", "thm")


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Parse '20', '1e6' or '2.5e3' to an exact int; reject non-integral values."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def parse_int_list(text: str) -> list[int]:
    return [parse_int(part) for part in text.split(",") if part.strip()]


def parse_set(text: str) -> MSetSpec:
    try:
        return MSetSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument(
        "--threads", type=parse_int, default=None,
        help="worker cap (default: all cores); results do not depend on it",
    )

    p = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("member", parents=[common], help="membership verdict with factorization")
    s.add_argument("--set", dest="spec", type=parse_set, required=True, metavar="nk:K|mp:P")
    s.add_argument("--n", type=parse_int, required=True)

    s = sub.add_parser("represent", parents=[common], help="witness or NONREP for one n")
    s.add_argument("--set", dest="spec", type=parse_set, required=True, metavar="nk:K|mp:P")
    s.add_argument("--n", type=parse_int, required=True)
    s.add_argument("--max-powers", type=parse_int, required=True)
    s.add_argument("--base", type=parse_int, default=None)

    s = sub.add_parser("search", parents=[common], help="list non-representable integers in a range")
    s.add_argument("--set", dest="spec", type=parse_set, required=True, metavar="nk:K|mp:P")
    s.add_argument("--max-powers", type=parse_int, required=True)
    s.add_argument("--lo", type=parse_int, default=1)
    s.add_argument("--hi", type=parse_int, required=True)
    s.add_argument("--base", type=parse_int, default=None)

    s = sub.add_parser("verify", parents=[common], help="run a law check")
    s.add_argument("--law", choices=LAWS, type=str.lower, required=True)
    s.add_argument("--set", dest="spec", type=parse_set, default=None, metavar="nk:K|mp:P")
    s.add_argument("--k", type=parse_int, default=None)
    s.add_argument("--p", type=parse_int, default=None)
    s.add_argument("--lo", type=parse_int, default=None)
    s.add_argument("--hi", type=parse_int, default=None)
    s.add_argument("--a-max", type=parse_int, default=None)
    s.add_argument("--count", type=parse_int, default=None)

    s = sub.add_parser("family", parents=[common], help="witnesses n = q1*q2 + p - 2")
    s.add_argument("--p", type=parse_int, required=True)
    s.add_argument("--count", type=parse_int, default=10)
    s.add_argument("--verify-bound", type=parse_int, default=10**6)

    s = sub.add_parser("census", parents=[common], help="member counts at checkpoints (CSV)")
    s.add_argument("--set", dest="spec", type=parse_set, required=True, metavar="nk:K|mp:P")
    s.add_argument("--checkpoints", type=parse_int_list, required=True)

    s = sub.add_parser("density-product", parents=[common], help="partial density product")
    s.add_argument("--k", type=parse_int, required=True)
    s.add_argument("--prime-limit", type=parse_int, required=True)

    s = sub.add_parser("class-census", parents=[common], help="per-residue table mod 2^k (CSV)")
    s.add_argument("--k", type=parse_int, required=True)
    s.add_argument("--t", type=parse_int, required=True)
    s.add_argument("--x", type=parse_int, required=True)
    p.subcommands = sub.choices
    return p


_TABULAR = ("census", "class-census")
_FLAG_OWNERS = {"k": ("l2", "l4"), "p": ("l6", "thm"), "spec": ("l3", "l5"),
                "a_max": ("l1", "l3", "l5"), "count": ("thm",)}


def _validate(args) -> None:
    if args.format is None:
        args.format = "csv" if args.command in _TABULAR else "json"
    elif args.format == "csv" and args.command not in _TABULAR:
        raise UsageError(f"--format csv is only available for {', '.join(_TABULAR)}")
    if args.threads is not None and args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.command == "verify":
        for name, owners in _FLAG_OWNERS.items():
            if getattr(args, name) is not None and args.law not in owners:
                flag = "--set" if name == "spec" else "--" + name.replace("_", "-")
                raise UsageError(f"{flag} does not apply to --law {args.law}")
        if args.law == "l2" and args.k not in (None, 3):
            raise UsageError("--law l2 is the k=3 case; use --law l4 for other k")
    if args.command in ("search",) and args.lo > args.hi:
        raise UsageError(f"--lo {args.lo} exceeds --hi {args.hi}")


def _config(args) -> dict:
    cfg = {}
    for key, val in sorted(vars(args).items()):
        if key == "threads":
            continue
        cfg[key] = str(val) if isinstance(val, MSetSpec) else val
    cfg["deterministic"] = True
    return cfg


def _member(args):
    spec, n = args.spec, args.n
    fac = factorize(n)
    return {
        "set": str(spec),
        "n": n,
        "member": is_member(spec, n),
        "factorization": fac.as_list(),
        "evidence": factorization_evidence(spec, n),
    }, 0


def _represent(args):
    q = ReprQuery(args.n, args.spec, args.max_powers, args.base)
    w = is_representable(q)
    return {
        "set": str(q.spec),
        "n": q.n,
        "base": q.base,
        "max_powers": q.max_powers,
        "verdict": "NONREP" if w is None else "REP",
        "witness": None if w is None else w.to_dict(),
    }, 0


def _search(args):
    rep = find_nonrepresentable(args.spec, args.base, args.max_powers, args.lo, args.hi,
                                threads=args.threads)
    return rep.to_dict(), 0


def _verify(args):
    reports = run_law(args.law, spec=args.spec, k=args.k, p=args.p, lo=args.lo, hi=args.hi,
                      a_max=args.a_max, count=args.count)
    ok = all(r.passed for r in reports)
    return {"passed": ok, "reports": [r.to_dict() for r in reports]}, 0 if ok else 1


def _family(args):
    fam = theorem_family(args.p, args.count, args.verify_bound)
    ok = all(w.verified is not False for w in fam)
    return {"p": args.p, "passed": ok, "witnesses": [w.to_dict() for w in fam]}, 0 if ok else 1


def _census(args):
    rows = count_members(args.spec, args.checkpoints, threads=args.threads)
    header = ["x", "count", "normalized"]
    table = [[r.x, r.count, "nan" if r.normalized is None else repr(r.normalized)] for r in rows]
    data = {"set": str(args.spec), "rows": [dict(zip(header, (r.x, r.count, r.normalized))) for r in rows]}
    return data, 0, header, table


def _density(args):
    return {"k": args.k, "prime_limit": args.prime_limit,
            "value": partial_density_product(args.k, args.prime_limit)}, 0


def _class_census(args):
    rows = residue_class_census(args.k, args.t, args.x, threads=args.threads)
    header = ["residue", "popcount", "power_sums", "total", "representable", "nonrep_fraction"]
    table = [[r.residue, r.popcount, r.power_sums, r.total, r.representable, repr(r.nonrep_fraction)]
             for r in rows]
    data = {"k": args.k, "t": args.t, "x": args.x,
            "rows": [dict(zip(header, (r.residue, r.popcount, r.power_sums, r.total,
                                       r.representable, r.nonrep_fraction))) for r in rows]}
    return data, 0, header, table


_HANDLERS = {
    "member": _member,
    "represent": _represent,
    "search": _search,
    "verify": _verify,
    "family": _family,
    "census": _census,
    "density-product": _density,
    "class-census": _class_census,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        out = _HANDLERS[args.command](args)
    except (UsageError, ValueError, RangeError, TypeError) as exc:
        parser.subcommands[args.command].print_usage(sys.stderr)
        print(f"{TOOL} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    data, code = out[0], out[1]
    if args.format == "csv":
        writer = csv.writer(stdout, lineterminator="\n")
        writer.writerow(out[2])
        writer.writerows(out[3])
    else:
        envelope = {
            "tool": TOOL,
            "version": __version__,
            "command": args.command,
            "config": _config(args),
            "result": data,
        }
        stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
