"""theta-pos command line: verify, cr, positivity, rep-build."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .crossratio import CrossRatioError, cr
from .exactlinalg import scalar_str
from .flags import FlagError, PartialFlag
from .harness import SUITES, UsageError, canonical, cmd_verify
from .positivity import PositivityError, certify_tuple
from .pqspace import FormError, build_form
from .reps import RepError, default_base, fuchsian_locus_rep

EX_USAGE = 64  # exit 2 is reserved for "only UNDECIDED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, "%s: error: %s\n" % (self.prog, message))


def _load_flags(path: str) -> list[PartialFlag]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    items = data["flags"] if isinstance(data, dict) else data
    if not isinstance(items, list) or not items:
        raise UsageError("expected a list of flags")
    form = build_form(int(items[0]["p"]), int(items[0]["q"]))
    out = []
    for item in items:
        if (int(item["p"]), int(item["q"])) != (form.p, form.q):
            raise UsageError("flags have different signatures")
        out.append(PartialFlag.from_json(item, form))
    return out


def _emit(obj, text: str | None = None, as_text: bool = False) -> None:
    print(text if as_text and text is not None else canonical(obj))


def run_verify(args) -> int:
    suite = args.suite_opt or args.suite
    if suite is None:
        raise UsageError("name a suite: %s" % ", ".join(SUITES))
    rep = cmd_verify(suite, args.p, args.q, args.trials, args.seed, args.tol, timing=args.timing)
    out = rep.to_json()
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "statement", "lhs", "rhs", "margin", "verdict"])
            for t in rep.trials:
                w.writerow([t["index"], t["statement"], t["lhs"], t["rhs"], t["margin"], t["verdict"]])
    c = out["summary"]
    _emit(out, "%s (%d,%d) seed=%d: %d PASS, %d FAIL, %d UNDECIDED"
          % (suite, args.p, args.q, args.seed, c["PASS"], c["FAIL"], c["UNDECIDED"]), args.text)
    return rep.exit_code()


def run_cr(args) -> int:
    flags = _load_flags(args.file)
    if len(flags) != 4:
        raise UsageError("cr needs four flags (V1, W1, W2, V2)")
    k = args.k
    if not 1 <= k <= flags[0].form.p - 1:
        raise UsageError("k must lie in 1..%d" % (flags[0].form.p - 1))
    val = cr(*(fl.level(k) for fl in flags))
    display = "%s (%r)" % (scalar_str(val), float(val))
    _emit({"k": k, "cr": scalar_str(val), "decimal": float(val), "display": display}, display, args.text)
    return 0


def run_positivity(args) -> int:
    files = [a for a in args.file if a != "check"]
    if len(files) != 1:
        raise UsageError("usage: positivity [check] FILE")
    flags = _load_flags(files[0])
    if len(flags) < 3:
        raise UsageError("positivity needs at least three flags")
    v = certify_tuple(flags)
    out = v.to_json()
    _emit(out, str(out["result"]), args.text)
    return 0


def run_rep_build(args) -> int:
    base = default_base(Fraction(args.trace_a), Fraction(args.trace_b))
    rep = fuchsian_locus_rep(base, args.p, args.q)
    _emit(rep.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="theta-pos", description="Exact checks for theta-positivity in PO(p,q).")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(p, sig=True):
        if sig:
            p.add_argument("--p", type=int, default=2)
            p.add_argument("--q", type=int, default=3)
        p.add_argument("--json", action="store_true", help="JSON output (the default)")
        p.add_argument("--text", action="store_true", help="one-line rendering of the JSON")

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("suite", nargs="?", choices=SUITES)
    v.add_argument("--suite", dest="suite_opt", choices=SUITES)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-6, help="eigenvalue tolerance")
    v.add_argument("--timing", action="store_true", help="add wall time (breaks byte stability)")
    v.add_argument("--csv", help="also write the rows as CSV")
    common(v)
    v.set_defaults(func=run_verify)

    c = sub.add_parser("cr", help="cross ratio of four flags at level k")
    c.add_argument("file")
    c.add_argument("--k", type=int, default=1)
    common(c, sig=False)
    c.set_defaults(func=run_cr)

    pz = sub.add_parser("positivity", help="certify positivity of a flag tuple")
    pz.add_argument("file", nargs="+", metavar="[check] FILE")
    common(pz, sig=False)
    pz.set_defaults(func=run_positivity)

    r = sub.add_parser("rep-build", help="build a Fuchsian-locus representation")
    r.add_argument("--trace-a", default="5/2")
    r.add_argument("--trace-b", default="17/4")
    common(r)
    r.set_defaults(func=run_rep_build)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormError, FlagError, CrossRatioError, PositivityError, RepError,
            KeyError, ValueError) as exc:
        print("theta-pos: error: %s" % exc, file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
