"""Command line interface.

Exit codes: 0 success (or every law reached its expected verdict), 1 usage,
parse or input error, 2 domain error, 3 a verification check failed.
"""

import argparse
import csv
import math
import sys

from .core import DeformParam, EvalPolicy, q_exp, q_ln
from .errors import DomainViolation, ExprError, InvalidDistribution, UnknownLaw
from .expr import EvalEnv, evaluate, parse_expr
from .laws import LAWS, SampleSpec, check_law, select_laws
from .nonextensive import EntropyParams, ProbDist, compose, product_dist, tsallis_entropy
from .ratio import InvalidChain, RatioChain

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_CHECK_FAILED = 3

ENTROPY_AGREEMENT = 1e-10


def fmt(value):
    """Shortest text that round-trips the double (at most 17 significant digits)."""
    return repr(float(value))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _caret_diagnostic(source, err):
    start, end = err.span if err.span is not None else (0, len(source))
    width = max(end - start, 1)
    return f"  {source}\n  {' ' * start}{'^' * width}"


def _error(message):
    print(f"error: {message}", file=sys.stderr)


def cmd_eval(args):
    bindings = {}
    for item in args.var:
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            bindings[name.strip()] = float(value)
        except ValueError:
            _error(f"--var expects NAME=VALUE, got {item!r}")
            return EXIT_USAGE
    try:
        p = DeformParam(args.a)
    except ValueError as exc:
        _error(str(exc))
        return EXIT_USAGE
    source = args.expr
    try:
        tree = parse_expr(source)
        value = evaluate(tree, EvalEnv(p, bindings, EvalPolicy(args.policy)))
    except ExprError as err:
        _error(f"{type(err).__name__}: {err}")
        print(_caret_diagnostic(source, err), file=sys.stderr)
        return EXIT_USAGE
    except DomainViolation as err:
        _error(f"{err.tag}: {err}")
        print(_caret_diagnostic(source, err), file=sys.stderr)
        return EXIT_DOMAIN
    print(fmt(value))
    return EXIT_OK


def cmd_laws(args):
    try:
        names = []
        for pattern in args.selector:
            names.extend(n for n in select_laws(pattern) if n not in names)
        spec = SampleSpec(seed=args.seed, count=args.count, a_range=(args.a_min, args.a_max))
    except UnknownLaw as exc:
        _error(f"unknown law {exc.args[0]!r}; known laws: {', '.join(LAWS)}")
        return EXIT_USAGE
    except ValueError as exc:
        _error(str(exc))
        return EXIT_USAGE
    all_ok = True
    for name in names:
        report = check_law(name, spec)
        all_ok &= report.ok
        print(report.summary())
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def cmd_ratio(args):
    try:
        chain = RatioChain(args.values)
    except InvalidChain as exc:
        _error(str(exc))
        return EXIT_USAGE
    ok = chain.agrees()
    print("steps:    " + ", ".join(fmt(y) for y in chain.steps()))
    print("composed: " + fmt(chain.composed()))
    print("direct:   " + fmt(chain.direct()))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_entropy(args):
    try:
        ep = EntropyParams(args.q, args.k)
        dists = [ProbDist.from_file(path) for path in args.files]
    except (InvalidDistribution, ValueError, OSError) as exc:
        _error(str(exc))
        return EXIT_USAGE
    try:
        entropies = [tsallis_entropy(d, ep) for d in dists]
        if len(dists) == 1:
            print(f"S = {fmt(entropies[0])}")
            return EXIT_OK
        s_a, s_b = entropies
        joint = tsallis_entropy(product_dist(*dists), ep)
        composed = compose(s_a, s_b, ep.lam)
    except DomainViolation as err:
        _error(f"{err.tag}: {err}")
        return EXIT_DOMAIN
    ok = math.isclose(joint, composed, rel_tol=ENTROPY_AGREEMENT, abs_tol=0.0)
    print(f"S_A = {fmt(s_a)}")
    print(f"S_B = {fmt(s_b)}")
    print(f"S_joint = {fmt(joint)}")
    print(f"composed = {fmt(composed)}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def grid(lo, hi, steps):
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps - 1)] + [hi]


def cmd_table(args):
    if args.steps < 2:
        _error("--steps must be at least 2")
        return EXIT_USAGE
    if not (math.isfinite(args.min) and math.isfinite(args.max)):
        _error("--min and --max must be finite")
        return EXIT_USAGE
    try:
        p = DeformParam(args.a)
    except ValueError as exc:
        _error(str(exc))
        return EXIT_USAGE
    func = q_exp if args.fn == "qexp" else q_ln
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["x", "value", "status"])
    for x in grid(args.min, args.max, args.steps):
        try:
            writer.writerow([fmt(x), fmt(func(p, x)), "ok"])
        except DomainViolation as err:
            writer.writerow([fmt(x), "", err.tag])
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="qalgebra", description="Deformed q-algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("--a", type=float, default=0.0, help="deformation parameter (default 0)")
    p.add_argument("--policy", choices=[m.value for m in EvalPolicy], default="strict")
    p.add_argument("--var", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("laws", help="check algebraic laws on seeded samples")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--a-min", type=float, default=-2.0)
    p.add_argument("--a-max", type=float, default=2.0)
    p.add_argument("selector", nargs="+", help="law name or glob, e.g. 'assoc_*'")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("ratio", help="compose successive growth ratios with +_1")
    p.add_argument("values", type=float, nargs="+")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("entropy", help="Tsallis entropy of one or two distributions")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("files", nargs="+", metavar="file")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("table", help="tabulate qexp or qln as CSV")
    p.add_argument("--fn", choices=["qexp", "qln"], required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "entropy" and len(args.files) > 2:
            parser.error("entropy takes one or two distribution files")
    except SystemExit as exc:
        return exc.code
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
