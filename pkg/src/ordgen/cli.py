"""Command-line front end: counts, oracles, spec analysis, densities, tables.

Exit codes: 0 success, 2 usage or invalid input, 3 unsupported exact rank,
4 oracle budget exceeded, 5 a prime needs explicit local data.  Machine
format output is canonical JSON (sorted keys, no whitespace) and parses
back byte-identically.
"""

from __future__ import annotations

import argparse
import sys

from .counting import (
    gen_count_exact,
    gen_count_lower,
    gen_count_power,
    gen_count_twisted,
    gen_count_twisted_lower,
)
from .errors import (
    BudgetExceeded,
    ExceptionalPrimeNeedsOverride,
    OrdgenError,
    SpecError,
    UnsupportedRank,
)
from .finalg import (
    FiniteAlgebra,
    brute_gen_count,
    matrix_algebra,
    product_algebra,
    sample_gen_fraction,
    truncated_local_algebra,
)
from .finfield import factorize
from .orderspec import load_spec
from .solver import (
    density,
    density_text,
    make_quaternion_spec,
    quaternion_example,
    quaternion_table_text,
    render_json,
    render_text,
    report,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_BUDGET = 4
EXIT_NEEDS_DATA = 5


class _Cursor:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise SpecError(f"expected '{ch}' at position {self.pos} in algebra expression")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise SpecError(f"expected an integer at position {start} in algebra expression")
        return int(self.text[start : self.pos])


def _parse_expr(cur: _Cursor) -> FiniteAlgebra:
    head = cur.word()
    cur.expect("(")
    if head == "M":
        n = cur.integer()
        cur.expect(",")
        q = cur.integer()
        r = 1
        if cur.peek() == ";":
            cur.expect(";")
            if cur.word() != "r":
                raise SpecError("matrix option must be r=<int>")
            cur.expect("=")
            r = cur.integer()
        cur.expect(")")
        return matrix_algebra(n, q, r)
    if head == "TW":
        params = {}
        while True:
            key = cur.word()
            if key not in ("q", "f", "m", "s", "e") or key in params:
                raise SpecError(f"bad twisted parameter {key!r}")
            cur.expect("=")
            params[key] = cur.integer()
            if cur.peek() != ",":
                break
            cur.expect(",")
        cur.expect(")")
        for required in ("q", "f", "m"):
            if required not in params:
                raise SpecError(f"twisted algebra needs {required}=")
        return truncated_local_algebra(
            params["q"], params["f"], params["m"], params.get("s", 1), params.get("e", 1)
        )
    if head == "P":
        left = _parse_expr(cur)
        cur.expect(",")
        right = _parse_expr(cur)
        cur.expect(")")
        return product_algebra(left, right)
    raise SpecError(f"unknown algebra constructor {head!r} (use M, TW, or P)")


def parse_algebra(text: str) -> FiniteAlgebra:
    """Parse 'M(n,q)', 'M(n,q;r=R)', 'TW(q=..,f=..,m=..[,s=..][,e=..])', 'P(a,b)'."""
    cur = _Cursor(text)
    alg = _parse_expr(cur)
    cur.skip_ws()
    if cur.pos != len(text):
        raise SpecError(f"trailing input at position {cur.pos} in algebra expression")
    return alg


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from exc


def _emit(args, text_value: str, machine_doc) -> None:
    if args.format == "machine":
        print(render_json(machine_doc))
    else:
        print(text_value)


def _is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorize(q)) == 1


def _cmd_count(args) -> int:
    if not _is_prime_power(args.q):
        print(f"error: q={args.q} is not a prime power", file=sys.stderr)
        return EXIT_USAGE
    doc = {"command": "count", "k": args.k, "n": args.n, "q": args.q, "r": args.r, "m": args.m}
    if args.m > 1:
        value = gen_count_power(args.k, args.n, args.q, args.r, args.m)
        doc["value"] = value
        _emit(args, str(value), doc)
        return EXIT_OK
    if args.n <= 3:
        value = (
            gen_count_twisted(args.k, args.n, args.q, args.r)
            if args.r > 1
            else gen_count_exact(args.k, args.n, args.q)
        )
        doc["value"] = value
        _emit(args, str(value), doc)
        return EXIT_OK
    if args.exact:
        raise UnsupportedRank(f"no exact closed form for n={args.n}")
    if args.r > 1:
        lower = gen_count_twisted_lower(args.k, args.n, args.q, args.r)
    else:
        lower = gen_count_lower(args.k, args.n, args.q).lower
    doc["lower"] = lower
    doc["value"] = None
    _emit(args, f">= {lower}", doc)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    alg = parse_algebra(args.alg)
    doc = {"command": "oracle", "alg": args.alg, "k": args.k}
    if args.samples is None:
        value = brute_gen_count(alg, args.k, budget=args.budget, workers=args.workers)
        doc["value"] = value
        _emit(args, str(value), doc)
        return EXIT_OK
    if args.seed is None:
        print("error: --seed is required with --samples", file=sys.stderr)
        return EXIT_USAGE
    est = sample_gen_fraction(
        alg, args.k, args.samples, seed=args.seed, budget=args.budget, workers=args.workers
    )
    doc.update(
        samples=est.samples,
        hits=est.hits,
        seed=est.seed,
        fraction=f"{est.hits}/{est.samples}",
        ci_low=repr(est.ci_low),
        ci_high=repr(est.ci_high),
    )
    text = (
        f"estimate {est.hits}/{est.samples} = {est.fraction:.6f}  "
        f"(95% CI [{est.ci_low:.6f}, {est.ci_high:.6f}], seed {est.seed})"
    )
    _emit(args, text, doc)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    spec = load_spec(args.spec)
    rep = report(spec, density_k=args.density_k, density_bound=args.bound)
    if args.format == "machine":
        print(render_json(rep))
    else:
        print(render_text(rep))
    return EXIT_OK


def _cmd_density(args) -> int:
    spec = load_spec(args.spec)
    interval = density(spec, args.k, args.bound)
    if args.format == "machine":
        print(render_json(interval))
    else:
        print(density_text(interval))
    return EXIT_OK


def _cmd_quaternion(args) -> int:
    make_quaternion_spec(args.ramified)  # validate the prime list eagerly
    table = quaternion_example(args.ramified, args.mmax)
    if args.format == "machine":
        print(render_json(table))
    else:
        print(quaternion_table_text(table))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordgen",
        description="Generator counts for finite algebras and maximal orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "machine"), default="text")

    p = sub.add_parser("count", help="closed-form generating counts")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--exact", action="store_true", help="refuse bounds: exact value or exit 3")
    common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("oracle", help="exhaustive or sampled counts on explicit algebras")
    p.add_argument("--alg", required=True, help="M(n,q), M(n,q;r=R), TW(q=,f=,m=[,s=][,e=]), P(a,b)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--samples", type=_positive)
    p.add_argument("--seed", type=_nonnegative)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--workers", type=_positive, default=1)
    common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("analyze", help="verdict and report for an order spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--density-k", type=_positive, dest="density_k")
    p.add_argument("--bound", type=_positive)
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("density", help="certified Euler-product interval for a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--bound", type=_positive)
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("quaternion", help="h(m) table for powers of a quaternion order")
    p.add_argument("--ramified", type=_prime_list, required=True)
    p.add_argument("--mmax", type=_positive, required=True)
    common(p)
    p.set_defaults(func=_cmd_quaternion)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnsupportedRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ExceptionalPrimeNeedsOverride as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEEDS_DATA
    except (OrdgenError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
