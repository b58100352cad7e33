"""Command-line front end.

Map arguments are a spec file path or ``fixture:NAME``.  States are written
as p-adic literals ``<p>^<n>:<digits, most significant first>`` joined by
commas for several coordinates, e.g. ``2^4:1101`` or ``2^2:01,2^2:11``.

Exit codes: 0 pass, 1 property failure, 2 parse error, 3 state space too large.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import analysis
from .dsl import SpecError, parse
from .fixtures import FIXTURES, get_fixture
from .interleave import decode, encode
from .maps import CompatibleMap
from .padic import PAdicVec, StateSpaceError, as_state, parse_vec
from .transfer import PreconditionError, lift, theorem_ladder, verify_theorem
from .twist import NotTransitiveError, orbit_coords

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ParseFailure(Exception):
    pass


def load_map(ref: str) -> CompatibleMap:
    if ref.startswith("fixture:"):
        try:
            return get_fixture(ref[len("fixture:"):])
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    try:
        text = Path(ref).read_text()
    except OSError as exc:
        raise UsageError(f"{ref}: {exc.strerror}") from None
    try:
        return parse(text)
    except SpecError as exc:
        raise ParseFailure(f"{ref}:{exc}") from None


def load_state(text: str | None, f: CompatibleMap, n: int) -> tuple[int, ...]:
    if text is None:
        return (0,) * f.k
    try:
        vec = parse_vec(text)
        if vec.k != f.k:
            raise ValueError(f"state has {vec.k} coordinates, map has {f.k}")
        return as_state(vec, f.p, n)
    except ValueError as exc:
        raise UsageError(f"bad state {text!r}: {exc}") from None


def fmt_state(state, p: int, n: int) -> str:
    return str(PAdicVec.from_ints(state, p, n))


def cmd_check(args, out) -> int:
    f = load_map(args.spec)
    N = args.max_level or analysis.default_ladder(f.p, f.k)
    wanted = [c.strip() for c in args.checks.split(",") if c.strip()]
    builders = {
        "compatible": analysis.compatibility_ladder,
        "bijective": analysis.measure_preservation_ladder,
        "transitive": analysis.ergodicity_ladder,
    }
    unknown = set(wanted) - set(builders)
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(sorted(unknown))}")
    ok = True
    for i, name in enumerate(wanted):
        cert = builders[name](f, N)
        if i:
            print(file=out)
        print(cert.render(), file=out)
        ok &= cert.passed
    return EXIT_OK if ok else EXIT_FAIL


def write_tables(path: Path, G: CompatibleMap, k: int, N: int) -> None:
    with path.open("w") as fh:
        for n in range(1, N + 1):
            table = G.table(k * n)
            fh.write(f"{G.p} 1 {k * n}\n")
            fh.write(" ".join(str(v) for v in table.tolist()) + "\n")


def cmd_convert(args, out) -> int:
    F = load_map(args.spec)
    G1 = load_map(args.target)
    N = args.max_level or theorem_ladder(F.p, F.k)
    try:
        report = verify_theorem(F, G1, N)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=out)
        if exc.certificate is not None:
            print(exc.certificate.render(), file=out)
        return EXIT_FAIL
    print(str(report.twist), file=out)
    G = lift(F, report.twist)
    if args.output != "-":
        write_tables(Path(args.output), G, F.k, N)
        print(f"tables: {args.output} (levels {F.p}^{F.k}..{F.p}^{F.k * N})", file=out)
    print(report.render(), file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_orbit(args, out) -> int:
    f = load_map(args.spec)
    n = args.level
    twist_k = args.twist_k or f.k * n
    state = load_state(args.start, f, n)
    steps = args.steps if args.steps is not None else f.p ** (f.k * n)
    try:
        orbit_coords(f, state, twist_k, n)
        coords = True
    except (NotTransitiveError, ValueError) as exc:
        print(f"# orbit coordinates unavailable: {exc}", file=out)
        coords = False
    for t in range(steps):
        line = f"{t}  {fmt_state(state, f.p, n)}"
        if coords:
            oc = orbit_coords(f, state, twist_k, n)
            line += f"  base={fmt_state(oc.base, f.p, n)}  j={oc.index}"
        print(line, file=out)
        state = f(state, n)
    return EXIT_OK


def cmd_keystream(args, out) -> int:
    f = load_map(args.spec)
    n, s = args.level, args.out_digits
    if not 1 <= s <= n:
        raise UsageError("--out-digits must lie in 1..level")
    p, k = f.p, f.k
    period = p ** (k * n)
    words = period if args.words is None else args.words
    table = f.table(n).tolist()
    x = encode(load_state(args.seed, f, n), p, n)
    mod = p**s
    counts = [Counter() for _ in range(k)]
    sep = "" if p <= 10 else "."
    for t in range(max(words, period)):
        vals = [v % mod for v in decode(x, p, k, n)]
        if t < period:
            for j, v in enumerate(vals):
                counts[j][v] += 1
        if t < words:
            digits = [sep.join(str(d) for d in reversed(_digits(v, p, s))) for v in vals]
            print(",".join(digits), file=out)
        x = table[x]
    expected = period // mod
    balanced = all(c[v] == expected for c in counts for v in range(mod))
    print(f"# period {period}, {s} digit(s) per coordinate, expected count {expected}", file=out)
    for j, c in enumerate(counts):
        body = " ".join(f"{v}:{c[v]}" for v in range(mod))
        print(f"# x{j}: {body}", file=out)
    print(f"# balanced: {'yes' if balanced else 'no'}", file=out)
    return EXIT_OK if balanced else EXIT_FAIL


def _digits(v: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        v, d = divmod(v, p)
        out.append(d)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padyn", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="compatibility, bijectivity and transitivity ladders")
    c.add_argument("spec")
    c.add_argument("--max-level", type=int)
    c.add_argument("--checks", default="compatible,bijective,transitive")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("convert", help="solve the twist and lift a map on Z_p^k to Z_p")
    c.add_argument("spec")
    c.add_argument("--target", required=True, help="map on Z_p the lift must agree with mod p^k")
    c.add_argument("--max-level", type=int)
    c.add_argument("--output", default="lifted_tables.txt", help="table file, '-' to skip")
    c.set_defaults(func=cmd_convert)

    c = sub.add_parser("orbit", help="list an orbit with its orbit coordinates")
    c.add_argument("spec")
    c.add_argument("--start")
    c.add_argument("--level", type=int, default=2)
    c.add_argument("--steps", type=int)
    c.add_argument("--twist-k", type=int, help="residue space exponent (default: arity * level)")
    c.set_defaults(func=cmd_orbit)

    c = sub.add_parser("keystream", help="emit low digits along an orbit and count symbols")
    c.add_argument("spec")
    c.add_argument("--level", type=int, default=3)
    c.add_argument("--words", type=int)
    c.add_argument("--out-digits", type=int, default=1)
    c.add_argument("--seed")
    c.set_defaults(func=cmd_keystream)

    sub.add_parser("fixtures", help="list built-in fixtures").set_defaults(
        func=lambda args, out: print("\n".join(sorted(FIXTURES)), file=out) or EXIT_OK
    )
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StateSpaceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
