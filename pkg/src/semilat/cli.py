"""Command-line front end.

Exit status: 0 on success, 1 when a verdict fails, 2 on parse or
validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .clifford import CliffordSemigroup, clifford_verify
from .errors import ParseError, SemilatError
from .l1 import L1Vector, format_fraction, tensor_to_text, vector_from_text, vector_to_text
from .poset import height, local_finiteness_constant
from .schutz import (
    SchutzContext,
    certificate,
    diagonal,
    diagonal_bruteforce,
    mm_apply,
    schutz_apply,
    schutz_inverse_apply,
)
from .semilattice import FAMILIES, FiniteSemilattice, generate_family
from .textio import format_semilattice, parse_any

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args):
    family = getattr(args, "family", None)
    if family:
        name, n = family
        return generate_family(name, int(n), validate=not args.skip_validate)
    validate = not getattr(args, "skip_validate", False)
    name = None if args.input == "-" else args.input
    return parse_any(_read(args.input), name=name, validate=validate)


def _semilattice(args) -> FiniteSemilattice:
    S = _load(args)
    if isinstance(S, CliffordSemigroup):
        raise SemilatError(f"'{args.verb}' expects a semilattice, got a Clifford semigroup")
    return S


def cmd_validate(args, out):
    obj = _load(args)
    if isinstance(obj, CliffordSemigroup):
        out.write(f"valid clifford semigroup: {len(obj)} elements over {len(obj.L)} idempotents\n")
        return EXIT_OK
    S = obj
    out.write(f"valid semilattice: {len(S)} elements\n")
    out.write(f"zero {S.zero or '-'}\nidentity {S.identity or '-'}\n")
    out.write(f"local_finiteness {local_finiteness_constant(S.poset)}\nheight {height(S.poset)}\n")
    return EXIT_OK


def cmd_mobius(args, out):
    ctx = SchutzContext(_semilattice(args))
    for (y, x), m in ctx.mu.items():
        out.write(f"{y} {x} {format_fraction(m)}\n")
    return EXIT_OK


def cmd_schutz(args, out):
    ctx = SchutzContext(_semilattice(args))
    S = ctx.S
    if args.inverse or args.local:
        apply = mm_apply if args.local else schutz_inverse_apply
        carrier = ctx.target
    else:
        apply = schutz_apply
        carrier = S
    if args.vector:
        v = vector_from_text(carrier, _read(args.vector))
        out.write(vector_to_text(apply(ctx, v)))
        return EXIT_OK
    for x in S.elements:
        image = apply(ctx, L1Vector.basis(carrier, x))
        terms = " ".join(f"{s}:{format_fraction(c)}" for s, c in image.items())
        out.write(f"{x} -> {terms}\n")
    return EXIT_OK


def cmd_diagonal(args, out):
    ctx = SchutzContext(_semilattice(args))
    D = diagonal(ctx)
    out.write(tensor_to_text(D))
    out.write(f"# norm {format_fraction(D.l1_norm())}\n")
    if args.oracle:
        sol = diagonal_bruteforce(ctx.S, args.oracle_bound)
        ok = sol.unique and sol.diagonal == D
        out.write(f"# oracle {'agrees, unique' if ok else 'DISAGREES'}\n")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_certify(args, out):
    S = _semilattice(args)
    report = certificate(
        SchutzContext(S), oracle=args.oracle, oracle_bound=args.oracle_bound, jobs=args.jobs
    )
    out.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_gen(args, out):
    S = generate_family(args.name, args.n)
    out.write(format_semilattice(S))
    return EXIT_OK


def cmd_clifford_verify(args, out):
    G = _load(args)
    if not isinstance(G, CliffordSemigroup):
        G = CliffordSemigroup(G)
    verdicts = clifford_verify(G)
    ok = all(verdicts)
    if args.json:
        rec = {
            "size": len(G),
            "idempotents": len(G.L),
            "verdicts": [{"name": v.name, "passed": v.passed, "witness": v.witness} for v in verdicts],
            "passed": ok,
        }
        out.write(json.dumps(rec, indent=2, sort_keys=True) + "\n")
    else:
        out.write("".join(v.line() + "\n" for v in verdicts))
        out.write(f"result {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semilat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True)

    def with_input(sp, family=False):
        sp.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
        sp.add_argument("--skip-validate", action="store_true", help="trust generated input")
        if family:
            sp.add_argument(
                "--family", nargs=2, metavar=("NAME", "N"), help="use a generated family instead of input"
            )
        return sp

    with_input(sub.add_parser("validate", help="validate an input file"), family=True).set_defaults(
        func=cmd_validate
    )
    with_input(sub.add_parser("mobius", help="print the Möbius table"), family=True).set_defaults(
        func=cmd_mobius
    )
    sp = with_input(sub.add_parser("schutz", help="apply the Schützenberger map"), family=True)
    sp.add_argument("--inverse", action="store_true", help="apply the Möbius inverse")
    sp.add_argument("--local", action="store_true", help="invert downset by downset")
    sp.add_argument("--vector", help="file of '<element> <p>/<q>' lines to map")
    sp.set_defaults(func=cmd_schutz)

    sp = with_input(sub.add_parser("diagonal", help="print the unique diagonal"), family=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check by direct linear solve")
    sp.add_argument("--oracle-bound", type=int, default=6)
    sp.set_defaults(func=cmd_diagonal)

    sp = with_input(sub.add_parser("certify", help="compute and check all norm inequalities"), family=True)
    sp.add_argument("--json", action="store_true", help="machine-readable record")
    sp.add_argument("--oracle", action="store_true", help="cross-check the diagonal by direct solve")
    sp.add_argument("--oracle-bound", type=int, default=6)
    sp.add_argument("--jobs", type=int, default=1, help="worker threads for per-basis loops")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("gen", help="write a generated family in the input format")
    sp.add_argument("name", choices=sorted(FAMILIES))
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_gen)

    sp = with_input(sub.add_parser("clifford-verify", help="run every Clifford semigroup check"))
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_clifford_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (ParseError, SemilatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
