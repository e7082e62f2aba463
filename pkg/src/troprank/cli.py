"""Command-line front end: ``troprank <subcommand> ...``.

Exit codes: 0 success, 1 a verification claim failed, 2 usage or input error.
Anywhere a matrix file is expected, ``builtin:<name>`` and ``-`` (stdin) work too.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, TextIO

from . import theory, verify
from .assignment import DEFAULT_CAP, TruncatedEnumeration, enumerate_minimizing
from .cells import EnumerationCapHit, NonsingularSubmatrix, cell_from_system, minor_equations
from .constructions import (
    BUILTIN_NAMES,
    SingularInput,
    append_combination_col,
    append_combination_row,
    border_PM,
    builtin,
    lemma1_coefficients,
    sym_append,
    sym_border_PM,
)
from .core import MatrixFormatError, NotSymmetricError, TropMatrix, format_rational, matrix_to_json, parse_matrix, serialize_matrix, to_rational
from .rank import STANDARD, SYMMETRIC, default_threads, nonsingular_submatrix, rank
from .tropoly import PolySyntaxError, first_failing_minor, generate_minors


class UsageError(Exception):
    pass


CONSTRUCTIONS = {
    "lemma1": "coefficients",
    "coefficients": "coefficients",
    "lemma2": "append-col",
    "append-col": "append-col",
    "append-row": "append-row",
    "lemma3": "border",
    "border": "border",
    "lemma4": "sym-append",
    "sym-append": "sym-append",
    "lemma5": "sym-border",
    "sym-border": "sym-border",
}


def load_matrix(source: str, stdin: TextIO | None = None) -> TropMatrix:
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):])
    if source == "-":
        return parse_matrix((stdin or sys.stdin).read())
    return parse_matrix(Path(source).read_text())


def parse_coeffs(text: str) -> dict[int, object]:
    """``"1:0,3:-1/2"`` -> {1: Fraction(0), 3: Fraction(-1, 2)}."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = part.partition(":")
        if not sep:
            raise UsageError(f"bad coefficient {part!r}; expected index:value")
        try:
            out[int(key)] = to_rational(val.strip())
        except ValueError as exc:
            raise UsageError(f"bad coefficient {part!r}: {exc}") from None
    if not out:
        raise UsageError("--coeffs must name at least one index")
    return out


class Emitter:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out

    def json(self, obj) -> None:
        self.out.write(json.dumps(obj, sort_keys=True) + "\n")

    def text(self, *lines: str) -> None:
        for line in lines:
            self.out.write(line + "\n")

    def emit(self, obj, lines: Callable[[], list[str]]) -> None:
        if self.fmt == "json":
            self.json(obj)
        else:
            self.text(*lines())

    def matrix(self, A: TropMatrix) -> None:
        if self.fmt == "json":
            self.json(matrix_to_json(A))
        else:
            self.out.write(serialize_matrix(A))


# --- subcommands -----------------------------------------------------------


def cmd_det(args, em: Emitter, stdin) -> int:
    A = load_matrix(args.file, stdin)
    res = enumerate_minimizing(A, cap=args.cap)
    obj = {
        "value": format_rational(res.value),
        "witnesses": [list(w) for w in res.witnesses],
        "truncated": res.truncated,
        "singular": res.is_singular,
    }
    if A.symmetric:
        obj["sym_witnesses"] = [[list(p) for p in mono] for mono in res.sym_witnesses]
        obj["sym_singular"] = res.is_sym_singular

    def lines():
        out = [f"tropdet {format_rational(res.value)}", f"witnesses {len(res.witnesses)}" + (" (truncated)" if res.truncated else "")]
        out += ["  " + " ".join(map(str, w)) for w in res.witnesses]
        if A.symmetric:
            out.append(f"symmetric monomials {len(res.sym_witnesses)}")
            out += ["  " + "*".join(f"X{i},{j}" for i, j in mono) for mono in res.sym_witnesses]
        return out

    em.emit(obj, lines)
    return 0


def cmd_rank(args, em: Emitter, stdin) -> int:
    A = load_matrix(args.file, stdin)
    res = rank(A, SYMMETRIC if args.symmetric else STANDARD, args.threads)
    em.emit(res.to_json(), lambda: [f"rank {res.rank}", f"witness {res.witness}", f"mode {res.mode}"])
    return 0


def cmd_celldim(args, em: Emitter, stdin) -> int:
    A = load_matrix(args.file, stdin)
    system = minor_equations(A, args.r, SYMMETRIC if args.symmetric else STANDARD, args.cap)
    res = cell_from_system(system)
    obj = res.to_json()
    if args.emit_equations:
        obj["system"] = system.to_json()

    def lines():
        out = [
            f"dimension {res.dimension}",
            f"ambient {res.ambient_dim}",
            f"equations {res.equation_count} (rank {res.system_rank})",
        ]
        if args.emit_equations and system.equations:
            out.append(system.to_text())
        return out

    em.emit(obj, lines)
    return 0


def cmd_construct(args, em: Emitter, stdin) -> int:
    kind = CONSTRUCTIONS[args.kind]
    A = load_matrix(args.file, stdin)
    if kind == "coefficients":
        sigma = None
        if args.sigma:
            try:
                sigma = tuple(int(x) for x in args.sigma.split(","))
            except ValueError:
                raise UsageError(f"bad --sigma {args.sigma!r}") from None
        coeffs = lemma1_coefficients(A, sigma)
        em.emit(
            {"coefficients": {str(k): format_rational(v) for k, v in sorted(coeffs.items())}},
            lambda: [f"{k} {format_rational(v)}" for k, v in sorted(coeffs.items())],
        )
        return 0
    if kind in ("append-col", "append-row", "sym-append"):
        if not args.coeffs:
            raise UsageError(f"{args.kind} needs --coeffs")
        coeffs = parse_coeffs(args.coeffs)
        fn = {"append-col": append_combination_col, "append-row": append_combination_row, "sym-append": sym_append}[kind]
        em.matrix(fn(A, coeffs))
        return 0
    fn = sym_border_PM if kind == "sym-border" else border_PM
    em.matrix(fn(A, args.P, args.M))
    return 0


def cmd_builtin(args, em: Emitter, stdin) -> int:
    em.matrix(builtin(args.name))
    return 0


def cmd_minors(args, em: Emitter, stdin) -> int:
    mode = SYMMETRIC if args.symmetric else STANDARD
    n = args.m if args.n is None else args.n
    for where, F in generate_minors(args.m, n, args.r, mode):
        if em.fmt == "json":
            em.json({"rows": list(where.rows), "cols": list(where.cols), "poly": str(F)})
        else:
            em.text(str(F))
    return 0


def cmd_member(args, em: Emitter, stdin) -> int:
    A = load_matrix(args.file, stdin)
    mode = SYMMETRIC if args.symmetric else STANDARD
    if not 1 <= args.r <= min(A.shape):
        raise UsageError(f"--r must lie in 1..{min(A.shape)}")
    if args.via_minors:
        failing = first_failing_minor(A, args.r, mode)
    else:
        failing = nonsingular_submatrix(A, args.r, mode, args.threads)
    obj = {"member": failing is None, "failing_minor": failing.to_json() if failing else None, "mode": mode, "r": args.r}
    em.emit(obj, lambda: ["true"] if failing is None else ["false", f"failing minor {failing}"])
    return 0


def cmd_gap(args, em: Emitter, stdin) -> int:
    if args.symmetric:
        if args.m is not None and args.m != args.n:
            raise UsageError("symmetric gaps take --n only")
        rep = theory.prevariety_lower_bound_symmetric(args.n, args.r)
    else:
        if args.m is None:
            raise UsageError("standard gaps need --m")
        rep = theory.prevariety_lower_bound_standard(args.m, args.n, args.r)
    em.emit(rep.to_json(), lambda: [rep.to_text()])
    return 0


def cmd_verify(args, em: Emitter, stdin) -> int:
    ids = [c for c in (args.claims or "").split(",") if c] if args.claims else None
    try:
        claims = verify.select(ids)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    reports = []
    for claim in claims:
        rep = verify.run_claim(claim)
        reports.append(rep)
        if em.fmt != "json":
            em.text(rep.to_text(args.timings))
            em.out.flush()
    notes = verify.notes() if not ids or any(c.claim_id.startswith("c07") for c in claims) else []
    passed = sum(r.passed for r in reports)
    if em.fmt == "json":
        em.json(
            {
                "claims": [r.to_json(args.timings) for r in reports],
                "notes": notes,
                "passed": passed,
                "total": len(reports),
                "all_pass": passed == len(reports),
            }
        )
    else:
        em.text(*("note: " + n for n in notes))
        em.text(f"{passed}/{len(reports)} claims passed")
    return 0 if passed == len(reports) else 1


# --- parser ------------------------------------------------------------------


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS defaults let the same flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads (default: all cores)")
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="output format (default: text)")
    p.add_argument("--cap", type=int, default=argparse.SUPPRESS, help=f"max minimizing bijections to enumerate (default: {DEFAULT_CAP})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="troprank", description="Tropical rank, determinantal prevarieties and dimension gaps.", parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=fn)
        return p

    p = add("det", cmd_det, "tropical determinant and all minimizing bijections")
    p.add_argument("file")

    p = add("rank", cmd_rank, "tropical rank with a nonsingular witness")
    p.add_argument("file")
    p.add_argument("--symmetric", action="store_true")

    p = add("celldim", cmd_celldim, "dimension of the linear cell cut out by the r x r minimizers")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--emit-equations", action="store_true")

    p = add("construct", cmd_construct, "apply a rank-preserving or rank-raising construction")
    p.add_argument("kind", choices=sorted(CONSTRUCTIONS), metavar="construction", help=", ".join(sorted(CONSTRUCTIONS)))
    p.add_argument("file")
    p.add_argument("--coeffs", help="index:value pairs, e.g. 1:0,3:-1/2")
    p.add_argument("--sigma", help="minimizing bijection as comma-separated 1-based images")
    p.add_argument("--P", type=to_rational, default=None)
    p.add_argument("--M", type=to_rational, default=None)

    p = add("builtin", cmd_builtin, "print a catalog matrix")
    p.add_argument("name", choices=BUILTIN_NAMES)

    p = add("minors", cmd_minors, "stream the r x r minor polynomials, one per line")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")

    p = add("member", cmd_member, "membership in the determinantal prevariety")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--via-minors", action="store_true", help="evaluate minor polynomials instead of scanning submatrices")

    p = add("gap", cmd_gap, "dimension gap report between variety and prevariety")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")

    p = add("verify-paper", cmd_verify, "run every registered claim and report pass/fail")
    p.add_argument("--claims", help="comma-separated claim ids or id prefixes")
    p.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-stability)")
    return parser


INPUT_ERRORS = (
    MatrixFormatError,
    NotSymmetricError,
    PolySyntaxError,
    NonsingularSubmatrix,
    EnumerationCapHit,
    TruncatedEnumeration,
    SingularInput,
    theory.NoClaim,
    UsageError,
    OSError,
    KeyError,
    IndexError,
    ValueError,
)


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.threads = getattr(args, "threads", None)
    if args.threads is None:
        args.threads = default_threads()
    args.format = getattr(args, "format", "text")
    args.cap = getattr(args, "cap", DEFAULT_CAP)
    if args.threads < 1 or args.cap < 2:
        err.write("troprank: --threads must be >= 1 and --cap >= 2\n")
        return 2
    try:
        return args.func(args, Emitter(args.format, out), stdin)
    except BrokenPipeError:
        return 0
    except NonsingularSubmatrix as exc:
        err.write(f"troprank: not in the prevariety: {exc}\n")
        return 2
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"troprank: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
