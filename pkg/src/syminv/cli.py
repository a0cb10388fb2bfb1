"""Command-line front end.

Exit codes: 0 success / equivalent, 1 not equivalent (or witness rejected),
2 error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linalg, procesi, verify
from .errors import ParseError, SyminvError
from .io import (
    dump_json,
    format_rational,
    matrix_to_strings,
    parse_symbol_document,
    serialize_fingerprint,
    serialize_symbol,
)
from .linalg import Matrix
from .symbols import DualKind, Mode, act_gl_e, act_gl_t, evaluate, random_symbol
from .words import default_cap

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CLI_CAP_LIMIT = 6


def cli_default_cap(m: int) -> int:
    return min(default_cap(m), CLI_CAP_LIMIT)


# -- literal parsing ---------------------------------------------------------------
def parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.strip().strip("[]").split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse vector {text!r}") from None


def parse_matrix(text: str) -> Matrix:
    """Matrix literal: ``"1,2;0,1/2"`` or JSON such as ``[[1,2],[0,"1/2"]]``."""
    text = text.strip()
    try:
        if text.startswith("["):
            rows = json.loads(text)
            return Matrix([[Fraction(str(x)) for x in r] for r in rows])
        return Matrix([parse_vector(r) for r in text.split(";")])
    except (ValueError, TypeError, ZeroDivisionError, json.JSONDecodeError):
        raise ParseError(f"cannot parse matrix {text!r}") from None


# -- helpers -------------------------------------------------------------------------
def _read_symbol(args, attr="symbol"):
    path = getattr(args, attr, None) or getattr(args, "infile", None)
    if path is None:
        raise ParseError("no symbol file given")
    with open(path, encoding="utf-8") as fh:
        return parse_symbol_document(fh.read())


def _mode(args, file_mode: Mode) -> Mode:
    return Mode(args.mode) if getattr(args, "mode", None) else file_mode


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc):
    _emit(args, dump_json(doc))


def _form_at(sigma, args) -> Matrix:
    if getattr(args, "q", None):
        return evaluate(sigma, parse_vector(args.q))
    return sigma.values[0]


# -- subcommands -------------------------------------------------------------------
def cmd_gen(args) -> int:
    sigma = random_symbol(args.n, args.k, args.m, DualKind(args.dual), Mode(args.mode), args.seed, args.bound)
    _emit(args, serialize_symbol(sigma, args.mode))
    return EXIT_OK


def cmd_eval(args) -> int:
    sigma, _ = _read_symbol(args)
    q = parse_vector(args.q)
    _emit_json(args, {"q": [format_rational(x) for x in q], "matrix": matrix_to_strings(evaluate(sigma, q))})
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    sigma, file_mode = _read_symbol(args)
    cap = args.cap if args.cap is not None else cli_default_cap(sigma.m)
    fp = procesi.symbol_fingerprint(sigma, _mode(args, file_mode), cap, real=not args.complex)
    _emit(args, serialize_fingerprint(fp))
    return EXIT_OK


def cmd_compare(args) -> int:
    s1, mode1 = _read_symbol(args, "first")
    s2, _ = _read_symbol(args, "second")
    cap = args.cap if args.cap is not None else cli_default_cap(s1.m)
    result = procesi.compare_symbols(s1, s2, _mode(args, mode1), cap, real=not args.complex)
    _emit_json(args, result.as_dict())
    return {
        procesi.Verdict.EQUIVALENT: EXIT_OK,
        procesi.Verdict.NOT_EQUIVALENT: EXIT_NOT_EQUIVALENT,
        procesi.Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[result.verdict]


def cmd_transform(args) -> int:
    sigma, mode = _read_symbol(args)
    if args.gl_t:
        sigma = act_gl_t(parse_matrix(args.gl_t), sigma)
    if args.gl_e:
        sigma = act_gl_e(parse_matrix(args.gl_e), sigma)
    _emit(args, serialize_symbol(sigma, mode))
    return EXIT_OK


def cmd_nondeg(args) -> int:
    sigma, file_mode = _read_symbol(args)
    mode = _mode(args, file_mode)
    cap = args.cap if args.cap is not None else cli_default_cap(sigma.m)
    doc = {"mode": mode.value, "cap": cap}
    if mode is Mode.GENERAL:
        doc["forms"] = [
            {"alpha": list(a), "defect": procesi.form_defect(v)} for a, v in zip(sigma.basis, sigma.values)
        ]
    try:
        tup, choice = procesi.special_tuple(sigma, mode)
    except SyminvError as exc:
        doc.update(special_tuple=None, error=str(exc), passed=False)
        _emit_json(args, doc)
        return EXIT_OK
    report = procesi.gate(tup, procesi.fingerprint(tup, cap, real=False))
    doc.update(special_tuple={"q1_choice": choice, "labels": list(tup.labels)}, **report.as_dict())
    _emit_json(args, doc)
    return EXIT_OK


def cmd_signature(args) -> int:
    sigma, _ = _read_symbol(args)
    sym, _ = linalg.split_parts(_form_at(sigma, args))
    pos, neg = linalg.signature(sym)
    _emit_json(args, {"positive": pos, "negative": neg})
    return EXIT_OK


def cmd_pfaffian(args) -> int:
    sigma, _ = _read_symbol(args)
    _emit_json(args, {"pfaffian": format_rational(linalg.pfaffian(_form_at(sigma, args)))})
    return EXIT_OK


def cmd_pencil(args) -> int:
    sigma, _ = _read_symbol(args)
    j = args.index - 1
    if not 0 <= j < sigma.N:
        raise ParseError(f"--index must lie in 1..{sigma.N}")
    poly = linalg.pfaffian_pencil(sigma.values[0], sigma.values[j])
    _emit_json(args, {"coefficients": [format_rational(c) for c in poly], "variable": "lambda"})
    return EXIT_OK


def cmd_stabilizer(args) -> int:
    sigma, file_mode = _read_symbol(args)
    mode = _mode(args, file_mode)
    tup, choice = procesi.special_tuple(sigma, mode)
    group = verify.SYMPLECTIC if mode is Mode.SKEW else verify.ORTHOGONAL
    dim = verify.stabilizer_dimension(tup.form, tup.ops, group)
    _emit_json(args, {"group": group, "q1_choice": choice, "dimension": dim})
    return EXIT_OK


def cmd_rank(args) -> int:
    sigma, file_mode = _read_symbol(args)
    cap = args.cap if args.cap is not None else cli_default_cap(sigma.m)
    report = verify.jacobian_report(sigma, _mode(args, file_mode), cap, args.step, args.tol)
    _emit_json(args, report.as_dict())
    return EXIT_OK


def cmd_witness(args) -> int:
    s1, _ = _read_symbol(args, "first")
    s2, _ = _read_symbol(args, "second")
    A1 = parse_matrix(args.gl_t) if args.gl_t else linalg.identity(s1.n)
    A2 = parse_matrix(args.gl_e) if args.gl_e else linalg.identity(s1.m)
    ok = verify.check_witness(s1, s2, A1, A2)
    _emit_json(args, {"witness": ok})
    return EXIT_OK if ok else EXIT_NOT_EQUIVALENT


# -- parser ----------------------------------------------------------------------
def _symbol_input(p):
    p.add_argument("symbol", nargs="?", help="symbol file")
    p.add_argument("--in", dest="infile", help="symbol file (alternative to the positional)")


def _modes(p):
    p.add_argument("--mode", choices=[m.value for m in Mode], help="override the file's mode")


def _cap(p):
    p.add_argument("--cap", type=int, help="word-length cap (default min(2^m - 1, 6))")


def _out(p):
    p.add_argument("-o", "--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syminv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random symbol")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="general")
    p.add_argument("--dual", choices=[d.value for d in DualKind], default="star")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bound", type=int, default=5, help="entries drawn from [-bound, bound]")
    _out(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate a symbol at a k-form")
    _symbol_input(p)
    p.add_argument("--q", required=True, help="k-form coefficients, e.g. 1,0,1/2")
    _out(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fingerprint", help="special-tuple trace invariants")
    _symbol_input(p)
    _modes(p)
    _cap(p)
    p.add_argument("--complex", action="store_true", help="omit the real signature")
    _out(p)
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("compare", help="decide equivalence of two symbols")
    p.add_argument("first")
    p.add_argument("second")
    _modes(p)
    _cap(p)
    p.add_argument("--complex", action="store_true", help="ignore the real signature")
    _out(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("transform", help="apply GL(T) and/or GL(E) elements")
    _symbol_input(p)
    p.add_argument("--gl-e", help="fiber matrix, e.g. '1,1;0,1'")
    p.add_argument("--gl-t", help="base matrix, applied before --gl-e")
    _out(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("nondeg", help="non-degeneracy gate report")
    _symbol_input(p)
    _modes(p)
    _cap(p)
    _out(p)
    p.set_defaults(func=cmd_nondeg)

    p = sub.add_parser("signature", help="inertia of the symmetric part of a form")
    _symbol_input(p)
    p.add_argument("--q", help="k-form (default: first monomial)")
    _out(p)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("pfaffian", help="Pfaffian of an antisymmetric form")
    _symbol_input(p)
    p.add_argument("--q1", action="store_true", help="use the first monomial (default)")
    p.add_argument("--q", help="k-form to evaluate at instead")
    _out(p)
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("pencil", help="Pf(sigma_1 - lambda sigma_j) coefficients")
    _symbol_input(p)
    p.add_argument("--index", type=int, default=2, help="1-based monomial index j (default 2)")
    _out(p)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("stabilizer", help="stabilizer dimension of the special tuple")
    _symbol_input(p)
    _modes(p)
    _out(p)
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("rank", help="numerical count of independent invariants")
    _symbol_input(p)
    _modes(p)
    _cap(p)
    p.add_argument("--step", type=float, default=1e-6)
    p.add_argument("--tol", type=float, default=1e-6)
    _out(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("witness", help="check a claimed (GL(T), GL(E)) witness")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--gl-t", help="base matrix (default identity)")
    p.add_argument("--gl-e", help="fiber matrix (default identity)")
    _out(p)
    p.set_defaults(func=cmd_witness)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SyminvError, OSError, ValueError) as exc:
        print(f"syminv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
