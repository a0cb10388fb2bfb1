"""JSON text formats for symbols and fingerprints.

Rationals are always written as strings (``"3"``, ``"-1/2"``) so nothing
passes through floating point. Output is byte-deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvariantViolation, ParseError
from .linalg import Matrix
from .procesi import Fingerprint
from .symbols import DualKind, Mode, SymbolTensor, basis_size, monomial_basis


def _encode(x, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, (list, tuple)):
        if not any(isinstance(v, (dict, list, tuple)) for v in x):
            return json.dumps(list(x), ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _encode(v, depth + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dump_json(doc) -> str:
    """Indented JSON with innermost scalar lists kept on one line."""
    return _encode(doc, 0) + "\n"


_dump = dump_json


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"{where}: expected a rational string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise ParseError(f"{where}: expected a rational string, got {x!r}")
    try:
        return Fraction(x.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse {x!r} as p/q") from None


def _field(doc: dict, name: str, kind, where: str = ""):
    if name not in doc:
        raise ParseError(f"{where}missing field {name!r}")
    value = doc[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"{where}field {name!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise ParseError(f"{where}field {name!r} has the wrong type")
    return value


def _rational_matrix(rows, m: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != m or any(
        not isinstance(r, list) or len(r) != m for r in rows
    ):
        raise InvariantViolation(f"{where}: matrix must be {m}x{m}")
    return Matrix([[parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)])


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def matrix_to_strings(M: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in M.tolist()]


# -- symbols ----------------------------------------------------------------------
def parse_symbol_document(text: str) -> tuple[SymbolTensor, Mode]:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise ParseError("symbol document must be a JSON object")
    n = _field(doc, "n", int)
    k = _field(doc, "k", int)
    m = _field(doc, "m", int)
    if n < 1 or k < 1 or m < 1:
        raise InvariantViolation("n, k and m must be positive")
    try:
        dual = DualKind(_field(doc, "dual", str))
        mode = Mode(doc.get("mode", "general"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if doc.get("field", "rational") != "rational":
        raise ParseError(f"unsupported field {doc['field']!r}")
    entries = _field(doc, "entries", list)
    basis = monomial_basis(n, k)
    slot = {a: i for i, a in enumerate(basis)}
    values = [None] * basis_size(n, k)
    for e, entry in enumerate(entries):
        where = f"entries[{e}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: expected an object")
        alpha = _field(entry, "alpha", list, f"{where}: ")
        if len(alpha) != n or any(isinstance(a, bool) or not isinstance(a, int) or a < 0 for a in alpha):
            raise InvariantViolation(f"{where}.alpha: need {n} non-negative integers, got {alpha}")
        if sum(alpha) != k:
            raise InvariantViolation(f"{where}.alpha: degree {sum(alpha)} differs from k={k}")
        i = slot[tuple(alpha)]
        if values[i] is not None:
            raise InvariantViolation(f"{where}.alpha: duplicate exponent {alpha}")
        values[i] = _rational_matrix(_field(entry, "matrix", list, f"{where}: "), m, f"{where}.matrix")
    zero = Matrix([[0] * m for _ in range(m)])
    values = [zero if v is None else v for v in values]
    return SymbolTensor(n, k, m, dual, tuple(values)), mode


def parse_symbol(text: str) -> SymbolTensor:
    return parse_symbol_document(text)[0]


def serialize_symbol(sigma: SymbolTensor, mode: Mode = Mode.GENERAL) -> str:
    doc = {
        "n": sigma.n,
        "k": sigma.k,
        "m": sigma.m,
        "dual": sigma.dual.value,
        "mode": Mode(mode).value,
        "field": "rational",
        "entries": [
            {"alpha": list(alpha), "matrix": matrix_to_strings(v)}
            for alpha, v in zip(sigma.basis, sigma.values)
        ],
    }
    return _dump(doc)


# -- fingerprints -----------------------------------------------------------------
def serialize_fingerprint(fp: Fingerprint) -> str:
    doc = {
        "metadata": {
            "n": fp.n,
            "k": fp.k,
            "m": fp.m,
            "N": fp.N,
            "mode": fp.mode.value,
            "cap": fp.cap,
            "q1_choice": fp.q1_choice,
            "signature": list(fp.signature) if fp.signature is not None else None,
            "labels": list(fp.labels),
            "flags": list(fp.flags),
        },
        "entries": [
            {"word": [[i, int(a)] for i, a in w], "value": format_rational(v)} for w, v in fp.entries
        ],
    }
    return _dump(doc)


def parse_fingerprint(text: str) -> Fingerprint:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise ParseError("fingerprint document must be a JSON object")
    meta = _field(doc, "metadata", dict)
    rows = _field(doc, "entries", list)
    entries = []
    for e, row in enumerate(rows):
        where = f"entries[{e}]"
        if not isinstance(row, dict):
            raise ParseError(f"{where}: expected an object")
        word = _field(row, "word", list, f"{where}: ")
        try:
            w = tuple((int(i), bool(a)) for i, a in word)
        except (TypeError, ValueError):
            raise ParseError(f"{where}.word: expected [[index, adj], ...]") from None
        entries.append((w, parse_rational(_field(row, "value", str, f"{where}: "), f"{where}.value")))
    sig = meta.get("signature")
    try:
        mode = Mode(_field(meta, "mode", str, "metadata: "))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return Fingerprint(
        entries=tuple(entries),
        mode=mode,
        m=_field(meta, "m", int, "metadata: "),
        N=_field(meta, "N", int, "metadata: "),
        cap=_field(meta, "cap", int, "metadata: "),
        signature=tuple(sig) if sig is not None else None,
        labels=tuple(meta.get("labels", ())),
        q1_choice=meta.get("q1_choice"),
        n=meta.get("n"),
        k=meta.get("k"),
        flags=tuple(meta.get("flags", ())),
    )
