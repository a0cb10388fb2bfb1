"""Operator tuples, trace-word fingerprints and equivalence decisions.

A symbol evaluated on k-forms ``q_1, ..., q_N`` gives bilinear forms
``sigma_i``. The first one fixes a reference form and the rest become
operators on E:

* general: ``g = sym(sigma_1)``, ``A_1 = g^-1 skew(sigma_1)``, ``A_i = g^-1 sigma_i``
* self-adjoint: ``g = sigma_1``, ``A_i = g^-1 sigma_i`` for i >= 2
* skew: ``omega = sigma_1``, ``A_i = omega^-1 sigma_i`` for i >= 2

GL(E) acts on such tuples by conjugation inside the isometry group of the
reference form, so traces of words in the operators and their adjoints are
invariants. The fingerprint collects them for every canonical word up to a
length cap.
"""

from __future__ import annotations

import enum
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import Sequence

from . import kernels, linalg
from .errors import (
    DegenerateForm,
    DegenerateSymbol,
    IndexOutOfRange,
    ModeMismatch,
    ShapeMismatch,
    Singular,
)
from .linalg import Matrix
from .symbols import Mode, SymbolTensor, evaluate
from .words import Word, default_cap, encode_words, enumerate_words, format_word

# words are split across threads only above this many
PARALLEL_THRESHOLD = 4096

RANDOM_Q1_TRIES = 20
RANDOM_Q1_SEED = 20190101


class UnreliableVerdict(UserWarning):
    """Raised as a warning when a tuple lacks a condition (*) pair."""


# -- bilinear-form operators ------------------------------------------------------------
def s_operator(b: Matrix) -> Matrix:
    """``b_s^-1 b_a``; raises :class:`Singular` if the symmetric part is singular."""
    bs, ba = linalg.split_parts(b)
    return linalg.mat_inverse(bs) @ ba


def h_operator(b: Matrix) -> Matrix:
    """``b^-t b``."""
    return linalg.inverse_transpose(b) @ b


def b_adjoint(A: Matrix, b: Matrix) -> Matrix:
    """Adjoint of A with respect to b: ``b^-t A^t b^t``.

    It satisfies ``b(A x, y) = b(x, A_b y)`` with ``b(x, y) = y^t b x``.
    """
    return linalg.inverse_transpose(b) @ A.T @ b.T


def form_defect(b: Matrix) -> str | None:
    """Reason b fails the general-mode gate, or None when it passes."""
    if linalg.det(b) == 0:
        return "form is singular"
    bs, _ = linalg.split_parts(b)
    if linalg.det(bs) == 0:
        return "symmetric part is singular"
    if not linalg.charpoly_is_squarefree(s_operator(b)):
        return "S-operator spectrum is not simple"
    return None


def is_nondegenerate_form(b: Matrix) -> bool:
    """b and its symmetric part invertible, and ``b_s^-1 b_a`` with simple spectrum."""
    b = linalg.matrix(b)
    if not b.is_square:
        return False
    return form_defect(b) is None


# -- tuples ---------------------------------------------------------------------
@dataclass(frozen=True)
class OperatorTuple:
    mode: Mode
    form: Matrix
    ops: tuple[Matrix, ...]
    labels: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.form.rows

    @cached_property
    def adjoints(self) -> tuple[Matrix, ...]:
        out = []
        for pos, A in enumerate(self.ops):
            if self.mode is Mode.GENERAL and pos == 0:
                out.append(-A)  # the S-operator is g-skew
            else:
                out.append(b_adjoint(A, self.form))
        return tuple(out)

    def letter(self, op_index: int, adjoint: bool) -> Matrix:
        if not 0 <= op_index < len(self.ops):
            raise IndexOutOfRange(f"operator index {op_index} outside 0..{len(self.ops) - 1}")
        return self.adjoints[op_index] if adjoint else self.ops[op_index]

    @cached_property
    def _scaled_letters(self) -> tuple[list, list[int]]:
        mats, dens = [], []
        for i in range(len(self.ops)):
            for adj in (False, True):
                M = self.letter(i, adj)
                d = reduce(lcm, (x.denominator for r in M.tolist() for x in r), 1)
                mats.append([[int(x * d) for x in r] for r in M.tolist()])
                dens.append(d)
        return mats, dens


def _check_mode_forms(forms: Sequence[Matrix], mode: Mode, m: int):
    if mode is Mode.SELF_ADJOINT and not all(f.is_symmetric() for f in forms):
        raise ModeMismatch("self-adjoint mode needs symmetric forms")
    if mode is Mode.SKEW:
        if m % 2:
            raise ModeMismatch(f"skew mode needs even fiber dimension, got m={m}")
        if not all(f.is_antisymmetric() for f in forms):
            raise ModeMismatch("skew mode needs antisymmetric forms")


def tuple_from_forms(forms: Sequence[Matrix], mode: Mode) -> OperatorTuple:
    """Operator tuple of already-evaluated bilinear forms ``sigma_1..sigma_N``."""
    mode = Mode(mode)
    forms = [linalg.matrix(f) for f in forms]
    if not forms:
        raise ValueError("need at least one form")
    m = forms[0].rows
    if any(f.shape != (m, m) for f in forms):
        raise ShapeMismatch("forms must all be m x m")
    _check_mode_forms(forms, mode, m)

    if mode is Mode.GENERAL:
        for i, b in enumerate(forms):
            why = form_defect(b)
            if why:
                raise DegenerateForm(i, why)
        g, ga = linalg.split_parts(forms[0])
        ginv = linalg.mat_inverse(g)
        ops = (ginv @ ga,) + tuple(ginv @ b for b in forms[1:])
        return OperatorTuple(mode, g, ops, tuple(range(1, len(forms) + 1)))

    ref = forms[0]
    if linalg.det(ref) == 0:
        raise DegenerateForm(0, "reference form is singular")
    rinv = linalg.mat_inverse(ref)
    ops = tuple(rinv @ b for b in forms[1:])
    return OperatorTuple(mode, ref, ops, tuple(range(2, len(forms) + 1)))


def build_tuple(sigma: SymbolTensor, qs: Sequence[Sequence], mode: Mode) -> OperatorTuple:
    """Evaluate sigma at the k-forms ``qs`` and build the operator tuple."""
    if not qs:
        raise ValueError("need at least one k-form")
    return tuple_from_forms([evaluate(sigma, q) for q in qs], mode)


# -- words and traces -----------------------------------------------------------
def trace_word(tup: OperatorTuple, w: Word) -> Fraction:
    """Exact trace of the product of the word's letters."""
    mats = [tup.letter(i, a) for i, a in w]
    P = mats[0]
    for X in mats[1:]:
        P = P @ X
    return P.trace()


def _evaluate_words(tup: OperatorTuple, words: Sequence[Word]) -> list[Fraction]:
    mats, dens = tup._scaled_letters
    letters, offsets = encode_words(words)
    total = len(words)
    workers = kernels.worker_count()
    if workers > 1 and total >= PARALLEL_THRESHOLD:
        step = -(-total // workers)
        bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda b: kernels.trace_words_exact(mats, letters, offsets, *b), bounds)
            nums = [x for part in parts for x in part]
    else:
        nums = kernels.trace_words_exact(mats, letters, offsets)
    out = []
    for w, num in zip(range(total), nums):
        den = 1
        for c in letters[offsets[w] : offsets[w + 1]]:
            den *= dens[c]
        out.append(Fraction(num, den))
    return out


class Flag(str, enum.Enum):
    EMPTY = "empty-tuple"


@dataclass(frozen=True)
class Fingerprint:
    """Ordered map from canonical words to exact traces, plus metadata."""

    entries: tuple[tuple[Word, Fraction], ...]
    mode: Mode
    m: int
    N: int
    cap: int
    signature: tuple[int, int] | None = None
    labels: tuple[int, ...] = ()
    q1_choice: str | None = None
    n: int | None = None
    k: int | None = None
    flags: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def same_invariants(self, other: "Fingerprint") -> bool:
        """Entry-by-entry equality plus matching shape, cap and signature."""
        return (
            self.mode == other.mode
            and self.m == other.m
            and self.N == other.N
            and self.cap == other.cap
            and self.signature == other.signature
            and self.entries == other.entries
        )

    def describe(self) -> list[str]:
        return [f"tr({format_word(w, self.labels or None)}) = {v}" for w, v in self.entries]


def fingerprint(tup: OperatorTuple, cap: int | None = None, real: bool = True, **meta) -> Fingerprint:
    """Traces of all canonical words of length <= cap (default ``2**m - 1``).

    With ``real`` the signature of the symmetric reference form is attached
    (general and self-adjoint modes).
    """
    cap = default_cap(tup.m) if cap is None else cap
    sig = None
    if real and tup.mode is not Mode.SKEW:
        sig = linalg.signature(tup.form)
    N = len(tup.ops) if tup.mode is Mode.GENERAL else len(tup.ops) + 1
    if not tup.ops:
        warnings.warn("operator tuple is empty; fingerprint carries no invariants", UnreliableVerdict)
        return Fingerprint((), tup.mode, tup.m, N, cap, sig, tup.labels, flags=(Flag.EMPTY.value,), **meta)
    words = enumerate_words(len(tup.ops), cap)
    values = _evaluate_words(tup, words)
    return Fingerprint(tuple(zip(words, values)), tup.mode, tup.m, N, cap, sig, tup.labels, **meta)


# -- regularity gates ---------------------------------------------------------------
def star_pair(tup: OperatorTuple) -> tuple[int, int] | None:
    """First pair of operators (labels >= 2) satisfying condition (*)."""
    from .verify import condition_star

    idx = [p for p, lab in enumerate(tup.labels) if lab >= 2]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            if condition_star(tup.ops[i], tup.ops[j], form=tup.form):
                return tup.labels[i], tup.labels[j]
    return None


def has_long_invariant(fp: Fingerprint) -> bool:
    """Some word of length >= 3 has a nonzero trace."""
    return any(len(w) >= 3 and v != 0 for w, v in fp.entries)


@dataclass(frozen=True)
class GateReport:
    star_pair: tuple[int, int] | None
    long_invariant: bool

    @property
    def passed(self) -> bool:
        return self.star_pair is not None and self.long_invariant

    def as_dict(self) -> dict:
        return {
            "condition_star_pair": list(self.star_pair) if self.star_pair else None,
            "long_invariant": self.long_invariant,
            "passed": self.passed,
        }


def gate(tup: OperatorTuple, fp: Fingerprint) -> GateReport:
    return GateReport(star_pair(tup), has_long_invariant(fp))


def tuples_equivalent(t1: OperatorTuple, t2: OperatorTuple, cap: int | None = None, real: bool = True) -> bool:
    """Exact fingerprint comparison of two tuples of the same shape.

    Emits :class:`UnreliableVerdict` when either tuple has no condition (*) pair.
    """
    if t1.mode != t2.mode or t1.m != t2.m or len(t1.ops) != len(t2.ops):
        raise ShapeMismatch("tuples differ in mode, dimension or length")
    if star_pair(t1) is None or star_pair(t2) is None:
        warnings.warn("no condition (*) pair; equality of fingerprints may not imply equivalence", UnreliableVerdict)
    return fingerprint(t1, cap, real).same_invariants(fingerprint(t2, cap, real))


# -- special tuples ---------------------------------------------------------------
def _candidates(N: int):
    basis = [tuple(Fraction(int(t == i)) for t in range(N)) for i in range(N)]
    for j in range(N):
        yield f"monomial:{j}", [basis[j]] + [b for i, b in enumerate(basis) if i != j]
    rng = random.Random(RANDOM_Q1_SEED)
    for _ in range(RANDOM_Q1_TRIES):
        c = [rng.randint(-3, 3) for _ in range(N)]
        if c[0] == 0:
            c[0] = 1
        q1 = tuple(Fraction(x) for x in c)
        yield "combination:" + ",".join(str(x) for x in c), [q1] + basis[1:]


def select_forms(sigmas: Sequence[SymbolTensor], mode: Mode) -> tuple[list, str]:
    """First candidate k-form tuple admissible for every symbol given.

    Candidates: each monomial moved to the front in turn, then a fixed seeded
    list of random q1 combinations replacing the first monomial.
    """
    mode = Mode(mode)
    s0 = sigmas[0]
    for s in sigmas:
        _check_mode_forms(s.values, mode, s.m)
    for choice, qs in _candidates(s0.N):
        try:
            for s in sigmas:
                build_tuple(s, qs, mode)
        except (DegenerateForm, Singular):
            continue
        return qs, choice
    raise DegenerateSymbol(f"no admissible q1 for {mode.value} mode")


def special_tuple(sigma: SymbolTensor, mode: Mode, qs=None) -> tuple[OperatorTuple, str]:
    if qs is None:
        qs, choice = select_forms([sigma], mode)
    else:
        choice = "given"
    return build_tuple(sigma, qs, mode), choice


def symbol_fingerprint(
    sigma: SymbolTensor, mode: Mode, cap: int | None = None, real: bool = True, qs=None
) -> Fingerprint:
    """Fingerprint of the special tuple built on the monomial basis."""
    tup, choice = special_tuple(sigma, Mode(mode), qs)
    return fingerprint(tup, cap, real, q1_choice=choice, n=sigma.n, k=sigma.k)


class Verdict(str, enum.Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    cap: int
    q1_choice: str
    gates: tuple[GateReport, GateReport]
    differing: int
    reason: str

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "cap": self.cap,
            "q1_choice": self.q1_choice,
            "gates": [g.as_dict() for g in self.gates],
            "differing_entries": self.differing,
            "reason": self.reason,
        }


def compare_symbols(
    s1: SymbolTensor, s2: SymbolTensor, mode: Mode, cap: int | None = None, real: bool = True
) -> Comparison:
    """Compare two symbols on a common special tuple and report the gates."""
    mode = Mode(mode)
    if (s1.n, s1.k, s1.m, s1.dual) != (s2.n, s2.k, s2.m, s2.dual):
        raise ShapeMismatch("symbols differ in (n, k, m, dual)")
    cap = default_cap(s1.m) if cap is None else cap
    qs, choice = select_forms([s1, s2], mode)
    t1, t2 = build_tuple(s1, qs, mode), build_tuple(s2, qs, mode)
    f1, f2 = fingerprint(t1, cap, real), fingerprint(t2, cap, real)
    gates = (gate(t1, f1), gate(t2, f2))
    differing = sum(a != b for a, b in zip(f1.entries, f2.entries))
    if f1.same_invariants(f2):
        verdict, reason = Verdict.EQUIVALENT, "all invariants agree"
    elif all(g.passed for g in gates):
        what = "signatures differ" if f1.signature != f2.signature else f"{differing} invariants differ"
        verdict, reason = Verdict.NOT_EQUIVALENT, what
    else:
        verdict, reason = Verdict.INCONCLUSIVE, "invariants differ but a non-degeneracy gate failed"
    return Comparison(verdict, cap, choice, gates, differing, reason)


def symbols_equivalent(
    s1: SymbolTensor, s2: SymbolTensor, mode: Mode, cap: int | None = None, real: bool = True
) -> Verdict:
    return compare_symbols(s1, s2, mode, cap, real).verdict
