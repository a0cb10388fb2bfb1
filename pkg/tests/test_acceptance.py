"""Acceptance gate: one check per criterion, each printed as a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python -m tests.test_acceptance``.
"""

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from syminv import linalg, procesi, verify
from syminv.cli import run
from syminv.io import parse_symbol_document, serialize_symbol
from syminv.linalg import Matrix, identity
from syminv.procesi import Verdict, b_adjoint, h_operator, s_operator, symbol_fingerprint, symbols_equivalent
from syminv.symbols import DualKind, Mode, act_gl_e, random_symbol

from .conftest import ACCEPTANCE_RESULTS, rand_invertible, rand_matrix, rand_rational, rand_skew

SHAPES = {Mode.GENERAL: (2, 2, 2), Mode.SELF_ADJOINT: (2, 2, 2), Mode.SKEW: (2, 2, 4)}
CAPS = {2: 3, 4: 4}


def record(key, ok, detail):
    ACCEPTANCE_RESULTS[key] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
    return ok, detail


# 1 ------------------------------------------------------------------------------
def criterion_1():
    rng = random.Random(101)
    start = time.perf_counter()
    bad = Counter()
    for mode, (n, k, m) in SHAPES.items():
        for seed in range(100):
            s = random_symbol(n, k, m, mode=mode, seed=seed)
            A = rand_invertible(rng, m)
            cap = CAPS[m]
            if symbol_fingerprint(act_gl_e(A, s), mode, cap) != symbol_fingerprint(s, mode, cap):
                bad[mode.value] += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return record("1 GL(E)-invariance", ok, f"mismatches {dict(bad) or 0} over 300 symbols, {elapsed:.1f}s (< 60s)")


# 2 ------------------------------------------------------------------------------
def _generic_form(rng, m):
    while True:
        b = rand_matrix(rng, m)
        if linalg.det(b) and linalg.det(linalg.split_parts(b)[0]):
            return b


def criterion_2():
    rng = random.Random(102)
    fails = Counter()
    trials = Counter()
    while any(trials[key] < 100 for key in ("cayley", "preserve", "involution", "antidual")):
        m = rng.choice((2, 3))
        b = _generic_form(rng, m)
        bs, ba = linalg.split_parts(b)
        S, H = s_operator(b), h_operator(b)
        one = identity(m)
        if trials["cayley"] < 100 and linalg.det(H + one) and linalg.det(one - S):
            trials["cayley"] += 1
            fails["cayley"] += S != linalg.mat_inverse(H + one) @ (H - one)
            fails["cayley"] += H != (one + S) @ linalg.mat_inverse(one - S)
        if trials["preserve"] < 100:
            trials["preserve"] += 1
            Hi = linalg.mat_inverse(H)
            fails["preserve"] += Hi.T @ bs @ Hi != bs or Hi.T @ ba @ Hi != ba
        if trials["involution"] < 100:
            trials["involution"] += 1
            A = rand_matrix(rng, m)
            # symmetric part and a skew form give an involution; for b itself
            # the double adjoint is conjugation by H
            fails["involution"] += b_adjoint(b_adjoint(A, bs), bs) != A
            fails["involution"] += b_adjoint(b_adjoint(A, b), b) != H @ A @ linalg.mat_inverse(H)
            w = rand_skew(rng, 2 * m - 2)
            if linalg.det(w):
                Aw = rand_matrix(rng, 2 * m - 2)
                fails["involution"] += b_adjoint(b_adjoint(Aw, w), w) != Aw
        if trials["antidual"] < 100:
            trials["antidual"] += 1
            fails["antidual"] += b_adjoint(S, bs) != -S
    ok = not +fails
    return record("2 structure identities", ok, f"failures {dict(+fails) or 0}, trials {dict(trials)}")


# 3 ------------------------------------------------------------------------------
def criterion_3():
    rng = random.Random(103)
    fails = Counter()
    for trial in range(100):
        m = (2, 4, 6)[trial % 3]
        S = rand_skew(rng, m)
        A = rand_matrix(rng, m, bound=3)
        pf = linalg.pfaffian(S)
        fails["square"] += pf * pf != linalg.det(S)
        fails["congruence"] += linalg.pfaffian(A.T @ S @ A) != linalg.det(A) * pf
        W = rand_skew(rng, m)
        poly = linalg.pfaffian_pencil(S, W)
        for _ in range(5):
            lam = rand_rational(rng, 9)
            fails["pencil"] += linalg.poly_eval(poly, lam) != linalg.pfaffian(S - W.scale(lam))
    ok = not +fails
    return record("3 Pfaffian", ok, f"failures {dict(+fails) or 0} over 100 trials")


# 4 ------------------------------------------------------------------------------
def criterion_4(mode):
    n, k, m = SHAPES[mode]
    expected = verify.expected_codimension(n, k, m, mode)
    ranks = []
    for seed in range(5):
        s = random_symbol(n, k, m, mode=mode, seed=seed)
        ranks.append(verify.jacobian_rank(s, mode, CAPS[m], step=1e-6, tol=1e-6))
    ok = sum(r == expected for r in ranks) >= 3
    return record(f"4 invariant count ({mode.value})", ok, f"ranks {ranks}, expected {expected}")


# 5 ------------------------------------------------------------------------------
def _star_tuples(mode, n, k, m, count):
    out = []
    seed = 0
    while len(out) < count:
        s = random_symbol(n, k, m, mode=mode, seed=5000 + seed)
        seed += 1
        t, _ = procesi.special_tuple(s, mode)
        if procesi.star_pair(t) is not None:
            out.append(t)
    return out


def criterion_5(group):
    if group == verify.ORTHOGONAL:
        tuples = _star_tuples(Mode.GENERAL, 2, 2, 2, 25) + _star_tuples(Mode.SELF_ADJOINT, 2, 2, 3, 25)
        counter = [
            (identity(3), [Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 2]]), Matrix([[3, 0, 0], [0, 3, 0], [0, 0, 5]])]),
            (identity(2), [identity(2).scale(2)]),
        ]
    else:
        tuples = _star_tuples(Mode.SKEW, 2, 2, 4, 50)
        w = linalg.standard_symplectic(4)
        A = linalg.diag(1, 1, 2, 2)  # omega-self-adjoint for the block form
        counter = [(w, [identity(4).scale(3)]), (w, [A, A @ A])]
    dims = Counter(verify.stabilizer_dimension(t.form, t.ops, group) for t in tuples)
    counter_dims = [verify.stabilizer_dimension(f, ops, group) for f, ops in counter]
    ok = dims == Counter({0: 50}) and all(d >= 1 for d in counter_dims)
    return record(
        f"5 stabilizer ({group})",
        ok,
        f"dimensions over 50 condition (*) tuples {dict(sorted(dims.items()))} (expected all 0); "
        f"commuting counterexamples {counter_dims} (expected >= 1)",
    )


# 6 ------------------------------------------------------------------------------
def criterion_6():
    verdicts = Counter(
        symbols_equivalent(random_symbol(2, 2, 2, seed=7000 + 2 * i), random_symbol(2, 2, 2, seed=7001 + 2 * i), Mode.GENERAL).value
        for i in range(100)
    )
    ok = verdicts[Verdict.NOT_EQUIVALENT.value] >= 95
    return record("6 separation", ok, f"verdicts {dict(verdicts)} (need >= 95 not_equivalent)")


# 7 ------------------------------------------------------------------------------
def criterion_7():
    rng = random.Random(107)
    fails = Counter()
    done = 0
    while done < 20:
        lam, mu = rand_rational(rng), rand_rational(rng)
        if lam == 0 or mu == 0:
            continue
        done += 1
        for mode, (n, k, m) in SHAPES.items():
            s = random_symbol(n, k, m, mode=mode, seed=done)
            basis = [[Fraction(int(i == j)) for j in range(s.N)] for i in range(s.N)]
            qs, _ = procesi.select_forms([s], mode)
            if [list(q) for q in qs] != basis:
                fails[f"{mode.value}: non-monomial q1"] += 1
                continue
            scaled = [[lam * x for x in q] for q in basis]
            a = symbol_fingerprint(s.scale(mu), mode, CAPS[m], real=False, qs=scaled)
            b = symbol_fingerprint(s, mode, CAPS[m], real=False, qs=basis)
            fails[mode.value] += a.entries != b.entries
    ok = not +fails
    return record("7 scale invariance", ok, f"mismatches {dict(+fails) or 0} over 20 (lambda, mu) x 3 modes")


# 8 ------------------------------------------------------------------------------
def _pipeline(tmp, tag):
    paths = {name: tmp / f"{tag}-{name}" for name in ("a.sym", "b.sym", "t.sym", "fa.json", "cmp.txt")}
    codes = [
        run(["gen", "--n", "2", "--k", "2", "--m", "2", "--seed", "17", "-o", str(paths["a.sym"])]),
        run(["gen", "--n", "2", "--k", "2", "--m", "2", "--seed", "18", "-o", str(paths["b.sym"])]),
        run(["transform", str(paths["a.sym"]), "--gl-e", "2,1;1,1", "-o", str(paths["t.sym"])]),
        run(["fingerprint", str(paths["a.sym"]), "-o", str(paths["fa.json"])]),
        run(["compare", str(paths["a.sym"]), str(paths["t.sym"]), "-o", str(paths["cmp.txt"])]),
    ]
    return codes, [p.read_bytes() for p in paths.values()]


def criterion_8(tmp):
    c1, out1 = _pipeline(tmp, "run1")
    c2, out2 = _pipeline(tmp, "run2")
    deterministic = c1 == c2 == [0, 0, 0, 0, 0] and out1 == out2
    roundtrip_fail = 0
    for seed in range(50):
        mode = list(SHAPES)[seed % 3]
        n, k, m = SHAPES[mode]
        s = random_symbol(n, k, m, dual=(DualKind.STAR, DualKind.FLAT)[seed % 2], mode=mode, seed=seed)
        text = serialize_symbol(s, mode)
        back, back_mode = parse_symbol_document(text)
        roundtrip_fail += back != s or back_mode is not mode or serialize_symbol(back, back_mode) != text
    ok = deterministic and roundtrip_fail == 0
    return record(
        "8 CLI determinism and round-trip",
        ok,
        f"pipelines identical: {deterministic} (exit codes {c1}); round-trip failures {roundtrip_fail}/50",
    )


# -- pytest wrappers ---------------------------------------------------------------
def test_criterion_1_gl_e_invariance():
    assert criterion_1()[0]


def test_criterion_2_structure_identities():
    assert criterion_2()[0]


def test_criterion_3_pfaffian():
    assert criterion_3()[0]


@pytest.mark.parametrize("mode", list(SHAPES), ids=lambda m: m.value)
def test_criterion_4_invariant_count(mode):
    ok, detail = criterion_4(mode)
    assert ok, detail


@pytest.mark.parametrize("group", [verify.ORTHOGONAL, verify.SYMPLECTIC])
def test_criterion_5_stabilizer(group):
    ok, detail = criterion_5(group)
    assert ok, detail


def test_criterion_6_separation():
    ok, detail = criterion_6()
    assert ok, detail


def test_criterion_7_scale_invariance():
    ok, detail = criterion_7()
    assert ok, detail


def test_criterion_8_cli(tmp_path):
    ok, detail = criterion_8(tmp_path)
    assert ok, detail


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    criterion_1()
    criterion_2()
    criterion_3()
    for mode in SHAPES:
        criterion_4(mode)
    for group in (verify.ORTHOGONAL, verify.SYMPLECTIC):
        criterion_5(group)
    criterion_6()
    criterion_7()
    with tempfile.TemporaryDirectory() as tmp:
        criterion_8(Path(tmp))
