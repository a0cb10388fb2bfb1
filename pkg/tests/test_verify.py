import random

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from syminv import linalg, procesi
from syminv.errors import ShapeMismatch, Singular
from syminv.linalg import Matrix, diag, identity
from syminv.symbols import Mode, act_gl_e, act_gl_t, random_symbol
from syminv.verify import (
    ORTHOGONAL,
    SYMPLECTIC,
    check_witness,
    condition_star,
    expected_codimension,
    float_fingerprint,
    jacobian_rank,
    jacobian_report,
    special_forms,
    stabilizer_dimension,
)

from .conftest import rand_invertible

SWAP = Matrix([[0, 1], [1, 0]])


def sympy_nullity(rows):
    return len(sympy.Matrix(rows).nullspace())


class TestConditionStar:
    def test_example(self):
        assert condition_star(diag(1, 2), SWAP)

    def test_commuting(self):
        assert not condition_star(diag(1, 2), diag(1, 2))

    def test_repeated_eigenvalue(self):
        assert not condition_star(identity(2), SWAP)

    def test_shape(self):
        with pytest.raises(ShapeMismatch):
            condition_star(identity(2), identity(3))

    def test_symplectic_uses_pencil(self):
        # omega-self-adjoint operators always have doubled eigenvalues
        w = linalg.standard_symplectic(4)
        rng = random.Random(0)
        found = 0
        for seed in range(10):
            s = random_symbol(2, 2, 4, mode=Mode.SKEW, seed=seed)
            t, _ = procesi.special_tuple(s, Mode.SKEW)
            A1, A2 = t.ops
            assert not linalg.charpoly_is_squarefree(A1)
            found += condition_star(A1, A2, form=t.form)
        assert found >= 8
        assert not condition_star(identity(4), identity(4), form=w)


class TestStabilizer:
    def test_so2(self):
        assert stabilizer_dimension(identity(2), []) == 1

    def test_example_trivial(self):
        assert stabilizer_dimension(identity(2), [diag(1, 2), SWAP]) == 0

    def test_commuting_diagonals(self):
        assert stabilizer_dimension(identity(2), [diag(1, 2), diag(3, 4)]) == 0
        # commutant alone: C commuting with both diagonals
        rows = []
        for A in (np.diag([1, 2]), np.diag([3, 4])):
            for r in range(2):
                for s in range(2):
                    row = [0] * 4
                    for k in range(2):
                        row[r * 2 + k] += int(A[k, s])
                        row[k * 2 + s] -= int(A[r, k])
                    rows.append(row)
        assert sympy_nullity(rows) == 2

    def test_symplectic_empty(self):
        # sp(4) has dimension 10
        assert stabilizer_dimension(linalg.standard_symplectic(4), [], SYMPLECTIC) == 10

    def test_orthogonal_dimension(self):
        # so(p, q) has dimension m(m-1)/2 for any signature
        assert stabilizer_dimension(diag(1, -1, 2), [], ORTHOGONAL) == 3

    def test_trivial_for_star_tuples(self):
        rng = random.Random(1)
        checked = 0
        for seed in range(200):
            s = random_symbol(2, 2, 2, seed=seed)
            t, _ = procesi.special_tuple(s, Mode.GENERAL)
            if procesi.star_pair(t) is None:
                continue
            assert stabilizer_dimension(t.form, t.ops) == 0
            checked += 1
            if checked == 30:
                break
        assert checked == 30

    def test_commuting_counterexample(self):
        # commuting ops sharing a repeated eigenvalue leave an so(2) block free
        assert stabilizer_dimension(identity(3), [diag(1, 1, 2), diag(3, 3, 5)]) == 1
        assert stabilizer_dimension(identity(3), [identity(3).scale(2)]) == 3

    def test_errors(self):
        with pytest.raises(ShapeMismatch):
            stabilizer_dimension(Matrix([[1, 2], [0, 1]]), [])
        with pytest.raises(ShapeMismatch):
            stabilizer_dimension(identity(2), [], SYMPLECTIC)
        with pytest.raises(Singular):
            stabilizer_dimension(diag(1, 0), [])
        with pytest.raises(ShapeMismatch):
            stabilizer_dimension(identity(2), [identity(3)])


class TestCodimension:
    def test_examples(self):
        assert expected_codimension(2, 2, 2, Mode.GENERAL) == 8
        assert expected_codimension(2, 2, 2, Mode.SELF_ADJOINT) == 5
        assert expected_codimension(2, 2, 4, Mode.SKEW) == 2

    @given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 6))
    def test_general_minus_self_adjoint(self, n, k, m):
        N = linalg_comb(n, k)
        diff = expected_codimension(n, k, m, Mode.GENERAL) - expected_codimension(n, k, m, Mode.SELF_ADJOINT)
        assert diff == N * m * (m - 1) // 2


def linalg_comb(n, k):
    from math import comb

    return comb(n + k - 1, k)


class TestJacobian:
    def test_general_rank(self):
        assert jacobian_rank(random_symbol(2, 2, 2, seed=0), Mode.GENERAL) == 8

    def test_self_adjoint_rank(self):
        s = random_symbol(2, 2, 2, mode=Mode.SELF_ADJOINT, seed=0)
        assert jacobian_rank(s, Mode.SELF_ADJOINT) == 5

    def test_scaling_direction_is_flat(self):
        s = random_symbol(2, 2, 2, seed=1)
        forms = [F.to_numpy() for F in special_forms(s, Mode.GENERAL)]
        h = 1e-6
        plus = float_fingerprint([f * (1 + h) for f in forms], Mode.GENERAL, 3)
        minus = float_fingerprint([f * (1 - h) for f in forms], Mode.GENERAL, 3)
        deriv = (plus - minus) / (2 * h)
        assert np.max(np.abs(deriv)) < 1e-6 * max(1.0, np.max(np.abs(plus)))

    def test_float_matches_exact(self):
        s = random_symbol(2, 2, 2, seed=2)
        exact = procesi.symbol_fingerprint(s, Mode.GENERAL, real=False)
        approx = float_fingerprint([F.to_numpy() for F in special_forms(s, Mode.GENERAL)], Mode.GENERAL, 3)
        assert np.allclose(approx, [float(v) for _, v in exact.entries], rtol=1e-9, atol=1e-9)

    def test_invariant_under_gl_e(self):
        rng = random.Random(3)
        for seed in range(3):
            s = random_symbol(2, 2, 2, seed=seed)
            A = rand_invertible(rng, 2, bound=2)
            assert jacobian_rank(act_gl_e(A, s), Mode.GENERAL) == jacobian_rank(s, Mode.GENERAL)

    def test_report_fields(self):
        r = jacobian_report(random_symbol(2, 2, 2, seed=0), Mode.GENERAL)
        d = r.as_dict()
        assert d["expected_codim"] == 8 and d["cap_used"] == 3 and d["N"] == 3
        assert len(r.singular_values) == 12


class TestWitness:
    def test_identity(self):
        s = random_symbol(2, 2, 2, seed=0)
        assert check_witness(s, s, identity(2), identity(2))

    def test_constructed(self):
        rng = random.Random(4)
        for seed in range(50):
            s = random_symbol(2, 2, 2, seed=seed)
            A1, A2 = rand_invertible(rng, 2), rand_invertible(rng, 2)
            assert check_witness(s, act_gl_e(A2, act_gl_t(A1, s)), A1, A2)

    def test_unrelated(self):
        rng = random.Random(5)
        hits = 0
        for seed in range(100):
            s1, s2 = random_symbol(2, 2, 2, seed=seed), random_symbol(2, 2, 2, seed=seed + 1000)
            hits += check_witness(s1, s2, rand_invertible(rng, 2), rand_invertible(rng, 2))
        assert hits == 0

    def test_shape(self):
        with pytest.raises(ShapeMismatch):
            check_witness(random_symbol(2, 2, 2, seed=0), random_symbol(2, 1, 2, seed=0), identity(2), identity(2))
