import random
from fractions import Fraction

import pytest
from hypothesis import settings

from syminv.linalg import Matrix, det

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rand_matrix(rng, rows, cols=None, bound=5):
    cols = rows if cols is None else cols
    return Matrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def rand_invertible(rng, m, bound=3):
    while True:
        A = rand_matrix(rng, m, bound=bound)
        if det(A) != 0:
            return A


def rand_skew(rng, m, bound=5):
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a[i][j] = rng.randint(-bound, bound)
            a[j][i] = -a[i][j]
    return Matrix(a)


def rand_sym(rng, m, bound=5):
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            a[i][j] = a[j][i] = rng.randint(-bound, bound)
    return Matrix(a)


def rand_rational(rng, bound=7):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance summary lines, filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
