"""Symbols as coefficient data on the monomial basis of degree-k forms.

A symbol of order ``k`` over an ``n``-dimensional base with fiber dimension
``m`` is stored as one ``m x m`` bilinear form per degree-k monomial, listed
in graded-lexicographic order. A k-form is a coefficient vector in that same
basis, and evaluating the symbol is the corresponding linear combination.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch, GenerationFailed, OddDimension, ShapeMismatch, Singular
from .linalg import Matrix


class DualKind(str, enum.Enum):
    STAR = "star"  # E^t = Hom(E, field)
    FLAT = "flat"  # E^t = Hom(E, top-degree forms on T)


class Mode(str, enum.Enum):
    GENERAL = "general"
    SELF_ADJOINT = "self-adjoint"
    SKEW = "skew"


MultiIndex = tuple  # of int, summing to k


@lru_cache(maxsize=None)
def monomial_basis(n: int, k: int) -> tuple[MultiIndex, ...]:
    """All exponent vectors of degree ``k`` in ``n`` variables, graded-lex.

    >>> monomial_basis(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if n < 1 or k < 1:
        raise ValueError("monomial_basis needs n >= 1 and k >= 1")

    def rec(n, k):
        if n == 1:
            yield (k,)
            return
        for first in range(k, -1, -1):
            for rest in rec(n - 1, k - first):
                yield (first,) + rest

    return tuple(rec(n, k))


def basis_size(n: int, k: int) -> int:
    return comb(n + k - 1, k)


def unit_form(n: int, k: int, index: int) -> tuple[Fraction, ...]:
    N = basis_size(n, k)
    return tuple(Fraction(int(i == index)) for i in range(N))


@dataclass(frozen=True)
class SymbolTensor:
    n: int
    k: int
    m: int
    dual: DualKind
    values: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dual", DualKind(self.dual))
        vals = tuple(linalg.matrix(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != basis_size(self.n, self.k):
            raise ShapeMismatch(
                f"expected {basis_size(self.n, self.k)} coefficient matrices, got {len(vals)}"
            )
        for v in vals:
            if v.shape != (self.m, self.m):
                raise ShapeMismatch(f"coefficient matrix of shape {v.shape}, expected m={self.m}")

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def basis(self) -> tuple[MultiIndex, ...]:
        return monomial_basis(self.n, self.k)

    def value_at(self, alpha: MultiIndex) -> Matrix:
        return self.values[self.basis.index(tuple(alpha))]

    def scale(self, mu) -> "SymbolTensor":
        return SymbolTensor(self.n, self.k, self.m, self.dual, tuple(v.scale(mu) for v in self.values))


def evaluate(sigma: SymbolTensor, q: Sequence) -> Matrix:
    """The bilinear form sigma(q) = sum over monomials of q[alpha] * values[alpha]."""
    if len(q) != sigma.N:
        raise DimensionMismatch(f"k-form has {len(q)} coefficients, symbol expects {sigma.N}")
    acc = linalg.zeros(sigma.m)
    for c, v in zip(q, sigma.values):
        c = linalg.to_fraction(c)
        if c:
            acc = acc + v.scale(c)
    return acc


def act_gl_e(A: Matrix, sigma: SymbolTensor) -> SymbolTensor:
    """Fiber action: every coefficient form b becomes A^-t b A^-1."""
    A = linalg.matrix(A)
    if A.shape != (sigma.m, sigma.m):
        raise ShapeMismatch(f"GL(E) element must be {sigma.m}x{sigma.m}")
    Ai = linalg.mat_inverse(A)
    Ait = Ai.T
    return SymbolTensor(sigma.n, sigma.k, sigma.m, sigma.dual, tuple(Ait @ b @ Ai for b in sigma.values))


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            key = tuple(i + j for i, j in zip(a, b))
            out[key] = out.get(key, 0) + x * y
    return out


def sym_power_matrix(M: Matrix, k: int) -> Matrix:
    """Matrix of the induced action of M on degree-k polynomials.

    Variable ``x_j`` is replaced by ``sum_i M[i][j] x_i`` (that is,
    ``p(x) -> p(M^t x)``); column ``alpha`` holds the coefficients of the
    substituted monomial ``x^alpha``. With this convention
    ``P(M1 @ M2) == P(M1) @ P(M2)``.
    """
    M = linalg.matrix(M)
    if not M.is_square:
        raise ShapeMismatch("sym_power_matrix needs a square matrix")
    n = M.rows
    basis = monomial_basis(n, k)
    where = {a: i for i, a in enumerate(basis)}
    zero_exp = (0,) * n
    images = []
    for j in range(n):
        images.append({tuple(int(t == i) for t in range(n)): M[i, j] for i in range(n) if M[i, j] != 0})
    N = len(basis)
    cols = []
    for alpha in basis:
        poly = {zero_exp: Fraction(1)}
        for j, e in enumerate(alpha):
            for _ in range(e):
                poly = _poly_mul(poly, images[j])
        col = [Fraction(0)] * N
        for mono, c in poly.items():
            col[where[mono]] += c
        cols.append(col)
    return Matrix([[cols[a][b] for a in range(N)] for b in range(N)])


def substitute(M: Matrix, q: Sequence, k: int) -> tuple[Fraction, ...]:
    """Coefficients of the k-form q(M x), the pullback of q along M."""
    P = sym_power_matrix(linalg.matrix(M).T, k)
    q = [linalg.to_fraction(c) for c in q]
    return tuple(sum((P[i, j] * q[j] for j in range(len(q))), Fraction(0)) for i in range(len(q)))


def act_gl_t(M: Matrix, sigma: SymbolTensor) -> SymbolTensor:
    """Base action by precomposition with the substitution x -> M x.

    ``values'[alpha] = sum_beta P[beta, alpha] * values[beta]`` where column
    alpha of P expands ``(M x)^alpha``. In the flat case each value also picks
    up ``det(M)^-1`` from the action on top-degree forms.
    """
    M = linalg.matrix(M)
    if M.shape != (sigma.n, sigma.n):
        raise ShapeMismatch(f"GL(T) element must be {sigma.n}x{sigma.n}")
    d = linalg.det(M)
    if d == 0:
        raise Singular("GL(T) element is singular")
    P = sym_power_matrix(M.T, sigma.k)
    twist = 1 / d if sigma.dual is DualKind.FLAT else Fraction(1)
    new = []
    for a in range(sigma.N):
        acc = linalg.zeros(sigma.m)
        for b in range(sigma.N):
            c = P[b, a]
            if c:
                acc = acc + sigma.values[b].scale(c)
        new.append(acc.scale(twist) if twist != 1 else acc)
    return SymbolTensor(sigma.n, sigma.k, sigma.m, sigma.dual, tuple(new))


def _random_matrix(rng: random.Random, m: int, mode: Mode, bound: int) -> Matrix:
    a = [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)]
    if mode is Mode.SELF_ADJOINT:
        for i in range(m):
            for j in range(i):
                a[i][j] = a[j][i]
    elif mode is Mode.SKEW:
        for i in range(m):
            a[i][i] = 0
            for j in range(i):
                a[i][j] = -a[j][i]
    return Matrix(a)


def random_symbol(
    n: int,
    k: int,
    m: int,
    dual: DualKind = DualKind.STAR,
    mode: Mode = Mode.GENERAL,
    seed: int = 0,
    bound: int = 5,
    max_tries: int = 200,
) -> SymbolTensor:
    """Seeded random symbol with integer entries in ``[-bound, bound]``.

    General mode retries until every monomial form is non-degenerate (so the
    special tuple exists); the other modes retry until the first monomial form
    is invertible.
    """
    from .procesi import is_nondegenerate_form

    mode = Mode(mode)
    if mode is Mode.SKEW and m % 2:
        raise OddDimension(f"skew symbols need even fiber dimension, got m={m}")
    rng = random.Random(seed)
    N = basis_size(n, k)
    for _ in range(max_tries):
        values = tuple(_random_matrix(rng, m, mode, bound) for _ in range(N))
        if mode is Mode.GENERAL:
            ok = all(is_nondegenerate_form(v) for v in values)
        else:
            ok = linalg.det(values[0]) != 0
        if ok:
            return SymbolTensor(n, k, m, DualKind(dual), values)
    raise GenerationFailed(f"no admissible {mode.value} symbol after {max_tries} tries (seed {seed})")


def random_invertible(size: int, rng: random.Random, bound: int = 3) -> Matrix:
    """Random integer matrix with nonzero determinant."""
    while True:
        A = Matrix([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])
        if linalg.det(A) != 0:
            return A
