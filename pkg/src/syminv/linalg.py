"""Exact dense linear algebra over the rationals.

Matrices are immutable and hold :class:`fractions.Fraction` entries, so every
identity checked by the rest of the package is an exact equality.
Polynomials are plain tuples of Fractions, lowest degree first, with the zero
polynomial represented by the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSkew, NotSymmetric, OddDimension, ShapeMismatch, Singular

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a normalized Fraction.

    Floats are rejected: silently rounding would break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, float)):
        raise TypeError(f"refusing inexact scalar {x!r}")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged matrix rows")
        self._set(rows)

    def _set(self, rows):
        self._data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self._hash = None

    @classmethod
    def _raw(cls, rows) -> "Matrix":
        # rows must already be a tuple of tuples of Fractions
        obj = cls.__new__(cls)
        obj._set(rows)
        return obj

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self._data], dtype=float).reshape(
            self.rows, self.cols
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self._data else ())

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(self.rows)), _ZERO)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_antisymmetric(self) -> bool:
        return self.is_square and self == -self.T

    # -- arithmetic -----------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._data))
        return Matrix._raw(
            tuple(
                tuple(sum((a * b for a, b in zip(r, c)), _ZERO) for c in cols)
                for r in self._data
            )
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
        return f"Matrix([{body}])"


def matrix(rows) -> Matrix:
    return rows if isinstance(rows, Matrix) else Matrix(rows)


def identity(n: int) -> Matrix:
    return Matrix._raw(tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix._raw(tuple((_ZERO,) * cols for _ in range(rows)))


def diag(*entries) -> Matrix:
    n = len(entries)
    return Matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    out = [[_ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b[i, j]
        off += b.rows
    return Matrix(out)


def standard_symplectic(m: int) -> Matrix:
    """Block diagonal of unit 2x2 blocks [[0, 1], [-1, 0]]."""
    if m % 2:
        raise OddDimension(f"symplectic form needs even side, got {m}")
    j = Matrix([[0, 1], [-1, 0]])
    return block_diag(*([j] * (m // 2)))


def _require_square(M: Matrix):
    if not M.is_square:
        raise ShapeMismatch(f"expected a square matrix, got {M.rows}x{M.cols}")


def det(M: Matrix) -> Fraction:
    _require_square(M)
    a = M.tolist()
    n = len(a)
    result = _ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return _ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f /= piv
                ar, ac = a[r], a[c]
                for j in range(c + 1, n):
                    ar[j] -= f * ac[j]
    return result


def mat_inverse(M: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises :class:`Singular` when det(M) = 0."""
    _require_square(M)
    n = M.rows
    a = [list(M.row(i)) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise Singular("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        ac = [x / piv for x in a[c]]
        a[c] = ac
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], ac)]
    return Matrix._raw(tuple(tuple(r[n:]) for r in a))


def inverse_transpose(M: Matrix) -> Matrix:
    return mat_inverse(M).T


def solve(M: Matrix, B: Matrix) -> Matrix:
    """Return M^-1 B."""
    return mat_inverse(M) @ B


def rank(M: Matrix) -> int:
    a = M.tolist()
    rows, cols = M.rows, M.cols
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f:
                f /= piv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def nullity(M: Matrix) -> int:
    """Dimension of the right kernel of M."""
    return M.cols - rank(M)


def split_parts(b: Matrix) -> tuple[Matrix, Matrix]:
    """Symmetric and antisymmetric parts ``((b + b^t)/2, (b - b^t)/2)``."""
    _require_square(b)
    half = Fraction(1, 2)
    bt = b.T
    return (b + bt).scale(half), (b - bt).scale(half)


# -- polynomials ------------------------------------------------------------
Polynomial = tuple  # of Fraction, lowest degree first


def poly_trim(p: Sequence) -> Polynomial:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(to_fraction(c) for c in p)


def poly_degree(p: Polynomial) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(poly_trim(p)) - 1


def poly_eval(p: Polynomial, x) -> Fraction:
    x = to_fraction(x)
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Polynomial) -> Polynomial:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p or not q:
        return ()
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    d = poly_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(p))
    q = [_ZERO] * max(len(r) - len(d) + 1, 0)
    lead = d[-1]
    while len(r) >= len(d):
        shift = len(r) - len(d)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(d):
            r[shift + i] -= f * c
        r = list(poly_trim(r))
    return poly_trim(q), poly_trim(r)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero polynomial if both are zero)."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def poly_is_squarefree(p: Polynomial) -> bool:
    p = poly_trim(p)
    if not p:
        return False
    return poly_degree(poly_gcd(p, poly_derivative(p))) == 0


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """Lagrange interpolation through the points (xs[i], ys[i])."""
    xs = [to_fraction(x) for x in xs]
    out: Polynomial = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis: Polynomial = (to_fraction(yi),)
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, (-xj / (xi - xj), _ONE / (xi - xj)))
        out = poly_trim([a + b for a, b in _zip_pad(out, basis)])
    return out


def _zip_pad(p, q):
    n = max(len(p), len(q))
    return zip(list(p) + [_ZERO] * (n - len(p)), list(q) + [_ZERO] * (n - len(q)))


def charpoly(M: Matrix) -> Polynomial:
    """det(lambda*I - M) by Faddeev-LeVerrier, lowest degree first."""
    _require_square(M)
    n = M.rows
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    Mk = zeros(n)
    eye = identity(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M @ Mk).trace() / k
    return tuple(coeffs)


def charpoly_is_squarefree(M: Matrix) -> bool:
    """True iff gcd(p, p') is constant for p = det(lambda*I - M).

    Over the algebraic closure this is the same as M having distinct
    eigenvalues.
    """
    return poly_is_squarefree(charpoly(M))


# -- Pfaffians ----------------------------------------------------------------
def _require_skew(M: Matrix):
    _require_square(M)
    if not M.is_antisymmetric():
        raise NotSkew("matrix is not antisymmetric")
    if M.rows % 2:
        raise OddDimension(f"Pfaffian needs even side, got {M.rows}")


def pfaffian(M: Matrix) -> Fraction:
    """Pfaffian by skew-preserving elimination (exact, O(m^3)).

    With M = [[0, a, u], [-a, 0, v], [-u^t, -v^t, C]] one has
    Pf(M) = a * Pf(C + (v u^t - u v^t) / a); a zero pivot row makes Pf = 0.
    """
    _require_skew(M)
    a = M.tolist()
    result = _ONE
    while a:
        n = len(a)
        p = next((j for j in range(1, n) if a[0][j] != 0), None)
        if p is None:
            return _ZERO
        if p != 1:
            a[1], a[p] = a[p], a[1]
            for r in a:
                r[1], r[p] = r[p], r[1]
            result = -result
        piv = a[0][1]
        result *= piv
        u, v = a[0][2:], a[1][2:]
        a = [
            [a[i + 2][j + 2] + (v[i] * u[j] - u[i] * v[j]) / piv for j in range(n - 2)]
            for i in range(n - 2)
        ]
    return result


def pfaffian_pencil(omega: Matrix, alpha: Matrix) -> Polynomial:
    """Pf(omega - lambda*alpha) as a polynomial in lambda of degree <= m/2.

    Sampled at m/2 + 1 integer points and interpolated exactly.
    """
    _require_skew(omega)
    _require_skew(alpha)
    if omega.shape != alpha.shape:
        raise ShapeMismatch(f"{omega.shape} vs {alpha.shape}")
    r = omega.rows // 2
    xs = list(range(r + 1))
    ys = [pfaffian(omega - alpha.scale(x)) for x in xs]
    return interpolate(xs, ys)


# -- congruence -------------------------------------------------------------
def signature(M: Matrix) -> tuple[int, int]:
    """Inertia (positive, negative) of a nonsingular symmetric matrix.

    Lagrange reduction with rational pivots. When every remaining diagonal
    entry vanishes a 2x2 hyperbolic block is split off, contributing (1, 1).
    """
    _require_square(M)
    if not M.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = M.tolist()
    pos = neg = 0
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k] != 0), None)
        if i is not None:
            piv = a[i][i]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            keep = [k for k in range(n) if k != i]
            a = [[a[r][c] - a[r][i] * a[i][c] / piv for c in keep] for r in keep]
            continue
        hit = next(((r, c) for r in range(n) for c in range(r + 1, n) if a[r][c] != 0), None)
        if hit is None:
            raise Singular("symmetric form is degenerate")
        r0, c0 = hit
        h = a[r0][c0]
        pos += 1
        neg += 1
        keep = [k for k in range(n) if k not in (r0, c0)]
        # Schur complement of the block [[0, h], [h, 0]], whose inverse is [[0, 1/h], [1/h, 0]]
        a = [
            [a[r][c] - (a[r][r0] * a[c0][c] + a[r][c0] * a[r0][c]) / h for c in keep]
            for r in keep
        ]
    return pos, neg


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A
