"""Independent checks: condition (*), stabilizers, orbit codimensions, witnesses.

Everything is exact except :func:`jacobian_rank`, which differentiates the
fingerprint map numerically to count independent invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .errors import ShapeMismatch, Singular
from .linalg import Matrix
from .procesi import select_forms
from .symbols import Mode, SymbolTensor, act_gl_e, act_gl_t, basis_size, evaluate
from .words import default_cap, encode_words, enumerate_words

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"


def _simple_spectrum(A: Matrix, form: Matrix | None) -> bool:
    # An operator self-adjoint for a symplectic form has every eigenvalue with
    # even multiplicity; "distinct eigenvalues" then means Pf(alpha - t*omega)
    # has simple roots, alpha = omega @ A.
    if form is not None and form.is_antisymmetric() and form.rows % 2 == 0:
        alpha = form @ A
        if alpha.is_antisymmetric():
            return linalg.poly_is_squarefree(linalg.pfaffian_pencil(alpha, form))
    return linalg.charpoly_is_squarefree(A)


def condition_star(Ai: Matrix, Aj: Matrix, form: Matrix | None = None) -> bool:
    """Both operators have simple spectrum and they do not commute.

    Pass the symplectic ``form`` for operators self-adjoint with respect to it,
    so that simplicity is judged on the Pfaffian pencil.
    """
    Ai, Aj = linalg.matrix(Ai), linalg.matrix(Aj)
    if Ai.shape != Aj.shape:
        raise ShapeMismatch(f"{Ai.shape} vs {Aj.shape}")
    if linalg.commutator(Ai, Aj).is_zero():
        return False
    return _simple_spectrum(Ai, form) and _simple_spectrum(Aj, form)


def stabilizer_system(form: Matrix, ops: Sequence[Matrix]) -> Matrix:
    """Linear equations in the m*m entries of C (row-major unknowns).

    Rows encode ``C^t F + F C = 0`` and ``C A - A C = 0`` for each operator.
    """
    m = form.rows
    rows = []

    def unknown(i, j):
        return i * m + j

    for r in range(m):
        for s in range(m):
            row = [0] * (m * m)
            for k in range(m):
                row[unknown(k, r)] += form[k, s]
                row[unknown(k, s)] += form[r, k]
            rows.append(row)
    for A in ops:
        for r in range(m):
            for s in range(m):
                row = [0] * (m * m)
                for k in range(m):
                    row[unknown(r, k)] += A[k, s]
                    row[unknown(k, s)] -= A[r, k]
                rows.append(row)
    return linalg.Matrix(rows)


def stabilizer_dimension(form: Matrix, ops: Sequence[Matrix], group: str = ORTHOGONAL) -> int:
    """Dimension of the Lie algebra of isometries of ``form`` commuting with ``ops``."""
    form = linalg.matrix(form)
    ops = [linalg.matrix(A) for A in ops]
    if not form.is_square or any(A.shape != form.shape for A in ops):
        raise ShapeMismatch("form and operators must share one square shape")
    if group == ORTHOGONAL and not form.is_symmetric():
        raise ShapeMismatch("orthogonal group needs a symmetric form")
    if group == SYMPLECTIC and not form.is_antisymmetric():
        raise ShapeMismatch("symplectic group needs an antisymmetric form")
    if linalg.det(form) == 0:
        raise Singular("form must be invertible")
    return linalg.nullity(stabilizer_system(form, ops))


def expected_codimension(n: int, k: int, m: int, mode: Mode) -> int:
    """Closed-form codimension of a regular orbit of N-tuples of forms."""
    mode = Mode(mode)
    N = basis_size(n, k)
    if mode is Mode.GENERAL:
        return (N - 1) * m * m
    if mode is Mode.SELF_ADJOINT:
        return N * m * (m + 1) // 2 - m * m
    if m % 2:
        raise ValueError("skew mode needs even m")
    return N * m * (m - 1) // 2 - m * m


@dataclass(frozen=True)
class CodimReport:
    mode: Mode
    n: int
    k: int
    m: int
    N: int
    expected_codim: int
    observed_rank: int | None
    cap_used: int
    singular_values: tuple[float, ...] = ()

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "N": self.N,
            "expected_codim": self.expected_codim,
            "observed_rank": self.observed_rank,
            "cap_used": self.cap_used,
        }


# -- float-mode fingerprints ----------------------------------------------------------
def _float_letters(forms: Sequence[np.ndarray], mode: Mode) -> np.ndarray:
    if mode is Mode.GENERAL:
        F1 = forms[0]
        ref = (F1 + F1.T) / 2
        rinv = np.linalg.inv(ref)
        ops = [rinv @ ((F1 - F1.T) / 2)] + [rinv @ F for F in forms[1:]]
    else:
        ref = forms[0]
        rinv = np.linalg.inv(ref)
        ops = [rinv @ F for F in forms[1:]]
    rinv_t = rinv.T
    letters = []
    for A in ops:
        letters.append(A)
        letters.append(rinv_t @ A.T @ ref.T)
    return np.array(letters)


def _param_directions(m: int, mode: Mode) -> list[np.ndarray]:
    dirs = []
    for i in range(m):
        for j in range(m):
            E = np.zeros((m, m))
            if mode is Mode.GENERAL:
                E[i, j] = 1.0
            elif mode is Mode.SELF_ADJOINT and i <= j:
                E[i, j] = E[j, i] = 1.0
            elif mode is Mode.SKEW and i < j:
                E[i, j], E[j, i] = 1.0, -1.0
            else:
                continue
            dirs.append(E)
    return dirs


def float_fingerprint(forms: Sequence[np.ndarray], mode: Mode, cap: int) -> np.ndarray:
    """Traces of all canonical words, evaluated in double precision."""
    mode = Mode(mode)
    letters = _float_letters(forms, mode)
    words = enumerate_words(len(letters) // 2, cap)
    L, O = encode_words(words)
    return kernels.trace_words_float(letters, L, O)


def _jacobian(forms: list[np.ndarray], mode: Mode, cap: int, step: float) -> np.ndarray:
    dirs = _param_directions(forms[0].shape[0], mode)
    cols = []
    for f in range(len(forms)):
        for E in dirs:
            plus = list(forms)
            minus = list(forms)
            plus[f] = forms[f] + step * E
            minus[f] = forms[f] - step * E
            cols.append(
                (float_fingerprint(plus, mode, cap) - float_fingerprint(minus, mode, cap)) / (2 * step)
            )
    return np.column_stack(cols)


def special_forms(sigma: SymbolTensor, mode: Mode) -> list[Matrix]:
    qs, _ = select_forms([sigma], mode)
    return [evaluate(sigma, q) for q in qs]


def numeric_rank(J: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    s = np.linalg.svd(J, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0, s
    return int(np.sum(s > tol * s[0])), s


def jacobian_report(
    sigma: SymbolTensor,
    mode: Mode,
    cap: int | None = None,
    step: float = 1e-6,
    tol: float = 1e-6,
    retries: int = 2,
) -> CodimReport:
    """Numerical rank of d(fingerprint)/d(form entries) at the special tuple.

    If the rank falls short of the closed-form codimension the cap is raised
    by one, up to ``retries`` times.
    """
    mode = Mode(mode)
    forms = [F.to_numpy() for F in special_forms(sigma, mode)]
    cap = default_cap(sigma.m) if cap is None else cap
    expected = expected_codimension(sigma.n, sigma.k, sigma.m, mode)
    for c in range(cap, cap + retries + 1):
        r, s = numeric_rank(_jacobian(forms, mode, c, step), tol)
        if r >= expected:
            break
    return CodimReport(mode, sigma.n, sigma.k, sigma.m, sigma.N, expected, r, c, tuple(s.tolist()))


def jacobian_rank(
    sigma: SymbolTensor, mode: Mode, cap: int | None = None, step: float = 1e-6, tol: float = 1e-6
) -> int:
    return jacobian_report(sigma, mode, cap, step, tol).observed_rank


def check_witness(s1: SymbolTensor, s2: SymbolTensor, A1: Matrix, A2: Matrix) -> bool:
    """Exact check that ``(A1, A2)`` maps s1 onto s2 (A1 on the base, A2 on fibers)."""
    if (s1.n, s1.k, s1.m, s1.dual) != (s2.n, s2.k, s2.m, s2.dual):
        raise ShapeMismatch("symbols differ in (n, k, m, dual)")
    return act_gl_e(A2, act_gl_t(A1, s1)) == s2
