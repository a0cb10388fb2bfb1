"""Trace invariants and equivalence tests for symbols of linear differential operators.

All core computations are exact over the rationals. The word-trace kernels
come from a compiled extension when available (see :mod:`syminv.kernels`).
"""

from .errors import SyminvError
from .linalg import Matrix, identity, mat_inverse, pfaffian, pfaffian_pencil, signature, split_parts
from .procesi import (
    Fingerprint,
    OperatorTuple,
    Verdict,
    b_adjoint,
    build_tuple,
    compare_symbols,
    fingerprint,
    h_operator,
    is_nondegenerate_form,
    s_operator,
    symbol_fingerprint,
    symbols_equivalent,
    trace_word,
    tuples_equivalent,
)
from .symbols import (
    DualKind,
    Mode,
    SymbolTensor,
    act_gl_e,
    act_gl_t,
    evaluate,
    monomial_basis,
    random_symbol,
    sym_power_matrix,
)
from .verify import (
    check_witness,
    condition_star,
    expected_codimension,
    jacobian_rank,
    stabilizer_dimension,
)
from .words import enumerate_words

__version__ = "0.1.0"
