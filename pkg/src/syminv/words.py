"""Trace words and their canonical representatives.

A word is a tuple of letters ``(op_index, adjoint)``. Two words are identified
when their traces agree for every tuple, using only

* cyclic rotation, ``tr(XY) = tr(YX)``;
* reversal with every adjoint flag flipped, ``tr(W) = tr(W_b)``.

The canonical representative is the lexicographically least word of the orbit.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

Letter = tuple  # (op_index: int, adjoint: bool)
Word = tuple  # of Letter


def default_cap(m: int) -> int:
    """Procesi's word-length bound ``2**m - 1``."""
    return 2**m - 1


def reverse_adjoint(w: Word) -> Word:
    return tuple((i, not a) for i, a in reversed(w))


def word_orbit(w: Word) -> set:
    out = set()
    for base in (tuple(w), reverse_adjoint(w)):
        for r in range(len(base)):
            out.add(base[r:] + base[:r])
    return out


def canonical(w: Word) -> Word:
    w = tuple((int(i), bool(a)) for i, a in w)
    return min(word_orbit(w))


def is_canonical(w: Word) -> bool:
    return canonical(w) == tuple(w)


@lru_cache(maxsize=64)
def enumerate_words(num_ops: int, cap: int) -> tuple[Word, ...]:
    """Canonical words of length 1..cap over ``2 * num_ops`` letters.

    Ordered by length, then lexicographically.
    """
    if cap < 1:
        raise ValueError("word-length cap must be at least 1")
    letters = [(i, a) for i in range(num_ops) for a in (False, True)]
    out = []
    for s in range(1, cap + 1):
        for w in product(letters, repeat=s):
            if min(word_orbit(w)) == w:
                out.append(w)
    return tuple(out)


def letter_code(letter: Letter) -> int:
    """Flat index of a letter: ``2 * op_index + adjoint``."""
    i, a = letter
    return 2 * i + int(a)


def encode_words(words) -> tuple[list[int], list[int]]:
    """CSR encoding (letters, offsets) used by the trace kernels."""
    letters: list[int] = []
    offsets = [0]
    for w in words:
        letters.extend(letter_code(x) for x in w)
        offsets.append(len(letters))
    return letters, offsets


def format_word(w: Word, labels=None) -> str:
    """Human-readable form such as ``A1 A2* A3``; ``*`` marks an adjoint."""
    names = []
    for i, a in w:
        lab = labels[i] if labels is not None else i + 1
        names.append(f"A{lab}{'*' if a else ''}")
    return " ".join(names)
