"""The Parikh matrix mapping and M-equivalence decision procedures.

The matrix of a word is the product of its letter matrices, computed in a
single streaming pass.  The equivalent "band of subword counts" form is
provided separately as a cross-check (:func:`parikh_matrix_by_counts`),
never as the production path.
"""

from __future__ import annotations

from dataclasses import dataclass

from parikh._backend import kernels
from parikh.errors import (
    AlphabetMismatchError,
    ParikhError,
    RangeError,
    TernaryOnlyError,
)
from parikh.words import Alphabet, OrderedAlphabet, Word, count_subword

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class ParikhMatrix:
    """An upper unitriangular matrix with nonnegative integer entries."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ParikhError("matrix must be square")
            for j, x in enumerate(row):
                if j < i and x != 0:
                    raise ParikhError("matrix must be upper triangular")
                if j == i and x != 1:
                    raise ParikhError("matrix must have a unit diagonal")
                if x < 0:
                    raise ParikhError("matrix entries must be nonnegative")

    @classmethod
    def identity(cls, dim: int) -> "ParikhMatrix":
        return cls(
            tuple(
                tuple(1 if i == j else 0 for j in range(dim))
                for i in range(dim)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "ParikhMatrix") -> "ParikhMatrix":
        if self.dim != other.dim:
            raise ParikhError("matrix dimensions differ")
        n = self.dim
        a, b = self.rows, other.rows
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                # both factors are upper triangular
                s = sum(a[i][p] * b[p][j] for p in range(i, j + 1))
                if s > INT64_MAX:
                    raise OverflowError("matrix entry exceeds 64-bit range")
                row.append(s)
            out.append(tuple(row))
        return ParikhMatrix(tuple(out))

    def second_diagonal(self) -> tuple[int, ...]:
        """The Parikh vector stored just above the main diagonal."""
        return tuple(self.rows[i][i + 1] for i in range(self.dim - 1))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def to_text(self) -> str:
        """Aligned plain-text grid."""
        width = max(len(str(x)) for row in self.rows for x in row)
        return "\n".join(
            " ".join(str(x).rjust(width) for x in row) for row in self.rows
        )


def letter_matrix(q: int, k: int) -> ParikhMatrix:
    """Matrix of the letter with 1-based rank q over a k-letter ordered
    alphabet: the identity with one extra 1 at row q, column q+1."""
    if not 1 <= q <= k:
        raise RangeError(f"rank {q} not in 1..{k}")
    rows = [[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)]
    rows[q - 1][q] = 1
    return ParikhMatrix(rows)


def parikh_matrix(w: Word, ordering: OrderedAlphabet) -> ParikhMatrix:
    """The matrix of w under the given ordering (product of letter
    matrices)."""
    return ParikhMatrix(kernels.parikh_matrix(ordering.encode(w), ordering.size))


def parikh_matrix_by_counts(w: Word, ordering: OrderedAlphabet) -> ParikhMatrix:
    """Cross-check form: entry (i, j+1) is the count of the run of letters
    with ranks i..j as a subword of w (0-based ranks)."""
    k = ordering.size
    rows = [[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)]
    for i in range(k):
        for j in range(i, k):
            run = Word(ordering.base, "".join(ordering.order[i : j + 1]))
            rows[i][j + 1] = count_subword(w, run)
    return ParikhMatrix(rows)


def m_equivalent(w: Word, w2: Word, ordering: OrderedAlphabet) -> bool:
    """Whether the two words share their Parikh matrix under ordering."""
    if w.alphabet != w2.alphabet:
        raise AlphabetMismatchError("words use different alphabets")
    return kernels.m_equivalent(
        ordering.encode(w), ordering.encode(w2), ordering.size
    )


def sufficient_orderings(alphabet: Alphabet) -> list[OrderedAlphabet]:
    """The three orderings that suffice to decide strong M-equivalence on a
    ternary alphabet, stated for the registration letters (x, y, z):
    x<y<z, y<x<z, and x<z<y."""
    if alphabet.size != 3:
        raise TernaryOnlyError("sufficient orderings exist only for k = 3")
    x, y, z = alphabet.letters
    return [
        OrderedAlphabet(alphabet, (x, y, z)),
        OrderedAlphabet(alphabet, (y, x, z)),
        OrderedAlphabet(alphabet, (x, z, y)),
    ]


def strongly_m_equivalent(w: Word, w2: Word) -> bool:
    """Whether the words share their Parikh matrix under every ordering of
    their alphabet.

    For ternary alphabets this checks only the three sufficient orderings;
    other sizes enumerate all k! orderings.
    """
    if w.alphabet != w2.alphabet:
        raise AlphabetMismatchError("words use different alphabets")
    if w.alphabet.size == 3:
        return kernels.strong_equivalent_ternary(w.encoded, w2.encoded)
    return _strongly_m_equivalent_all_orderings(w, w2)


def _strongly_m_equivalent_all_orderings(w: Word, w2: Word) -> bool:
    # Exhaustive path over all k! orderings; for k = 3 it must agree with
    # the three-ordering shortcut (tested).
    return all(
        m_equivalent(w, w2, ordering) for ordering in w.alphabet.orderings()
    )
