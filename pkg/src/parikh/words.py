"""Alphabets, ordered alphabets, words, and subword/factor counting.

Letters are single characters registered on an :class:`Alphabet`; the
registration order is the canonical identity of the alphabet and is what
"first/second/third letter" means throughout the package.  A total order
used by the matrix mapping is a separate :class:`OrderedAlphabet` value.

All values are immutable; all operations are pure functions.  Positions
are 0-based everywhere, including error messages.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from parikh._backend import kernels
from parikh.errors import (
    AlphabetMismatchError,
    DegenerateError,
    MembershipError,
    ParikhError,
)


@dataclass(frozen=True)
class Alphabet:
    """A finite set of distinct single-character letters, in registration
    order."""

    letters: tuple[str, ...]

    def __init__(self, letters):
        object.__setattr__(self, "letters", tuple(letters))
        if not self.letters:
            raise ParikhError("alphabet must contain at least one letter")
        for ch in self.letters:
            if not isinstance(ch, str) or len(ch) != 1:
                raise ParikhError(f"letter {ch!r} is not a single character")
        if len(set(self.letters)) != len(self.letters):
            raise ParikhError("alphabet letters must be distinct")

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        return cls(text)

    @property
    def size(self) -> int:
        return len(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._index

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)

    @cached_property
    def _index(self) -> dict:
        return {ch: i for i, ch in enumerate(self.letters)}

    @cached_property
    def _encode_table(self) -> dict:
        return {ord(ch): chr(i) for i, ch in enumerate(self.letters)}

    def index(self, letter: str) -> int:
        """Registration index of a letter (0-based)."""
        try:
            return self._index[letter]
        except KeyError:
            raise MembershipError(letter) from None

    def word(self, text: str) -> "Word":
        return parse_word(text, self)

    def orderings(self) -> list["OrderedAlphabet"]:
        """All size! total orders of this alphabet, registration-first."""
        return [OrderedAlphabet(self, p) for p in permutations(self.letters)]


@dataclass(frozen=True)
class OrderedAlphabet:
    """An alphabet together with a total order on its letters.

    ``order`` lists the letters from smallest to largest; rank r (1-based)
    is the letter ``order[r-1]``.
    """

    base: Alphabet
    order: tuple[str, ...]

    def __init__(self, base: Alphabet, order):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "order", tuple(order))
        if sorted(self.order) != sorted(base.letters):
            raise ParikhError(
                f"order {''.join(self.order)!r} is not a permutation of "
                f"alphabet {base}"
            )

    @classmethod
    def from_string(cls, text: str, base: Alphabet | None = None) -> "OrderedAlphabet":
        """Parse a '<'-separated order like ``"b<a<c"``.

        Without an explicit base alphabet, the letters are registered in
        ASCII order.
        """
        letters = tuple(text.split("<"))
        if base is None:
            base = Alphabet(sorted(letters))
        return cls(base, letters)

    @property
    def size(self) -> int:
        return self.base.size

    def __str__(self) -> str:
        return "<".join(self.order)

    @cached_property
    def _rank(self) -> dict:
        return {ch: i for i, ch in enumerate(self.order)}

    @cached_property
    def _encode_table(self) -> dict:
        return {ord(ch): chr(i) for i, ch in enumerate(self.order)}

    def rank_index(self, letter: str) -> int:
        """0-based rank of a letter under this order."""
        try:
            return self._rank[letter]
        except KeyError:
            raise MembershipError(letter) from None

    def encode(self, word: "Word") -> bytes:
        """Rank-encode a word over this alphabet for the kernels."""
        if word.alphabet != self.base:
            raise AlphabetMismatchError(
                "word and ordering use different alphabets"
            )
        return word.symbols.translate(self._encode_table).encode("latin-1")


@dataclass(frozen=True)
class Word:
    """An immutable word over a declared alphabet."""

    alphabet: Alphabet
    symbols: str

    def __init__(self, alphabet: Alphabet, symbols: str = ""):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "symbols", str(symbols))
        for pos, ch in enumerate(self.symbols):
            if ch not in alphabet:
                raise MembershipError(ch, pos)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.symbols

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.symbols[item])
        return self.symbols[item]

    def __iter__(self):
        return iter(self.symbols)

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError("cannot concatenate across alphabets")
        return Word(self.alphabet, self.symbols + other.symbols)

    @cached_property
    def encoded(self) -> bytes:
        """Registration-rank encoding used by the kernels."""
        return self.symbols.translate(self.alphabet._encode_table).encode(
            "latin-1"
        )

    def letter_count(self, letter: str) -> int:
        self.alphabet.index(letter)
        return self.symbols.count(letter)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Build the word whose symbols are exactly the characters of text."""
    return Word(alphabet, text)


def _require_same_alphabet(w: Word, v: Word) -> None:
    if w.alphabet != v.alphabet:
        raise AlphabetMismatchError("words use different alphabets")


def count_subword(w: Word, v: Word, *, naive: bool = False) -> int:
    """|w|_v: occurrences of v in w as a scattered subword.

    Occurrences are strictly increasing position tuples; the empty word
    occurs exactly once in anything.  ``naive=True`` switches to the
    exponential index-tuple enumeration kept as a testing oracle.
    """
    _require_same_alphabet(w, v)
    if naive:
        return sum(
            1
            for positions in combinations(range(len(w)), len(v))
            if all(w.symbols[p] == ch for p, ch in zip(positions, v.symbols))
        )
    return kernels.count_subword(w.encoded, v.encoded)


def count_factor(w: Word, v: Word) -> int:
    """Number of start positions at which v occurs as a contiguous factor
    of w; overlapping occurrences all count."""
    _require_same_alphabet(w, v)
    if len(v) == 0:
        raise DegenerateError("factor counting needs a nonempty pattern")
    count = 0
    start = w.symbols.find(v.symbols)
    while start != -1:
        count += 1
        start = w.symbols.find(v.symbols, start + 1)
    return count


def parikh_vector(w: Word, ordering: OrderedAlphabet) -> tuple[int, ...]:
    """Letter counts of w indexed by the ordering's ranks."""
    if w.alphabet != ordering.base:
        raise AlphabetMismatchError("word and ordering use different alphabets")
    return tuple(w.symbols.count(ch) for ch in ordering.order)
