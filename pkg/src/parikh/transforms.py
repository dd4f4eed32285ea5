"""Rewriting rules on words: order-skipping exchanges, classic paired
block swaps under one ordering, the strong pair-swap and triple-factor
rules for ternary alphabets, and counter-tracked block swaps.

Every rule rewrites 2-letter blocks in place, so positions never shift:
all blocks of a single application are swapped against the original
word's indexing in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from parikh._backend import kernels
from parikh.errors import (
    DegenerateError,
    GroupingError,
    NotAlphaBetaError,
    NotE1Error,
    NotStrong2tError,
    NotStrong3tError,
    OverlapError,
    PatternError,
    RangeError,
    TernaryOnlyError,
)
from parikh.matrices import m_equivalent, strongly_m_equivalent
from parikh.words import OrderedAlphabet, Word


@dataclass(frozen=True)
class SwapBlock:
    """A two-letter block at positions pos, pos+1.

    ``kind`` is "ab" when the block holds the spec's letter pair in
    declared order and "ba" when it holds the reversal.
    """

    pos: int
    kind: str

    def __post_init__(self):
        if self.pos < 0:
            raise RangeError(f"block position {self.pos} is negative")
        if self.kind not in ("ab", "ba"):
            raise PatternError(f"unknown block kind {self.kind!r}")

    def flipped(self) -> "SwapBlock":
        return SwapBlock(self.pos, "ba" if self.kind == "ab" else "ab")


@dataclass(frozen=True)
class SwapSpec:
    """A family of disjoint two-letter blocks over one letter pair."""

    letter_pair: tuple[str, str]
    blocks: tuple[SwapBlock, ...]

    def __init__(self, letter_pair, blocks):
        object.__setattr__(self, "letter_pair", tuple(letter_pair))
        object.__setattr__(self, "blocks", tuple(blocks))
        if len(self.letter_pair) != 2 or self.letter_pair[0] == self.letter_pair[1]:
            raise PatternError("letter pair must be two distinct letters")
        prev_end = -1
        for block in self.blocks:
            if block.pos <= prev_end:
                raise OverlapError(
                    f"block at {block.pos} overlaps the previous one"
                )
            prev_end = block.pos + 1

    @classmethod
    def from_word(cls, word: Word, pair, positions) -> "SwapSpec":
        """Build a spec at the given block positions, reading each block's
        kind off the word."""
        pair = tuple(pair)
        blocks = []
        for pos in sorted(positions):
            content = _block_content(word, pos)
            if content == pair:
                blocks.append(SwapBlock(pos, "ab"))
            elif content == (pair[1], pair[0]):
                blocks.append(SwapBlock(pos, "ba"))
            else:
                raise PatternError(
                    f"block at {pos} reads {''.join(content)!r}, not the "
                    f"pair {''.join(pair)!r} in either order"
                )
        return cls(pair, blocks)

    @property
    def t(self) -> int:
        """Number of factors: half the block count."""
        return len(self.blocks) // 2

    def positions(self) -> tuple[int, ...]:
        return tuple(block.pos for block in self.blocks)

    def flipped(self) -> "SwapSpec":
        """The spec describing the reverse rewriting (kinds inverted)."""
        return SwapSpec(
            self.letter_pair, tuple(block.flipped() for block in self.blocks)
        )


class TripleClass(Enum):
    """Shape class of a triple-rule factor, named by the registration
    indices of its boundary letter pair."""

    AB = (0, 1)
    BC = (1, 2)
    CA = (2, 0)

    @property
    def third(self) -> int:
        """Registration index of the letter counted in this class's
        interiors."""
        return 3 - self.value[0] - self.value[1]


@dataclass(frozen=True)
class FactorSpan:
    """An inclusive span [start, end] of a triple-rule factor."""

    start: int
    end: int
    cls: TripleClass

    def __post_init__(self):
        if self.start < 0:
            raise RangeError(f"factor start {self.start} is negative")
        if self.end < self.start + 3:
            raise RangeError(
                "factor spans must cover at least four positions "
                f"(got {self.start}..{self.end})"
            )

    def boundary_positions(self) -> tuple[int, int, int, int]:
        return (self.start, self.start + 1, self.end - 1, self.end)


@dataclass(frozen=True)
class TripleFactorSpec:
    """A family of factors for the triple rule, with pairwise disjoint
    boundary blocks.

    Interiors are unrestricted; in particular a factor's interior may
    contain another factor's boundary blocks.
    """

    factors: tuple[FactorSpan, ...]

    def __init__(self, factors):
        factors = tuple(sorted(factors, key=lambda f: (f.start, f.end)))
        object.__setattr__(self, "factors", factors)
        taken: set[int] = set()
        for factor in factors:
            positions = factor.boundary_positions()
            if taken.intersection(positions):
                raise OverlapError(
                    f"boundary blocks of factor {factor.start}..{factor.end} "
                    "overlap another factor's boundary"
                )
            taken.update(positions)

    @property
    def t(self) -> int:
        return len(self.factors)


class Counter(NamedTuple):
    """Subword-count changes (old minus new) of the three tracked patterns
    xyz, xzy, yxz over the registration letters (x, y, z)."""

    d_abc: int
    d_acb: int
    d_bac: int

    def __add__(self, other):
        return Counter(
            self.d_abc + other.d_abc,
            self.d_acb + other.d_acb,
            self.d_bac + other.d_bac,
        )

    def __neg__(self):
        return Counter(-self.d_abc, -self.d_acb, -self.d_bac)

    @classmethod
    def zero(cls) -> "Counter":
        return cls(0, 0, 0)

    def is_zero(self) -> bool:
        return self == (0, 0, 0)


class SwapDeltas(NamedTuple):
    """Predicted subword-count changes (old minus new) of all six length-3
    patterns when an ab...ba site over the first two registration letters
    is swapped."""

    d_abc: int
    d_cba: int
    d_bac: int
    d_cab: int
    d_acb: int
    d_bca: int


def _block_content(word: Word, pos: int) -> tuple[str, str]:
    if pos < 0 or pos + 1 >= len(word):
        raise RangeError(f"block position {pos} out of range for |w| = {len(word)}")
    return (word.symbols[pos], word.symbols[pos + 1])


def _check_spec_on_word(word: Word, spec: SwapSpec) -> None:
    a, b = spec.letter_pair
    word.alphabet.index(a)
    word.alphabet.index(b)
    for block in spec.blocks:
        content = _block_content(word, block.pos)
        expected = (a, b) if block.kind == "ab" else (b, a)
        if content != expected:
            raise PatternError(
                f"block at {block.pos} reads {''.join(content)!r}, "
                f"expected {''.join(expected)!r}"
            )


def _apply_blocks(word: Word, spec: SwapSpec) -> Word:
    # Mechanical rewrite of every block, without any balance condition.
    _check_spec_on_word(word, spec)
    out = list(word.symbols)
    for block in spec.blocks:
        p = block.pos
        out[p], out[p + 1] = out[p + 1], out[p]
    return Word(word.alphabet, "".join(out))


def _block_pq(word: Word, spec: SwapSpec) -> list[tuple[int, int]]:
    """Per-block (p, q) values: p is -1 for a pair-order block and +1 for a
    reversed one; q is p times the count of the third letter strictly after
    the block."""
    if word.alphabet.size != 3:
        raise TernaryOnlyError("block accounting requires a ternary alphabet")
    _check_spec_on_word(word, spec)
    a, b = spec.letter_pair
    (third,) = set(word.alphabet.letters) - {a, b}
    # suffix[i] = occurrences of the third letter in word[i:]
    n = len(word)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + (1 if word.symbols[i] == third else 0)
    pairs = []
    for block in spec.blocks:
        p = -1 if block.kind == "ab" else 1
        pairs.append((p, p * suffix[block.pos + 2]))
    return pairs


def apply_e1(w: Word, pos: int, ordering: OrderedAlphabet) -> Word:
    """Exchange the two letters at pos, pos+1, allowed only when their
    ranks differ by at least two; the result is M-equivalent under the
    given ordering."""
    x, y = _block_content(w, pos)
    if abs(ordering.rank_index(x) - ordering.rank_index(y)) < 2:
        raise NotE1Error(
            f"letters {x!r} and {y!r} are consecutive under {ordering}"
        )
    out = list(w.symbols)
    out[pos], out[pos + 1] = out[pos + 1], out[pos]
    result = Word(w.alphabet, "".join(out))
    assert m_equivalent(w, result, ordering)
    return result


def validate_classic_2t(
    w: Word,
    spec: SwapSpec,
    grouping,
    ordering: OrderedAlphabet,
) -> bool:
    """Check the side conditions of the classic paired block swap under one
    ordering.

    The spec's pair must consist of the ordering's middle letter and one
    outer letter.  ``grouping`` pairs block indices into factors, each a
    (left, right) tuple; every factor must read outer-middle ... middle-outer
    or the reverse, and the counts of the remaining letter inside the two
    factor types must balance.  Returns False when any condition fails;
    raises GroupingError only for structurally malformed groupings.
    """
    if ordering.size != 3:
        raise TernaryOnlyError("the classic paired swap is ternary-only")
    _check_spec_on_word(w, spec)
    middle = ordering.order[1]
    if middle not in spec.letter_pair:
        raise PatternError(
            f"letter pair {''.join(spec.letter_pair)!r} does not contain the "
            f"middle letter {middle!r} of {ordering}"
        )
    alpha = (
        spec.letter_pair[0]
        if spec.letter_pair[1] == middle
        else spec.letter_pair[1]
    )
    (other,) = set(w.alphabet.letters) - {alpha, middle}

    used = []
    for item in grouping:
        try:
            left, right = item
        except (TypeError, ValueError):
            raise GroupingError(f"grouping item {item!r} is not an index pair")
        if not (0 <= left < len(spec.blocks)) or not (0 <= right < len(spec.blocks)):
            raise GroupingError(f"block index out of range in {item!r}")
        if left >= right:
            raise GroupingError(
                f"factor {item!r} must list the left block first"
            )
        used.extend((left, right))
    if len(set(used)) != len(used):
        raise GroupingError("grouping reuses a block")
    if sorted(used) != list(range(len(spec.blocks))):
        return False  # some block is unpaired

    balance = 0
    for left, right in grouping:
        lb, rb = spec.blocks[left], spec.blocks[right]
        first = _block_content(w, lb.pos)
        last = _block_content(w, rb.pos)
        interior = w.symbols[lb.pos + 2 : rb.pos]
        if first == (alpha, middle) and last == (middle, alpha):
            balance += interior.count(other)
        elif first == (middle, alpha) and last == (alpha, middle):
            balance -= interior.count(other)
        else:
            return False  # factor ends do not mirror each other
    return balance == 0


def apply_strong_2t(w: Word, spec: SwapSpec) -> Word:
    """Swap every block of the spec simultaneously; valid exactly when the
    per-block (p, q) values sum to zero in both coordinates, and then the
    result is strongly M-equivalent to w."""
    pq = _block_pq(w, spec)
    sum_p = sum(p for p, _ in pq)
    sum_q = sum(q for _, q in pq)
    if sum_p != 0 or sum_q != 0:
        raise NotStrong2tError(sum_p, sum_q)
    result = _apply_blocks(w, spec)
    assert strongly_m_equivalent(w, result)
    return result


def apply_strong_3t(w: Word, spec: TripleFactorSpec) -> Word:
    """Reverse the boundary blocks of every factor simultaneously.

    Factors must all be in pattern orientation (xy ... yx for their class)
    or all reversed, and the interior counts must balance across the three
    classes: the AB-class counts of the third letter, the BC-class counts
    of the first, and the CA-class counts of the second must be equal,
    empty classes contributing zero.  The result is strongly M-equivalent
    to w.
    """
    if w.alphabet.size != 3:
        raise TernaryOnlyError("the triple-factor rule is ternary-only")
    if not spec.factors:
        raise DegenerateError("at least one factor is required")
    letters = w.alphabet.letters
    orientations = []
    sums = {TripleClass.AB: 0, TripleClass.BC: 0, TripleClass.CA: 0}
    for factor in spec.factors:
        if factor.end >= len(w):
            raise RangeError(
                f"factor {factor.start}..{factor.end} out of range for "
                f"|w| = {len(w)}"
            )
        i, j = factor.cls.value
        xy = (letters[i], letters[j])
        yx = (letters[j], letters[i])
        first = _block_content(w, factor.start)
        last = _block_content(w, factor.end - 1)
        if first == xy and last == yx:
            orientations.append(True)
        elif first == yx and last == xy:
            orientations.append(False)
        else:
            raise PatternError(
                f"factor {factor.start}..{factor.end} does not read "
                f"{''.join(xy)}...{''.join(yx)} in either orientation"
            )
        interior = w.symbols[factor.start + 2 : factor.end - 1]
        sums[factor.cls] += interior.count(letters[factor.cls.third])
    if any(orientations) and not all(orientations):
        raise PatternError("factors mix the two orientations")
    triple = (sums[TripleClass.AB], sums[TripleClass.BC], sums[TripleClass.CA])
    if not triple[0] == triple[1] == triple[2]:
        raise NotStrong3tError(triple)

    out = list(w.symbols)
    for factor in spec.factors:
        for p in (factor.start, factor.end - 1):
            out[p], out[p + 1] = out[p + 1], out[p]
    result = Word(w.alphabet, "".join(out))
    assert strongly_m_equivalent(w, result)
    return result


def apply_alpha_beta(w: Word, ab_pos: int, ba_pos: int) -> tuple[Word, Counter]:
    """Swap two disjoint blocks holding the same letter pair in opposite
    orders, and report the counter of subword-count changes."""
    if w.alphabet.size != 3:
        raise TernaryOnlyError("counters are defined over ternary alphabets")
    first = _block_content(w, ab_pos)
    second = _block_content(w, ba_pos)
    if ba_pos < ab_pos + 2:
        raise NotAlphaBetaError(
            f"blocks at {ab_pos} and {ba_pos} are not disjoint"
        )
    if first[0] == first[1] or second != (first[1], first[0]):
        raise NotAlphaBetaError(
            f"blocks read {''.join(first)!r} and {''.join(second)!r}, not a "
            "letter pair in opposite orders"
        )
    out = list(w.symbols)
    for p in (ab_pos, ba_pos):
        out[p], out[p + 1] = out[p + 1], out[p]
    result = Word(w.alphabet, "".join(out))

    old = kernels.pattern_counts3(w.encoded)
    new = kernels.pattern_counts3(result.encoded)
    # pattern_counts3 lists rank patterns lexicographically:
    # 012 (xyz), 021 (xzy), 102 (yxz), ...
    counter = Counter(old[0] - new[0], old[1] - new[1], old[2] - new[2])
    return result, counter


def predicted_swap_deltas(w: Word, ab_pos: int, ba_pos: int) -> SwapDeltas:
    """Predicted count changes for swapping a site that reads ab ... ba
    over the first two registration letters: the interior's third-letter
    count d gives (d, d, -d, -d, 0, 0) for xyz, zyx, yxz, zxy, xzy, yzx."""
    if w.alphabet.size != 3:
        raise TernaryOnlyError("delta prediction is ternary-only")
    a, b, c = w.alphabet.letters
    if _block_content(w, ab_pos) != (a, b) or _block_content(w, ba_pos) != (b, a):
        raise PatternError(
            f"positions {ab_pos}, {ba_pos} do not read {a}{b} ... {b}{a}"
        )
    if ba_pos < ab_pos + 2:
        raise PatternError(f"blocks at {ab_pos} and {ba_pos} are not disjoint")
    d = w.symbols[ab_pos + 2 : ba_pos].count(c)
    return SwapDeltas(d, d, -d, -d, 0, 0)
