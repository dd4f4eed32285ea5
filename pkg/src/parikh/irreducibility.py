"""Per-block (p, q) accounting of strong pair swaps: validity, reducibility
into smaller strong swaps, decomposition into irreducible stages, the
structural test for irreducible two-factor swaps, and the example family
generators.

For a block family over a letter pair, p sums the change in pair-subword
count and q the change in pair-then-third-letter count; the swap is a
strong transformation exactly when both totals vanish, and it splits into
smaller ones exactly when a proper nonempty subfamily already balances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from parikh.errors import (
    CapError,
    DegenerateError,
    LengthMismatchError,
    RangeError,
    ShapeError,
    TernaryOnlyError,
)
from parikh.search import Status, _difference_blocks, mse_equivalent
from parikh.transforms import (
    FactorSpan,
    SwapSpec,
    TripleClass,
    TripleFactorSpec,
    _apply_blocks,
    _block_pq,
    apply_strong_2t,
    apply_strong_3t,
)
from parikh.words import Alphabet, Word

SUBSET_SEARCH_CAP = 24

_DEFAULT_TERNARY = Alphabet("abc")


class PQPair(NamedTuple):
    p: int
    q: int


@dataclass(frozen=True)
class ReducibilityReport:
    """Validity and reducibility of a block family.

    ``witness`` is the lexicographically smallest proper nonempty set of
    block indices whose p and q values both sum to zero; present exactly
    when the (valid) transformation is reducible.
    """

    valid: bool
    reducible: bool
    witness: tuple[int, ...] | None = None


class TransformedPair(NamedTuple):
    """A generated example: a word, its rewriting image, and the spec
    realizing the rewriting."""

    word: Word
    image: Word
    spec: object


def compute_pq_pairs(w: Word, spec: SwapSpec) -> list[PQPair]:
    """The per-block (p, q) values, blocks taken left to right."""
    return [PQPair(p, q) for p, q in _block_pq(w, spec)]


def _lex_smallest_zero_subset(
    pq, exact_size: int | None = None, proper: bool = True
) -> tuple[int, ...] | None:
    """Lexicographically smallest nonempty index set with zero p and q
    subsums, optionally of an exact size; include-first DFS, so the first
    complete subset found is the smallest."""
    m = len(pq)
    suffix_pos_p = [0] * (m + 1)
    suffix_neg_p = [0] * (m + 1)
    suffix_pos_q = [0] * (m + 1)
    suffix_neg_q = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        p, q = pq[i]
        suffix_pos_p[i] = suffix_pos_p[i + 1] + max(p, 0)
        suffix_neg_p[i] = suffix_neg_p[i + 1] + min(p, 0)
        suffix_pos_q[i] = suffix_pos_q[i + 1] + max(q, 0)
        suffix_neg_q[i] = suffix_neg_q[i + 1] + min(q, 0)

    chosen: list[int] = []

    def rec(i: int, count: int, sum_p: int, sum_q: int):
        if i == m:
            if (
                count > 0
                and (not proper or count < m)
                and (exact_size is None or count == exact_size)
                and sum_p == 0
                and sum_q == 0
            ):
                return tuple(chosen)
            return None
        if exact_size is not None:
            if count > exact_size or count + (m - i) < exact_size:
                return None
        if sum_p + suffix_neg_p[i] > 0 or sum_p + suffix_pos_p[i] < 0:
            return None
        if sum_q + suffix_neg_q[i] > 0 or sum_q + suffix_pos_q[i] < 0:
            return None
        chosen.append(i)
        hit = rec(i + 1, count + 1, sum_p + pq[i][0], sum_q + pq[i][1])
        chosen.pop()
        if hit is not None:
            return hit
        return rec(i + 1, count, sum_p, sum_q)

    return rec(0, 0, 0, 0)


def analyze(w: Word, spec: SwapSpec) -> ReducibilityReport:
    """Validity (zero p and q totals) and reducibility (a proper nonempty
    zero-subsum subfamily exists, found by exhaustive subset search)."""
    if len(spec.blocks) > SUBSET_SEARCH_CAP:
        raise CapError(
            f"{len(spec.blocks)} blocks exceed the subset search cap "
            f"{SUBSET_SEARCH_CAP}"
        )
    pq = _block_pq(w, spec)
    if sum(p for p, _ in pq) != 0 or sum(q for _, q in pq) != 0:
        return ReducibilityReport(valid=False, reducible=False)
    witness = _lex_smallest_zero_subset(pq)
    return ReducibilityReport(
        valid=True, reducible=witness is not None, witness=witness
    )


def decompose(w: Word, spec: SwapSpec) -> list[tuple[Word, SwapSpec]]:
    """Split a valid block family into irreducible stages.

    Returns [(word_0, spec_1), (word_1, spec_2), ...] where word_0 = w and
    each following word applies the preceding stage; the composition of
    all stages equals the one-shot application.  Stages are extracted as
    smallest (hence irreducible) zero-subsum subfamilies, smallest index
    sets first.
    """
    if not spec.blocks:
        raise DegenerateError("at least one block pair is required")
    report = analyze(w, spec)
    if not report.valid:
        pq = _block_pq(w, spec)
        raise ShapeError(
            "cannot decompose an unbalanced family "
            f"(sum p = {sum(p for p, _ in pq)}, "
            f"sum q = {sum(q for _, q in pq)})"
        )
    pq = _block_pq(w, spec)
    remaining = list(range(len(spec.blocks)))
    stages = []
    current = w
    while remaining:
        local = [pq[i] for i in remaining]
        subset = None
        for size in range(2, len(remaining) + 1, 2):
            subset = _lex_smallest_zero_subset(
                local, exact_size=size, proper=False
            )
            if subset is not None:
                break
        assert subset is not None  # the whole remainder always balances
        indices = [remaining[i] for i in subset]
        stage_spec = SwapSpec(
            spec.letter_pair, [spec.blocks[i] for i in indices]
        )
        stages.append((current, stage_spec))
        current = _apply_blocks(current, stage_spec)
        remaining = [i for i in remaining if i not in set(indices)]
    return stages


def check_irreducible_22_structure(w: Word, w2: Word) -> bool:
    """Whether w and w2 differ by an irreducible two-factor strong swap:
    four blocks over one letter pair in mirror pattern (xy, yx, yx, xy)
    whose first and third interiors carry equal, positive counts of the
    remaining letter."""
    if w.alphabet.size != 3:
        raise TernaryOnlyError("the structural test is ternary-only")
    if len(w) != len(w2):
        raise LengthMismatchError(f"|w| = {len(w)} but |w'| = {len(w2)}")
    blocks = _difference_blocks(w, w2)
    if blocks is None or len(blocks) != 4:
        return False
    contents = [(w.symbols[p], w.symbols[p + 1]) for p in blocks]
    pairset = set(contents[0])
    if any(set(c) != pairset for c in contents[1:]):
        return False
    if not (
        contents[0] == contents[3]
        and contents[1] == contents[2]
        and contents[0] != contents[1]
    ):
        return False
    (third,) = set(w.alphabet.letters) - pairset
    inner1 = w.symbols[blocks[0] + 2 : blocks[1]].count(third)
    inner3 = w.symbols[blocks[2] + 2 : blocks[3]].count(third)
    return inner1 == inner3 > 0


def gen_irreducible_family(
    t: int, alphabet: Alphabet = _DEFAULT_TERNARY
) -> TransformedPair:
    """The irreducible t-factor family: (xy)^(t-1) z (yx)^t z^(t-1) xy and
    its full swap image; t = 1 degenerates to the minimal pair xyyx/yxxy."""
    if t < 1:
        raise RangeError(f"t must be positive (got {t})")
    if alphabet.size != 3:
        raise TernaryOnlyError("the family is ternary-only")
    x, y, z = alphabet.letters
    if t == 1:
        word = Word(alphabet, x + y + y + x)
        positions = (0, 2)
    else:
        word = Word(
            alphabet,
            (x + y) * (t - 1) + z + (y + x) * t + z * (t - 1) + x + y,
        )
        positions = tuple(
            2 * i for i in range(t - 1)
        ) + tuple(
            2 * (t - 1) + 1 + 2 * i for i in range(t)
        ) + (5 * t - 2,)
    spec = SwapSpec.from_word(word, (x, y), positions)
    return TransformedPair(word, apply_strong_2t(word, spec), spec)


def gen_not3t_family(
    t: int, alphabet: Alphabet = _DEFAULT_TERNARY
) -> TransformedPair:
    """Pairs related by a strong pair swap that no triple-factor rule can
    produce: (xyzyxyxzxy)^t and its image."""
    if t < 1:
        raise RangeError(f"t must be positive (got {t})")
    if alphabet.size != 3:
        raise TernaryOnlyError("the family is ternary-only")
    x, y, z = alphabet.letters
    period = x + y + z + y + x + y + x + z + x + y
    word = Word(alphabet, period * t)
    positions = tuple(
        10 * p + off for p in range(t) for off in (0, 3, 5, 8)
    )
    spec = SwapSpec.from_word(word, (x, y), positions)
    return TransformedPair(word, apply_strong_2t(word, spec), spec)


def gen_not2t_family(
    m: int, alphabet: Alphabet = _DEFAULT_TERNARY
) -> TransformedPair:
    """Pairs related by a triple-factor swap that no strong pair swap can
    produce: x^m yzyxyzxzyzxyx z^m and its image."""
    if m < 1:
        raise RangeError(f"m must be positive (got {m})")
    if alphabet.size != 3:
        raise TernaryOnlyError("the family is ternary-only")
    x, y, z = alphabet.letters
    core = y + z + y + x + y + z + x + z + y + z + x + y + x
    word = Word(alphabet, x * m + core + z * m)
    spec = TripleFactorSpec(
        [
            FactorSpan(m - 1, m + 3, TripleClass.AB),
            FactorSpan(m + 4, m + 8, TripleClass.BC),
            FactorSpan(m + 9, m + 13, TripleClass.CA),
        ]
    )
    return TransformedPair(word, apply_strong_3t(word, spec), spec)


def verify_strong_not_mse(
    w: Word, spec: SwapSpec, node_cap: int | None = None
) -> tuple[Word, bool]:
    """Apply a strong pair swap whose shape guarantees the image is out of
    reach of elementary swaps, and certify that by exhausting the closure.

    The shape pairs consecutive blocks into factors; every factor interior
    must carry at most one occurrence of the third letter, at least one
    factor exactly one, and every gap between factors at most one.
    Returns the image and True when the closure enumeration confirms the
    image is unreachable.
    """
    if w.alphabet.size != 3:
        raise TernaryOnlyError("this construction is ternary-only")
    blocks = spec.blocks
    if not blocks or len(blocks) % 2:
        raise ShapeError("blocks must pair up into factors")
    (third,) = set(w.alphabet.letters) - set(spec.letter_pair)

    interior_counts = []
    gap_counts = []
    prev_end = 0
    for k in range(0, len(blocks), 2):
        left, right = blocks[k], blocks[k + 1]
        if left.kind == right.kind:
            raise ShapeError(
                f"blocks at {left.pos} and {right.pos} do not mirror each "
                "other"
            )
        gap_counts.append(w.symbols[prev_end : left.pos].count(third))
        interior_counts.append(
            w.symbols[left.pos + 2 : right.pos].count(third)
        )
        prev_end = right.pos + 2
    gap_counts.append(w.symbols[prev_end:].count(third))

    if any(c > 1 for c in interior_counts):
        raise ShapeError("a factor interior has more than one third letter")
    if 1 not in interior_counts:
        raise ShapeError("no factor interior has exactly one third letter")
    if any(c > 1 for c in gap_counts):
        raise ShapeError("a gap between factors has more than one third letter")

    image = apply_strong_2t(w, spec)
    outcome = mse_equivalent(w, image, node_cap)
    if outcome.status is Status.CAPPED:
        raise CapError("closure enumeration hit the node cap")
    return image, outcome.status is Status.EXHAUSTED
