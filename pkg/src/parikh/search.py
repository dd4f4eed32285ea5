"""Bounded exhaustive searches and detectors.

The elementary-swap closure of a word (fixed letter multiset, fixed
length) is finite, so its breadth-first enumeration is a definitive
decision procedure at desk scale: "exhausted without reaching the target"
is a proof of inequivalence.  Counter-tracked block-swap search is only
depth-bounded, since intermediate words of a zero-sum derivation may
leave every equivalence class of interest.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum

from parikh._backend import kernels
from parikh.errors import (
    AlphabetMismatchError,
    CapError,
    LengthMismatchError,
    ParikhError,
    PatternError,
    TernaryOnlyError,
)
from parikh.matrices import m_equivalent, strongly_m_equivalent
from parikh.transforms import (
    Counter,
    FactorSpan,
    SwapSpec,
    TripleClass,
    TripleFactorSpec,
    _block_pq,
    apply_alpha_beta,
    apply_e1,
    apply_strong_2t,
    apply_strong_3t,
)
from parikh.words import Alphabet, OrderedAlphabet, Word

DEFAULT_NODE_CAP = 1_000_000
DEFAULT_MAX_STEPS = 6
DEFAULT_FACTOR_CAP = 16
CLASS_LENGTH_CAP = 14


def _node_cap(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("PARIKH_NODE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


class Status(Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    CAPPED = "capped"


class StepKind(Enum):
    SE = "SE"
    E1 = "E1"
    S2T = "S2T"
    S3T = "S3T"
    ALPHA_BETA = "ALPHA_BETA"


@dataclass(frozen=True)
class DerivationStep:
    """One rewriting step; ``data`` holds the step's position data."""

    kind: StepKind
    data: object
    counter: Counter | None = None


@dataclass(frozen=True)
class Derivation:
    start: Word
    steps: tuple[DerivationStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def words(self) -> list[Word]:
        """The full word chain, validating every step on the way."""
        chain = [self.start]
        for step in self.steps:
            chain.append(_apply_step(chain[-1], step))
        return chain

    def replay(self) -> Word:
        return self.words()[-1]

    def total_counter(self) -> Counter:
        total = Counter.zero()
        for step in self.steps:
            if step.counter is not None:
                total = total + step.counter
        return total


def _apply_step(word: Word, step: DerivationStep) -> Word:
    if step.kind is StepKind.SE:
        return _apply_se(word, *step.data)
    if step.kind is StepKind.ALPHA_BETA:
        result, counter = apply_alpha_beta(word, *step.data)
        if step.counter is not None and counter != step.counter:
            raise ParikhError(
                f"recorded counter {tuple(step.counter)} does not replay "
                f"(got {tuple(counter)})"
            )
        return result
    if step.kind is StepKind.E1:
        pos, ordering = step.data
        return apply_e1(word, pos, ordering)
    if step.kind is StepKind.S2T:
        return apply_strong_2t(word, step.data)
    if step.kind is StepKind.S3T:
        return apply_strong_3t(word, step.data)
    raise ParikhError(f"unknown step kind {step.kind}")


def _apply_se(word: Word, i: int, j: int) -> Word:
    """Apply one elementary swap: blocks at i and j hold a letter pair in
    opposite orders and the interior uses only those two letters."""
    s = word.symbols
    if not (0 <= i and i + 2 <= j and j + 1 < len(s)):
        raise PatternError(f"positions ({i}, {j}) out of range")
    a, b = s[i], s[i + 1]
    if a == b or s[j] != b or s[j + 1] != a:
        raise PatternError(f"positions ({i}, {j}) are not mirrored blocks")
    if any(ch not in (a, b) for ch in s[i + 2 : j]):
        raise PatternError(
            f"interior of ({i}, {j}) uses letters other than {a!r}, {b!r}"
        )
    out = list(s)
    out[i], out[i + 1] = out[i + 1], out[i]
    out[j], out[j + 1] = out[j + 1], out[j]
    return Word(word.alphabet, "".join(out))


@dataclass(frozen=True)
class SearchResult:
    status: Status
    derivation: Derivation | None = None
    explored: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    @property
    def definitive(self) -> bool:
        return self.status is not Status.CAPPED


def _decode(alphabet: Alphabet, enc: bytes) -> Word:
    return Word(alphabet, "".join(alphabet.letters[b] for b in enc))


def mse_equivalent(w: Word, w2: Word, node_cap: int | None = None) -> SearchResult:
    """Decide reachability under elementary swaps by enumerating the full
    closure of w.

    EXHAUSTED means the closure was fully enumerated (or the letter
    multisets already differ) without reaching w2, which is a definitive
    negative; CAPPED means the node cap was hit first.
    """
    if w.alphabet != w2.alphabet:
        raise AlphabetMismatchError("words use different alphabets")
    cap = _node_cap(node_cap)
    source, target = w.encoded, w2.encoded
    if sorted(source) != sorted(target):
        return SearchResult(Status.EXHAUSTED, explored=0)

    parents: dict[bytes, tuple[bytes, tuple[int, int]] | None] = {source: None}
    queue = deque([source])
    while queue:
        state = queue.popleft()
        if state == target:
            steps = []
            cursor = state
            while parents[cursor] is not None:
                prev, site = parents[cursor]
                steps.append(DerivationStep(StepKind.SE, site))
                cursor = prev
            steps.reverse()
            return SearchResult(
                Status.FOUND,
                Derivation(w, tuple(steps)),
                explored=len(parents),
            )
        for neighbor, i, j in sorted(kernels.se_neighbors(state)):
            if neighbor not in parents:
                if len(parents) >= cap:
                    return SearchResult(Status.CAPPED, explored=len(parents))
                parents[neighbor] = (state, (i, j))
                queue.append(neighbor)
    return SearchResult(Status.EXHAUSTED, explored=len(parents))


def msae_search(
    w: Word,
    w2: Word,
    max_steps: int = DEFAULT_MAX_STEPS,
    node_cap: int | None = None,
) -> SearchResult:
    """Search for a chain of counter-tracked block swaps from w to w2 whose
    counters sum to zero, up to max_steps swaps.

    EXHAUSTED means no such chain of at most max_steps swaps exists;
    it says nothing about longer chains.
    """
    if w.alphabet != w2.alphabet:
        raise AlphabetMismatchError("words use different alphabets")
    if w.alphabet.size != 3:
        raise TernaryOnlyError("counter-tracked search is ternary-only")
    cap = _node_cap(node_cap)
    source, target = w.encoded, w2.encoded
    if sorted(source) != sorted(target):
        return SearchResult(Status.EXHAUSTED, explored=0)

    zero = (0, 0, 0)
    start_state = (source, zero)
    if source == target:
        return SearchResult(Status.FOUND, Derivation(w, ()), explored=1)

    counts_cache: dict[bytes, tuple] = {}

    def counts3(enc: bytes) -> tuple:
        got = counts_cache.get(enc)
        if got is None:
            got = kernels.pattern_counts3(enc)
            counts_cache[enc] = got
        return got

    parents: dict[tuple, tuple | None] = {start_state: None}
    frontier = [start_state]
    for _ in range(max_steps):
        next_frontier = []
        for state in frontier:
            enc, acc = state
            old = counts3(enc)
            neighbors = []
            for i, j in kernels.alpha_beta_sites(enc):
                nxt = kernels.swap_adjacent_pairs(enc, (i, j))
                new = counts3(nxt)
                omega = (old[0] - new[0], old[1] - new[1], old[2] - new[2])
                total = (acc[0] + omega[0], acc[1] + omega[1], acc[2] + omega[2])
                neighbors.append(((nxt, total), (i, j), omega))
            neighbors.sort()
            for nstate, site, omega in neighbors:
                if nstate in parents:
                    continue
                if len(parents) >= cap:
                    return SearchResult(Status.CAPPED, explored=len(parents))
                parents[nstate] = (state, site, omega)
                if nstate[0] == target and nstate[1] == zero:
                    steps = []
                    cursor = nstate
                    while parents[cursor] is not None:
                        prev, psite, pomega = parents[cursor]
                        steps.append(
                            DerivationStep(
                                StepKind.ALPHA_BETA, psite, Counter(*pomega)
                            )
                        )
                        cursor = prev
                    steps.reverse()
                    return SearchResult(
                        Status.FOUND,
                        Derivation(w, tuple(steps)),
                        explored=len(parents),
                    )
                next_frontier.append(nstate)
        frontier = next_frontier
        if not frontier:
            break
    return SearchResult(Status.EXHAUSTED, explored=len(parents))


def _difference_blocks(w: Word, w2: Word):
    """Decompose the positional difference of two equal-length words into
    disjoint adjacent transposed blocks; None when impossible.

    Every maximal run of differing positions must tile into adjacent pairs
    (the tiling of a path is unique), each pair being a transposition of
    two distinct letters.
    """
    if len(w) != len(w2):
        raise LengthMismatchError(f"|w| = {len(w)} but |w'| = {len(w2)}")
    if w.alphabet != w2.alphabet:
        raise AlphabetMismatchError("words use different alphabets")
    s, s2 = w.symbols, w2.symbols
    diff = [i for i in range(len(s)) if s[i] != s2[i]]
    blocks = []
    run: list[int] = []
    for pos in diff + [None]:
        if run and (pos is None or pos != run[-1] + 1):
            if len(run) % 2:
                return None
            for p in run[::2]:
                if s[p] == s[p + 1] or s2[p] != s[p + 1] or s2[p + 1] != s[p]:
                    return None
                blocks.append(p)
            run = []
        if pos is not None:
            run.append(pos)
    return blocks


def detect_strong_2t(w: Word, w2: Word) -> SwapSpec | None:
    """Recover the block family of a strong pair swap taking w to w2, or
    None when the difference is not one."""
    if w.alphabet.size != 3:
        raise TernaryOnlyError("strong pair-swap detection is ternary-only")
    blocks = _difference_blocks(w, w2)
    if not blocks:
        return None
    pair = (w.symbols[blocks[0]], w.symbols[blocks[0] + 1])
    pairset = set(pair)
    for p in blocks[1:]:
        if {w.symbols[p], w.symbols[p + 1]} != pairset:
            return None
    spec = SwapSpec.from_word(w, pair, blocks)
    pq = _block_pq(w, spec)
    if sum(p for p, _ in pq) != 0 or sum(q for _, q in pq) != 0:
        return None
    return spec


_CLASS_BY_PAIR = {
    frozenset(cls.value): cls for cls in TripleClass
}


def detect_strong_3t(
    w: Word, w2: Word, factor_cap: int = DEFAULT_FACTOR_CAP
) -> TripleFactorSpec | None:
    """Recover a triple-factor family taking w to w2, or None.

    Exact for difference masks of at most factor_cap blocks; beyond that
    a CapError is raised.
    """
    if w.alphabet.size != 3:
        raise TernaryOnlyError("triple-factor detection is ternary-only")
    blocks = _difference_blocks(w, w2)
    if not blocks or len(blocks) % 2:
        return None
    if len(blocks) > factor_cap:
        raise CapError(
            f"difference mask has {len(blocks)} blocks, above the cap "
            f"{factor_cap}"
        )
    letters = w.alphabet.letters
    index = w.alphabet.index
    contents = [(w.symbols[p], w.symbols[p + 1]) for p in blocks]

    def pairings(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        i = free[0]
        rest = free[1:]
        for pos, j in enumerate(rest):
            if contents[j] != (contents[i][1], contents[i][0]):
                continue
            for tail in pairings(rest[:pos] + rest[pos + 1 :]):
                yield ((i, j),) + tail

    for matching in pairings(tuple(range(len(blocks)))):
        factors = []
        orientations = []
        sums = {TripleClass.AB: 0, TripleClass.BC: 0, TripleClass.CA: 0}
        for i, j in matching:
            cls = _CLASS_BY_PAIR[
                frozenset((index(contents[i][0]), index(contents[i][1])))
            ]
            canonical = (letters[cls.value[0]], letters[cls.value[1]])
            orientations.append(contents[i] == canonical)
            interior = w.symbols[blocks[i] + 2 : blocks[j]]
            sums[cls] += interior.count(letters[cls.third])
            factors.append(FactorSpan(blocks[i], blocks[j] + 1, cls))
        if any(orientations) != all(orientations):
            continue
        triple = (
            sums[TripleClass.AB],
            sums[TripleClass.BC],
            sums[TripleClass.CA],
        )
        if triple[0] == triple[1] == triple[2]:
            return TripleFactorSpec(factors)
    return None


def detect_alpha_beta_sites(w: Word) -> list[tuple[int, int]]:
    """All position pairs of disjoint blocks holding some letter pair in
    opposite orders."""
    return kernels.alpha_beta_sites(w.encoded)


def _anagrams(counts: list[int]):
    # Distinct permutations of the encoded multiset, lexicographically.
    total = sum(counts)
    prefix = bytearray(total)

    def rec(depth: int):
        if depth == total:
            yield bytes(prefix)
            return
        for r, c in enumerate(counts):
            if c:
                counts[r] = c - 1
                prefix[depth] = r
                yield from rec(depth + 1)
                counts[r] = c
    yield from rec(0)


def enumerate_class(
    w: Word, mode: str, ordering: OrderedAlphabet | None = None
) -> set[Word]:
    """Brute-force equivalence class of w among the rearrangements of its
    letters: mode "m" (equal matrix under the given ordering) or "strong"
    (equal matrices under every ordering)."""
    mode = mode.lower()
    if mode not in ("m", "strong"):
        raise ParikhError(f"unknown mode {mode!r}")
    if len(w) > CLASS_LENGTH_CAP:
        raise CapError(
            f"|w| = {len(w)} exceeds the enumeration cap {CLASS_LENGTH_CAP}"
        )
    k = w.alphabet.size
    members: set[Word] = set()
    if mode == "m":
        if ordering is None:
            raise ParikhError("mode 'm' needs an ordering")
        enc = ordering.encode(w)
        counts = [0] * k
        for b in enc:
            counts[b] += 1
        reference = kernels.parikh_matrix(enc, k)
        inverse = {i: ch for i, ch in enumerate(ordering.order)}
        for candidate in _anagrams(counts):
            if kernels.parikh_matrix(candidate, k) == reference:
                members.add(
                    Word(w.alphabet, "".join(inverse[b] for b in candidate))
                )
        return members

    enc = w.encoded
    counts = [0] * k
    for b in enc:
        counts[b] += 1
    if k == 3:
        for candidate in _anagrams(counts):
            if kernels.strong_equivalent_ternary(enc, candidate):
                members.add(_decode(w.alphabet, candidate))
        return members
    for candidate in _anagrams(counts):
        cand_word = _decode(w.alphabet, candidate)
        if strongly_m_equivalent(w, cand_word):
            members.add(cand_word)
    return members
