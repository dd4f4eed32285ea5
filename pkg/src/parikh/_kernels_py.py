"""Pure-Python kernels.

Every function here operates on rank-encoded words: ``bytes`` whose values
are 0-based letter ranks (0 .. k-1).  The compiled module ``_ckernels``
implements the same API; ``_backend`` picks one at import time.

Counts are kept within signed 64-bit range.  Exceeding it raises
``OverflowError`` instead of silently wrapping, so both backends agree.
"""

INT64_MAX = 2**63 - 1

BACKEND = "python"

# Rank permutations of the three orderings that decide strong M-equivalence
# on a ternary alphabet, as maps: registration rank -> ordering rank.
_TERNARY_RANK_MAPS = ((0, 1, 2), (1, 0, 2), (0, 2, 1))

# The six length-3 rank patterns, lexicographically ordered.
PATTERNS3 = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)


def _checked_add(a, b):
    c = a + b
    if c > INT64_MAX:
        raise OverflowError("count exceeds signed 64-bit range")
    return c


def count_subword(w: bytes, v: bytes) -> int:
    """Number of increasing index tuples in w spelling v; 1 for empty v."""
    m = len(v)
    # dp[j] = ways to match the first j letters of v so far
    dp = [0] * (m + 1)
    dp[0] = 1
    for letter in w:
        for j in range(m, 0, -1):
            if v[j - 1] == letter:
                dp[j] = _checked_add(dp[j], dp[j - 1])
    return dp[m]


def parikh_matrix(w: bytes, k: int) -> list:
    """(k+1)x(k+1) unitriangular matrix of w as nested lists.

    Built as the left-to-right product of letter matrices; appending the
    letter of rank r adds column r to column r+1.
    """
    n = k + 1
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for r in w:
        for i in range(r + 1):
            row = mat[i]
            row[r + 1] = _checked_add(row[r + 1], row[r])
    return mat


def m_equivalent(u: bytes, v: bytes, k: int) -> bool:
    """Entrywise equality of the two Parikh matrices."""
    if len(u) != len(v):
        return False
    return parikh_matrix(u, k) == parikh_matrix(v, k)


def strong_equivalent_ternary(u: bytes, v: bytes) -> bool:
    """Strong M-equivalence of two registration-encoded ternary words,
    decided through the three sufficient orderings."""
    if len(u) != len(v):
        return False
    for rank_map in _TERNARY_RANK_MAPS:
        pu = bytes(rank_map[x] for x in u)
        pv = bytes(rank_map[x] for x in v)
        if parikh_matrix(pu, 3) != parikh_matrix(pv, 3):
            return False
    return True


def pattern_counts3(w: bytes) -> tuple:
    """Counts of the six rank patterns 012, 021, 102, 120, 201, 210 in w,
    computed in one streaming pass."""
    singles = [0, 0, 0]
    pairs = [[0] * 3 for _ in range(3)]
    triples = [0] * 6
    for x in w:
        for t, (a, b, c) in enumerate(PATTERNS3):
            if c == x:
                triples[t] = _checked_add(triples[t], pairs[a][b])
        for a in range(3):
            if a != x:
                pairs[a][x] = _checked_add(pairs[a][x], singles[a])
        singles[x] += 1
    return tuple(triples)


def alpha_beta_sites(w: bytes) -> list:
    """All (i, j) with disjoint two-letter blocks at i and j holding the
    same two distinct letters in opposite orders."""
    n = len(w)
    sites = []
    for i in range(n - 3):
        a, b = w[i], w[i + 1]
        if a == b:
            continue
        for j in range(i + 2, n - 1):
            if w[j] == b and w[j + 1] == a:
                sites.append((i, j))
    return sites


def se_sites(w: bytes) -> list:
    """Like alpha_beta_sites, but the interior between the blocks may use
    only the two swapped letters."""
    n = len(w)
    sites = []
    for i in range(n - 3):
        a, b = w[i], w[i + 1]
        if a == b:
            continue
        for j in range(i + 2, n - 1):
            if w[j] == b and w[j + 1] == a:
                sites.append((i, j))
            if w[j] != a and w[j] != b:
                break
    return sites


def swap_adjacent_pairs(w: bytes, positions) -> bytes:
    """Exchange w[p] and w[p+1] for every p in positions (disjoint blocks)."""
    out = bytearray(w)
    for p in positions:
        out[p], out[p + 1] = out[p + 1], out[p]
    return bytes(out)


def se_neighbors(w: bytes) -> list:
    """One-step swap neighbors of w: (neighbor, i, j) per admissible site."""
    return [(swap_adjacent_pairs(w, (i, j)), i, j) for i, j in se_sites(w)]
