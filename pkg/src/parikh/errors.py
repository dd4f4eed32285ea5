"""Exception hierarchy shared by every module in the package."""


class ParikhError(Exception):
    """Base class for all domain errors raised by this package."""


class MembershipError(ParikhError):
    """A character does not belong to the declared alphabet."""

    def __init__(self, letter, position=None):
        self.letter = letter
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"character {letter!r}{where} is not in the alphabet")


class AlphabetMismatchError(ParikhError):
    """Operands were built over different alphabets."""


class LengthMismatchError(ParikhError):
    """Operands must have equal length."""


class DegenerateError(ParikhError):
    """The input is degenerate for this operation (e.g. an empty pattern)."""


class RangeError(ParikhError):
    """A rank or position lies outside its admissible range."""


class TernaryOnlyError(ParikhError):
    """The operation is defined only for three-letter alphabets."""


class NotE1Error(ParikhError):
    """The two letters are consecutive in the ordering, so the swap is not
    an order-skipping exchange."""


class OverlapError(ParikhError):
    """Declared blocks overlap."""


class PatternError(ParikhError):
    """Word content does not match the declared block or factor pattern."""


class NotAlphaBetaError(ParikhError):
    """The two positions do not hold the same letter pair in opposite orders."""


class GroupingError(ParikhError):
    """A block grouping is structurally malformed."""


class ShapeError(ParikhError):
    """The word does not match the shape this construction requires."""


class NotStrong2tError(ParikhError):
    """The block family fails the balance condition for a strong pair swap."""

    def __init__(self, sum_p, sum_q):
        self.sum_p = sum_p
        self.sum_q = sum_q
        super().__init__(
            f"blocks do not balance: sum(p) = {sum_p}, sum(q) = {sum_q}"
        )


class NotStrong3tError(ParikhError):
    """The factor family fails the triple balance condition."""

    def __init__(self, sums):
        self.sums = tuple(sums)
        super().__init__(
            "factor groups do not balance: "
            f"sums = {self.sums[0]}, {self.sums[1]}, {self.sums[2]}"
        )


class CapError(ParikhError):
    """A search or enumeration exceeded its configured cap."""
