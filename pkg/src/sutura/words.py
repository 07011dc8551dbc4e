"""Words over {-,+}, their orders, and Catalan/Narayana combinatorics.

A word of length n with n- minus signs and n+ plus signs indexes a basis
element of the GF(2) space of chord diagrams with n+1 chords and euler
class e = n+ - n-.  Symbols are stored as bits: 0 for '-', 1 for '+', so
tuple comparison is exactly lexicographic order with '-' before '+'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import GradingMismatch, LengthMismatch, NotComparable, NotMonotone, ParseError

MINUS = 0
PLUS = 1

_SYMBOLS = {"-": MINUS, "+": PLUS}
_CHARS = {MINUS: "-", PLUS: "+"}


class Word:
    """Immutable word over {-,+} with derived gradings."""

    __slots__ = ("bits",)

    def __init__(self, bits=()):
        self.bits: tuple[int, ...] = tuple(bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ParseError("word bits must be 0 (-) or 1 (+)")

    @classmethod
    def parse(cls, text: str) -> "Word":
        try:
            return cls(_SYMBOLS[ch] for ch in text.strip())
        except KeyError as exc:
            raise ParseError(f"bad word symbol {exc.args[0]!r}") from exc

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def n_plus(self) -> int:
        return sum(self.bits)

    @property
    def n_minus(self) -> int:
        return self.n - self.n_plus

    @property
    def e(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def grading(self) -> tuple[int, int]:
        return (self.n_minus, self.n_plus)

    def minus_positions(self) -> list[int]:
        """0-based positions of the minus signs, left to right."""
        return [i for i, b in enumerate(self.bits) if b == MINUS]

    def plus_positions(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b == PLUS]

    def prefix_sums(self) -> list[int]:
        """Running sum of +-1 values ("score after each inning")."""
        out, s = [], 0
        for b in self.bits:
            s += 1 if b == PLUS else -1
            out.append(s)
        return out

    def blocks(self) -> list[tuple[int, int]]:
        """Block exponents [(a1,b1),...,(ak,bk)] for (-)^a1 (+)^b1 ...

        a1 may be 0 (word starts with +) and bk may be 0 (word ends
        with -); all other exponents are nonzero.
        """
        out: list[tuple[int, int]] = []
        i, m = 0, len(self.bits)
        while i < m or not out:
            a = 0
            while i < m and self.bits[i] == MINUS:
                a += 1
                i += 1
            b = 0
            while i < m and self.bits[i] == PLUS:
                b += 1
                i += 1
            out.append((a, b))
            if i >= m:
                break
        return out

    def __str__(self) -> str:
        return "".join(_CHARS[b] for b in self.bits)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __lt__(self, other: "Word") -> bool:
        if len(self.bits) != len(other.bits):
            raise LengthMismatch("lexicographic order needs equal lengths")
        return self.bits < other.bits

    def __le__(self, other: "Word") -> bool:
        return self == other or self < other


def word(text: str) -> Word:
    """Shorthand parser, e.g. word("-+-")."""
    return Word.parse(text)


def _check_same_grading(w1: Word, w2: Word) -> None:
    if w1.grading != w2.grading:
        raise GradingMismatch(f"{w1} and {w2} have different (n-, n+)")


def partial_leq(w1: Word, w2: Word) -> bool:
    """w1 <= w2 in the minus-signs-move-right partial order."""
    _check_same_grading(w1, w2)
    return all(p <= q for p, q in zip(w1.minus_positions(), w2.minus_positions()))


def partial_leq_baseball(w1: Word, w2: Word) -> bool:
    """Same order via prefix sums: w2 never trails w1 at any inning."""
    _check_same_grading(w1, w2)
    return all(s2 >= s1 for s1, s2 in zip(w1.prefix_sums(), w2.prefix_sums()))


def lex_compare(w1: Word, w2: Word) -> int:
    """-1, 0 or 1 as w1 is lexicographically before, equal to or after w2."""
    if w1.n != w2.n:
        raise LengthMismatch("lexicographic order needs equal lengths")
    if w1.bits == w2.bits:
        return 0
    return -1 if w1.bits < w2.bits else 1

def all_words(n_minus: int, n_plus: int) -> list[Word]:
    """All words in W(n-, n+), in lexicographic order."""
    if n_minus < 0 or n_plus < 0:
        raise ValueError("negative sign counts")
    n = n_minus + n_plus
    out = []
    for plus_pos in itertools.combinations(range(n), n_plus):
        bits = [MINUS] * n
        for p in plus_pos:
            bits[p] = PLUS
        out.append(Word(bits))
    out.sort(key=lambda w: w.bits)
    return out


def catalan(n: int) -> int:
    """Number of chord diagrams with n chords (C_0 = C_1 = 1, C_2 = 2, ...)."""
    if n < 0:
        return 0
    return comb(2 * n, n) // (n + 1)


def narayana(n_chords: int, e: int) -> int:
    """Number of chord diagrams with given chord count and euler class.

    Returns 0 for impossible (n_chords, e) rather than raising, so the
    values can be summed freely.
    """
    if n_chords < 1:
        return 1 if (n_chords, e) == (0, 0) else 0
    n = n_chords - 1
    if abs(e) > n or (e + n) % 2 != 0:
        return 0
    k = (e + n) // 2
    return comb(n + 1, k + 1) * comb(n + 1, k) // (n + 1)


def narayana_recursive(n_chords: int, e: int, _memo={}) -> int:
    """The same numbers from the merge recursion (independent implementation)."""
    key = (n_chords, e)
    if key in _memo:
        return _memo[key]
    if n_chords <= 1:
        val = 1 if key in ((0, 0), (1, 0)) else 0
    else:
        n = n_chords - 1
        if abs(e) > n or (e + n) % 2 != 0:
            val = 0
        else:
            val = narayana_recursive(n, e - 1) + narayana_recursive(n, e + 1)
            for n1 in range(1, n):
                n2 = n - n1
                for e1 in range(-n1, n1 + 1):
                    val += narayana_recursive(n1, e1) * narayana_recursive(n2, e - e1)
    _memo[key] = val
    return val


def comparable_pairs(n_minus: int, n_plus: int) -> list[tuple[Word, Word]]:
    """All pairs (w0, w1) with w0 <= w1, in lexicographic order of pairs."""
    words = all_words(n_minus, n_plus)
    return [(w0, w1) for w0 in words for w1 in words if partial_leq(w0, w1)]


def pair_to_monotone(w0: Word, w1: Word) -> tuple[int, ...]:
    """Encode a comparable pair as a monotone staircase on {1..n+1}.

    Prepend '+' to both words; f(i) is the position (1-based) in the
    padded w1 of the j-th plus sign, where j counts plus signs of the
    padded w0 up to position i.  The result is monotone, satisfies
    f(i) <= i and takes n+ + 1 distinct values.
    """
    if not partial_leq(w0, w1):
        raise NotComparable(f"{w0} is not below {w1}")
    p0 = (PLUS,) + w0.bits
    p1 = (PLUS,) + w1.bits
    plus_pos_1 = [i + 1 for i, b in enumerate(p1) if b == PLUS]
    f = []
    j = 0
    for i, b in enumerate(p0):
        if b == PLUS:
            j += 1
        f.append(plus_pos_1[j - 1])
    return tuple(f)


def monotone_to_pair(f: tuple[int, ...]) -> tuple[Word, Word]:
    """Inverse of pair_to_monotone."""
    n1 = len(f)
    if n1 < 1:
        raise NotMonotone("empty function")
    prev = 0
    for i, v in enumerate(f, start=1):
        if v < prev or v > i or v < 1:
            raise NotMonotone(f"f is not a staircase at position {i}")
        prev = v
    if f[0] != 1:
        raise NotMonotone("f(1) must be 1")
    values = set(f)
    bits1 = [PLUS if i in values else MINUS for i in range(1, n1 + 1)]
    jumps = {i for i in range(1, n1 + 1) if f[i - 1] > (f[i - 2] if i >= 2 else 0)}
    bits0 = [PLUS if i in jumps else MINUS for i in range(1, n1 + 1)]
    w0 = Word(bits0[1:])
    w1 = Word(bits1[1:])
    if bits0[0] != PLUS or bits1[0] != PLUS:
        raise NotMonotone("decoded words lost their padding plus")
    return w0, w1


def count_monotone(n1: int, distinct: int) -> int:
    """Brute-force count of staircases f: [n1] -> [n1], f(i) <= i, with a
    prescribed number of distinct values.  Test oracle only."""
    count = 0
    for f in itertools.product(*(range(1, i + 1) for i in range(1, n1 + 1))):
        if all(f[i] >= f[i - 1] for i in range(1, n1)) and len(set(f)) == distinct:
            count += 1
    return count


@dataclass(frozen=True)
class WordInterval:
    """The interval {w : lower <= w <= upper} of W(n-, n+)."""

    lower: Word
    upper: Word
    members: frozenset[Word] = field(default_factory=frozenset)

    def sorted_members(self) -> list[Word]:
        return sorted(self.members, key=lambda w: w.bits)

    def leq(self, a: Word, b: Word) -> bool:
        return partial_leq(a, b)


def interval(w0: Word, w1: Word) -> WordInterval:
    """The poset interval [w0, w1] computed by filtering all of W(n-, n+)."""
    if not partial_leq(w0, w1):
        raise NotComparable(f"{w0} is not below {w1}")
    members = frozenset(
        w
        for w in all_words(w0.n_minus, w0.n_plus)
        if partial_leq(w0, w) and partial_leq(w, w1)
    )
    return WordInterval(w0, w1, members)


def minimum_word(n_minus: int, n_plus: int) -> Word:
    """(-)^n- (+)^n+, the unique minimum of W(n-, n+)."""
    return Word((MINUS,) * n_minus + (PLUS,) * n_plus)


def maximum_word(n_minus: int, n_plus: int) -> Word:
    """(+)^n+ (-)^n-, the unique maximum of W(n-, n+)."""
    return Word((PLUS,) * n_plus + (MINUS,) * n_minus)
