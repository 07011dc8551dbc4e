"""GF(2) spaces of chord diagrams: basis decomposition, graded operators,
the extreme-word correspondence, and the rotation operator.

Elements are finite sets of equal-length words (mod-2 sums of basis
vectors).  decompose() writes any diagram in this basis by repeatedly
peeling outermost chords at the base point and, when none exists there,
splitting along the bypass triple of the arc hugging the base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import basis as _basis
from .diagram import ChordDiagram, ZERO, euler_class, is_zero, rotate_points
from .errors import GradingMismatch, NotComparable, ZeroElement
from .words import (
    MINUS,
    PLUS,
    Word,
    all_words,
    partial_leq,
)

basis_diagram = _basis.basis_diagram
basis_diagram_from_root = _basis.basis_diagram_from_root


class SfhElement:
    """A mod-2 combination of basis vectors, stored as a set of words."""

    __slots__ = ("words",)

    def __init__(self, words=()):
        ws = frozenset(words)
        lengths = {w.n for w in ws}
        if len(lengths) > 1:
            raise GradingMismatch("mixed word lengths in one element")
        self.words: frozenset[Word] = ws

    @classmethod
    def zero(cls) -> "SfhElement":
        return cls()

    @classmethod
    def basis(cls, w: Word) -> "SfhElement":
        return cls((w,))

    def is_zero(self) -> bool:
        return not self.words

    def __bool__(self) -> bool:
        return bool(self.words)

    def __add__(self, other: "SfhElement") -> "SfhElement":
        return SfhElement(self.words ^ other.words)

    __xor__ = __add__

    def __eq__(self, other) -> bool:
        return isinstance(other, SfhElement) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=lambda w: w.bits)

    def grading(self) -> tuple[int, int] | None:
        """(n-, n+) when homogeneous (all members share it), else None."""
        gs = {w.grading for w in self.words}
        if len(gs) == 1:
            return gs.pop()
        return None

    def __repr__(self) -> str:
        return "SfhElement({" + ", ".join(str(w) for w in self.sorted_words()) + "})"


# -- decomposition -----------------------------------------------------------

_decompose_cache: dict[tuple[int, ...], frozenset[Word]] = {}


def _strip_plus_at_base(pairing: tuple[int, ...]) -> tuple[int, ...]:
    # remove chord (0, 1); every remaining label shifts down by 2
    return tuple(pairing[i + 2] - 2 for i in range(len(pairing) - 2))


def _strip_minus_at_base(pairing: tuple[int, ...]) -> tuple[int, ...]:
    # remove chord (2N-1, 0); old 2N-2 becomes the new base point
    m = len(pairing)
    relabel = {x: x for x in range(1, m - 2)}
    relabel[m - 2] = 0
    out = [0] * (m - 2)
    for old, new in relabel.items():
        out[new] = relabel[pairing[old]]
    return tuple(out)


def _split_at(pairing: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two bypass-surgery rewrites along the arc hugging point p.

    Requires no outermost chord at p, i.e. the chords through p-1, p, p+1
    are three distinct chords.  Returns the rewrites containing the new
    outermost chords (p-1, p) and (p, p+1) respectively.
    """
    m = len(pairing)
    lo, hi = (p - 1) % m, (p + 1) % m
    a, b, c = pairing[lo], pairing[p], pairing[hi]
    assert len({a, b, c} | {lo, p, hi}) == 6, "split needs three distinct chords"

    def rewire(pairs):
        out = list(pairing)
        for x, y in pairs:
            out[x], out[y] = y, x
        return tuple(out)

    minus_side = rewire([(lo, p), (hi, a), (b, c)])
    plus_side = rewire([(p, hi), (lo, c), (a, b)])
    return minus_side, plus_side


def _decompose_pairing(pairing: tuple[int, ...]) -> frozenset[Word]:
    cached = _decompose_cache.get(pairing)
    if cached is not None:
        return cached
    m = len(pairing)
    if m == 2:
        result = frozenset((Word(),))
    else:
        q = pairing[0]
        if q == 1:
            inner = _decompose_pairing(_strip_plus_at_base(pairing))
            result = frozenset(Word((PLUS,) + w.bits) for w in inner)
        elif q == m - 1:
            inner = _decompose_pairing(_strip_minus_at_base(pairing))
            result = frozenset(Word((MINUS,) + w.bits) for w in inner)
        else:
            left, right = _split_at(pairing, 0)
            result = _decompose_pairing(left) ^ _decompose_pairing(right)
    _decompose_cache[pairing] = result
    return result


def decompose(diagram) -> SfhElement:
    """The unique expression of a diagram in the word basis."""
    if is_zero(diagram):
        return SfhElement.zero()
    return SfhElement(_decompose_pairing(diagram.pairing))


_decompose_root_cache: dict[tuple[int, ...], frozenset[Word]] = {}


def decompose_from_root(diagram) -> SfhElement:
    """Basis decomposition computed from the root point (right to left)."""
    if is_zero(diagram):
        return SfhElement.zero()

    def rec(pairing: tuple[int, ...], e: int) -> frozenset[Word]:
        cached = _decompose_root_cache.get(pairing)
        if cached is not None:
            return cached
        m = len(pairing)
        if m == 2:
            result = frozenset((Word(),))
        else:
            n_chords = m // 2
            r = (e + n_chords) % m
            if pairing[(r - 1) % m] == r:
                trimmed = _remove_adjacent(pairing, (r - 1) % m)
                result = frozenset(Word(w.bits + (PLUS,)) for w in rec(trimmed, e - 1))
            elif pairing[r] == (r + 1) % m:
                trimmed = _remove_adjacent(pairing, r)
                result = frozenset(Word(w.bits + (MINUS,)) for w in rec(trimmed, e + 1))
            else:
                left, right = _split_at(pairing, r)
                result = rec(left, e) ^ rec(right, e)
        _decompose_root_cache[pairing] = result
        return result

    return SfhElement(rec(diagram.pairing, euler_class(diagram)))


def _remove_adjacent(pairing: tuple[int, ...], t: int) -> tuple[int, ...]:
    """Drop the outermost chord (t, t+1), shifting higher labels down.

    Valid for 1 <= t <= 2N-2 so the base point keeps its label.
    """
    m = len(pairing)
    assert 1 <= t <= m - 2 and pairing[t] == t + 1

    def relabel(x: int) -> int:
        return x if x < t else x - 2

    out = [0] * (m - 2)
    for i, p in enumerate(pairing):
        if i in (t, t + 1):
            continue
        out[relabel(i)] = relabel(p)
    return tuple(out)


def is_basis(diagram: ChordDiagram) -> bool:
    """True when the diagram is one of the basis diagrams."""
    return len(decompose(diagram).words) == 1


def phi(diagram) -> tuple[Word, Word]:
    """Lexicographic extremes (w-, w+) of the basis decomposition."""
    if is_zero(diagram):
        raise ZeroElement("zero has no extreme words")
    words = decompose(diagram).sorted_words()
    if not words:
        raise ZeroElement("empty decomposition")
    return words[0], words[-1]


def from_pair(w_minus: Word, w_plus: Word) -> ChordDiagram:
    """The unique diagram whose decomposition runs from w- to w+.

    Built as the downwards surgery along a minimal forwards bypass
    system from the w- basis diagram.
    """
    if not partial_leq(w_minus, w_plus):
        raise NotComparable(f"{w_minus} is not below {w_plus}")
    return _from_pair_cached(w_minus, w_plus)


@lru_cache(maxsize=None)
def _from_pair_cached(w_minus: Word, w_plus: Word) -> ChordDiagram:
    from . import arcs  # deferred: arcs imports basis construction data

    if w_minus == w_plus:
        return basis_diagram(w_minus)
    system = arcs.fbs(w_minus, w_plus)
    result = arcs.surgery_along_system(system, "down")
    assert not is_zero(result)
    return result


# -- graded operators ---------------------------------------------------------


@dataclass(frozen=True)
class GradedOperator:
    """A linear operator given by its action on basis words."""

    name: str
    shift: tuple[int, int]  # (delta n-, delta n+)
    word_action: Callable[[Word], frozenset[Word]]
    diagram_action: Callable[[ChordDiagram], object] | None = None

    def __call__(self, x: SfhElement) -> SfhElement:
        return apply_operator(self, x)


def apply_operator(op: GradedOperator, x: SfhElement) -> SfhElement:
    """Linear (XOR) extension of the operator's word action."""
    acc: frozenset[Word] = frozenset()
    for w in x.words:
        acc ^= op.word_action(w)
    return SfhElement(acc)


def _one(w: Word) -> frozenset[Word]:
    return frozenset((w,))


def _b_minus_word(w: Word) -> frozenset[Word]:
    return _one(Word((MINUS,) + w.bits))


def _b_plus_word(w: Word) -> frozenset[Word]:
    return _one(Word((PLUS,) + w.bits))


def _a_plus_word(w: Word) -> frozenset[Word]:
    if w.bits and w.bits[0] == MINUS:
        return _one(Word(w.bits[1:]))
    return frozenset()


def _a_minus_word(w: Word) -> frozenset[Word]:
    if w.bits and w.bits[0] == PLUS:
        return _one(Word(w.bits[1:]))
    return frozenset()


def _b_minus_diag(d: ChordDiagram) -> ChordDiagram:
    m = 2 * d.n
    pairing = [-1] * (m + 2)
    pairing[m + 1], pairing[0] = 0, m + 1

    def f(x):
        return m if x == 0 else x

    for i, p in enumerate(d.pairing):
        pairing[f(i)] = f(p)
    return ChordDiagram(tuple(pairing))


def _b_plus_diag(d: ChordDiagram) -> ChordDiagram:
    m = 2 * d.n
    pairing = [-1] * (m + 2)
    pairing[0], pairing[1] = 1, 0
    for i, p in enumerate(d.pairing):
        pairing[i + 2] = p + 2
    return ChordDiagram(tuple(pairing))


def _a_plus_diag(d: ChordDiagram):
    # cap off the boundary between points 0 and 1
    m = 2 * d.n
    if d.pairing[0] == 1:
        return ZERO
    b, c = d.pairing[0], d.pairing[1]

    def relabel(x):
        if x == m - 2:
            return 0
        if x == m - 1:
            return 1
        return x

    out = [0] * (m - 2)
    for i, p in enumerate(d.pairing):
        if i in (0, 1):
            continue
        q = c if i == b else (b if i == c else None)
        if q is None:
            out[relabel(i)] = relabel(p)
    out[relabel(b)], out[relabel(c)] = relabel(c), relabel(b)
    return ChordDiagram(tuple(out))


def _a_minus_diag(d: ChordDiagram):
    # cap off the boundary between points 2N-1 and 0
    m = 2 * d.n
    if d.pairing[0] == m - 1:
        return ZERO
    b, c = d.pairing[m - 1], d.pairing[0]

    def relabel(x):
        return (x - 2) % (m - 2)

    out = [0] * (m - 2)
    for i, p in enumerate(d.pairing):
        if i in (0, m - 1):
            continue
        if i not in (b, c):
            out[relabel(i)] = relabel(p)
    out[relabel(b)], out[relabel(c)] = relabel(c), relabel(b)
    return ChordDiagram(tuple(out))


def _insert_outermost(d: ChordDiagram, s: int) -> ChordDiagram:
    """New outermost chord occupying labels (s, s+1); old labels >= s shift up."""
    m = 2 * d.n
    assert 1 <= s <= m
    pairing = [-1] * (m + 2)
    pairing[s], pairing[s + 1] = s + 1, s

    def f(x):
        return x if x < s else x + 2

    for i, p in enumerate(d.pairing):
        pairing[f(i)] = f(p)
    return ChordDiagram(tuple(pairing))


def _cap_adjacent(d: ChordDiagram, t: int):
    """Join the chords at points (t, t+1); 1 <= t <= 2N-2."""
    m = 2 * d.n
    assert 1 <= t <= m - 2
    if d.pairing[t] == t + 1:
        return ZERO
    b, c = d.pairing[t], d.pairing[t + 1]

    def relabel(x):
        return x if x < t else x - 2

    out = [0] * (m - 2)
    for i, p in enumerate(d.pairing):
        if i in (t, t + 1):
            continue
        if i not in (b, c):
            out[relabel(i)] = relabel(p)
    out[relabel(b)], out[relabel(c)] = relabel(c), relabel(b)
    return ChordDiagram(tuple(out))


def _ith_sign_position(w: Word, sign: int, index: int) -> int:
    seen = 0
    for pos, b in enumerate(w.bits):
        if b == sign:
            seen += 1
            if seen == index:
                return pos
    raise IndexError


def west_creation_word(w: Word, i: int) -> frozenset[Word]:
    """Insert a minus sign splitting the (i+1)'th minus (append for i = n-)."""
    if i == w.n_minus:
        return _one(Word(w.bits + (MINUS,)))
    pos = _ith_sign_position(w, MINUS, i + 1)
    return _one(Word(w.bits[:pos] + (MINUS,) + w.bits[pos:]))


def west_annihilation_word(w: Word, i: int) -> frozenset[Word]:
    """Delete the (i+1)'th minus; for i = n-, delete a trailing minus or die."""
    if i == w.n_minus:
        if w.bits and w.bits[-1] == MINUS:
            return _one(Word(w.bits[:-1]))
        return frozenset()
    pos = _ith_sign_position(w, MINUS, i + 1)
    return _one(Word(w.bits[:pos] + w.bits[pos + 1 :]))


def east_creation_word(w: Word, j: int) -> frozenset[Word]:
    if j == w.n_plus:
        return _one(Word(w.bits + (PLUS,)))
    pos = _ith_sign_position(w, PLUS, j + 1)
    return _one(Word(w.bits[:pos] + (PLUS,) + w.bits[pos:]))


def east_annihilation_word(w: Word, j: int) -> frozenset[Word]:
    if j == w.n_plus:
        if w.bits and w.bits[-1] == PLUS:
            return _one(Word(w.bits[:-1]))
        return frozenset()
    pos = _ith_sign_position(w, PLUS, j + 1)
    return _one(Word(w.bits[:pos] + w.bits[pos + 1 :]))


B_MINUS = GradedOperator("B-", (1, 0), _b_minus_word, _b_minus_diag)
B_PLUS = GradedOperator("B+", (0, 1), _b_plus_word, _b_plus_diag)
A_PLUS = GradedOperator("A+", (-1, 0), _a_plus_word, _a_plus_diag)
A_MINUS = GradedOperator("A-", (0, -1), _a_minus_word, _a_minus_diag)


def west_creation(i: int) -> GradedOperator:
    """B- at westside slot i: diagram chord at positions (-2i-3, -2i-2)."""

    def diag(d: ChordDiagram) -> ChordDiagram:
        return _insert_outermost(d, 2 * d.n + 2 - 2 * i - 3)

    return GradedOperator(f"B-^(west,{i})", (1, 0), lambda w: west_creation_word(w, i), diag)


def west_annihilation(i: int) -> GradedOperator:
    """A+ at westside slot i: joins chords at positions (-2i-2, -2i-1)."""

    def diag(d: ChordDiagram):
        t = (2 * d.n - 2 * i - 2) % (2 * d.n)
        if t == 0:
            # all-minus grading: the slot wraps to the base point
            return _a_plus_diag(d)
        return _cap_adjacent(d, t)

    return GradedOperator(
        f"A+^(west,{i})", (-1, 0), lambda w: west_annihilation_word(w, i), diag
    )


def east_creation(j: int) -> GradedOperator:
    """B+ at eastside slot j: diagram chord at positions (2j+2, 2j+3)."""

    def diag(d: ChordDiagram) -> ChordDiagram:
        return _insert_outermost(d, 2 * j + 2)

    return GradedOperator(f"B+^(east,{j})", (0, 1), lambda w: east_creation_word(w, j), diag)


def east_annihilation(j: int) -> GradedOperator:
    """A- at eastside slot j: joins chords at positions (2j+1, 2j+2)."""

    def diag(d: ChordDiagram):
        if 2 * j + 1 == 2 * d.n - 1:
            # all-plus grading: the slot wraps to the base point
            return _a_minus_diag(d)
        return _cap_adjacent(d, 2 * j + 1)

    return GradedOperator(
        f"A-^(east,{j})", (0, -1), lambda w: east_annihilation_word(w, j), diag
    )


# -- merge on elements --------------------------------------------------------


def merge_elements(x1: SfhElement | None, x2: SfhElement | None) -> SfhElement:
    """Bilinear extension of the diagram merge to basis combinations.

    None stands for the empty (0-chord) tensor factor, reducing the
    operation to a creation operator.
    """
    from .diagram import merge

    if x1 is None and x2 is None:
        return SfhElement((Word(),))
    if x1 is None:
        return apply_operator(B_PLUS, x2)
    if x2 is None:
        return apply_operator(B_MINUS, x1)
    for x in (x1, x2):
        if x.words and x.grading() is None:
            raise GradingMismatch("merge needs homogeneous operands")
    acc: frozenset[Word] = frozenset()
    for w1 in x1.words:
        for w2 in x2.words:
            acc ^= decompose(merge(basis_diagram(w1), basis_diagram(w2))).words
    return SfhElement(acc)


# -- rotation -----------------------------------------------------------------


def rotation_geometric(x: SfhElement) -> SfhElement:
    """Move the base point two marked points: relabel by -2 and re-decompose."""
    acc: frozenset[Word] = frozenset()
    for w in x.words:
        acc ^= decompose(rotate_points(basis_diagram(w), -2)).words
    return SfhElement(acc)


def rotation_explicit_word(w: Word) -> frozenset[Word]:
    """Closed-form rotation: one term per grouping of the block sequence."""
    blocks = w.blocks()
    k = len(blocks)
    if k == 1:
        a, b = blocks[0]
        return _one(Word((PLUS,) * b + (MINUS,) * a))
    out: frozenset[Word] = frozenset()
    # compositions of (1..k) into consecutive parts
    for cut_mask in range(1 << (k - 1)):
        parts: list[tuple[int, int]] = []
        a_sum = b_sum = 0
        for idx, (a, b) in enumerate(blocks):
            a_sum += a
            b_sum += b
            if idx == k - 1 or (cut_mask >> idx) & 1:
                parts.append((a_sum, b_sum))
                a_sum = b_sum = 0
        bits: list[int] = []
        for p, (a, b) in enumerate(parts):
            if p == 0:
                b -= 1
                a += 1
            if p == len(parts) - 1:
                b += 1
                a -= 1
            assert a >= 0 and b >= 0
            bits.extend((PLUS,) * b + (MINUS,) * a)
        out ^= _one(Word(bits))
    return out


def rotation_explicit(x: SfhElement) -> SfhElement:
    acc: frozenset[Word] = frozenset()
    for w in x.words:
        acc ^= rotation_explicit_word(w)
    return SfhElement(acc)


ROTATION = GradedOperator("R", (0, 0), rotation_explicit_word)


def rotation(x: SfhElement) -> SfhElement:
    """The rotation operator (explicit form; all forms agree by tests)."""
    return rotation_explicit(x)


@lru_cache(maxsize=None)
def rotation_matrix(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of the rotation on length-n words with k plus signs.

    Rows and columns are indexed by the lexicographically ordered words;
    column j holds the image of basis word j.  Built by the block
    recursion on leading symbols; must agree with the other two forms.
    """
    words = all_words(n - k, k)
    dim = len(words)
    index = {w: i for i, w in enumerate(words)}
    mat = [[0] * dim for _ in range(dim)]
    if k == 0 or k == n:
        for i in range(dim):
            mat[i][i] = 1
        return tuple(tuple(r) for r in mat)

    def minor_words(m_len, m_k):
        return all_words(m_len - m_k, m_k)

    prev = rotation_matrix(n - 1, k - 1)
    prev_words = minor_words(n - 1, k - 1)
    prev_index = {w: i for i, w in enumerate(prev_words)}

    # rows starting with '+': every entry (u, v) of R_{n-1,k-1} appears in
    # column (-)^j + v[j:] for each j up to the leading-minus count of v
    for r_i, u in enumerate(prev_words):
        row = index[Word((PLUS,) + u.bits)]
        for c_i, v in enumerate(prev_words):
            if not prev[r_i][c_i]:
                continue
            lead = 0
            while lead < len(v.bits) and v.bits[lead] == MINUS:
                lead += 1
            for j in range(lead + 1):
                col_word = Word(v.bits[:j] + (PLUS,) + v.bits[j:])
                mat[row][index[col_word]] = 1
    # rows (-)^(j+1) + u: copies of R_{n-j-2,k-1} at columns (-)^j + - v
    for j in range(0, n - k):
        sub_n = n - j - 2
        if sub_n < k - 1 or sub_n < 0:
            continue
        sub = rotation_matrix(sub_n, k - 1)
        sub_words = minor_words(sub_n, k - 1)
        for r_i, u in enumerate(sub_words):
            row_word = Word((MINUS,) * (j + 1) + (PLUS,) + u.bits)
            if row_word not in index:
                continue
            for c_i, v in enumerate(sub_words):
                if not sub[r_i][c_i]:
                    continue
                col_word = Word((MINUS,) * j + (PLUS, MINUS) + v.bits)
                if col_word in index:
                    mat[index[row_word]][index[col_word]] = 1
    return tuple(tuple(r) for r in mat)


def rotation_by_matrix(x: SfhElement) -> SfhElement:
    """Apply rotation via the recursive matrix (second implementation)."""
    g = x.grading()
    if x.is_zero():
        return x
    if g is None:
        raise GradingMismatch("rotation needs a homogeneous element")
    n_minus, n_plus = g
    n = n_minus + n_plus
    words = all_words(n_minus, n_plus)
    index = {w: i for i, w in enumerate(words)}
    mat = rotation_matrix(n, n_plus)
    acc: set[Word] = set()
    for w in x.words:
        col = index[w]
        for row, wr in enumerate(words):
            if mat[row][col]:
                acc ^= {wr}
    return SfhElement(acc)


def clear_caches() -> None:
    """Reset the decomposition memo tables (mainly for tests)."""
    _decompose_cache.clear()
    _decompose_root_cache.clear()
    _from_pair_cached.cache_clear()
    rotation_matrix.cache_clear()
