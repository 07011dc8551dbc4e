import pytest

from sutura import diagram as D
from sutura import sfh
from sutura.errors import ZeroElement
from sutura.words import Word, all_words, word


def gradings(n):
    for nm in range(n + 1):
        yield nm, n - nm


def test_basis_diagram_frozen_oracles():
    # hand-evaluated from the endpoint formulas of the construction
    assert sfh.basis_diagram(Word()) == D.VACUUM
    assert set(sfh.basis_diagram(word("-+")).chords()) == {(0, 5), (1, 4), (2, 3)}
    g = sfh.basis_diagram(word("-+-++"))
    assert set(g.chords()) == {(0, 11), (1, 10), (2, 9), (3, 8), (4, 5), (6, 7)}
    assert sfh.basis_diagram(word("+")) == sfh.basis_diagram_from_root(word("+"))


def test_root_point_positions():
    from sutura.basis import base_construction, root_point

    data = base_construction(word("-+-++"))
    assert data.root == 7 == root_point(6, 1)
    assert data.root in data.final_chord


def test_base_and_root_constructions_agree():
    for n in range(0, 8):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                assert sfh.basis_diagram(w) == sfh.basis_diagram_from_root(w), w


def test_decompose_of_basis_is_singleton():
    for n in range(0, 8):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                assert sfh.decompose(sfh.basis_diagram(w)).words == frozenset([w])


def test_decompose_examples():
    assert sfh.decompose(D.VACUUM).words == frozenset([Word()])
    assert sfh.decompose(D.ZERO).words == frozenset()
    third = D.from_pairing([(0, 3), (1, 2), (4, 5)])
    assert {str(w) for w in sfh.decompose(third).words} == {"-+", "+-"}
    table = {
        frozenset(str(w) for w in sfh.decompose(d).words)
        for d in D.enumerate_diagrams(4)
        if D.euler_class(d) == -1
    }
    assert table == {
        frozenset({"--+"}),
        frozenset({"-+-"}),
        frozenset({"+--"}),
        frozenset({"--+", "-+-"}),
        frozenset({"--+", "+--"}),
        frozenset({"-+-", "+--"}),
    }


def test_decompose_from_root_agrees():
    for n in range(1, 7):
        for d in D.enumerate_diagrams(n):
            assert sfh.decompose_from_root(d) == sfh.decompose(d)
    assert sfh.decompose_from_root(D.VACUUM).words == frozenset([Word()])


def test_decompose_injective_and_nonzero():
    for n in range(1, 8):
        seen = set()
        for d in D.enumerate_diagrams(n):
            dec = sfh.decompose(d)
            assert dec.words
            assert dec.words not in seen
            seen.add(dec.words)


def test_even_cardinality_for_non_basis():
    for n in range(1, 8):
        for d in D.enumerate_diagrams(n):
            k = len(sfh.decompose(d).words)
            assert k == 1 or k % 2 == 0


def test_is_basis():
    assert sfh.is_basis(D.VACUUM)
    fig15 = sfh.from_pair(word("--++"), word("+-+-"))
    assert not sfh.is_basis(fig15)
    basis_diagrams = {
        sfh.basis_diagram(w)
        for n in range(0, 6)
        for nm, np_ in gradings(n)
        for w in all_words(nm, np_)
    }
    for n in range(1, 7):
        for d in D.enumerate_diagrams(n):
            assert sfh.is_basis(d) == (d in basis_diagrams)


def test_phi_and_sandwich():
    assert sfh.phi(sfh.basis_diagram(word("-+-"))) == (word("-+-"), word("-+-"))
    fig15 = sfh.from_pair(word("--++"), word("+-+-"))
    assert sfh.phi(fig15) == (word("--++"), word("+-+-"))
    assert {str(w) for w in sfh.decompose(fig15).words} == {
        "--++", "-++-", "+--+", "+-+-",
    }
    pair_diagram = next(
        d
        for d in D.enumerate_diagrams(4)
        if {str(w) for w in sfh.decompose(d).words} == {"--+", "+--"}
    )
    assert sfh.phi(pair_diagram) == (word("--+"), word("+--"))
    with pytest.raises(ZeroElement):
        sfh.phi(D.ZERO)


def test_merge_elements():
    x = sfh.decompose(D.parse("0-3,1-2,4-5"))
    assert sfh.merge_elements(None, x) == sfh.apply_operator(sfh.B_PLUS, x)
    assert sfh.merge_elements(x, None) == sfh.apply_operator(sfh.B_MINUS, x)
    assert sfh.merge_elements(None, None).words == frozenset([Word()])
    zero = sfh.SfhElement.zero()
    assert sfh.merge_elements(zero, x).is_zero()
    for n1 in range(1, 4):
        for n2 in range(1, 4):
            for a in D.enumerate_diagrams(n1):
                for b in D.enumerate_diagrams(n2):
                    lhs = sfh.decompose(D.merge(a, b))
                    rhs = sfh.merge_elements(sfh.decompose(a), sfh.decompose(b))
                    assert lhs == rhs


def test_merge_images_are_disjoint():
    # every contact element arises from exactly one split
    for n in range(1, 6):
        seen = {}
        for n1 in range(0, n):
            n2 = n - 1 - n1
            lefts = D.enumerate_diagrams(n1) if n1 else [None]
            rights = D.enumerate_diagrams(n2) if n2 else [None]
            for a in lefts:
                for b in rights:
                    m = D.merge(a, b)
                    assert m not in seen
                    seen[m] = (a, b)
        assert set(seen) == set(D.enumerate_diagrams(n))


def _has_outermost(d, u):
    return d.partner(u) == (u + 1) % (2 * d.n)


def test_outermost_region_dictionary():
    # a diagram has an outermost chord at a distinguished slot exactly when
    # every word of its decomposition shows the matching symbol pattern,
    # exactly when the two extreme words do
    from sutura.basis import root_point

    # the vacuum's empty word has no symbols to inspect, so start at two chords
    for n in range(2, 7):
        for d in D.enumerate_diagrams(n):
            m = 2 * n
            words = sfh.decompose(d).words
            lo, hi = sfh.phi(d)
            e = D.euler_class(d)
            nm = (n - 1 - e) // 2
            np_ = (n - 1 + e) // 2
            # base point: first symbol
            for sign, slot in ((0, m - 1), (1, 0)):
                diag = _has_outermost(d, slot)
                all_words_match = all(w.bits and w.bits[0] == sign for w in words)
                extremes = bool(lo.bits) and lo.bits[0] == sign and hi.bits[0] == sign
                assert diag == all_words_match == extremes, (d, sign)
            # root point: last symbol
            r = root_point(n, e)
            for sign, slot in ((1, (r - 1) % m), (0, r)):
                diag = _has_outermost(d, slot)
                all_match = all(w.bits and w.bits[-1] == sign for w in words)
                extremes = bool(lo.bits) and lo.bits[-1] == sign and hi.bits[-1] == sign
                assert diag == all_match == extremes, (d, sign, "root")
            # westside: (j+1)'th minus following  <->  chord at (-2j-1, -2j)
            for j in range(1, nm):
                slot = (m - 2 * j - 1) % m
                diag = _has_outermost(d, slot)
                def following_minus(w, jj=j):
                    pos = w.minus_positions()[jj]
                    return pos > 0 and w.bits[pos - 1] == 0
                all_match = all(following_minus(w) for w in words)
                extremes = following_minus(lo) and following_minus(hi)
                assert diag == all_match == extremes, (d, j, "west")
            # eastside mirror: (j+1)'th plus following <-> chord at (2j, 2j+1)
            for j in range(1, np_):
                slot = 2 * j
                diag = _has_outermost(d, slot)
                def following_plus(w, jj=j):
                    pos = w.plus_positions()[jj]
                    return pos > 0 and w.bits[pos - 1] == 1
                all_match = all(following_plus(w) for w in words)
                extremes = following_plus(lo) and following_plus(hi)
                assert diag == all_match == extremes, (d, j, "east")
