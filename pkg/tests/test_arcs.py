import pytest

from sutura import arcs
from sutura import diagram as D
from sutura import sfh
from sutura.errors import ArcNotDefined, ArcNotOnDiagram, MoveUndefined, TrivialArc
from sutura.words import all_words, word


def gradings(n):
    for nm in range(n + 1):
        yield nm, n - nm


def nontrivial_arcs(d):
    return [c for c in arcs.find_attaching_arcs(d) if c.triviality == "nontrivial"]


def test_elementary_move_paper_examples():
    assert str(arcs.elementary_move(word("---++++"), "FE", 3, 2)) == "--++-++"
    assert str(arcs.elementary_move(word("---++++"), "FE", 2, 2)) == "-++--++"
    assert str(arcs.elementary_move(word("--++--++"), "FE", 1, 4)) == "++++----"
    with pytest.raises(MoveUndefined):
        arcs.elementary_move(word("+-"), "FE", 1, 1)
    with pytest.raises(MoveUndefined):
        arcs.elementary_move(word("-+"), "BE", 1, 1)


def test_elementary_moves_preserve_grading_and_direction():
    from sutura.words import partial_leq

    for n in range(1, 6):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                for i in range(1, nm + 1):
                    for j in range(1, np_ + 1):
                        if arcs.move_exists(w, "FE", i, j):
                            out = arcs.elementary_move(w, "FE", i, j)
                            assert out.grading == w.grading
                            assert partial_leq(w, out)
                        else:
                            out = arcs.elementary_move(w, "BE", i, j)
                            assert partial_leq(out, w)


def test_vacuum_classes_supertrivial():
    classes = arcs.find_attaching_arcs(D.VACUUM)
    assert classes
    assert all(c.triviality == "supertrivial" for c in classes)
    assert all(c.direction in ("upwards", "downwards") for c in classes)
    assert all(c.super_kind in ("direct", "indirect") for c in classes)


def test_minimal_nontrivial_class_and_triple():
    g = sfh.basis_diagram(word("-+"))
    nontriv = nontrivial_arcs(g)
    # one unordered homotopy class meets three distinct chords here; its two
    # surgeries generate the full triple
    assert len(nontriv) == 1
    c = nontriv[0]
    assert c.forwards is True and c.fa_indices == (1, 1)
    triple = arcs.bypass_triple(g, c)
    assert {D.serialize(x) for x in triple} == {
        "0-5,1-4,2-3", "0-1,2-5,3-4", "0-3,1-2,4-5",
    }


def test_word_arc_dictionary():
    for n in range(1, 6):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                g = sfh.basis_diagram(w)
                fwd = {c.fa_indices for c in nontrivial_arcs(g) if c.forwards}
                bwd = {c.fa_indices for c in nontrivial_arcs(g) if not c.forwards}
                fe = {
                    (i, j)
                    for i in range(1, nm + 1)
                    for j in range(1, np_ + 1)
                    if arcs.strict_move_exists(w, "FE", i, j)
                }
                be = {
                    (i, j)
                    for i in range(1, nm + 1)
                    for j in range(1, np_ + 1)
                    if arcs.strict_move_exists(w, "BE", i, j)
                }
                assert fwd == fe and bwd == be, w


def test_single_surgery_realizes_moves():
    for n in range(1, 5):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                g = sfh.basis_diagram(w)
                for c in nontrivial_arcs(g):
                    i, j = c.fa_indices
                    if c.forwards:
                        out = arcs.surgery(g, c, "up")
                        assert out == sfh.basis_diagram(arcs.elementary_move(w, "FE", i, j))
                        down = arcs.surgery(g, c, "down")
                        assert sfh.decompose(down).words == {
                            w, arcs.elementary_move(w, "FE", i, j)
                        }
                    else:
                        out = arcs.surgery(g, c, "down")
                        assert out == sfh.basis_diagram(arcs.elementary_move(w, "BE", i, j))


def test_trivial_arc_surgery():
    for n in range(1, 5):
        for d in D.enumerate_diagrams(n):
            for c in arcs.find_attaching_arcs(d):
                if c.triviality == "nontrivial":
                    continue
                up = arcs.surgery(d, c, "up")
                down = arcs.surgery(d, c, "down")
                if c.direction == "upwards":
                    assert up == d and D.is_zero(down)
                else:
                    assert down == d and D.is_zero(up)


def test_surgery_absorbs_zero_and_checks_diagram():
    g = sfh.basis_diagram(word("-+"))
    c = nontrivial_arcs(g)[0]
    assert D.is_zero(arcs.surgery(D.ZERO, c, "up"))
    with pytest.raises(ArcNotOnDiagram):
        arcs.surgery(sfh.basis_diagram(word("+-")), c, "up")
    with pytest.raises(TrivialArc):
        trivial = next(
            x for x in arcs.find_attaching_arcs(g) if x.triviality != "nontrivial"
        )
        arcs.bypass_triple(g, trivial)


def test_triples_sum_to_zero():
    for n in range(1, 6):
        for d in D.enumerate_diagrams(n):
            for c in nontrivial_arcs(d):
                a, b, cc = arcs.bypass_triple(d, c)
                assert len({a, b, cc}) == 3
                assert D.euler_class(a) == D.euler_class(b) == D.euler_class(cc)
                total = sfh.decompose(a) + sfh.decompose(b) + sfh.decompose(cc)
                assert total.is_zero()


def test_triple_cycle_via_induced_arcs():
    for w in (word("-+"), word("+-+"), word("--+")):
        g = sfh.basis_diagram(w)
        for c in nontrivial_arcs(g)[:2]:
            cur_d, cur_c = g, c
            for _ in range(3):
                nxt = arcs.surgery(cur_d, cur_c, "up")
                cur_c = arcs.induced_arc(cur_d, cur_c, "up")
                cur_d = nxt
            assert cur_d == g


def test_generic_engine_matches_decompose_split():
    from sutura.sfh import _split_at

    for n in range(2, 6):
        for d in D.enumerate_diagrams(n):
            q = d.pairing[0]
            if q in (1, 2 * n - 1):
                continue
            want = set(_split_at(d.pairing, 0))
            si2 = d.chord_index(0)
            ends = {d.chord_index(2 * n - 1), d.chord_index(1)}
            found = False
            for c in nontrivial_arcs(d):
                if c.middle[0] != si2 or {c.end1[0], c.end2[0]} != ends:
                    continue
                up = arcs.surgery(d, c, "up")
                down = arcs.surgery(d, c, "down")
                if {up.pairing, down.pairing} == want:
                    found = True
                    break
            assert found, d


def test_generalised_arc_existence_matches_words():
    for n in range(1, 6):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                for i in range(1, nm + 1):
                    for j in range(1, np_ + 1):
                        fa = arcs.move_exists(w, "FE", i, j)
                        assert fa != arcs.move_exists(w, "BE", i, j)
                        kind = "FA" if fa else "BA"
                        g = arcs.generalised_arc(w, kind, i, j)
                        assert g.crossings % 2 == 1
                        with pytest.raises(ArcNotDefined):
                            arcs.generalised_arc(w, "BA" if fa else "FA", i, j)


def test_block_adjacent_generalised_arc_is_single():
    for n in range(1, 6):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                for i in range(1, nm + 1):
                    for j in range(1, np_ + 1):
                        if arcs.strict_move_exists(w, "FE", i, j):
                            g = arcs.generalised_arc(w, "FA", i, j)
                            assert g.crossings == 3
                            assert len(arcs.arc_to_system(g)) == 1


def test_triple_relation_is_symmetric():
    # three same-direction surgeries return the start: equivalently, the
    # unordered triple found from one member is found from all three
    for n in range(1, 6):
        triples_from = {}
        for d in D.enumerate_diagrams(n):
            triples_from[d] = {
                frozenset(x.pairing for x in arcs.bypass_triple(d, c))
                for c in nontrivial_arcs(d)
            }
        for d, triples in triples_from.items():
            for triple in triples:
                for pairing in triple:
                    other = D.ChordDiagram(pairing)
                    assert triple in triples_from[other], (d, triple)
