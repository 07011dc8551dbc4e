from sutura import diagram as D
from sutura import sfh
from sutura import stacking as S
from sutura.verify import _R53
from sutura.words import all_words, word


def gradings(n):
    for nm in range(n + 1):
        yield nm, n - nm


def test_small_rotation_values():
    x = sfh.SfhElement.basis(word("-+"))
    assert sfh.rotation(x) == sfh.SfhElement.basis(word("+-"))
    y = sfh.rotation(sfh.SfhElement.basis(word("+-")))
    assert y.words == {word("-+"), word("+-")}
    assert sfh.rotation(y) == x


def test_displayed_matrices():
    assert sfh.rotation_matrix(2, 1) == ((0, 1), (1, 1))
    r3 = ((0, 1, 0), (0, 0, 1), (1, 1, 1))
    assert sfh.rotation_matrix(3, 1) == r3
    assert sfh.rotation_matrix(3, 2) == r3
    r4 = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1))
    assert sfh.rotation_matrix(4, 1) == r4
    assert sfh.rotation_matrix(4, 3) == r4
    assert sfh.rotation_matrix(5, 3) == _R53


def test_documented_non_identity():
    assert sfh.rotation_matrix(5, 2) != sfh.rotation_matrix(5, 3)


def test_extremal_gradings_are_identity():
    for n in range(1, 7):
        for k in (0, n):
            m = sfh.rotation_matrix(n, k)
            assert all(m[i][j] == int(i == j) for i in range(len(m)) for j in range(len(m)))


def test_three_implementations_agree():
    for n in range(0, 7):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                x = sfh.SfhElement.basis(w)
                a = sfh.rotation_geometric(x)
                b = sfh.rotation_by_matrix(x)
                c = sfh.rotation_explicit(x)
                assert a == b == c, w


def test_rotation_order():
    for n in range(0, 7):
        for nm, np_ in gradings(n):
            for w in all_words(nm, np_):
                x = sfh.SfhElement.basis(w)
                y = x
                for _ in range(n + 1):
                    y = sfh.rotation(y)
                assert y == x


def test_rotation_column_structure():
    # each column holds the image of its basis word; every row is hit by
    # exactly one column's highest nonzero entry
    for (n, k) in ((4, 2), (5, 2), (5, 3)):
        m = sfh.rotation_matrix(n, k)
        dim = len(m)
        tops = []
        for j in range(dim):
            rows = [i for i in range(dim) if m[i][j]]
            assert rows, "rotation matrix has an empty column"
            tops.append(min(rows))
        assert sorted(tops) == list(range(dim))


def test_m_invariance_under_rotation():
    for n in range(1, 6):
        ds = D.enumerate_diagrams(n)
        rot = {d: D.rotate_points(d, -2) for d in ds}
        for a in ds:
            for b in ds:
                assert S.m_geometric(a, b) == S.m_geometric(rot[a], rot[b])


def test_rotation_is_bijection_on_contact_elements():
    for n in range(1, 6):
        ds = D.enumerate_diagrams(n)
        images = {D.rotate_points(d, -2) for d in ds}
        assert images == set(ds)
        for d in ds:
            assert sfh.decompose(D.rotate_points(d, -2)) == sfh.rotation(sfh.decompose(d))
