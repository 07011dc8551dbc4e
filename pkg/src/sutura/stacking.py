"""Stackability of chord diagrams and bounded contact categories.

Stacking two diagrams on the ends of a cylinder and rounding the corners
glues their chords through 2N boundary connectors; the result is tight
exactly when the glued curve is a single loop.  The connector joining
bottom point k to top point k-1 is the calibration choice: it makes
every diagram stackable on itself and reproduces the direction table of
single bypass attachments (the opposite shift fails both, which the
tests keep as a negative check).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import arcs as _arcs
from . import sfh
from .diagram import ChordDiagram, euler_class
from .errors import NoCommonOutermost, NotTight, SizeMismatch, TrivialArc
from .words import partial_leq


@dataclass(frozen=True)
class SutureGraph:
    """The glued boundary curves of a stacked pair of diagrams."""

    n: int
    edges: tuple[tuple[tuple[str, int], tuple[str, int]], ...]

    def loop_count(self) -> int:
        parent: dict[tuple[str, int], tuple[str, int]] = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        nodes = set()
        for a, b in self.edges:
            nodes.update((a, b))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(x) for x in nodes})


def suture_graph(bottom: ChordDiagram, top: ChordDiagram, shift: int = -1) -> SutureGraph:
    """2-regular graph: bottom chords, top chords, and boundary connectors."""
    if bottom.n != top.n:
        raise SizeMismatch("stacking needs equal chord counts")
    m = 2 * bottom.n
    edges = []
    for a, b in bottom.chords():
        edges.append((("B", a), ("B", b)))
    for a, b in top.chords():
        edges.append((("T", a), ("T", b)))
    for k in range(m):
        edges.append((("B", k), ("T", (k + shift) % m)))
    return SutureGraph(bottom.n, tuple(edges))


def m_geometric(bottom: ChordDiagram, top: ChordDiagram, _shift: int = -1) -> int:
    """1 when the rounded suture is a single loop (the stacking is tight)."""
    return 1 if suture_graph(bottom, top, _shift).loop_count() == 1 else 0


def m_algebraic(bottom: ChordDiagram, top: ChordDiagram) -> int:
    """Parity of comparable pairs between the two basis decompositions."""
    if bottom.n != top.n:
        raise SizeMismatch("stacking needs equal chord counts")
    if euler_class(bottom) != euler_class(top):
        return 0
    d0 = sfh.decompose(bottom).words
    d1 = sfh.decompose(top).words
    count = sum(1 for w0 in d0 for w1 in d1 if partial_leq(w0, w1))
    return count % 2


def cancel_outermost(bottom: ChordDiagram, top: ChordDiagram):
    """Remove a shared outermost chord; stackability is unchanged."""
    if bottom.n != top.n:
        raise SizeMismatch("stacking needs equal chord counts")
    if bottom.n <= 1:
        raise NoCommonOutermost("refusing to reduce past one chord")
    m = 2 * bottom.n
    for u in range(m):
        v = (u + 1) % m
        if bottom.partner(u) == v and top.partner(u) == v:
            return _drop_chord(bottom, u), _drop_chord(top, u)
    raise NoCommonOutermost("no outermost chord shared at the same position")


def _drop_chord(diagram: ChordDiagram, u: int) -> ChordDiagram:
    m = 2 * diagram.n
    v = (u + 1) % m
    if u == m - 1:
        # chord (2N-1, 0): the new base point is the old point 1
        def relabel(x):
            return x - 1
        keep = [x for x in range(m) if x not in (u, 0)]
    else:
        def relabel(x):
            return x if x < u else x - 2
        keep = [x for x in range(m) if x not in (u, v)]
    pairing = [0] * (m - 2)
    for x in keep:
        pairing[relabel(x)] = relabel(diagram.pairing[x])
    return ChordDiagram(tuple(pairing))


def arc_is_inner(bottom: ChordDiagram, top: ChordDiagram, arc) -> bool:
    """A bypass along the arc can be dug out of the tight cobordism."""
    if m_geometric(bottom, top) != 1:
        raise NotTight("the stacked pair is not tight")
    if arc.triviality != "nontrivial":
        raise TrivialArc("innerness is asked of nontrivial arcs")
    return m_geometric(_arcs.surgery(bottom, arc, "up"), top) == 1


@lru_cache(maxsize=None)
def _reachable(bottom: ChordDiagram, top: ChordDiagram) -> frozenset[ChordDiagram]:
    """Diagrams reachable from the bottom by inner upwards bypasses."""
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        g = frontier.pop()
        for arc in _arcs.find_attaching_arcs(g):
            if arc.triviality != "nontrivial":
                continue
            nxt = _arcs.surgery(g, arc, "up")
            if nxt in seen or m_geometric(nxt, top) != 1:
                continue
            seen.add(nxt)
            frontier.append(nxt)
    return frozenset(seen)


def diagram_exists_in(diagram: ChordDiagram, bottom: ChordDiagram, top: ChordDiagram) -> bool:
    """Occurrence of the diagram inside the tight stacked cylinder."""
    if m_geometric(bottom, top) != 1:
        raise NotTight("the stacked pair is not tight")
    return diagram in _reachable(bottom, top)


@dataclass(frozen=True)
class BoundedCategory:
    """Poset of diagrams existing inside a tight cobordism."""

    bottom: ChordDiagram
    top: ChordDiagram
    objects: tuple[ChordDiagram, ...]
    morphisms: frozenset[tuple[ChordDiagram, ChordDiagram]]
    reflexive: bool = True
    transitive: bool = True
    antisymmetric: bool = True

    def leq(self, a: ChordDiagram, b: ChordDiagram) -> bool:
        return (a, b) in self.morphisms

    def hasse(self) -> list[tuple[int, int]]:
        idx = {d: i for i, d in enumerate(self.objects)}
        out = []
        for a, b in sorted(self.morphisms, key=lambda p: (p[0].pairing, p[1].pairing)):
            if a == b:
                continue
            if any(
                (a, c) in self.morphisms and (c, b) in self.morphisms
                for c in self.objects
                if c not in (a, b)
            ):
                continue
            out.append((idx[a], idx[b]))
        return out

    def to_json(self) -> dict:
        from .diagram import serialize

        return {
            "objects": [serialize(d) for d in self.objects],
            "hasse": self.hasse(),
        }


def bounded_category(bottom: ChordDiagram, top: ChordDiagram) -> BoundedCategory:
    """Objects and one-morphism poset of the tight cobordism."""
    if m_geometric(bottom, top) != 1:
        raise NotTight("the stacked pair is not tight")
    objects = tuple(sorted(_reachable(bottom, top), key=lambda d: d.pairing))
    morphisms = set()
    for a in objects:
        for b in objects:
            if diagram_exists_in(b, a, top) and diagram_exists_in(a, bottom, b):
                morphisms.add((a, b))
    for a in objects:
        assert (a, a) in morphisms, "category misses an identity"
    for a, b in morphisms:
        for c in objects:
            if (b, c) in morphisms:
                assert (a, c) in morphisms, "composition escapes"
        if a != b:
            assert (b, a) not in morphisms, "antisymmetry fails"
    return BoundedCategory(bottom, top, objects, frozenset(morphisms))


def morphism_exists_nested(
    bottom: ChordDiagram, top: ChordDiagram, a: ChordDiagram, b: ChordDiagram
) -> bool:
    """Direct nested-search oracle for the morphism criterion (tests only):
    some excavation from the bottom reaches a and continues to b."""
    if not diagram_exists_in(a, bottom, top):
        return False
    return b in _reachable(a, top) and diagram_exists_in(b, bottom, top)


def bypass_cobordism_category(bottom: ChordDiagram, arc) -> tuple[int, int, BoundedCategory]:
    """The category of a single bypass attachment, with its word grading.

    The counts (n-, n+) come from the chords bounding the two inner
    regions of the arc, read between the crossed chord and the endpoint
    chord on each side; the resulting category is the full word poset
    W(n-, n+).
    """
    if arc.triviality != "nontrivial":
        raise TrivialArc("bypass cobordisms attach along nontrivial arcs")
    top = _arcs.surgery(bottom, arc, "up")
    pm = arc.planar_map()
    faces = pm.faces()
    signs = faces.signs()
    locs = pm.site_locations(0)
    (si0, pi0), (si1, pi1), (si2, pi2) = locs
    s0 = pm.strands[si0].sites[pi0]
    s2 = pm.strands[si2].sites[pi2]
    f1 = faces.face_of(si0, s0.side_next)
    f2 = faces.face_of(si2, s2.side_prev)
    # inner + and inner - regions with their (endpoint chord, crossed chord)
    if signs[f1] == 1:
        plus_face, plus_end = f1, si0
        minus_face, minus_end = f2, si2
    else:
        plus_face, plus_end = f2, si2
        minus_face, minus_end = f1, si0
    n_minus = 1 + _chords_between(pm, faces, plus_face, plus_end, si1)
    n_plus = 1 + _chords_between(pm, faces, minus_face, minus_end, si1)
    category = bounded_category(bottom, top)
    return n_minus, n_plus, category


def _chords_between(pm, faces, face: int, end_si: int, cross_si: int) -> int:
    """Number of other chords on the inner region between the arc's two chords.

    Walking the face boundary from the endpoint chord to the crossed
    chord on the side away from the outer region counts the chords whose
    bypasses survive inside the attachment.
    """
    cyc = faces.cycles[face]
    strand_seq = []
    for dart in cyc:
        if dart[0] == "c":
            si, _ = faces._strand_of_dart(dart)
            strand_seq.append(si)
    k = len(strand_seq)
    i_end = strand_seq.index(end_si)
    i_cross = strand_seq.index(cross_si)
    # walk forward from the endpoint chord to the crossed chord
    count = (i_cross - i_end) % k - 1
    return count


