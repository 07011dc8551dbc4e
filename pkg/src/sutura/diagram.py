"""Chord diagrams: non-crossing perfect matchings on labelled boundary points.

Labels 0..2N-1 increase clockwise around the disc; the base point is
label 0.  The boundary arc between points k and k+1 (mod 2N) is positive
exactly when k is even, which fixes the signs of all regions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BadPartition, CrossingChords, OddStep, ParseError


class _Zero:
    """Absorbing marker for surgery results containing a closed loop."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __bool__(self):
        return False


ZERO = _Zero()


def is_zero(value) -> bool:
    return value is ZERO


class ChordDiagram:
    """A non-crossing fixed-point-free involution on {0,..,2N-1}."""

    __slots__ = ("n", "pairing")

    def __init__(self, pairing, _validated: bool = False):
        pairing = tuple(pairing)
        self.pairing = pairing
        self.n = len(pairing) // 2
        if not _validated:
            _validate(pairing)

    # -- structure ---------------------------------------------------------

    def partner(self, point: int) -> int:
        return self.pairing[point % (2 * self.n)]

    def chords(self) -> list[tuple[int, int]]:
        """Chords as (low, high) pairs, ascending in the first element."""
        return [(i, p) for i, p in enumerate(self.pairing) if i < p]

    def chord_index(self, point: int) -> int:
        """Index into chords() of the chord through a point."""
        low = min(point, self.partner(point))
        for k, (a, _) in enumerate(self.chords()):
            if a == low:
                return k
        raise ValueError("unreachable")

    def __eq__(self, other) -> bool:
        return isinstance(other, ChordDiagram) and self.pairing == other.pairing

    def __hash__(self) -> int:
        return hash(self.pairing)

    def __repr__(self) -> str:
        return f"ChordDiagram({serialize(self)!r})"

    def __lt__(self, other: "ChordDiagram") -> bool:
        return self.pairing < other.pairing


def _validate(pairing: tuple[int, ...]) -> None:
    m = len(pairing)
    if m == 0 or m % 2:
        raise BadPartition("need an even, positive number of points")
    for i, p in enumerate(pairing):
        if not (0 <= p < m) or p == i or pairing[p] != i:
            raise BadPartition("pairing is not a fixed-point-free involution")
    # Balanced-bracket test: equivalent to having no crossing a<b<c<d with
    # a-c and b-d paired.
    stack: list[int] = []
    for i, p in enumerate(pairing):
        if p > i:
            stack.append(p)
        elif stack.pop() != i:
            raise CrossingChords("two chords cross")
    for i, p in enumerate(pairing):
        if (p - i) % 2 == 0:
            raise CrossingChords("chord endpoints must have opposite parity")


def from_pairing(pairs) -> ChordDiagram:
    """Build and validate a diagram from an iterable of label pairs."""
    pairs = [tuple(p) for p in pairs]
    points = [x for p in pairs for x in p]
    m = len(points)
    if sorted(points) != list(range(m)):
        raise BadPartition(f"pairs must partition 0..{m - 1}")
    pairing = [0] * m
    for a, b in pairs:
        pairing[a] = b
        pairing[b] = a
    return ChordDiagram(pairing)


def serialize(diagram: ChordDiagram) -> str:
    """Canonical text form "0-5,1-4,2-3" (ascending first elements)."""
    return ",".join(f"{a}-{b}" for a, b in diagram.chords())


def parse(text: str) -> ChordDiagram:
    """Inverse of serialize."""
    pairs = []
    try:
        for item in text.strip().split(","):
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
    except (ValueError, AttributeError) as exc:
        raise ParseError(f"bad diagram string {text!r}") from exc
    try:
        return from_pairing(pairs)
    except BadPartition as exc:
        raise ParseError(str(exc)) from exc


# -- faces ------------------------------------------------------------------

# A dart is ("b", k, d) for boundary arc k traversed from k (d=+1) or from
# k+1 (d=-1), or ("c", p) for the chord leaving point p.  Faces are orbits
# of dart -> rotation-successor of its reverse; with the rotation order
# below, every interior face keeps the disc on a consistent side, and the
# single all-boundary orbit is the outside of the disc.


def _reverse(dart, pairing):
    if dart[0] == "b":
        return ("b", dart[1], -dart[2])
    return ("c", pairing[dart[1]])


def _rotation(vertex: int, m: int):
    # Outgoing darts, cyclically ordered around the vertex.
    return (
        ("b", vertex % m, 1),
        ("c", vertex),
        ("b", (vertex - 1) % m, -1),
    )


def _dart_head(dart, pairing, m):
    if dart[0] == "b":
        return (dart[1] + 1) % m if dart[2] == 1 else dart[1]
    return pairing[dart[1]]


@lru_cache(maxsize=65536)
def _face_cycles(pairing: tuple[int, ...]) -> tuple[tuple[tuple, ...], ...]:
    """Oriented boundary cycles of the interior regions (outer face dropped)."""
    m = len(pairing)
    all_darts = [("b", k, d) for k in range(m) for d in (1, -1)]
    all_darts += [("c", p) for p in range(m)]

    def next_dart(d):
        head = _dart_head(d, pairing, m)
        rot = _rotation(head, m)
        rev = _reverse(d, pairing)
        i = rot.index(rev)
        return rot[(i + 1) % 3]

    seen = set()
    cycles = []
    for start in all_darts:
        if start in seen:
            continue
        cyc = []
        d = start
        while True:
            cyc.append(d)
            seen.add(d)
            d = next_dart(d)
            if d == start:
                break
        cycles.append(tuple(cyc))
    inner = [c for c in cycles if any(d[0] == "c" for d in c)]
    outer = [c for c in cycles if all(d[0] == "b" for d in c)]
    assert len(outer) == 1 and len(inner) == m // 2 + 1
    return tuple(inner)


def face_cycles(diagram: ChordDiagram):
    """Oriented dart cycles of the N+1 regions, deterministic order."""
    cycles = list(_face_cycles(diagram.pairing))
    cycles.sort(key=lambda c: min(d[1] for d in c if d[0] == "b"))
    return cycles


@dataclass(frozen=True)
class Region:
    """One complementary region of the diagram."""

    id: int
    sign: int
    boundary_arcs: frozenset[int]
    boundary_chords: frozenset[int]


def regions(diagram: ChordDiagram) -> list[Region]:
    """All N+1 regions with their signs and boundary data."""
    out = []
    for i, cyc in enumerate(face_cycles(diagram)):
        arcs = frozenset(d[1] for d in cyc if d[0] == "b")
        chords = frozenset(diagram.chord_index(d[1]) for d in cyc if d[0] == "c")
        signs = {1 if k % 2 == 0 else -1 for k in arcs}
        assert len(signs) == 1, "region touches arcs of both signs"
        out.append(Region(i, signs.pop(), arcs, chords))
    return out


def euler_class(diagram: ChordDiagram) -> int:
    """Sum of region signs; equals (#positive - #negative regions)."""
    e = sum(r.sign for r in regions(diagram))
    n = diagram.n
    assert abs(e) <= n - 1 or n == 1, "euler class out of range"
    assert (e - (n - 1)) % 2 == 0, "euler class has wrong parity"
    return e


# -- elementary diagram operations -------------------------------------------


def enumerate_diagrams(n: int) -> list[ChordDiagram]:
    """All diagrams with n chords, deterministically ordered by pairing."""
    if n < 1:
        raise ValueError("need at least one chord")

    def gen(points: tuple[int, ...]):
        if not points:
            yield []
            return
        first = points[0]
        for j in range(1, len(points), 2):
            mate = points[j]
            inside = points[1:j]
            outside = points[j + 1 :]
            for left in gen(inside):
                for right in gen(outside):
                    yield [(first, mate)] + left + right

    out = []
    for pairs in gen(tuple(range(2 * n))):
        pairing = [0] * (2 * n)
        for a, b in pairs:
            pairing[a] = b
            pairing[b] = a
        out.append(ChordDiagram(tuple(pairing), _validated=True))
    out.sort(key=lambda d: d.pairing)
    return out


def rotate_points(diagram: ChordDiagram, steps: int) -> ChordDiagram:
    """Relabel every point p -> p + steps (mod 2N); steps must be even."""
    if steps % 2:
        raise OddStep("rotation must move by an even number of points")
    m = 2 * diagram.n
    pairing = [0] * m
    for i, p in enumerate(diagram.pairing):
        pairing[(i + steps) % m] = (p + steps) % m
    return ChordDiagram(tuple(pairing), _validated=True)


def merge(d1: ChordDiagram | None, d2: ChordDiagram | None) -> ChordDiagram:
    """Join two (possibly null) diagrams with one new chord.

    The new chord runs (0, 2*N1+1); d1 sits on labels 1..2*N1 with its
    base point at 2*N1, d2 on labels 2*N1+2..2N-1 with its base point at
    2*N1+2; both keep their clockwise order.
    """
    if d1 is None and d2 is None:
        return ChordDiagram((1, 0), _validated=True)
    n1 = d1.n if d1 is not None else 0
    n2 = d2.n if d2 is not None else 0
    n = n1 + n2 + 1
    m = 2 * n
    pairing = [-1] * m
    pairing[0] = 2 * n1 + 1
    pairing[2 * n1 + 1] = 0
    if d1 is not None:
        # base point 0 of d1 -> 2*n1, then clockwise through labels 1..2*n1-1
        def map1(x):
            return 2 * n1 if x == 0 else x

        for i, p in enumerate(d1.pairing):
            pairing[map1(i)] = map1(p)
    if d2 is not None:
        def map2(x):
            return 2 * n1 + 2 + x

        for i, p in enumerate(d2.pairing):
            pairing[map2(i)] = map2(p)
    assert all(p >= 0 for p in pairing)
    return ChordDiagram(tuple(pairing), _validated=True)


def unique_split(diagram: ChordDiagram) -> tuple[ChordDiagram | None, ChordDiagram | None]:
    """Inverse of merge, splitting along the chord through the base point."""
    q = diagram.partner(0)
    n1 = (q - 1) // 2
    n2 = diagram.n - n1 - 1
    d1 = None
    if n1 > 0:
        def unmap1(x):
            return 0 if x == 2 * n1 else x

        pairing1 = [0] * (2 * n1)
        for i in range(1, 2 * n1 + 1):
            pairing1[unmap1(i)] = unmap1(diagram.pairing[i])
        d1 = ChordDiagram(tuple(pairing1), _validated=True)
    d2 = None
    if n2 > 0:
        pairing2 = [0] * (2 * n2)
        for i in range(2 * n1 + 2, 2 * diagram.n):
            pairing2[i - 2 * n1 - 2] = diagram.pairing[i] - 2 * n1 - 2
        d2 = ChordDiagram(tuple(pairing2), _validated=True)
    return d1, d2


def to_json_dict(diagram: ChordDiagram) -> dict:
    """JSON-exportable summary used by the CLI."""
    return {
        "N": diagram.n,
        "pairs": diagram.chords(),
        "euler_class": euler_class(diagram),
        "regions": [
            {"sign": r.sign, "arcs": sorted(r.boundary_arcs)} for r in regions(diagram)
        ],
    }


VACUUM = ChordDiagram((1, 0), _validated=True)
