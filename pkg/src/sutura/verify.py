"""Exhaustive verification sweeps behind the `verify` CLI command.

Each check replays one family of structural facts at small size and
reports pass/fail with its runtime.  `quick` keeps every sweep below a
few seconds; `full` runs the bounds used by the acceptance suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import arcs, sfh, simplicial, stacking
from . import diagram as dg
from .words import (
    all_words,
    catalan,
    comparable_pairs,
    interval,
    narayana,
    narayana_recursive,
    partial_leq,
    word,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _gradings(n: int):
    for nm in range(n + 1):
        yield nm, n - nm


def check_counting(n_max: int = 8) -> list[str]:
    problems = []
    for n in range(1, n_max + 1):
        diagrams = dg.enumerate_diagrams(n)
        if len(diagrams) != catalan(n):
            problems.append(f"count at N={n}")
        by_e: dict[int, int] = {}
        for d in diagrams:
            by_e[dg.euler_class(d)] = by_e.get(dg.euler_class(d), 0) + 1
        for e, cnt in by_e.items():
            if cnt != narayana(n, e) or cnt != narayana_recursive(n, e):
                problems.append(f"narayana at N={n}, e={e}")
    row5 = [narayana(5, e) for e in (-4, -2, 0, 2, 4)]
    if row5 != [1, 10, 20, 10, 1]:
        problems.append("row 5 of the triangle")
    return problems


def check_basis_and_triples(word_n_max: int = 7, triple_n_max: int = 6) -> list[str]:
    problems = []
    for n in range(0, word_n_max + 1):
        for nm, np_ in _gradings(n):
            for w in all_words(nm, np_):
                if sfh.decompose(sfh.basis_diagram(w)).words != frozenset([w]):
                    problems.append(f"basis decomposition of {w}")
    for n in range(1, triple_n_max + 1):
        for d in dg.enumerate_diagrams(n):
            for c in arcs.find_attaching_arcs(d):
                if c.triviality != "nontrivial":
                    continue
                a, b, cc = arcs.bypass_triple(d, c)
                total = sfh.decompose(a) + sfh.decompose(b) + sfh.decompose(cc)
                if not total.is_zero():
                    problems.append(f"triple on {dg.serialize(d)}")
    return problems


def check_operator_algebra(n_max: int = 6, seed: int = 0) -> list[str]:
    problems = []
    rng = random.Random(seed)
    for n in range(0, n_max + 1):
        for nm, np_ in _gradings(n):
            words = all_words(nm, np_)
            elements = [sfh.SfhElement.basis(w) for w in words]
            for _ in range(3):
                elements.append(
                    sfh.SfhElement(w for w in words if rng.random() < 0.5)
                )
            for x in elements:
                if sfh.apply_operator(sfh.A_PLUS, sfh.apply_operator(sfh.B_MINUS, x)) != x:
                    problems.append(f"A+B- at {(nm, np_)}")
                if sfh.apply_operator(sfh.A_MINUS, sfh.apply_operator(sfh.B_PLUS, x)) != x:
                    problems.append(f"A-B+ at {(nm, np_)}")
                if not sfh.apply_operator(sfh.A_PLUS, sfh.apply_operator(sfh.B_PLUS, x)).is_zero():
                    problems.append(f"A+B+ at {(nm, np_)}")
                if not sfh.apply_operator(sfh.A_MINUS, sfh.apply_operator(sfh.B_MINUS, x)).is_zero():
                    problems.append(f"A-B- at {(nm, np_)}")
    return problems


def check_main_theorem(n_max: int = 7) -> list[str]:
    problems = []
    for n in range(0, n_max + 1):
        for nm, np_ in _gradings(n):
            pairs = comparable_pairs(nm, np_)
            e = np_ - nm
            if len(pairs) != narayana(n + 1, e):
                problems.append(f"pair count at {(nm, np_)}")
            seen = {}
            for (w1, w2) in pairs:
                d = sfh.from_pair(w1, w2)
                if sfh.phi(d) != (w1, w2):
                    problems.append(f"phi roundtrip {w1},{w2}")
                if d in seen:
                    problems.append(f"from_pair collision {w1},{w2}")
                seen[d] = (w1, w2)
                for w in sfh.decompose(d).words:
                    if not (partial_leq(w1, w) and partial_leq(w, w2)):
                        problems.append(f"sandwich fails inside [{w1},{w2}]")
            diagrams = set(dg.enumerate_diagrams(n + 1))
            by_e = {x for x in diagrams if dg.euler_class(x) == e}
            if set(seen) != by_e:
                problems.append(f"phi not onto at {(nm, np_)}")
    # the concrete instances
    decs = {
        frozenset(str(x) for x in sfh.decompose(d).words)
        for d in dg.enumerate_diagrams(4)
        if dg.euler_class(d) == -1
    }
    expected = {
        frozenset(s)
        for s in (
            {"--+"}, {"-+-"}, {"+--"}, {"--+", "-+-"}, {"--+", "+--"}, {"-+-", "+--"},
        )
    }
    if decs != expected:
        problems.append("the (4,-1) table")
    fig15 = sfh.from_pair(word("--++"), word("+-+-"))
    if {str(x) for x in sfh.decompose(fig15).words} != {"--++", "-++-", "+--+", "+-+-"}:
        problems.append("the four-term decomposition")
    return problems


def check_parity(n_max: int = 7, tangled_n_max: int = 6) -> list[str]:
    problems = []
    for n in range(1, n_max + 1):
        for d in dg.enumerate_diagrams(n):
            words = sfh.decompose(d).words
            if len(words) != 1 and len(words) % 2 != 0:
                problems.append(f"odd non-basis decomposition {dg.serialize(d)}")
    for n in range(1, tangled_n_max + 1):
        for d in dg.enumerate_diagrams(n):
            words = sfh.decompose(d).words
            if len(words) == 1:
                continue
            lo, hi = sfh.phi(d)
            for w in words:
                if w in (lo, hi):
                    continue
                pre = sum(1 for v in words if partial_leq(v, w))
                post = sum(1 for v in words if partial_leq(w, v))
                if pre % 2 or post % 2:
                    problems.append(f"prec/follow parity at {dg.serialize(d)}")
                if all(partial_leq(v, w) or partial_leq(w, v) for v in words):
                    problems.append(f"middle word comparable to all in {dg.serialize(d)}")
    return problems


def check_stackability(
    pair_n_max: int = 6, table_n_max: int = 5, connector_shift: int = -1
) -> list[str]:
    problems = []
    for n in range(1, pair_n_max + 1):
        diagrams = dg.enumerate_diagrams(n)
        for a in diagrams:
            if stacking.m_geometric(a, a, connector_shift) != 1:
                problems.append(f"self-stacking {dg.serialize(a)}")
            for b in diagrams:
                if stacking.m_geometric(a, b, connector_shift) != stacking.m_algebraic(a, b):
                    problems.append(f"m mismatch {dg.serialize(a)} / {dg.serialize(b)}")
    for n in range(0, table_n_max):
        for nm, np_ in _gradings(n):
            for w0 in all_words(nm, np_):
                for w1 in all_words(nm, np_):
                    geo = stacking.m_geometric(
                        sfh.basis_diagram(w0), sfh.basis_diagram(w1), connector_shift
                    )
                    if geo != int(partial_leq(w0, w1)):
                        problems.append(f"basis m vs order {w0},{w1}")
    for n in range(1, table_n_max + 1):
        for d in dg.enumerate_diagrams(n):
            for c in arcs.find_attaching_arcs(d):
                if c.triviality != "nontrivial":
                    continue
                up = arcs.surgery(d, c, "up")
                down = arcs.surgery(d, c, "down")
                table = (
                    stacking.m_geometric(d, up, connector_shift),
                    stacking.m_geometric(up, down, connector_shift),
                    stacking.m_geometric(down, d, connector_shift),
                    stacking.m_geometric(up, d, connector_shift),
                    stacking.m_geometric(down, up, connector_shift),
                    stacking.m_geometric(d, down, connector_shift),
                )
                if table != (1, 1, 1, 0, 0, 0):
                    problems.append(f"direction table {dg.serialize(d)}")
    return problems


def check_categories(word_n_max: int = 5, arc_n_max: int = 5) -> list[str]:
    problems = []
    for n in range(0, word_n_max + 1):
        for nm, np_ in _gradings(n):
            for (w1, w2) in comparable_pairs(nm, np_):
                cat = stacking.bounded_category(sfh.basis_diagram(w1), sfh.basis_diagram(w2))
                members = interval(w1, w2).members
                mapping = {}
                for obj in cat.objects:
                    dec = sfh.decompose(obj).words
                    if len(dec) != 1:
                        problems.append(f"non-basis object in [{w1},{w2}]")
                        continue
                    mapping[obj] = next(iter(dec))
                if set(mapping.values()) != set(members):
                    problems.append(f"objects differ from interval [{w1},{w2}]")
                for a in cat.objects:
                    for b in cat.objects:
                        if cat.leq(a, b) != partial_leq(mapping[a], mapping[b]):
                            problems.append(f"order differs in [{w1},{w2}]")
    for n in range(1, arc_n_max + 1):
        for d in dg.enumerate_diagrams(n):
            cat = stacking.bounded_category(d, d)
            if cat.objects != (d,):
                problems.append(f"self category of {dg.serialize(d)}")
            for c in arcs.find_attaching_arcs(d):
                if c.triviality != "nontrivial":
                    continue
                nm_, np2, cat = stacking.bypass_cobordism_category(d, c)
                ws = all_words(nm_, np2)
                if len(cat.objects) != len(ws):
                    problems.append(f"bypass cobordism size {dg.serialize(d)}")
                    continue
                prof = sorted(
                    (
                        sum(cat.leq(a, b) for b in cat.objects),
                        sum(cat.leq(b, a) for b in cat.objects),
                    )
                    for a in cat.objects
                )
                wprof = sorted(
                    (
                        sum(partial_leq(a, b) for b in ws),
                        sum(partial_leq(b, a) for b in ws),
                    )
                    for a in ws
                )
                if prof != wprof:
                    problems.append(f"bypass cobordism shape {dg.serialize(d)}")
    return problems


def check_bypass_systems(
    word_n_max: int = 5, random_cases: int = 1000, random_n_max: int = 6, seed: int = 0
) -> list[str]:
    problems = []
    for n in range(0, word_n_max + 1):
        for nm, np_ in _gradings(n):
            for (w1, w2) in comparable_pairs(nm, np_):
                system = arcs.fbs(w1, w2)
                if arcs.surgery_along_system(system, "up") != sfh.basis_diagram(w2):
                    problems.append(f"fbs up {w1},{w2}")
                if w1 != w2:
                    down = arcs.surgery_along_system(system, "down")
                    if dg.is_zero(down) or down != sfh.from_pair(w1, w2):
                        problems.append(f"fbs down {w1},{w2}")
                if arcs.has_pinwheel(system, "up") or arcs.has_pinwheel(system, "down"):
                    problems.append(f"fbs pinwheel {w1},{w2}")
    rng = random.Random(seed)
    done = 0
    while done < random_cases:
        n = rng.randrange(2, random_n_max + 1)
        diagrams = dg.enumerate_diagrams(n)
        d = diagrams[rng.randrange(len(diagrams))]
        system = arcs.random_system(d, rng.randrange(1, 5), rng)
        if system is None:
            continue
        done += 1
        if not arcs.has_pinwheel(system, "up"):
            result = arcs.surgery_along_system(system, "up")
            if dg.is_zero(result):
                problems.append(f"pinwheel-free surgery died on {dg.serialize(d)}")
            elif stacking.m_geometric(d, result) != 1:
                problems.append(f"pinwheel-free but overtwisted on {dg.serialize(d)}")
    return problems


_R53 = (
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 1, 0, 0, 0),
    (0, 0, 1, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 1, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
)


def check_rotation(n_max: int = 6, m_n_max: int = 5) -> list[str]:
    problems = []
    displayed = {
        (2, 1): ((0, 1), (1, 1)),
        (3, 1): ((0, 1, 0), (0, 0, 1), (1, 1, 1)),
        (3, 2): ((0, 1, 0), (0, 0, 1), (1, 1, 1)),
        (4, 1): ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)),
        (4, 3): ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)),
        (5, 3): _R53,
    }
    for (n, k), want in displayed.items():
        if sfh.rotation_matrix(n, k) != want:
            problems.append(f"matrix ({n},{k})")
    if sfh.rotation_matrix(5, 2) == sfh.rotation_matrix(5, 3):
        problems.append("R_{5,2} equals R_{5,3}")
    for n in range(0, n_max + 1):
        for nm, np_ in _gradings(n):
            for w in all_words(nm, np_):
                x = sfh.SfhElement.basis(w)
                a = sfh.rotation_geometric(x)
                b = sfh.rotation_by_matrix(x)
                c = sfh.rotation_explicit(x)
                if not (a == b == c):
                    problems.append(f"rotation implementations differ at {w}")
                y = x
                for _ in range(n + 1):
                    y = sfh.rotation(y)
                if y != x:
                    problems.append(f"rotation order at {w}")
    for n in range(1, m_n_max + 1):
        diagrams = dg.enumerate_diagrams(n)
        rotated = {d: dg.rotate_points(d, -2) for d in diagrams}
        for a in diagrams:
            for b in diagrams:
                if stacking.m_geometric(a, b) != stacking.m_geometric(rotated[a], rotated[b]):
                    problems.append(f"m not rotation invariant {dg.serialize(a)}")
    return problems


def check_simplicial(n_max: int = 8, rank_n_max: int = 6, ident_n_max: int = 6) -> list[str]:
    problems = []
    rep = simplicial.verify_double_complex(n_max)
    problems += [f"double complex {f}" for f in rep["failures"]]
    rep = simplicial.verify_homology_trivial(n_max, rank_n_max)
    problems += [f"homology {f}" for f in rep["failures"]]
    for n in range(0, ident_n_max + 1):
        for nm, np_ in _gradings(n):
            for w in all_words(nm, np_):
                x = sfh.SfhElement.basis(w)
                for side, top in (("west", nm), ("east", np_)):
                    for j in range(top + 1):
                        sx = simplicial.degeneracy(j, side, x)
                        for i in range(top + 2):
                            got = simplicial.face(i, side, sx)
                            if i < j:
                                want = simplicial.degeneracy(j - 1, side, simplicial.face(i, side, x))
                            elif i in (j, j + 1):
                                want = x
                            else:
                                want = simplicial.degeneracy(j, side, simplicial.face(i - 1, side, x))
                            if got != want:
                                problems.append(f"face/degeneracy table at {w}")
                    for j in range(top + 1):
                        for i in range(j):
                            lhs = simplicial.face(i, side, simplicial.face(j, side, x))
                            rhs = simplicial.face(j - 1, side, simplicial.face(i, side, x))
                            if lhs != rhs:
                                problems.append(f"face/face identity at {w}")
                    for j in range(top + 1):
                        for i in range(j + 1):
                            lhs = simplicial.degeneracy(i, side, simplicial.degeneracy(j, side, x))
                            rhs = simplicial.degeneracy(j + 1, side, simplicial.degeneracy(i, side, x))
                            if lhs != rhs:
                                problems.append(f"degeneracy identity at {w}")
    return problems


def _criteria(level: str, seed: int) -> list[tuple[str, Callable[[], list[str]], float]]:
    full = level == "full"
    return [
        ("counting", lambda: check_counting(8 if full else 6), 5.0),
        (
            "basis_and_bypass",
            lambda: check_basis_and_triples(7 if full else 5, 6 if full else 4),
            60.0,
        ),
        ("operator_algebra", lambda: check_operator_algebra(6 if full else 5, seed), 30.0),
        ("main_theorem", lambda: check_main_theorem(7 if full else 5), 120.0),
        ("parity", lambda: check_parity(7 if full else 5, 6 if full else 5), 60.0),
        (
            "stackability",
            lambda: check_stackability(6 if full else 4, 5 if full else 4),
            300.0,
        ),
        ("categories", lambda: check_categories(5 if full else 4, 5 if full else 4), 300.0),
        (
            "bypass_systems",
            lambda: check_bypass_systems(
                5 if full else 4, 1000 if full else 100, 6 if full else 5, seed
            ),
            300.0,
        ),
        ("rotation", lambda: check_rotation(6 if full else 5, 5 if full else 4), 120.0),
        (
            "simplicial",
            lambda: check_simplicial(8 if full else 6, 6 if full else 5, 6 if full else 5),
            30.0,
        ),
    ]


def run_verification(level: str = "quick", seed: int = 0) -> list[CheckResult]:
    results = []
    for name, fn, _budget in _criteria(level, seed):
        start = time.perf_counter()
        problems = fn()
        elapsed = time.perf_counter() - start
        detail = "; ".join(str(p) for p in problems[:5]) if problems else "all cases pass"
        results.append(CheckResult(name, not problems, detail, elapsed))
    return results


def budgets(level: str = "full") -> dict[str, float]:
    return {name: budget for name, _fn, budget in _criteria(level, 0)}
