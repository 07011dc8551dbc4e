"""Command-line surface: enumeration, decomposition, stacking, categories,
rendering, and the verification harness.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
With SUTURA_CACHE_DIR set, the basis-decomposition memo is spilled to a
plain key-value file between runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import sfh, stacking, verify
from . import diagram as dg
from .errors import CapExceeded, SuturaError
from .words import Word, catalan, narayana, word


def _load_cache() -> str | None:
    cache_dir = os.environ.get("SUTURA_CACHE_DIR")
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, "decompose.kv")
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                key, _, value = line.rstrip("\n").partition("\t")
                if not key:
                    continue
                try:
                    pairing = tuple(int(x) for x in key.split(","))
                    words = frozenset(
                        Word.parse(w) for w in value.split(",") if w
                    ) if value else frozenset([Word()])
                except (ValueError, SuturaError):
                    continue
                sfh._decompose_cache.setdefault(pairing, words)
    return path


def _save_cache(path: str | None) -> None:
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for pairing, words in sorted(sfh._decompose_cache.items()):
            key = ",".join(str(x) for x in pairing)
            value = ",".join(str(w) for w in sorted(words, key=lambda w: w.bits))
            fh.write(f"{key}\t{value}\n")
    os.replace(tmp, path)


def cmd_enumerate(args) -> int:
    if args.N > args.cap:
        raise CapExceeded(f"N={args.N} exceeds the cap {args.cap}; raise --cap")
    diagrams = dg.enumerate_diagrams(args.N)
    rows = []
    for d in diagrams:
        e = dg.euler_class(d)
        if args.e is not None and e != args.e:
            continue
        lo, hi = sfh.phi(d)
        rows.append(
            {
                "diagram": dg.serialize(d),
                "e": e,
                "is_basis": sfh.is_basis(d),
                "phi": [str(lo), str(hi)],
            }
        )
    parts = [narayana(args.N, e) for e in range(-(args.N - 1), args.N, 2)]
    footer = f"{catalan(args.N)} = " + "+".join(str(p) for p in parts)
    if args.format == "json":
        print(json.dumps({"rows": rows, "counts": footer}, sort_keys=True))
    else:
        for r in rows:
            flag = "basis" if r["is_basis"] else "     "
            print(f"{r['diagram']:<40} e={r['e']:+d} {flag} [{r['phi'][0]}, {r['phi'][1]}]")
        print(footer)
    return 0


def cmd_decompose(args) -> int:
    d = dg.parse(args.diagram)
    words = [str(w) for w in sfh.decompose(d).sorted_words()]
    if args.format == "json":
        print(json.dumps({"words": words}))
    else:
        print(" + ".join(f"v_{w}" if w else "v_" for w in words))
    return 0


def cmd_frompair(args) -> int:
    d = sfh.from_pair(word(args.lower), word(args.upper))
    if args.format == "json":
        print(json.dumps(dg.to_json_dict(d), sort_keys=True))
    else:
        print(dg.serialize(d))
    return 0


def cmd_stack(args) -> int:
    d0, d1 = dg.parse(args.bottom), dg.parse(args.top)
    graph = stacking.suture_graph(d0, d1)
    loops = graph.loop_count()
    geo = stacking.m_geometric(d0, d1)
    alg = stacking.m_algebraic(d0, d1)
    payload = {
        "tight": bool(geo),
        "loops": loops,
        "m_geometric": geo,
        "m_algebraic": alg,
        "agree": geo == alg,
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        status = "tight" if geo else "overtwisted"
        print(f"{status} loops={loops} m_geometric={geo} m_algebraic={alg}")
    return 0


def cmd_category(args) -> int:
    d0, d1 = dg.parse(args.bottom), dg.parse(args.top)
    cat = stacking.bounded_category(d0, d1)
    print(json.dumps(cat.to_json(), sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    results = verify.run_verification(args.level, args.seed)
    report = {
        "level": args.level,
        "checks": [
            {"name": r.name, "pass": r.passed, "detail": r.detail, "seconds": round(r.seconds, 3)}
            for r in results
        ],
        "failures": [r.name for r in results if not r.passed],
    }
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.name:<18} {r.seconds:7.2f}s  {r.detail}")
    return 0 if not report["failures"] else 1


# -- rendering ----------------------------------------------------------------


def _point_xy(p: int, m: int, radius: float, cx: float, cy: float):
    theta = math.pi / 2 - 2 * math.pi * p / m
    return (cx + radius * math.cos(theta), cy - radius * math.sin(theta))


def render_svg(d: dg.ChordDiagram) -> str:
    m = 2 * d.n
    R, C = 100.0, 120.0
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="240" height="240" '
        'viewBox="0 0 240 240">'
    ]
    pts = {p: _point_xy(p, m, R, C, C) for p in range(m)}

    def fmt(x: float) -> str:
        return f"{x:.2f}"

    for region in dg.face_cycles(d):
        path = []
        first = None
        for dart in region:
            if dart[0] == "b":
                k, direction = dart[1], dart[2]
                a = k if direction == 1 else (k + 1) % m
                b = (k + 1) % m if direction == 1 else k
                if first is None:
                    first = a
                    path.append(f"M {fmt(pts[a][0])} {fmt(pts[a][1])}")
                sweep = 1 if direction == 1 else 0
                path.append(f"A {fmt(R)} {fmt(R)} 0 0 {sweep} {fmt(pts[b][0])} {fmt(pts[b][1])}")
            else:
                a = dart[1]
                b = d.partner(a)
                if first is None:
                    first = a
                    path.append(f"M {fmt(pts[a][0])} {fmt(pts[a][1])}")
                path.append(f"L {fmt(pts[b][0])} {fmt(pts[b][1])}")
        arc0 = next(x[1] for x in region if x[0] == "b")
        fill = "#cfe8ff" if arc0 % 2 == 0 else "#ffd9cf"
        out.append(f'<path d="{" ".join(path)} Z" fill="{fill}" stroke="none"/>')
    out.append(f'<circle cx="{fmt(C)}" cy="{fmt(C)}" r="{fmt(R)}" fill="none" stroke="black"/>')
    for a, b in d.chords():
        (x1, y1), (x2, y2) = pts[a], pts[b]
        out.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
    bx, by = pts[0]
    out.append(f'<circle cx="{fmt(bx)}" cy="{fmt(by)}" r="4" fill="red"/>')
    if sfh.is_basis(d):
        root = (dg.euler_class(d) + d.n) % m
        rx, ry = pts[root]
        out.append(
            f'<circle cx="{fmt(rx)}" cy="{fmt(ry)}" r="4" fill="white" stroke="red" '
            'stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(d: dg.ChordDiagram, width: int = 41, height: int = 21) -> str:
    m = 2 * d.n
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    rx, ry = cx - 1.0, cy - 1.0
    grid = [[" "] * width for _ in range(height)]

    def coords(p: int):
        theta = math.pi / 2 - 2 * math.pi * p / m
        return (cx + rx * math.cos(theta), cy - ry * math.sin(theta))

    pts = {p: coords(p) for p in range(m)}
    chords = [(pts[a], pts[b]) for a, b in d.chords()]

    def crossings(x: float, y: float) -> int:
        # ray from (x, y) to a point just inside the boundary arc (0, 1)
        theta = math.pi / 2 - 2 * math.pi * 0.5 / m
        ax, ay = cx + 0.93 * rx * math.cos(theta), cy - 0.93 * ry * math.sin(theta)
        count = 0
        for (p1, p2) in chords:
            if _segments_cross((x, y), (ax, ay), p1, p2):
                count += 1
        return count

    for row in range(height):
        for col in range(width):
            dx, dy = (col - cx) / rx, (row - cy) / ry
            if dx * dx + dy * dy < 0.92:
                grid[row][col] = "+" if crossings(col, row) % 2 == 0 else "-"
    for t in range(0, 360, 3):
        theta = math.radians(t)
        col = int(round(cx + rx * math.cos(theta)))
        row = int(round(cy - ry * math.sin(theta)))
        grid[row][col] = "."
    for (x1, y1), (x2, y2) in chords:
        steps = int(max(abs(x2 - x1), abs(y2 - y1)) * 2) + 1
        for t in range(steps + 1):
            x = x1 + (x2 - x1) * t / steps
            y = y1 + (y2 - y1) * t / steps
            grid[int(round(y))][int(round(x))] = "*"
    for p in range(m):
        x, y = pts[p]
        grid[int(round(y))][int(round(x))] = "o"
    bx, by = pts[0]
    grid[int(round(by))][int(round(bx))] = "B"
    if sfh.is_basis(d):
        root = (dg.euler_class(d) + d.n) % m
        x, y = pts[root]
        grid[int(round(y))][int(round(x))] = "R"
    return "\n".join("".join(row).rstrip() for row in grid) + "\n"


def _segments_cross(a, b, c, d_) -> bool:
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 1e-12) - (v < -1e-12)

    return (
        orient(a, b, c) * orient(a, b, d_) < 0
        and orient(c, d_, a) * orient(c, d_, b) < 0
    )


def cmd_render(args) -> int:
    d = dg.parse(args.diagram)
    if args.format == "svg":
        sys.stdout.write(render_svg(d))
    else:
        sys.stdout.write(render_ascii(d))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sutura",
        description="Chord diagrams on the disc: decompositions, stacking, categories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list diagrams with a given chord count")
    p.add_argument("N", type=int)
    p.add_argument("--e", type=int, default=None, help="restrict to one euler class")
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", help="basis decomposition of a diagram")
    p.add_argument("diagram")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("frompair", help="diagram with given extreme words")
    p.add_argument("lower")
    p.add_argument("upper")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_frompair)

    p = sub.add_parser("stack", help="stackability of two diagrams")
    p.add_argument("bottom")
    p.add_argument("top")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_stack)

    p = sub.add_parser("category", help="bounded category of a tight stacking")
    p.add_argument("bottom")
    p.add_argument("top")
    p.set_defaults(func=cmd_category)

    p = sub.add_parser("verify", help="run the structural verification sweeps")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a diagram")
    p.add_argument("diagram")
    p.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_path = _load_cache()
    try:
        code = args.func(args)
    except SuturaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        _save_cache(cache_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
