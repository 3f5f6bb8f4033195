"""Generate the JSON tiling data shipped in src/toromaps/tilings/data.

Each tiling is described by its float Euclidean geometry (unit edges).  The
script finds the fundamental vertices and edges, searches the affine
symmetries fixing the origin class, snaps positions to exact rationals by
averaging over stabilisers, labels the symmetries and checks the result with
the package validator before writing it.

    python tools/build_tilings.py [ids...]
"""

from __future__ import annotations

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from toromaps.lattice import IntMatrix2  # noqa: E402
from toromaps.tilings.io import dump_spec  # noqa: E402
from toromaps.tilings.model import (  # noqa: E402
    AffineSymmetry,
    Edge,
    ExactCoord,
    QSqrt3,
    TilingSpec,
    Vertex,
    canonical_cycle,
    parse_vertex_type,
    split_type_string,
    vec_mod1,
)
from toromaps.tilings.validate import face_cycles, validate  # noqa: E402

OUT = ROOT / "src" / "toromaps" / "tilings" / "data"
S3 = math.sqrt(3)
GRID = 240
TOL = 1e-6


def q(p, r=0) -> QSqrt3:
    return QSqrt3(Fraction(p), Fraction(r))


def coord(x: QSqrt3, y: QSqrt3) -> ExactCoord:
    return ExactCoord(x, y)


def polygon(center, n, radius, start_deg):
    cx, cy = center
    return [
        (cx + radius * math.cos(math.radians(start_deg + 360 * k / n)),
         cy + radius * math.sin(math.radians(start_deg + 360 * k / n)))
        for k in range(n)
    ]


def circumradius(n: int) -> float:
    return 1 / (2 * math.sin(math.pi / n))


# ----------------------------------------------------------------- catalogue

T1 = np.array([1.0, 0.0])
T2 = np.array([0.5, S3 / 2])


def tri(i, j):
    return i * T1 + j * T2


def holes_tiling(a_t, b_t, holes_t=((0, 0),)):
    """Triangular lattice points minus the holes, periodic under <a_t, b_t>."""
    A, B = tri(*a_t), tri(*b_t)
    basis = np.column_stack([A, B])
    inv = np.linalg.inv(basis)
    hole_coords = [np.mod(inv @ tri(*h), 1.0) for h in holes_t]
    pts = []
    for i in range(-12, 13):
        for j in range(-12, 13):
            p = tri(i, j)
            c = np.mod(inv @ p, 1.0)
            if any(np.allclose(np.mod(c - h + 0.5, 1.0) - 0.5, 0, atol=1e-9) for h in hole_coords):
                continue
            pts.append(tuple(p))
    return basis, pts


def strip_tiling(rows: str, origin):
    """Horizontal rows of triangles (T) and unit squares (S), period 1 along x."""
    h = S3 / 2
    lines = [(0.0, 0.0)]
    for r in rows:
        y, off = lines[-1]
        lines.append((y + (1.0 if r == "S" else h), off + (0.0 if r == "S" else 0.5)))
    period_y, shift = lines[-1]
    basis = np.column_stack([[1.0, 0.0], [shift, period_y]])
    pts = [(off + k - origin[0], y - origin[1]) for y, off in lines[:-1] for k in range(-3, 4)]
    return basis, pts


def lattice_points(basis, motif, reach=2):
    pts = []
    for i in range(-reach, reach + 1):
        for j in range(-reach, reach + 1):
            t = basis @ np.array([i, j])
            pts.extend((x + t[0], y + t[1]) for x, y in motif)
    return pts


def hex_basis(s):
    return np.column_stack([[s, 0.0], [s / 2, s * S3 / 2]])


def hex_exact(p, r):
    """Exact hexagonal basis scaled by p + r*sqrt(3)."""
    s = q(p, r)
    A = coord(s, q(0))
    half = s.scale(Fraction(1, 2))
    # (s/2, s*sqrt(3)/2)
    B = coord(half, QSqrt3(Fraction(3) * half.q, half.p))
    return A, B


SQ_EXACT = (coord(q(1), q(0)), coord(q(0), q(1)))


def build_catalogue():
    cat = {}

    def add(ident, type_string, basis, pts, exact, origin=(0.0, 0.0)):
        pts = [(x - origin[0], y - origin[1]) for x, y in pts]
        cat[ident] = dict(type_string=type_string, basis=basis, pts=pts, exact=exact)

    # holes in the triangular lattice
    basis, pts = holes_tiling((3, 1), (-1, 4))
    add(1, "[3^6;3^4,6^1]", basis, pts, (coord(q(Fraction(7, 2)), q(0, Fraction(1, 2))), coord(q(1), q(0, 2))))
    basis, pts = holes_tiling((3, 0), (0, 3))
    add(2, "[3^6;3^4,6^1]", basis, pts, hex_exact(3, 0))
    basis, pts = holes_tiling((3, 0), (0, 3), ((1, 1), (2, 2)))
    add(7, "[3^6;3^2,6^2]", basis, pts, hex_exact(3, 0))
    basis, pts = holes_tiling((1, 1), (-2, 3))
    add(8, "[3^2,6^2;3^4,6^1]", basis, pts,
        (coord(q(Fraction(3, 2)), q(0, Fraction(1, 2))), coord(q(Fraction(-1, 2)), q(0, Fraction(3, 2)))))
    basis, pts = holes_tiling((1, 1), (2, -2))
    add(15, "[3^2,6^2;3^1,6^1,3^1,6^1]", basis, pts,
        (coord(q(Fraction(3, 2)), q(0, Fraction(1, 2))), coord(q(1), q(0, -1))))
    basis, pts = holes_tiling((2, 0), (0, 2))
    add(24, "[3^1,6^1,3^1,6^1]", basis, pts, hex_exact(2, 0))
    basis, pts = holes_tiling((2, 1), (-1, 3))
    add(25, "[3^4,6^1]", basis, pts,
        (coord(q(Fraction(5, 2)), q(0, Fraction(1, 2))), coord(q(Fraction(1, 2)), q(0, Fraction(3, 2)))))

    # rows of triangles and squares
    h = S3 / 2
    basis, pts = strip_tiling("STTT", (0.0, 0.5))
    add(3, "[3^6;3^3,4^2]", basis, pts, (coord(q(1), q(0)), coord(q(Fraction(3, 2)), q(1, Fraction(3, 2)))))
    basis, pts = strip_tiling("STT", (0.0, 0.5))
    add(4, "[3^6;3^3,4^2]", basis, pts, (coord(q(1), q(0)), coord(q(1), q(1, 1))))
    basis, pts = strip_tiling("SST", (0.0, 1.0))
    add(12, "[4^4;3^3,4^2]", basis, pts, (coord(q(1), q(0)), coord(q(Fraction(1, 2)), q(2, Fraction(1, 2)))))
    basis, pts = strip_tiling("SSST", (0.0, 1.5))
    add(13, "[4^4;3^3,4^2]", basis, pts, (coord(q(1), q(0)), coord(q(Fraction(1, 2)), q(3, Fraction(1, 2)))))

    # a row of squares under a band of hexagons and triangles
    for ident, shift, ts in ((18, 0.0, "[3^1,4^2,6^1;3^1,6^1,3^1,6^1]"), (19, 1.0, "[3^1,6^1,3^1,6^1;3^1,4^2,6^1]")):
        basis = np.column_stack([[2.0, 0.0], [shift, 1 + S3]])
        motif = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.5, 1 + h)]
        pts = lattice_points(basis, motif, 3)
        add(ident, ts, basis, pts, (coord(q(2), q(0)), coord(q(int(shift)), q(1, 1))), origin=(0.5, 1 + h))

    # hexagons of the 3.4.6.4 tiling
    s = 1 + S3
    basis = hex_basis(s)
    hexagon = polygon((0, 0), 6, 1.0, 30)
    add(21, "[3^1,4^1,6^1,4^1]", basis, lattice_points(basis, hexagon, 3), hex_exact(1, 1))
    add(5, "[3^6;3^2,4^1,3^1,4^1]", basis, lattice_points(basis, hexagon + [(0.0, 0.0)], 3), hex_exact(1, 1))
    big = hex_basis(2 * s)
    motif = []
    for c in ((s, 0.0), (s / 2, s * S3 / 2), (1.5 * s, s * S3 / 2)):
        motif += polygon(c, 6, 1.0, 30)
    add(20, "[4^1,6^1,12^1;3^1,4^1,6^1,4^1]", big, lattice_points(big, motif, 3), hex_exact(2, 2))

    # dodecagons of the 4.6.12 tiling
    R12 = circumradius(12)
    s = 3 + S3
    basis = hex_basis(s)
    dodec = polygon((0, 0), 12, R12, 15)
    centres = [tuple(basis @ np.array([1 / 3, 1 / 3])), tuple(basis @ np.array([2 / 3, 2 / 3]))]
    add(26, "[4^1,6^1,12^1]", basis, lattice_points(basis, dodec, 3), hex_exact(3, 1))
    add(6, "[3^6;3^2,4^1,12^1]", basis, lattice_points(basis, dodec + centres, 3), hex_exact(3, 1))
    add(17, "[3^1,4^1,6^1,4^1;3^1,4^2,6^1]", basis,
        lattice_points(basis, dodec + polygon((0, 0), 6, 1.0, 30), 3), hex_exact(3, 1))

    # dodecagons of the 3.12.12 tiling
    s = 2 + S3
    basis = hex_basis(s)
    add(22, "[3^1,12^2]", basis, lattice_points(basis, dodec, 3), hex_exact(2, 1))
    add(11, "[3^3,4^2;3^1,4^1,6^1,4^1]", basis,
        lattice_points(basis, dodec + polygon((0, 0), 6, 1.0, 30), 3), hex_exact(2, 1))
    add(14, "[3^1,4^1,6^1,4^1;3^2,4^1,3^1,4^1]", basis,
        lattice_points(basis, dodec + polygon((0, 0), 6, 1.0, 0), 3), hex_exact(2, 1))

    # square lattice tilings
    s = 2 + S3
    basis = np.column_stack([[s, 0.0], [0.0, s]])
    add(16, "[3^1,12^2;3^1,4^1,3^1,12^1]", basis, lattice_points(basis, dodec, 3),
        (coord(q(2, 1), q(0)), coord(q(0), q(2, 1))))
    s = 1 + math.sqrt(2)
    basis = np.column_stack([[s, 0.0], [0.0, s]])
    add(27, "[4^1,8^2]", basis, lattice_points(basis, polygon((0, 0), 8, circumradius(8), 22.5), 3), SQ_EXACT)
    s = (math.sqrt(6) + math.sqrt(2)) / 2
    basis = np.column_stack([[s, 0.0], [0.0, s]])
    motif = polygon((0, 0), 4, circumradius(4), 30) + polygon((s / 2, s / 2), 4, circumradius(4), 60)
    add(23, "[3^2,4^1,3^1,4^1]", basis, lattice_points(basis, motif, 3), SQ_EXACT)

    s = (3 + S3) / math.sqrt(2)
    basis = np.column_stack([[s, 0.0], [0.0, s]])
    motif = domino((s / 2, 0.0), 45.0) + domino((0.0, s / 2), 135.0)
    add(9, "[3^3,4^2;3^2,4^1,3^1,4^1]", basis, lattice_points(basis, motif, 3), SQ_EXACT)

    basis, motif, exact = pgg_dominoes()
    add(10, "[3^3,4^2;3^2,4^1,3^1,4^1]", basis, lattice_points(basis, motif, 3), exact)
    return cat


def domino(center, angle_deg):
    """Six vertices of a 2x1 rectangle split into two unit squares."""
    c = np.array(center)
    u = np.array([math.cos(math.radians(angle_deg)), math.sin(math.radians(angle_deg))])
    w = np.array([-u[1], u[0]])
    return [tuple(c + a * u + b * w) for a in (-1.0, 0.0, 1.0) for b in (-0.5, 0.5)]


def pgg_dominoes():
    """Dominoes at the 2-fold centres of a 2:1 rectangular cell, mirrored by the glides.

    A shared domino corner is of type 3^2.4.3.4, so neighbouring dominoes differ
    in tilt by 30 degrees; the glides flip the tilt, which forces phi = 15.
    """
    phi = math.radians(15.0)
    basis = np.column_stack([[4 * math.cos(phi), 0.0], [0.0, 2 * math.cos(phi)]])
    d0 = domino((0.0, 0.0), 15.0)
    exact = (coord(q(2), q(0)), coord(q(0), q(1)))
    return basis, d0 + glide_image(d0, basis), exact


def glide_image(pts, basis):
    lx, ly = basis[0, 0], basis[1, 1]
    return [(-x + lx / 2, y + ly / 2) for x, y in pts]


# ------------------------------------------------------------------ pipeline

def fundamental(basis, pts):
    inv = np.linalg.inv(basis)
    coords = []
    for p in pts:
        c = np.mod(inv @ np.array(p), 1.0)
        c[np.abs(c - 1.0) < 1e-9] = 0.0
        if not any(np.allclose(wrap(c - d), 0, atol=1e-7) for d in coords):
            coords.append(c)
    return coords


def wrap(v):
    return np.mod(np.asarray(v) + 0.5, 1.0) - 0.5


def find_edges(basis, coords):
    edges = []
    seen = set()
    for i, ci in enumerate(coords):
        for j, cj in enumerate(coords):
            for m in itertools.product(range(-2, 3), repeat=2):
                d = basis @ (cj + np.array(m) - ci)
                if abs(np.linalg.norm(d) - 1.0) < 1e-7:
                    key = (i, j, m)
                    rev = (j, i, (-m[0], -m[1]))
                    if rev not in seen:
                        seen.add(key)
                        edges.append(key)
    return edges


def float_match(coords, p):
    for k, c in enumerate(coords):
        if np.allclose(wrap(p - c), 0, atol=TOL):
            return k
    return None


def search_group(basis, coords, edges):
    gram = basis.T @ basis
    eset = set()
    for i, j, m in edges:
        eset.add((i, j, m))
        eset.add((j, i, (-m[0], -m[1])))
    found = []
    for a, b, c, d in itertools.product(range(-3, 4), repeat=4):
        S = np.array([[a, b], [c, d]])
        if round(np.linalg.det(S)) not in (1, -1):
            continue
        if not np.allclose(S.T @ gram @ S, gram, atol=1e-7):
            continue
        for cj in coords:
            t = np.mod(cj - S @ coords[0], 1.0)
            images = []
            for ci in coords:
                img = S @ ci + t
                k = float_match(coords, img)
                if k is None:
                    break
                images.append((k, np.round(img - coords[k]).astype(int)))
            else:
                ok = True
                for i, j, m in edges:
                    img = S @ (coords[j] + np.array(m)) + t
                    k = float_match(coords, img)
                    z = np.round(img - coords[k]).astype(int)
                    ki, zi = images[i]
                    if (ki, k, tuple(int(x) for x in z - zi)) not in eset:
                        ok = False
                        break
                if ok:
                    half = np.round(2 * t) / 2
                    if not np.allclose(half, t, atol=1e-7):
                        raise SystemExit(f"translation {t} is not a half-lattice vector; move the origin")
                    found.append((IntMatrix2(a, b, c, d), vec_mod1(tuple(Fraction(int(round(2 * x)), 2) for x in t))))
    return found


def apply_exact(S: IntMatrix2, t, p):
    x, y = S.apply(p)
    return (x + t[0], y + t[1])


def snap(coords, group):
    """Exact positions: round one point per orbit, average over its stabiliser."""
    exact: list = [None] * len(coords)
    for k, c in enumerate(coords):
        if exact[k] is not None:
            continue
        stab = []
        for S, t in group:
            img = np.array(S.rows()) @ c + np.array([float(x) for x in t])
            if np.allclose(wrap(img - c), 0, atol=TOL):
                stab.append((S, t, np.round(img - c).astype(int)))
        pr = (Fraction(round(c[0] * GRID), GRID), Fraction(round(c[1] * GRID), GRID))
        acc = [Fraction(0), Fraction(0)]
        for S, t, z in stab:
            x, y = apply_exact(S, t, pr)
            acc[0] += x - int(z[0])
            acc[1] += y - int(z[1])
        p = (acc[0] / len(stab), acc[1] / len(stab))
        for S, t in group:
            img = np.array(S.rows()) @ c + np.array([float(x) for x in t])
            j = float_match(coords, img)
            if exact[j] is None:
                exact[j] = apply_exact(S, t, p)
    shifts = []
    out = []
    for k, (c, e) in enumerate(zip(coords, exact)):
        r = vec_mod1(e)
        z = np.round(np.array([float(r[0]), float(r[1])]) - c).astype(int)
        if np.max(np.abs(np.array([float(r[0]), float(r[1])]) - z - c)) > 0.02:
            raise SystemExit(f"snapping moved vertex {k} too far")
        out.append(r)
        shifts.append(z)
    return out, shifts


def axis_label(basis, S: IntMatrix2, t, hexagonal: bool) -> str:
    L = basis @ np.array(S.rows(), dtype=float) @ np.linalg.inv(basis)
    a_dir = math.degrees(math.atan2(basis[1, 0], basis[0, 0]))
    if S.det == 1:
        ang = round(math.degrees(math.atan2(L[1, 0], L[0, 0]))) % 360
        if ang == 0:
            return "id"
        if ang == 180:
            return "tau"
        return ("psi" if ang % 60 else "rho") + str(ang)
    # reflection: axis is the eigenvector for eigenvalue 1
    w, v = np.linalg.eig(L)
    u = np.real(v[:, np.argmin(np.abs(w - 1))])
    axis = (round(math.degrees(math.atan2(u[1], u[0])) - a_dir)) % 180
    if hexagonal:
        names = {0: "r1", 120: "r2", 60: "r3", 90: "r4", 30: "r5", 150: "r6"}
    else:
        names = {0: "r1'", 90: "r2'", 45: "r3'", 135: "r4'"}
    name = names[axis]
    if t == (0, 0):
        return name
    # off-origin mirror if some lattice shift of t is perpendicular to the axis
    for m in itertools.product(range(-2, 3), repeat=2):
        e = basis @ (np.array([float(x) for x in t]) + np.array(m))
        if abs(float(np.dot(e, u))) < 1e-7:
            return "m" + name[1:]
    return "G" + name[1:]


def build(ident: int, entry: dict, v0: int) -> TilingSpec:
    basis = entry["basis"]
    coords = fundamental(basis, entry["pts"])
    if len(coords) != v0:
        raise SystemExit(f"E{ident}: {len(coords)} fundamental vertices, expected {v0}")
    edges = find_edges(basis, coords)
    group = search_group(basis, coords, edges)
    exact, shifts = snap(coords, group)
    hexagonal = abs(np.linalg.norm(basis[:, 0]) - np.linalg.norm(basis[:, 1])) < 1e-9 and abs(
        float(np.dot(basis[:, 0], basis[:, 1])) - 0.5 * np.linalg.norm(basis[:, 0]) ** 2
    ) < 1e-9
    syms = []
    for S, t in group:
        syms.append(AffineSymmetry(S, t, axis_label(basis, S, t, hexagonal)))
    syms.sort(key=lambda s: (s.linear.det != 1, label_rank(s.label), s.label))
    labels = [s.label for s in syms]
    if len(set(labels)) != len(labels):
        raise SystemExit(f"E{ident}: duplicate labels {labels}")
    sp_edges = tuple(
        Edge(i, j, (int(m[0] + shifts[i][0] - shifts[j][0]), int(m[1] + shifts[i][1] - shifts[j][1])))
        for i, j, m in edges
    )
    A, B = entry["exact"]
    types = split_type_string(entry["type_string"])
    draft = TilingSpec(ident, entry["type_string"], A, B,
                       tuple(Vertex(p, types[0]) for p in exact), sp_edges, tuple(syms), 2, v0)
    cycles, problems = face_cycles(draft)
    if problems:
        raise SystemExit(f"E{ident}: {problems}")
    by_canon = {canonical_cycle(parse_vertex_type(t)): t for t in types}
    verts = []
    for p, cyc in zip(exact, cycles):
        c = canonical_cycle(cyc)
        if c not in by_canon:
            raise SystemExit(f"E{ident}: vertex cycle {cyc} not among {types}")
        verts.append(Vertex(p, by_canon[c]))
    order = sorted(range(len(verts)), key=lambda k: (types.index(verts[k].vtype), verts[k].pos[1], verts[k].pos[0]))
    remap = {old: new for new, old in enumerate(order)}
    verts = [verts[k] for k in order]
    renamed = []
    for e in sp_edges:
        i, j = remap[e.i], remap[e.j]
        renamed.append(Edge(i, j, e.offset) if i <= j else Edge(j, i, (-e.offset[0], -e.offset[1])))
    sp_edges = tuple(sorted(renamed, key=lambda e: (e.i, e.j, e.offset)))
    spec = TilingSpec(ident, entry["type_string"], A, B, tuple(verts), sp_edges, tuple(syms),
                      1 if ident >= 21 else 2, v0)
    return spec


def label_rank(label: str) -> int:
    order = ["id", "tau", "rho60", "rho120", "rho240", "rho300", "psi90", "psi270"]
    return order.index(label) if label in order else len(order)


V0 = {1: 12, 2: 8, 3: 4, 4: 3, 5: 7, 6: 14, 7: 7, 8: 4, 9: 12, 10: 8, 11: 12, 12: 3, 13: 4, 14: 12,
      15: 3, 16: 8, 17: 18, 18: 5, 19: 5, 20: 18, 21: 6, 22: 6, 23: 4, 24: 3, 25: 6, 26: 12, 27: 4}


def main(argv):
    cat = build_catalogue()
    ids = [int(a) for a in argv] or sorted(cat)
    OUT.mkdir(parents=True, exist_ok=True)
    for ident in ids:
        spec = build(ident, cat[ident], V0[ident])
        report = validate(spec)
        labels = ",".join(s.label for s in spec.point_group)
        print(f"{report.summary()} order={spec.order} [{labels}]")
        for c in report.checks:
            for p in c.problems[:5]:
                print("   ", p)
        if report.passed:
            (OUT / f"E{ident}.json").write_text(dump_spec(spec))


if __name__ == "__main__":
    main(sys.argv[1:])
