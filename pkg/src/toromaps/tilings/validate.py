"""Self-checks for tiling data: symmetry closure, face cycles, orbit count."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ..lattice import IntMatrix2
from .model import (
    AffineSymmetry,
    TilingSpec,
    canonical_cycle,
    parse_vertex_type,
    split_type_string,
    vec_mod1,
)

ANGLE_TOL = 1e-9


@dataclass
class CheckResult:
    name: str
    problems: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems


@dataclass
class ValidationReport:
    spec_id: int
    checks: list[CheckResult]
    orbit_count: int
    face_cycles: list[tuple[int, ...]]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def summary(self) -> str:
        parts = [f"{c.name}={'ok' if c.passed else 'FAIL'}" for c in self.checks]
        return f"E{self.spec_id}: " + " ".join(parts) + f" orbits={self.orbit_count}"


def edge_set(spec: TilingSpec) -> set[tuple[int, int, int, int]]:
    out = set()
    for e in spec.edges:
        out.add((e.i, e.j, e.offset[0], e.offset[1]))
        out.add((e.j, e.i, -e.offset[0], -e.offset[1]))
    return out


def map_vertex(spec: TilingSpec, sym: AffineSymmetry, i: int):
    return spec.vertex_at(sym.apply(spec.vertices[i].pos))


def check_symmetries(spec: TilingSpec) -> CheckResult:
    res = CheckResult("symmetry")
    edges = edge_set(spec)
    for sym in spec.point_group:
        images = []
        for i in range(len(spec.vertices)):
            hit = map_vertex(spec, sym, i)
            if hit is None:
                res.problems.append(f"{sym.label} sends vertex {i} off the vertex set")
            images.append(hit)
        if any(h is None for h in images):
            continue
        if len({h[0] for h in images}) != len(images):
            res.problems.append(f"{sym.label} is not injective on vertices")
        for i, j, m1, m2 in edges:
            ki, zi = images[i]
            q = sym.apply((spec.vertices[j].pos[0] + m1, spec.vertices[j].pos[1] + m2))
            kj, zj = spec.vertex_at(q)
            if (ki, kj, zj[0] - zi[0], zj[1] - zi[1]) not in edges:
                res.problems.append(f"{sym.label} sends edge ({i},{j},[{m1},{m2}]) to a non-edge")
    keys = {s.key() for s in spec.point_group}
    if len(keys) != len(spec.point_group):
        res.problems.append("point group lists a duplicate element")
    if (IntMatrix2.identity(), (0, 0)) not in keys:
        res.problems.append("point group lacks the identity")
    for s, t in itertools.product(spec.point_group, repeat=2):
        if s.compose(t) not in keys:
            res.problems.append(f"{s.label} o {t.label} is not in the point group")
    return res


def neighbour_table(spec: TilingSpec) -> list[list[tuple[int, tuple[int, int], float]]]:
    """Neighbours of each vertex sorted counterclockwise by angle."""
    table: list[list] = [[] for _ in spec.vertices]
    for i, j, m1, m2 in edge_set(spec):
        p = spec.vertices[i].pos
        q = spec.vertices[j].pos
        x0, y0 = spec.embed(p)
        x1, y1 = spec.embed((q[0] + m1, q[1] + m2))
        table[i].append((j, (m1, m2), math.atan2(y1 - y0, x1 - x0)))
    for row in table:
        row.sort(key=lambda t: t[2])
    return table


def face_cycles(spec: TilingSpec) -> tuple[list[tuple[int, ...]], list[str]]:
    table = neighbour_table(spec)
    problems = []
    for i, row in enumerate(table):
        for (_, _, a1), (_, _, a2) in zip(row, row[1:] + row[:1]):
            gap = (a2 - a1) % (2 * math.pi)
            if gap < ANGLE_TOL and len(row) > 1:
                problems.append(f"vertex {i} has two edges in the same direction")
    position = {
        (i, j, m): k for i, row in enumerate(table) for k, (j, m, _) in enumerate(row)
    }
    cycles = []
    limit = 4 * sum(len(r) for r in table) + 4
    for i, row in enumerate(table):
        sizes = []
        for j, m, _ in row:
            start = (i, j, m)
            cur = start
            steps = 0
            while True:
                u, v, off = cur
                back = position[(v, u, (-off[0], -off[1]))]
                w, off2, _ = table[v][(back - 1) % len(table[v])]
                cur = (v, w, off2)
                steps += 1
                if cur == start or steps > limit:
                    break
            sizes.append(steps)
        # the face following edge k lies between edge k and edge k-1
        cycles.append(tuple(sizes))
    return cycles, problems


def check_faces(spec: TilingSpec) -> tuple[CheckResult, list[tuple[int, ...]]]:
    res = CheckResult("faces")
    cycles, problems = face_cycles(spec)
    res.problems.extend(problems)
    allowed = {canonical_cycle(parse_vertex_type(t)) for t in split_type_string(spec.type_string)}
    for i, (v, cyc) in enumerate(zip(spec.vertices, cycles)):
        declared = canonical_cycle(parse_vertex_type(v.vtype))
        if canonical_cycle(cyc) != declared:
            res.problems.append(f"vertex {i}: faces {cyc} do not match declared {v.vtype}")
        if declared not in allowed:
            res.problems.append(f"vertex {i}: type {v.vtype} not in {spec.type_string}")
        angle = sum(math.pi * (k - 2) / k for k in cyc)
        if abs(angle - 2 * math.pi) > 1e-9:
            res.problems.append(f"vertex {i}: regular polygons {cyc} do not close up")
    return res, cycles


def orbit_labels(spec: TilingSpec, group=None) -> list[int]:
    group = spec.point_group if group is None else group
    parent = list(range(len(spec.vertices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sym in group:
        for i in range(len(spec.vertices)):
            hit = map_vertex(spec, sym, i)
            if hit is not None:
                parent[find(i)] = find(hit[0])
    return [find(i) for i in range(len(parent))]


def check_orbits(spec: TilingSpec) -> tuple[CheckResult, int]:
    res = CheckResult("orbits")
    labels = orbit_labels(spec)
    count = len(set(labels))
    if count != spec.declared_orbit_count:
        res.problems.append(f"{count} vertex orbits, declared {spec.declared_orbit_count}")
    for i, v in enumerate(spec.vertices):
        rep = spec.vertices[labels[i]]
        if canonical_cycle(parse_vertex_type(v.vtype)) != canonical_cycle(parse_vertex_type(rep.vtype)):
            res.problems.append(f"vertex {i} shares an orbit with a vertex of another type")
    if len(spec.vertices) != spec.v0:
        res.problems.append(f"{len(spec.vertices)} vertices but v0 = {spec.v0}")
    return res, count


def affine_automorphisms(spec: TilingSpec, bound: int = 3) -> list[tuple[IntMatrix2, tuple]]:
    """All affine maps with small integer linear part preserving vertices and edges."""
    edges = edge_set(spec)
    p0 = spec.vertices[0].pos
    found = []
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        S = IntMatrix2(a, b, c, d)
        if S.det not in (1, -1):
            continue
        sp = S.apply(p0)
        for v in spec.vertices:
            t = vec_mod1((v.pos[0] - sp[0], v.pos[1] - sp[1]))
            ok = True
            images = []
            for w in spec.vertices:
                x, y = S.apply(w.pos)
                hit = spec.vertex_at((x + t[0], y + t[1]))
                if hit is None:
                    ok = False
                    break
                images.append(hit)
            if not ok:
                continue
            for i, j, m1, m2 in edges:
                q = spec.vertices[j].pos
                x, y = S.apply((q[0] + m1, q[1] + m2))
                kj, zj = spec.vertex_at((x + t[0], y + t[1]))
                ki, zi = images[i]
                if (ki, kj, zj[0] - zi[0], zj[1] - zi[1]) not in edges:
                    ok = False
                    break
            if ok:
                found.append((S, t))
    return found


def check_completeness(spec: TilingSpec) -> CheckResult:
    res = CheckResult("complete")
    keys = {s.key() for s in spec.point_group}
    for S, t in affine_automorphisms(spec):
        if (S, t) not in keys:
            res.problems.append(f"unlisted symmetry {S} + {tuple(str(x) for x in t)}")
    return res


def validate(spec: TilingSpec, completeness: bool = True) -> ValidationReport:
    sym = check_symmetries(spec)
    faces, cycles = check_faces(spec)
    orbits, count = check_orbits(spec)
    checks = [sym, faces, orbits]
    if completeness:
        checks.append(check_completeness(spec))
    return ValidationReport(spec.id, checks, count, cycles)
