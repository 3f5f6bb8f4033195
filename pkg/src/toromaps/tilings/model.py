"""Data model for periodic tilings: exact basis, rational vertex positions,
periodic edges and the point group acting in lattice coordinates."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..lattice import IntMatrix2

SQRT3 = math.sqrt(3.0)

Vec = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class QSqrt3:
    """The number p + q*sqrt(3) with rational p, q."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __add__(self, other: "QSqrt3") -> "QSqrt3":
        return QSqrt3(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "QSqrt3") -> "QSqrt3":
        return QSqrt3(self.p - other.p, self.q - other.q)

    def scale(self, k) -> "QSqrt3":
        k = Fraction(k)
        return QSqrt3(self.p * k, self.q * k)

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * SQRT3

    def encode(self) -> list[int]:
        return [self.p.numerator, self.p.denominator, self.q.numerator, self.q.denominator]

    @classmethod
    def decode(cls, quad: Sequence[int]) -> "QSqrt3":
        if len(quad) != 4 or not all(isinstance(x, int) for x in quad):
            raise ValueError("expected four integers [p, q, r, s]")
        p, q, r, s = quad
        if q == 0 or s == 0:
            raise ValueError("zero denominator")
        return cls(Fraction(p, q), Fraction(r, s))


@dataclass(frozen=True)
class ExactCoord:
    x: QSqrt3
    y: QSqrt3

    def __add__(self, other: "ExactCoord") -> "ExactCoord":
        return ExactCoord(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "ExactCoord") -> "ExactCoord":
        return ExactCoord(self.x - other.x, self.y - other.y)

    def scale(self, k) -> "ExactCoord":
        return ExactCoord(self.x.scale(k), self.y.scale(k))

    def to_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))


def frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def vec_mod1(v: Vec) -> Vec:
    return (frac_mod1(v[0]), frac_mod1(v[1]))


def parse_fraction(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.replace(" ", ""))


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class AffineSymmetry:
    """x -> linear @ x + translation, in coordinates of the basis (A, B)."""

    linear: IntMatrix2
    translation: Vec
    label: str

    def __post_init__(self):
        if self.linear.det not in (1, -1):
            raise ValueError(f"{self.label}: linear part must have determinant +-1")
        for t in self.translation:
            if Fraction(t).denominator not in (1, 2):
                raise ValueError(f"{self.label}: translation {t} must have denominator 1 or 2")
        object.__setattr__(self, "translation", vec_mod1(tuple(Fraction(t) for t in self.translation)))

    def apply(self, p: Vec) -> Vec:
        x, y = self.linear.apply(p)
        return (x + self.translation[0], y + self.translation[1])

    def compose(self, other: "AffineSymmetry") -> tuple[IntMatrix2, Vec]:
        """self after other, as (linear, translation mod 1)."""
        lin = self.linear @ other.linear
        return lin, vec_mod1(self.apply(other.translation))

    def key(self) -> tuple:
        return (self.linear, self.translation)

    @property
    def is_identity(self) -> bool:
        return self.linear == IntMatrix2.identity() and self.translation == (0, 0)


# ------------------------------------------------------------- vertex types

_TYPE_TERM = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_vertex_type(text: str) -> tuple[int, ...]:
    """'[3^2,4^1,3^1,4^1]' -> (3, 3, 4, 3, 4)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    faces: list[int] = []
    for term in body.replace(".", ",").split(","):
        m = _TYPE_TERM.match(term.strip())
        if not m:
            raise ValueError(f"bad vertex type term {term!r} in {text!r}")
        faces.extend([int(m.group(1))] * int(m.group(2) or 1))
    return tuple(faces)


def canonical_cycle(faces: Sequence[int]) -> tuple[int, ...]:
    """Least rotation of the cycle or of its reversal."""
    faces = tuple(faces)
    if not faces:
        return faces
    rev = faces[::-1]
    cands = [faces[i:] + faces[:i] for i in range(len(faces))]
    cands += [rev[i:] + rev[:i] for i in range(len(rev))]
    return min(cands)


def format_vertex_type(faces: Sequence[int]) -> str:
    """Run-length form with explicit exponents, e.g. (3,3,4,3,4) -> '[3^2,4^1,3^1,4^1]'."""
    runs: list[list[int]] = []
    for f in faces:
        if runs and runs[-1][0] == f:
            runs[-1][1] += 1
        else:
            runs.append([f, 1])
    return "[" + ",".join(f"{f}^{k}" for f, k in runs) + "]"


def same_vertex_type(a: str, b: str) -> bool:
    return canonical_cycle(parse_vertex_type(a)) == canonical_cycle(parse_vertex_type(b))


def split_type_string(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return ["[" + part.strip() + "]" for part in body.split(";")]


# ------------------------------------------------------------------ tilings

@dataclass(frozen=True)
class Vertex:
    pos: Vec
    vtype: str


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    offset: tuple[int, int]


@dataclass(frozen=True)
class TilingSpec:
    id: int
    type_string: str
    basis_a: ExactCoord
    basis_b: ExactCoord
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    point_group: tuple[AffineSymmetry, ...]
    declared_orbit_count: int
    v0: int
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {vec_mod1(v.pos): k for k, v in enumerate(self.vertices)})

    @property
    def order(self) -> int:
        return len(self.point_group)

    def vertex_at(self, p: Vec) -> tuple[int, tuple[int, int]] | None:
        """Index of the vertex congruent to p and the integer shift p - pos."""
        r = vec_mod1(p)
        k = self._index.get(r)
        if k is None:
            return None
        return k, (int(p[0] - r[0]), int(p[1] - r[1]))

    def symmetry(self, label: str) -> AffineSymmetry:
        for s in self.point_group:
            if s.label == label:
                return s
        raise KeyError(label)

    def embed(self, p: Sequence) -> tuple[float, float]:
        ax, ay = self.basis_a.to_float()
        bx, by = self.basis_b.to_float()
        x, y = float(p[0]), float(p[1])
        return (x * ax + y * bx, x * ay + y * by)
