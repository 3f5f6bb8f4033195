"""2x2 integer matrices, Hermite normal forms and sublattice bookkeeping.

A sublattice K of Z^2 (coordinates in the basis A, B) is named by the matrix
whose columns span it.  The canonical name is the lower-triangular form
[a 0; b d] with a, d > 0 and 0 <= b < d, whose columns are (a, b) and (0, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numtheory import DomainError, divisors


@dataclass(frozen=True)
class IntMatrix2:
    m11: int
    m12: int
    m21: int
    m22: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix2":
        (p, q), (r, s) = rows
        return cls(int(p), int(q), int(r), int(s))

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    def rows(self) -> list[list[int]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def apply(self, v: Sequence) -> tuple:
        x, y = v
        return (self.m11 * x + self.m12 * y, self.m21 * x + self.m22 * y)

    def adjugate(self) -> "IntMatrix2":
        return IntMatrix2(self.m22, -self.m12, -self.m21, self.m11)

    def inverse(self) -> "IntMatrix2":
        """Inverse of a unimodular matrix."""
        if self.det not in (1, -1):
            raise DomainError("matrix is not unimodular")
        adj = self.adjugate()
        s = self.det
        return IntMatrix2(adj.m11 * s, adj.m12 * s, adj.m21 * s, adj.m22 * s)

    def __str__(self) -> str:
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"


@dataclass(frozen=True, order=True)
class HnfMatrix:
    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or not 0 <= self.b < self.d:
            raise DomainError(f"not a Hermite normal form: {self.triple()}")

    @property
    def n(self) -> int:
        return self.a * self.d

    def matrix(self) -> IntMatrix2:
        return IntMatrix2(self.a, 0, self.b, self.d)

    def triple(self) -> list[int]:
        return [self.a, self.b, self.d]

    def sort_key(self) -> tuple[int, int, int]:
        return (self.d, self.b, self.a)

    def reduce(self, v: Sequence[int]) -> tuple[int, int]:
        """Canonical coset representative of an integer vector modulo the lattice."""
        x, y = v
        q, x = divmod(x, self.a)
        y = (y - q * self.b) % self.d
        return (x, y)

    def coset_index(self, v: Sequence[int]) -> int:
        x, y = self.reduce(v)
        return x * self.d + y

    def contains(self, v: Sequence[int]) -> bool:
        return self.reduce(v) == (0, 0)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.d}]"


def _as_matrix(M) -> IntMatrix2:
    if isinstance(M, HnfMatrix):
        return M.matrix()
    if isinstance(M, IntMatrix2):
        return M
    return IntMatrix2.from_rows(M)


def hnf_reduce(M) -> HnfMatrix:
    M = _as_matrix(M)
    if M.det == 0:
        raise DomainError("singular matrix has no Hermite normal form")
    # column operations: clear the top-right entry with a gcd step
    p, q = M.m11, M.m12
    r, s = M.m21, M.m22
    while q != 0:
        t = p // q
        p, q = q, p - t * q
        r, s = s, r - t * s
    if p < 0:
        p, r = -p, -r
    if s < 0:
        s = -s
    return HnfMatrix(p, r % s, s)


def hnf_enumerate(n: int) -> list[HnfMatrix]:
    out = [HnfMatrix(n // d, b, d) for d in divisors(n) for b in range(d)]
    return sorted(out, key=HnfMatrix.sort_key)


def unimodular_equal(M1, M2) -> bool:
    return hnf_reduce(M1) == hnf_reduce(M2)


def conjugate(S, M) -> tuple[list[list[int]], int]:
    """Numerators of adj(M) S M together with det M."""
    S, Mm = _as_matrix(S), _as_matrix(M)
    prod = Mm.adjugate() @ S @ Mm
    return prod.rows(), Mm.det


def conjugation_integral(S, M) -> bool:
    nums, det = conjugate(S, M)
    return all(x % det == 0 for row in nums for x in row)


@dataclass(frozen=True)
class DivisibilityCondition:
    description: str
    modulus: int
    residue: int

    @property
    def satisfied(self) -> bool:
        return self.residue == 0


@dataclass(frozen=True)
class DivisibilityReport:
    conditions: tuple[DivisibilityCondition, ...]

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in self.conditions)

    def failing(self) -> list[DivisibilityCondition]:
        return [c for c in self.conditions if not c.satisfied]

    def lines(self) -> list[str]:
        return [
            f"{c.description}: residue {c.residue} mod {c.modulus} ({'ok' if c.satisfied else 'fails'})"
            for c in self.conditions
        ]


def divisibility_report(S, M) -> DivisibilityReport:
    nums, det = conjugate(S, M)
    conds = []
    for i in range(2):
        for j in range(2):
            x = nums[i][j]
            conds.append(DivisibilityCondition(f"entry ({i + 1},{j + 1}) = {x}/{det}", abs(det), x % abs(det)))
    return DivisibilityReport(tuple(conds))


def rational_inverse_apply(M: HnfMatrix, v: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    adj = M.matrix().adjugate()
    x, y = adj.apply(v)
    return (Fraction(x, M.n), Fraction(y, M.n))


def sublattice_orbit(mats: Iterable[IntMatrix2], M: HnfMatrix) -> set[HnfMatrix]:
    return {hnf_reduce(S @ M.matrix()) for S in mats}
