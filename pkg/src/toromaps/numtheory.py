"""Arithmetic functions used to count toroidal covers.

Every counting function comes in two forms: a divisor sum over congruence
root counts, and a closed multiplicative form evaluated from the prime
factorization.  The public functions return the closed form; the sum forms
are exposed with a ``_sum`` suffix so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from sympy import factorint
from sympy.ntheory import sqrt_mod

BRUTE_FORCE_LIMIT = 64


class DomainError(ValueError):
    pass


def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1:
                raise ValueError("factors must be sorted, distinct, with positive exponents")
            last = p
            prod *= p**k
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    def __iter__(self):
        return iter(self.factors)


def factorize(n: int) -> PrimeFactorization:
    _check_positive(n)
    return PrimeFactorization(n, tuple(sorted(factorint(n).items())))


def divisors(n: int) -> list[int]:
    _check_positive(n)
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def _multiplicative(n: int, local: Callable[[int, int], int]) -> int:
    _check_positive(n)
    out = 1
    for p, k in factorize(n):
        out *= local(p, k)
        if out == 0:
            return 0
    return out


def sigma(n: int) -> int:
    return _multiplicative(n, lambda p, k: (p ** (k + 1) - 1) // (p - 1))


def tau(n: int) -> int:
    return _multiplicative(n, lambda p, k: k + 1)


def odd_part(n: int) -> int:
    _check_positive(n)
    while n % 2 == 0:
        n //= 2
    return n


# ---------------------------------------------------------------- congruences

@dataclass(frozen=True)
class CongruenceSystem:
    """Polynomials (coefficients from the constant term up) that must all vanish."""

    identifier: str
    polynomials: tuple[tuple[int, ...], ...]

    @classmethod
    def rho(cls, i: int, j: int) -> "CongruenceSystem":
        return cls(f"RHO_IJ({i},{j})", ((j, i, 1),))

    def holds(self, x: int, m: int) -> bool:
        return all(_poly_eval(c, x) % m == 0 for c in self.polynomials)


def _poly_eval(coeffs: tuple[int, ...], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


RHO5 = CongruenceSystem("RHO5", ((0, 2, 1), (1, 0, -1)))
RHO6 = CongruenceSystem("RHO6", ((1, 0, 1), (1, 0, -1)))
RHO7 = CongruenceSystem("RHO7", ((1, 0, 1), (0, 2)))


def _roots_prime_power(system: CongruenceSystem, p: int, k: int) -> list[int]:
    m = p**k
    if m <= BRUTE_FORCE_LIMIT:
        return [x for x in range(m) if system.holds(x, m)]
    first = system.polynomials[0]
    if len(first) == 3 and first[2] == 1 and p != 2:
        # complete the square: (2x + i)^2 = i^2 - 4j
        j, i = first[0], first[1]
        inv2 = pow(2, -1, m)
        ys = sqrt_mod((i * i - 4 * j) % m, m, all_roots=True) or []
        cands = sorted({((y - i) * inv2) % m for y in ys})
    else:
        # lift roots one power of p at a time
        cands = [x for x in range(p) if _poly_eval(first, x) % p == 0]
        for e in range(2, k + 1):
            step = p ** (e - 1)
            cands = [
                r + t * step
                for r in cands
                for t in range(p)
                if _poly_eval(first, r + t * step) % (p**e) == 0
            ]
    return [x for x in cands if system.holds(x, m)]


@lru_cache(maxsize=None)
def _count_prime_power(system: CongruenceSystem, p: int, k: int) -> int:
    return len(_roots_prime_power(system, p, k))


@lru_cache(maxsize=None)
def count_congruence_roots(system: CongruenceSystem, m: int) -> int:
    _check_positive(m, "m")
    out = 1
    for p, k in factorize(m):
        out *= _count_prime_power(system, p, k)
        if out == 0:
            break
    return out


def norm_square_divisor_sum(system: CongruenceSystem, n: int) -> int:
    _check_positive(n)
    return sum(
        count_congruence_roots(system, d * d // n)
        for d in divisors(n)
        if (d * d) % n == 0
    )


# ------------------------------------------------------- closed multiplicative

def _parity(k: int) -> int:
    return 1 if k % 2 == 0 else 0


def _f1_local(p: int, k: int) -> int:
    if p == 3:
        return 1
    return k + 1 if p % 3 == 1 else _parity(k)


def _f2_local(p: int, k: int) -> int:
    if p == 2:
        return 1
    return k + 1 if p % 4 == 1 else _parity(k)


def _f3_local(p: int, k: int) -> int:
    return 2 * k - 1 if p == 2 else k + 1


def f1(n: int) -> int:
    return _multiplicative(n, _f1_local)


def f2(n: int) -> int:
    return _multiplicative(n, _f2_local)


def f3(n: int) -> int:
    return _multiplicative(n, _f3_local)


def f4(n: int) -> int:
    return _multiplicative(n, _f3_local)


def f8(n: int) -> int:
    return _multiplicative(n, _f3_local)


def f5(n: int) -> int:
    return _multiplicative(n, lambda p, k: 1 if p == 3 else _parity(k))


def f6(n: int) -> int:
    return _multiplicative(n, lambda p, k: 1 if p == 2 else _parity(k))


def f1_sum(n: int) -> int:
    return norm_square_divisor_sum(CongruenceSystem.rho(1, 1), n)


def f2_sum(n: int) -> int:
    return norm_square_divisor_sum(CongruenceSystem.rho(0, 1), n)


def f3_sum(n: int) -> int:
    return norm_square_divisor_sum(CongruenceSystem.rho(2, 0), n)


def f4_sum(n: int) -> int:
    return norm_square_divisor_sum(CongruenceSystem.rho(0, -1), n)


def f5_sum(n: int) -> int:
    return norm_square_divisor_sum(RHO5, n)


def f6_sum(n: int) -> int:
    return norm_square_divisor_sum(RHO6, n)


def f8_sum(n: int) -> int:
    _check_positive(n)
    return sum(
        1
        for d in divisors(n)
        for b in range(d)
        if (n // d + 2 * b) % d == 0
    )


def g(n: int) -> int:
    _check_positive(n)
    return sum(2 if d % 2 == 0 else 1 for d in divisors(n))


def g_tau_form(n: int) -> int:
    return 2 * tau(n) - tau(odd_part(n))


def h(n: int) -> int:
    return norm_square_divisor_sum(RHO7, n)


def alpha(n: int) -> int:
    return f4(n) - h(n)


def published_g1(n: int) -> int:
    """Multiplicative form built from the published prime-power values."""

    def local(p: int, k: int) -> int:
        if p == 2:
            if k % 2:
                return (2 ** (k + 3) - 1) // 3
            return 2 * (2 ** (k + 2) - 1) // 3
        if k % 2 == 0:
            return (p ** (k + 2) - 1) // (p * p - 1)
        return p * (p ** (k + 1) - 1) // (p * p - 1)

    return _multiplicative(n, local)


def published_g2(n: int) -> int:
    """Multiplicative form built from the published prime-power values."""

    def local(p: int, k: int) -> int:
        if p == 3:
            return k + 2
        if p == 2:
            return k + 2 if k % 2 == 0 else k
        return k + 2 if k % 2 == 0 else k + 1

    return _multiplicative(n, local)


def hnf_filter_count(n: int, predicate: Callable[[int, int, int], bool]) -> int:
    _check_positive(n)
    return sum(
        1
        for d in divisors(n)
        for b in range(d)
        if predicate(n // d, b, d)
    )


def g1_filter(n: int) -> int:
    """HNF count for the two displayed conditions a | 2b, a | 2d."""
    return hnf_filter_count(n, lambda a, b, d: (2 * b) % a == 0 and (2 * d) % a == 0)


def g2_filter(n: int, variant: str = "ab") -> int:
    """HNF count for a | 3b, a | 3d and ad | 3b^2 + 2ab (or + 2bd)."""
    if variant not in ("ab", "bd"):
        raise DomainError("variant must be 'ab' or 'bd'")

    def pred(a: int, b: int, d: int) -> bool:
        cross = 2 * a * b if variant == "ab" else 2 * b * d
        return (3 * b) % a == 0 and (3 * d) % a == 0 and (3 * b * b + cross) % (a * d) == 0

    return hnf_filter_count(n, pred)


@dataclass(frozen=True)
class HalfSumDefect:
    n: int
    numerator: int
    denominator: int

    def __str__(self) -> str:
        return f"half-sum {self.numerator}/{self.denominator} at n={self.n} is not a nonnegative integer"


class FormulaDefect(ArithmeticError):
    def __init__(self, defect: HalfSumDefect):
        super().__init__(str(defect))
        self.defect = defect


def exact_quotient(n: int, numerator: int, denominator: int) -> int:
    q = Fraction(numerator, denominator)
    if q.denominator != 1 or q < 0:
        raise FormulaDefect(HalfSumDefect(n, numerator, denominator))
    return int(q)


def lambda27(n: int) -> int:
    """The published Lambda; raises FormulaDefect on a bad half-sum."""
    s, gg, ff2, ff4, ff6 = sigma(n), g(n), f2(n), f4(n), f6(n)
    first = exact_quotient(n, gg - ff6, 2)
    second = exact_quotient(n, s - gg - ff4 - ff2 + 2 * ff6, 2)
    return first + second


def square_classes27(n: int) -> int:
    """Classes of index-n sublattices of the square lattice whose stabiliser
    in the symmetry group of the square avoids both the quarter turn and the
    diagonal reflections."""
    return exact_quotient(n, sigma(n) - f2(n) + g(n) - f4(n), 4)


def v2(n: int) -> int:
    _check_positive(n)
    return (n & -n).bit_length() - 1
