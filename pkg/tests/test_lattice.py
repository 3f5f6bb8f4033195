from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from toromaps.lattice import (
    HnfMatrix,
    IntMatrix2,
    conjugation_integral,
    divisibility_report,
    hnf_enumerate,
    hnf_reduce,
    rational_inverse_apply,
    unimodular_equal,
)
from toromaps.numtheory import DomainError, sigma

entries = st.integers(-40, 40)
unimodular_steps = st.lists(
    st.one_of(
        st.integers(-6, 6).map(lambda k: IntMatrix2(1, k, 0, 1)),
        st.integers(-6, 6).map(lambda k: IntMatrix2(1, 0, k, 1)),
        st.just(IntMatrix2(0, 1, 1, 0)),
        st.just(IntMatrix2(-1, 0, 0, 1)),
    ),
    min_size=1,
    max_size=6,
)


def test_reduce_example():
    assert hnf_reduce([[2, 1], [0, 3]]).triple() == [1, 3, 6]


def test_enumerate_counts_and_order():
    assert [len(hnf_enumerate(n)) for n in range(1, 30)] == [sigma(n) for n in range(1, 30)]
    mats = hnf_enumerate(6)
    assert mats == sorted(mats, key=HnfMatrix.sort_key)
    assert len(set(mats)) == len(mats)


def test_invalid_hnf():
    with pytest.raises(DomainError):
        HnfMatrix(2, 3, 3)
    with pytest.raises(DomainError):
        hnf_reduce([[1, 2], [2, 4]])


def test_equal_lattices_with_different_forms():
    # columns (4,3),(0,3) and (4,0),(0,3) span the same lattice
    assert unimodular_equal([[4, 0], [3, 3]], [[4, 0], [0, 3]])
    assert not unimodular_equal([[2, 0], [0, 1]], [[1, 0], [0, 2]])


@settings(max_examples=200, deadline=None)
@given(entries, entries, entries, entries, unimodular_steps)
def test_hnf_idempotent_and_right_invariant(a, b, c, d, steps):
    M = IntMatrix2(a, b, c, d)
    assume(M.det != 0)
    H = hnf_reduce(M)
    assert hnf_reduce(H) == H
    U = IntMatrix2.identity()
    for E in steps:
        U = U @ E
    assert hnf_reduce(M @ U) == H
    assert H.n == abs(M.det)


def test_coset_reduction():
    M = HnfMatrix(2, 1, 3)
    reps = {M.reduce((x, y)) for x in range(-5, 5) for y in range(-5, 5)}
    assert len(reps) == M.n
    assert M.contains((2, 1)) and M.contains((0, 3)) and not M.contains((1, 0))


def test_conjugation_matches_divisibility_conditions_for_sixty_degree_turn():
    rho60 = IntMatrix2(0, -1, 1, 1)
    for n in range(1, 60):
        for M in hnf_enumerate(n):
            a, b, d = M.a, M.b, M.d
            conds = b % a == 0 and d % a == 0 and (a * a + a * b + b * b) % (a * d) == 0
            assert conds == conjugation_integral(rho60, M)


def test_divisibility_report_names_failures():
    rep = divisibility_report(IntMatrix2(0, -1, 1, 1), HnfMatrix(1, 0, 2))
    assert not rep.satisfied
    assert rep.failing()
    assert divisibility_report(IntMatrix2(0, -1, 1, 1), HnfMatrix(1, 1, 3)).satisfied


def test_rational_inverse_apply():
    M = HnfMatrix(2, 1, 3)
    x, y = rational_inverse_apply(M, (Fraction(2), Fraction(1)))
    assert (x, y) == (1, 0)
