import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toromaps import numtheory as nt


def test_sigma_tau_small():
    assert [nt.sigma(n) for n in range(1, 11)] == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18]
    assert [nt.tau(n) for n in range(1, 11)] == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4]


def test_factorization_roundtrip():
    f = nt.factorize(2**5 * 3 * 7**2)
    assert f.factors == ((2, 5), (3, 1), (7, 2))
    assert nt.divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("bad", [0, -3])
def test_domain_errors(bad):
    with pytest.raises(nt.DomainError):
        nt.sigma(bad)
    with pytest.raises(nt.DomainError):
        nt.f1(bad)


def test_rho_examples():
    rho11 = nt.CongruenceSystem.rho(1, 1)
    assert nt.count_congruence_roots(rho11, 7) == 2
    assert nt.count_congruence_roots(rho11, 3) == 1
    assert nt.count_congruence_roots(rho11, 9) == 0
    assert nt.count_congruence_roots(rho11, 2) == 0
    rho0m1 = nt.CongruenceSystem.rho(0, -1)
    assert [nt.count_congruence_roots(rho0m1, 2**k) for k in range(1, 6)] == [1, 2, 4, 4, 4]


def test_large_prime_power_paths_agree_with_brute_force():
    for system in (nt.CongruenceSystem.rho(1, 1), nt.CongruenceSystem.rho(0, 1), nt.RHO5, nt.RHO6, nt.RHO7):
        for m in (2**7, 3**5, 5**3, 7**3, 13**2, 97, 101 * 4):
            brute = sum(system.holds(x, m) for x in range(m))
            assert nt.count_congruence_roots(system, m) == brute


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_root_counts_multiplicative(m1, m2):
    import math

    if math.gcd(m1, m2) != 1:
        return
    for system in (nt.CongruenceSystem.rho(1, 1), nt.RHO5, nt.RHO7):
        assert nt.count_congruence_roots(system, m1 * m2) == (
            nt.count_congruence_roots(system, m1) * nt.count_congruence_roots(system, m2)
        )


def test_closed_forms_first_values():
    # frozen from the divisor-sum forms
    assert [nt.f1(n) for n in range(1, 14)] == [1, 0, 1, 1, 0, 0, 2, 0, 1, 0, 0, 1, 2]
    assert [nt.f2(n) for n in range(1, 11)] == [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]
    assert [nt.f3(n) for n in range(1, 11)] == [1, 1, 2, 3, 2, 2, 2, 5, 3, 2]


def test_f1_on_primes_two_mod_three():
    # only even exponents of such primes survive
    assert [nt.f1(2**k) for k in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    assert [nt.f1(5**k) for k in range(5)] == [1, 0, 1, 0, 1]
    assert nt.f1(3**5) == 1


def test_sum_forms_match_closed_forms():
    pairs = [(nt.f1, nt.f1_sum), (nt.f2, nt.f2_sum), (nt.f3, nt.f3_sum), (nt.f4, nt.f4_sum),
             (nt.f5, nt.f5_sum), (nt.f6, nt.f6_sum), (nt.f8, nt.f8_sum)]
    for f, s in pairs:
        assert all(f(n) == s(n) for n in range(1, 400)), f.__name__


def test_g_forms():
    assert [nt.g(n) for n in range(1, 11)] == [1, 3, 2, 5, 2, 6, 2, 7, 3, 6]
    assert all(nt.g(n) == nt.g_tau_form(n) for n in range(1, 2000))
    assert all(nt.g(n) <= 2 * nt.tau(n) for n in range(1, 2000))


def test_h_and_alpha():
    assert all(nt.h(n) == nt.f6(n) for n in range(1, 1000))
    assert all(nt.alpha(n) == nt.f4(n) - nt.h(n) for n in range(1, 200))


def test_published_g_tables():
    assert [nt.published_g1(n) for n in range(1, 11)] == [1, 5, 3, 10, 5, 15, 7, 21, 10, 25]
    assert [nt.published_g2(n) for n in range(1, 11)] == [1, 1, 3, 4, 2, 3, 2, 3, 4, 2]


def test_g2_filter_prose_condition_equals_f3():
    assert all(nt.g2_filter(n) == nt.f3(n) for n in range(1, 200))


def test_lambda_and_square_classes():
    assert [nt.lambda27(n) for n in range(1, 11)] == [0, 1, 1, 2, 1, 5, 3, 5, 5, 7]
    assert [nt.square_classes27(n) for n in range(1, 11)] == [0, 1, 1, 2, 1, 4, 2, 4, 3, 5]


def test_exact_quotient_reports_defect():
    with pytest.raises(nt.FormulaDefect) as info:
        nt.exact_quotient(3, 7, 2)
    assert info.value.defect.numerator == 7
    assert nt.exact_quotient(3, 8, 2) == 4
