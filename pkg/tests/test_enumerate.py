import pytest

from toromaps import numtheory as nt
from toromaps.enumerate import (
    PUBLISHED_TABLE,
    OracleCapExceeded,
    crosscheck,
    overruled_types,
    parity_defects,
    phi_closed,
    phi_oracle,
    table,
    table_footnotes,
    vertex_orbit_count,
)
from toromaps.lattice import HnfMatrix, hnf_enumerate
from toromaps.numtheory import DomainError
from toromaps.tilings import V0

# orbit-oracle values for n = 1..10, frozen from a run of phi_oracle
ORACLE_9 = (1, 1, 0, 1, 0, 0, 0, 1, 1, 0)
ORACLE_27 = (0, 1, 1, 2, 1, 4, 2, 4, 3, 5)


def test_published_examples():
    assert phi_closed(8, 32) == 10
    assert phi_closed(23, 32) == 3
    assert phi_closed(1, 13) == 0
    assert phi_closed(26, 84) == 1
    assert all(phi_closed(25, v) == 0 for v in range(1, 200))


def test_zero_off_multiples():
    for ell in range(1, 28):
        for v in range(1, 501):
            if v % V0[ell]:
                assert phi_closed(ell, v) == 0


@pytest.mark.parametrize("ell", [0, 28, -1])
def test_bad_type(ell):
    with pytest.raises(DomainError):
        phi_closed(ell, 12)


def test_published_flag_keeps_published_forms():
    assert phi_closed(27, 24, published=True) == nt.lambda27(6) == 5
    assert phi_closed(27, 24) == 4
    assert phi_closed(9, 120, published=True) == 6
    with pytest.raises(nt.FormulaDefect):
        phi_closed(3, 12, published=True)
    assert overruled_types() == [3, 4, 9, 27]


def test_vertex_orbit_count_examples(specs):
    identity = HnfMatrix(1, 0, 1)
    assert vertex_orbit_count(specs[1], identity) == 2
    assert vertex_orbit_count(specs[21], identity) == 1
    counts = [vertex_orbit_count(specs[21], M) for M in hnf_enumerate(2)]
    # the three index-2 sublattices are permuted by the 3-fold rotation
    assert counts == [2, 2, 2]
    assert phi_closed(21, 12) == 1


def test_orbit_counts_never_drop_below_declared(specs):
    for s in specs.values():
        for n in (1, 2, 3, 4, 6):
            for M in hnf_enumerate(n):
                assert vertex_orbit_count(s, M) >= s.declared_orbit_count


@pytest.mark.parametrize("ell,v,expected", [(10, 80, 6), (16, 24, 0), (21, 12, 1), (1, 84, 2)])
def test_oracle_matches_published_cells(ell, v, expected):
    res = phi_oracle(ell, v)
    assert res.count_oracle == expected == res.count_closed
    assert res.agreement


def test_oracle_verdicts_for_overruled_columns():
    assert tuple(phi_oracle(9, 12 * n).count_oracle for n in range(1, 11)) == ORACLE_9
    assert tuple(phi_oracle(27, 4 * n).count_oracle for n in range(1, 11)) == ORACLE_27
    assert ORACLE_9 == tuple(nt.f6(n) for n in range(1, 11))
    assert ORACLE_27 == tuple(nt.square_classes27(n) for n in range(1, 11))


def test_representatives_are_two_uniform(specs):
    for ell in (8, 15, 23, 27):
        res = phi_oracle(ell, 12 * V0[ell])
        assert len(res.representatives) == res.count_oracle
        for M, labels in res.representatives:
            assert vertex_orbit_count(specs[ell], M) == 2
            assert labels[0] == "id"


def test_type_23_listing():
    res = phi_oracle(23, 36)
    assert [M.triple() for M, _ in res.representatives] == [[3, 1, 3], [1, 1, 9], [1, 2, 9]]


def test_non_multiple_has_no_sheets():
    res = phi_oracle(1, 13)
    assert res.n is None and res.count_closed == 0 and not res.representatives


def test_cap_refusal():
    with pytest.raises(OracleCapExceeded) as info:
        phi_oracle(1, 12 * 500, cap=5000)
    assert "5000" in str(info.value)


def test_result_json_shape():
    d = phi_oracle(8, 8).to_dict()
    assert d == {
        "type": 8, "vertices": 8, "sheets": 2, "count_closed": 2, "count_oracle": 2,
        "representatives": [{"hnf": [2, 0, 1], "isotropy": ["id", "tau"]},
                            {"hnf": [1, 0, 2], "isotropy": ["id", "tau", "r1'", "r2'"]}],
        "agreement": True,
    }


def test_table_rows_and_footnotes():
    tab = table([1, 15, 25], 10)
    assert [c.value for c in tab[1]] == [1, 0, 1, 1, 0, 0, 2, 0, 1, 0]
    assert [c.value for c in tab[15]] == [1, 3, 3, 6, 4, 9, 5, 11, 8, 12]
    assert all(c.value == 0 for c in tab[25])
    assert [c.v for c in tab[1]] == [12 * k for k in range(1, 11)]
    assert table_footnotes(tab) == []
    notes = table_footnotes(table([27], 10))
    assert len(notes) == 8 and notes[0].startswith("Phi_27(8) = 1")


def test_table_matches_published_outside_overruled_columns():
    tab = table(PUBLISHED_TABLE, 10)
    for ell, column in PUBLISHED_TABLE.items():
        if ell in overruled_types():
            continue
        assert tuple(c.value for c in tab[ell]) == column


def test_halved_forms_integral():
    assert parity_defects(200, published=False) == []
    published = parity_defects(200, published=True)
    assert {d["type"] for d in published} == {3, 4}


def test_crosscheck_serial_and_parallel_agree():
    a = crosscheck(4, ells=[3, 9, 27], parallel=1).to_dict()
    b = crosscheck(4, ells=[3, 9, 27], parallel=2).to_dict()
    assert a == b
    assert a["ok"] and a["discrepancies"] == []
    assert {o["type"] for o in a["overruled_published_forms"]} == {9}
    assert {d["type"] for d in a["formula_defects"]} == {3}


def test_crosscheck_skips_over_cap():
    rep = crosscheck(3, ells=[17], cap=40)
    assert rep.skipped == [(17, 3)] and rep.checked == 2
