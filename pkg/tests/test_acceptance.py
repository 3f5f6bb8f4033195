"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import json
import math
import random
import time

import pytest
from click.testing import CliRunner

from conftest import ACCEPTANCE_LINES
from toromaps import numtheory as nt
from toromaps.asymptotics import bounded_by_tau, gronwall_ratio_scan, growth_report
from toromaps.cli import cli
from toromaps.enumerate import PUBLISHED_TABLE, crosscheck, phi_oracle
from toromaps.lattice import (
    HnfMatrix,
    IntMatrix2,
    conjugation_integral,
    hnf_enumerate,
    hnf_reduce,
)
from toromaps.symmetry import equivalent
from toromaps.tilings import builtin_specs, validate

# oracle output for the types without a published column, frozen after the oracle run
ORACLE_REFERENCE = {
    3: (1, 2, 3, 5, 4, 7, 5, 10, 8, 10),
    4: (1, 3, 3, 6, 4, 9, 5, 11, 8, 12),
}


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] #{number} {title}"
    if detail:
        line += f": {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def run_cli(*args: str):
    return CliRunner().invoke(cli, list(args), standalone_mode=False)


def test_1_table_reproduction():
    start = time.perf_counter()
    res = run_cli("table", "--rows", "10", "--types", "all", "--format", "json")
    elapsed = time.perf_counter() - start
    doc = json.loads(res.output)
    produced = {c["type"]: c["cells"] for c in doc["columns"]}
    wrong, footnoted27 = [], set()
    for ell, column in PUBLISHED_TABLE.items():
        for k, published in enumerate(column):
            cell = produced[ell][k]
            if cell["phi"] == published:
                continue
            if ell == 27 and cell["footnoted"]:
                footnoted27.add(cell["v"])
            else:
                wrong.append(f"Phi_{ell}({cell['v']}) = {cell['phi']} vs {published}")
    verify = crosscheck(10, ells=[27], parallel=1)
    verified27 = {c["vertices"] for c in verify.table_cells}
    notes27 = [n for n in doc["footnotes"] if n.startswith("Phi_27(")]
    ok = not wrong and footnoted27 == verified27 and len(notes27) == len(footnoted27) and elapsed < 5
    detail = (f"{sum(len(c) for c in PUBLISHED_TABLE.values())} published cells, {len(wrong)} unexplained "
              f"mismatches {wrong[:3]}{'...' if len(wrong) > 3 else ''}; "
              f"{len(footnoted27)} footnoted Phi_27 cells match verify; {elapsed:.2f}s")
    report(1, "published table reproduction", ok, detail)
    assert ok, detail


def test_2_oracle_crosscheck():
    start = time.perf_counter()
    rep = crosscheck(10, ells=range(1, 27))
    elapsed = time.perf_counter() - start
    reference_ok = all(
        tuple(phi_oracle(ell, n * v0).count_oracle for n in range(1, 11)) == ORACLE_REFERENCE[ell]
        for ell, v0 in ((3, 4), (4, 3))
    )
    ok = not rep.discrepancies and not rep.skipped and reference_ok and elapsed < 60
    detail = f"{rep.checked} pairs, {len(rep.discrepancies)} discrepancies, reference fixture {'ok' if reference_ok else 'differs'}, {elapsed:.1f}s"
    report(2, "oracle cross-check", ok, detail)
    assert ok, detail


def test_3_example_fixtures(specs):
    spec23 = specs[23]
    r32 = phi_oracle(23, 32)
    r36 = phi_oracle(23, 36)
    listed = [HnfMatrix(1, 1, 9), HnfMatrix(1, 2, 9), HnfMatrix(1, 3, 9)]
    reps = [M for M, _ in r36.representatives]
    matched = sorted(
        next((i for i, L in enumerate(listed) if equivalent(spec23, M, L)), -1) for M in reps
    )
    ok = r32.count_oracle == 3 and r36.count_oracle == 3 and matched == [0, 1, 2]
    detail = f"v=32: {r32.count_oracle} classes; v=36: {[str(M) for M in reps]} matched to listed HNFs {matched}"
    report(3, "type 23 example fixtures", ok, detail)
    assert ok, detail


def test_4_number_theory_suite():
    start = time.perf_counter()
    pairs = [(nt.f1, nt.f1_sum), (nt.f2, nt.f2_sum), (nt.f3, nt.f3_sum), (nt.f4, nt.f4_sum),
             (nt.f5, nt.f5_sum), (nt.f6, nt.f6_sum)]
    N = 10**4
    bad = [(f.__name__, n) for f, s in pairs for n in range(1, N + 1) if f(n) != s(n)]
    bad += [("f3=f4=f8", n) for n in range(1, N + 1) if not nt.f3(n) == nt.f4(n) == nt.f8(n)]
    systems = [nt.CongruenceSystem.rho(i, j) for i, j in ((1, 1), (0, 1), (2, 0), (0, -1))]
    systems += [nt.RHO5, nt.RHO6, nt.RHO7]
    mult_bad = [
        (s.identifier, m1, m2)
        for s in systems
        for m1 in range(1, 201)
        for m2 in range(1, 201)
        if math.gcd(m1, m2) == 1
        and nt.count_congruence_roots(s, m1 * m2)
        != nt.count_congruence_roots(s, m1) * nt.count_congruence_roots(s, m2)
    ]
    rho11, rho0m1 = systems[0], systems[3]
    cond_bad = [k for k in range(1, 25) if nt.count_congruence_roots(rho11, 2**k) != 0]
    cond_bad += [k for k in range(3, 25) if nt.count_congruence_roots(rho0m1, 2**k) != 4]
    elapsed = time.perf_counter() - start
    ok = not bad and not mult_bad and not cond_bad and elapsed < 30
    detail = f"{len(bad)} identity failures, {len(mult_bad)} multiplicativity failures, {len(cond_bad)} 2-power failures, {elapsed:.1f}s"
    report(4, "number-theory suite", ok, detail)
    assert ok, detail


def test_5_lattice_suite():
    start = time.perf_counter()
    count_bad = [n for n in range(1, 501) if len(hnf_enumerate(n)) != nt.sigma(n)]
    rng = random.Random(20240607)
    inv_bad = 0
    for _ in range(200):
        while True:
            M = IntMatrix2(*(rng.randint(-30, 30) for _ in range(4)))
            if M.det != 0:
                break
        H = hnf_reduce(M)
        U = IntMatrix2(1, 0, 0, 1)
        for _ in range(rng.randint(1, 6)):
            k = rng.randint(-5, 5)
            E = rng.choice([IntMatrix2(1, k, 0, 1), IntMatrix2(1, 0, k, 1), IntMatrix2(0, 1, 1, 0),
                            IntMatrix2(-1, 0, 0, 1)])
            U = U @ E
        if hnf_reduce(H.matrix()) != H or hnf_reduce(M @ U) != H:
            inv_bad += 1
    rho60 = IntMatrix2(0, -1, 1, 1)
    cond_bad = 0
    for n in range(1, 101):
        for M in hnf_enumerate(n):
            a, b, d = M.a, M.b, M.d
            conds = b % a == 0 and d % a == 0 and (a * a + a * b + b * b) % (a * d) == 0
            if conds != conjugation_integral(rho60, M):
                cond_bad += 1
    elapsed = time.perf_counter() - start
    ok = not count_bad and not inv_bad and not cond_bad and elapsed < 10
    detail = f"{len(count_bad)} count failures, {inv_bad} invariance failures, {cond_bad} condition mismatches, {elapsed:.1f}s"
    report(5, "lattice suite", ok, detail)
    assert ok, detail


# point-group orders as stated in the inventory; E9 and E10 are not listed there
INVENTORY_ORDERS = {
    **{i: 12 for i in (2, 5, 6, 7, 11, 14, 17, 20, 21, 22, 24, 26)},
    **{i: 8 for i in (16, 27)},
    23: 4,
    **{i: 6 for i in (1, 25)},
    **{i: 4 for i in (3, 4, 8, 12, 13, 15, 18, 19)},
}


def test_6_tiling_self_validation():
    start = time.perf_counter()
    reports = [validate(s, completeness=False) for s in builtin_specs()]
    failed = [r.spec_id for r in reports if not r.passed]
    by_id = {s.id: s for s in builtin_specs()}
    order_bad = [f"E{i}: {by_id[i].order} vs {o}" for i, o in INVENTORY_ORDERS.items() if by_id[i].order != o]
    elapsed = time.perf_counter() - start
    ok = len(reports) == 27 and not failed and not order_bad and elapsed < 10
    detail = f"{27 - len(failed)}/27 pass all checks; order mismatches {order_bad}; {elapsed:.1f}s"
    report(6, "tiling self-validation", ok, detail)
    assert ok, detail


def test_7_parity_properties():
    sums = {
        "f1+f5": lambda n: nt.f1(n) + nt.f5(n),
        "sigma+f3": lambda n: nt.sigma(n) + nt.f3(n),
        "sigma+g": lambda n: nt.sigma(n) + nt.g(n),
        "sigma+g1": lambda n: nt.sigma(n) + nt.published_g1(n),
        "sigma+g2": lambda n: nt.sigma(n) + nt.published_g2(n),
        "f2+f6": lambda n: nt.f2(n) + nt.f6(n),
        "f1-f5": lambda n: nt.f1(n) - nt.f5(n),
    }
    failures = {name: [n for n in range(1, 201) if f(n) % 2] for name, f in sums.items()}
    failures["sigma-g-f2+f3"] = [
        n for n in range(1, 201) if (nt.sigma(n) - nt.g(n) - nt.f2(n) + nt.f3(n)) % 4
    ]
    failures = {k: v for k, v in failures.items() if v}
    res = run_cli("verify", "--max-sheets", "1", "--format", "json", "--parallel", "1")
    surfaced = len(json.loads(res.output)["parity"]["published_defects"])
    ok = not failures
    detail = ", ".join(f"{k} odd at {len(v)} n (first {v[:3]})" for k, v in failures.items()) or "all integral"
    detail += f"; verify surfaces {surfaced} published-form defects"
    report(7, "parity properties", ok, detail)
    assert ok, detail


def test_8_asymptotics():
    start = time.perf_counter()
    divisor_family = [1, 2, 5, 6, 7, 11, 14, 16, 17, 19, 20, 21, 22, 24, 26]
    tau_bad = bounded_by_tau(divisor_family, 10**4)
    glide_bad = bounded_by_tau([9, 10, 18], 10**4, factor=2)
    scan = gronwall_ratio_scan(10**5)
    trends = {ell: growth_report(ell, [ell_v * 10**k for k in (2, 3, 4)], search=False)
              for ell, ell_v in ((27, 4), (23, 4), (8, 4))}
    elapsed = time.perf_counter() - start
    for ell, rep in trends.items():
        print(f"type {ell} ratio trend:", [(v, round(r, 4)) for v, _, _, r in rep.samples])
    ok = not tau_bad and not glide_bad and scan.maximum <= 2.0 and elapsed < 60
    detail = (f"{len(tau_bad)} tau violations, {len(glide_bad)} 2tau violations, "
              f"sigma/(v lnln v) running max {scan.maximum:.3f} at v={scan.argmax}, {elapsed:.1f}s")
    report(8, "asymptotics", ok, detail)
    assert ok, detail
