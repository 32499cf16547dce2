"""Acceptance criteria, one test each, all exact.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line so the outcome of
every criterion is visible in the pytest log (``pytest -v -s`` not needed).
"""

import os

import pytest

import oracles
from mordell_ternary.arith import jacobi, solve_square_mod
from mordell_ternary.forms import TernaryForm as F
from mordell_ternary.forms import enumerate_classes, is_equivalent
from mordell_ternary.mordell import certify
from mordell_ternary.represent import get_entry
from mordell_ternary.verify import verify_characterization, verify_lemmas, verify_table1, verify_theorem

JOBS = max(1, min(4, os.cpu_count() or 1))

CHARACTERIZED = ["1a", "1b", "1c", "1d", "1e", "1f", "2a", "2b", "3", "3sq"]
CASE_TABLES = ["1a", "1b", "1c", "1d", "1e", "1f", "2a", "2b", "3"]

NAMED = {
    1: [F(1, 1, 1)],
    2: [F(1, 1, 2)],
    3: [F(1, 1, 3), F(1, 2, 2, 2)],
    4: [F(1, 2, 2), F(1, 1, 4)],
    5: [F(1, 1, 5), F(1, 2, 3, 2)],
    6: [F(1, 1, 6), F(1, 2, 3)],
    8: [F(1, 2, 4), F(1, 1, 8), F(1, 3, 3, 2), F(2, 2, 3, 2, 2)],
    10: [F(1, 2, 5), F(2, 2, 3, 0, 2), F(1, 1, 10)],
}


@pytest.fixture
def verdict(capsys):
    def emit(criterion: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        assert ok, detail

    return emit


def test_1_characterization_sweeps(verdict):
    reports = [verify_characterization(e, 50_000, jobs=JOBS) for e in CHARACTERIZED]
    bad = [r.to_text() for r in reports if not r.ok]
    detail = f"{len(reports) - len(bad)}/10 entries with zero mismatches up to N=50000"
    verdict(1, not bad, detail + ("; " + " | ".join(bad) if bad else ""))


def test_2_class_enumeration(verdict):
    counts = {d: len(enumerate_classes(d)) for d in NAMED}
    expected = {1: 1, 2: 1, 3: 2, 4: 2, 5: 2, 6: 2, 8: 4, 10: 3}
    named_ok = all(
        all(any(is_equivalent(f, g) for g in enumerate_classes(d)) for f in forms) for d, forms in NAMED.items()
    )
    verdict(2, counts == expected and named_ok, f"class counts {counts}; named representatives found: {named_ok}")


def test_3_certification_sweep(verdict):
    reports = [verify_theorem(e, 2000, jobs=JOBS) for e in CASE_TABLES]
    bad = [r.to_text()[:400] for r in reports if not r.ok]
    total = sum(r.checked for r in reports)
    passed = sum(r.passed for r in reports)
    verdict(3, not bad, f"{passed}/{total} admissible m <= 2000 certified and self-validated across 9 entries" + ("; " + " | ".join(bad) if bad else ""))


def test_4_table1(verdict):
    r = verify_table1()
    verdict(4, r.ok and r.checked == 24, f"{r.passed}/{r.checked} rows pass all three checks" + ("" if r.ok else "; " + r.to_text()))


def test_5_lemma_properties(verdict):
    r = verify_lemmas(10_000, jobs=JOBS)
    verdict(5, r.ok, f"{r.passed}/{r.checked} descent, base and separation checks up to N=10000" + ("" if r.ok else "; " + r.to_text()[:400]))


def test_6_arithmetic_oracles(verdict):
    jac_bad = [
        (a, n) for n in range(1, 1000, 2) for a in range(n) if jacobi(a, n) != oracles.jacobi(a, n)
    ]
    sq_bad = []
    for n in range(1, 2001):
        roots: dict[int, set[int]] = {}
        for r in range(n):
            roots.setdefault(r * r % n, set()).add(r)
        sq_bad += [(c, n) for c in range(n) if solve_square_mod(c, n) != roots.get(c, set())]
    verdict(
        6,
        not jac_bad and not sq_bad,
        f"jacobi mismatches for odd n <= 999: {len(jac_bad)}; solve_square_mod mismatches for n <= 2000: {len(sq_bad)}",
    )


def test_7_worked_witnesses(verdict):
    c1, c2 = certify("1a", 3), certify("1b", 1)
    got = (c1.witness.astuple(), c1.f, c2.witness.astuple(), c2.f)
    want = ((1, 0, 5, 12, 30), F(2, 10, 3, 0, 2, 8), (2, 0, 73, 90, 111), F(77, 111, 1, 0, 4, 180))
    # the same witnesses re-derived by the brute-force oracle
    rederived = (
        oracles.witness(3, 2, 5, 8, None) == want[0]
        and oracles.witness(1, 3, 1, 24, get_entry("1b").separation[::-1]) == want[2]
    )
    verdict(7, got == want and rederived, f"certify('1a', 3) -> {got[0]}, f = {got[1].pretty()}; certify('1b', 1) -> {got[2]}, f = {got[3].pretty()}")
