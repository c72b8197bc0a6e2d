"""Acceptance gate: one test and one printed PASS/FAIL line per criterion,
with the time budgets pinned in-line.

Each criterion exercises the public surface the way a release check would:
through the CLI where the contract is CLI-shaped, through the library
otherwise, and against the brute-force oracle where a dual route exists.
"""

import pathlib
import time

import pytest

from qadic.cli import run
from qadic.cocycle import cocycle_sum
from qadic.correspondence import exceptional_q, phi
from qadic.fixed_points import find_rooted
from qadic.padic_core import PadicInt, QParameter, int_valuation
from qadic.suites import run_suite

HERE = pathlib.Path(__file__).parent
GOLDEN = HERE / "golden"
README = HERE.parent / "README.md"


def qp(value: int, precision: int) -> QParameter:
    return QParameter(PadicInt.from_int(value, 3, precision))


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_golden_tables(tmp_path):
    t0 = time.perf_counter()
    jobs = [("table_mod81.txt", 4, 82), ("table_mod243.txt", 5, 112), ("table_mod729.txt", 6, 82)]
    mismatched = []
    for fname, n, limit in jobs:
        out = tmp_path / fname
        code = run(
            ["iota", "--p", "3", "--q", "4", "--n", str(n), "--table", str(limit),
             "--mark-fixed", "--out", str(out)]
        )
        if code != 0 or out.read_bytes() != (GOLDEN / fname).read_bytes():
            mismatched.append(fname)
    # the mod 3^4 table must mark exactly 21 fixed residues (23 bracketed
    # entries: the first two residues reappear past z = 80)
    text = (GOLDEN / "table_mod81.txt").read_text()
    marks = text.count("[")
    elapsed = time.perf_counter() - t0
    ok = not mismatched and marks == 23 and elapsed < 1.0
    _report(
        1,
        ok,
        f"three value tables byte-identical to the golden files, 21 fixed residues "
        f"bracketed mod 3^4 ({marks} brackets incl. two wrap-around repeats) in "
        f"{elapsed:.3f}s (< 1 s). Two entries of the mod 3^5 source sequence are "
        f"arithmetic misprints and the goldens carry the recomputed values: "
        f"z=58 is 139 (printed 189), z=111 is 48 (printed 43); mismatched={mismatched}",
    )


def test_criterion_2_exceptional_digits():
    t0 = time.perf_counter()
    q0 = exceptional_q("seven", 8)
    q1 = exceptional_q("four", 8)
    elapsed = time.perf_counter() - t0
    ok = (
        q0.digits == (1, 2, 1, 2, 0, 0, 1, 2)
        and q1.digits == (1, 1, 2, 0, 2, 1, 0, 1)
        and elapsed < 60.0
    )
    _report(
        2,
        ok,
        f"branch-seven parameter = 3^8:{','.join(map(str, q0.digits))} and "
        f"branch-four parameter = 3^8:{','.join(map(str, q1.digits))} through digit "
        f"index 7 in {elapsed:.2f}s (< 60 s). Digit index 3 of the first is 2 where "
        f"the printed source form has 0 (one dropped term; certified digit-by-digit "
        f"with evaluation witnesses, search exhausted at every stage)",
    )


def test_criterion_3_phi_of_four():
    t0 = time.perf_counter()
    out = phi(qp(4, 20), 20)
    elapsed = time.perf_counter() - t0
    ok = out.digits == (1,) * 19 and elapsed < 5.0
    _report(
        3,
        ok,
        f"phi(4) at 20 digits is the all-ones string of length 19 (= -1/2) in "
        f"{elapsed:.2f}s (< 5 s); got {out}",
    )


def test_criterion_4_oracle_equivalence():
    t0 = time.perf_counter()
    res = run_suite("oracle-equivalence", depth=5)
    elapsed = time.perf_counter() - t0
    ok = res.passed and res.cases > 0 and elapsed < 120.0
    _report(
        4,
        ok,
        f"membership, counts, image, and kernel order agree with the brute-force "
        f"oracle on every unit branch parameter (p in 2,3,5,7; levels <= 5): "
        f"{res.cases} checks, {len(res.failures)} mismatches, {elapsed:.1f}s (< 2 min)",
    )


def test_criterion_5_census():
    t0 = time.perf_counter()
    bad = []
    for n in (4, 5, 6):
        per_branch = {}
        for r in (4, 7):
            rooted = 0
            for k in range(3 ** (n - 2)):
                if find_rooted(qp(r + 9 * k, n + 1), n) is not None:
                    rooted += 1
            per_branch[r] = rooted
        half = 3 ** ((n - 1) // 2)
        want_rooted = 3 ** (n - 2) - half
        if per_branch[4] != per_branch[7]:
            bad.append(f"n={n}: uneven branches {per_branch}")
        if per_branch[4] != want_rooted:
            bad.append(f"n={n}: rooted {per_branch[4]} != {want_rooted}")
        if 3 ** (n - 2) - per_branch[4] != half:
            bad.append(f"n={n}: no-rooted {3 ** (n - 2) - per_branch[4]} != {half}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30.0
    _report(
        5,
        ok,
        f"rooted-parameter census at levels 4, 5, 6 matches the closed forms "
        f"2(3^(n-2) - 3^floor((n-1)/2)) rooted / 2*3^floor((n-1)/2) not, split "
        f"evenly across both branches, in {elapsed:.2f}s (< 30 s); {bad or 'no deviations'}",
    )


def test_criterion_6_full_period_sums():
    bad = []
    cases = 0
    for p, qs in ((3, (4, 7, 10, 13, 16, 22, 28)), (5, (6, 11, 16, 21, 26, 126))):
        for n in range(1, 6):
            for qv in qs:
                m0 = int_valuation(qv - 1, p)
                s = cocycle_sum(QParameter(PadicInt.from_int(qv, p, m0 + n + 1)), n)
                cases += 1
                if not s.is_zero():
                    bad.append(f"p={p} n={n} q={qv}: {s}")
    for n in range(1, 7):
        for qv in range(3, 2 ** (n + 2), 2):
            m0 = int_valuation(qv - 1, 2)
            s = cocycle_sum(QParameter(PadicInt.from_int(qv, 2, m0 + n + 1)), n)
            cases += 1
            if s.lift() != 2 ** (n - 1) % 2**n:
                bad.append(f"p=2 n={n} q={qv}: {s}")
    ok = not bad
    _report(
        6,
        ok,
        f"direct full-period summation: 0 at p in {{3,5}} for n <= 5 and 2^(n-1) "
        f"mod 2^n on both odd branches for n <= 6, {cases} sums; {bad[:3] or 'exact throughout'}",
    )


def test_criterion_7_property_suites():
    code = run(["verify", "--depth", "5", "--seed", "0"])
    ok = code == 0
    _report(
        7,
        ok,
        "the default verify set (cocycle identity, exponent identities, norm "
        "preservation, valuation agreement, pair criterion, propagation closure, "
        "round trips, F/G isometry on 100 pairs at precision 10) exits "
        f"{code} with zero failures" if ok else f"verify exited {code}",
    )


def test_criterion_8_finite_precision_note():
    ok = README.is_file()
    text = README.read_text() if ok else ""
    ok = ok and "not finitely checkable" in text and "finite-precision" in text
    _report(
        8,
        ok,
        "README states the substitution: true 3-adic limit objects are not finitely "
        "checkable, so acceptance pins finite-precision witness contracts instead",
    )
