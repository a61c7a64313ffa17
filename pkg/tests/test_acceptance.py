"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary (and immediately with ``-s``).
"""
import math
import time

import pytest

from wreathblock._combinat import binom
from wreathblock.cli import main as cli_main
from wreathblock import data_file
from wreathblock.generalized_boolean import index_set_I_level, index_set_J, index_set_J_level, mu
from wreathblock.group_action import spectral_table
from wreathblock.jordan_ssjb import build_unitary
from wreathblock.verification import (
    conjugation_oracle, corrupt_unitary, delsarte_oracle, eigen_oracle, factorized_oracle,
    homomorphism_oracle, orbit_count_oracle, run_suite, schrijver_oracle, ssjb_oracle,
)

from conftest import ACCEPTANCE_LINES, GROUPS

EXAMPLES = ("S2", "S3", "C3")
# (group, largest n) for the SSJB, conjugation and eigenvalue criteria
STRUCTURE_SET = (("S2", 4), ("S3", 3), ("C3", 3))


def _record(number, title, ok, seconds, budget, detail=""):
    ok_time = budget is None or seconds < budget
    status = "PASS" if ok and ok_time else "FAIL"
    limit = f" (limit {budget:g}s)" if budget is not None else ""
    line = f"[{status}] criterion {number:2d}: {title}  {seconds:.2f}s{limit}  {detail}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert ok_time, line


def test_criterion_01_dimension_formula():
    t0 = time.perf_counter()
    bad = []
    for name in EXAMPLES:
        action = GROUPS[name]()
        m = spectral_table(action).m
        for n in range(7):
            got = orbit_count_oracle(action, n)
            if got != math.comb(n + m + 3, m + 3):
                bad.append((name, n, got))
    _record(1, "orbit count = C(n+m+3, m+3), n<=6", not bad, time.perf_counter() - t0, 10,
            f"mismatches={bad}")


def test_criterion_02_block_size_identity():
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 6):
        for n in range(11):
            lhs = sum((n + s - 2 * k + 1) ** 2 * binom(s + m - 1, m - 1)
                      for k in range(n + 1) for s in range(max(0, 2 * k - n), k + 1))
            # the same sum read off the enumerated block index set
            enum = sum((n + b.s - 2 * b.k + 1) ** 2 for b in index_set_J(n, m))
            if not lhs == enum == math.comb(n + m + 3, m + 3):
                bad.append((n, m))
    _record(2, "sum of squared block sizes, n<=10, m<=5", not bad, time.perf_counter() - t0, 1,
            f"mismatches={bad}")


def test_criterion_03_counting_match():
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 5):
        for n in range(9):
            for i in range(n + 1):
                if len(index_set_I_level(n, m, i)) != len(index_set_J_level(n, m, i)):
                    bad.append(("I/J", n, m, i))
    for name in EXAMPLES:
        st = spectral_table(GROUPS[name]())
        for n in range(5):
            for i in range(n + 1):
                total = sum(mu(n, *b, st.dims) for b in index_set_J_level(n, st.m, i))
                if total != math.comb(n, i) * st.x_size ** i:
                    bad.append(("level", name, n, i))
    _record(3, "|I_X(n,i)| = |J_X(n,i)| and level dimensions", not bad,
            time.perf_counter() - t0, 5, f"mismatches={bad}")


def test_criterion_04_ssjb_validity():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for name, top in STRUCTURE_SET:
        for n in range(top + 1):
            rep = ssjb_oracle(GROUPS[name](), n, tol=1e-9)
            worst = max(worst, rep.deviation)
            if not rep.passed:
                bad.append((name, n, rep.details))
    _record(4, "SSJB recurrence, top kill, offsets, orthogonality, mu counts", not bad,
            time.perf_counter() - t0, 60, f"max_dev={worst:.1e} failures={bad}")


def test_criterion_05_conjugation_matches_phi():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for name, top in STRUCTURE_SET:
        for n in range(top + 1):
            rep = conjugation_oracle(GROUPS[name](), n, tol=1e-8)
            worst = max(worst, rep.deviation)
            if not rep.passed:
                bad.append((name, n, rep.details))
    _record(5, "M(n)* M M(n) block diagonal and equal to phi", not bad,
            time.perf_counter() - t0, 90, f"max_dev={worst:.1e} failures={bad}")


def test_criterion_06_homomorphism():
    t0 = time.perf_counter()
    action = GROUPS["S2"]()
    reps = [homomorphism_oracle(action, n, tol=1e-8) for n in range(3)]
    reps.append(homomorphism_oracle(action, 3, tol=1e-8, samples=50, seed=0))
    worst = max(r.deviation for r in reps)
    _record(6, "Phi(MM') = Phi(M)Phi(M'), Phi(M^T) = Phi(M)*", all(r.passed for r in reps),
            time.perf_counter() - t0, 60, f"max_dev={worst:.1e}")


def test_criterion_07_eigenvalues():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for name, top in STRUCTURE_SET:
        for n in range(top + 1):
            for i in range(n + 1):
                rep = eigen_oracle(GROUPS[name](), n, i, tol=1e-8)
                worst = max(worst, rep.deviation)
                if not rep.passed:
                    bad.append((name, n, i))
    _record(7, "eigenvalues of M_{i,i}^{t,l} on V_X(n,i,k,s,p)", not bad,
            time.perf_counter() - t0, 60, f"max_dev={worst:.1e} failures={bad}")


def test_criterion_08_boolean_base_case():
    t0 = time.perf_counter()
    reps = [f(n, tol=1e-8) for n in range(7) for f in (schrijver_oracle, delsarte_oracle)]
    worst = max(r.deviation for r in reps)
    _record(8, "Boolean blocks and Johnson eigenvalues, n<=6", all(r.passed for r in reps),
            time.perf_counter() - t0, 30, f"max_dev={worst:.1e}")


def test_criterion_09_factorized_action():
    t0 = time.perf_counter()
    reps = [factorized_oracle(GROUPS[name](), n, samples=200, tol=1e-9, seed=n)
            for name in EXAMPLES for n in range(1, 4)]
    worst = max(r.deviation for r in reps)
    _record(9, "matrix apply vs factorized apply, 200 samples", all(r.passed for r in reps),
            time.perf_counter() - t0, 30, f"max_dev={worst:.1e}")


def test_criterion_10_negative_controls(capsys):
    t0 = time.perf_counter()
    action = GROUPS["S2"]()
    st = spectral_table(action)
    bad_unitary = conjugation_oracle(action, 2, unitary=corrupt_unitary(build_unitary(2, st)))
    flipped = [r for r in run_suite(action, 2, corrupt="matrix") if not r.passed]
    flip_dev = max((r.deviation for r in flipped), default=0.0)
    group = data_file("s2")
    codes = [cli_main(["verify", "--group", group, "--n", "2", "--corrupt", mode])
             for mode in ("unitary", "matrix")]
    capsys.readouterr()
    ok = bad_unitary.deviation > 1e-4 and flip_dev > 1e-4 and all(c != 0 for c in codes)
    with capsys.disabled():
        _record(10, "corrupted unitary / flipped entry are detected", ok,
                time.perf_counter() - t0, None,
                f"unitary_dev={bad_unitary.deviation:.1e} flip_dev={flip_dev:.1e} exits={codes}")
