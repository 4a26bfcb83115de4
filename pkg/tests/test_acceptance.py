"""Acceptance criteria 1-9; each test prints one PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""
import sys
import time

import pytest

from metaeis import checks

def _evaluate(number, suite, limit=None):
    guard = checks.PositivityGuard()
    start = time.perf_counter()
    failures = list(suite(guard))
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        failures.append(f"took {elapsed:.2f}s, limit {limit}s")
    failures.extend(guard.violations)
    status = "PASS" if not failures else "FAIL"
    line = f"{status} criterion {number} ({elapsed:.2f}s)"
    if failures:
        line += ": " + "; ".join(failures[:5])
    return line, failures

def _report(number, suite, limit, capsys):
    line, failures = _evaluate(number, suite, limit)
    with capsys.disabled():
        print("\n" + line)
    assert not failures, line

def test_criterion_1_dual_group_tables(capsys):
    _report(1, checks.dual_group_tables, 10, capsys)

def test_criterion_2_dual_coxeter(capsys):
    _report(2, checks.dual_coxeter, 1, capsys)

def test_criterion_3_multiplicities(capsys):
    _report(3, checks.multiplicities, 60, capsys)

def test_criterion_4_sym_identity(capsys):
    _report(4, checks.sym_identity, 60, capsys)

def test_criterion_5_nilradical_structure(capsys):
    _report(5, checks.nilradical_structure, None, capsys)

def test_criterion_6_eisenstein_identity(capsys):
    _report(6, checks.eisenstein_identity, 10, capsys)

def test_criterion_7_sl2_module(capsys):
    _report(7, checks.sl2_module, 5, capsys)

def test_criterion_8_stalk_tables(capsys):
    _report(8, checks.stalk_tables, None, capsys)

def _full_run(guard):
    summary = checks.run_all()
    if summary["checked_values"] == 0:
        return ["no values were checked"]
    return list(summary["results"]["positivity"])

def test_criterion_9_positivity(capsys):
    _report(9, _full_run, None, capsys)

CRITERIA = [
    (1, checks.dual_group_tables, 10), (2, checks.dual_coxeter, 1), (3, checks.multiplicities, 60),
    (4, checks.sym_identity, 60), (5, checks.nilradical_structure, None), (6, checks.eisenstein_identity, 10),
    (7, checks.sl2_module, 5), (8, checks.stalk_tables, None), (9, _full_run, None),
]

if __name__ == "__main__":
    ok = True
    for number, suite, limit in CRITERIA:
        line, failures = _evaluate(number, suite, limit)
        print(line)
        ok = ok and not failures
    sys.exit(0 if ok else 1)
