"""Acceptance gate: every criterion at its stated scale and tolerance.

Each test prints one PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`
or via `inducedc4 selftest`.
"""

import pytest

from inducedc4 import selfcheck


def _run(result):
    print(result.line())
    assert result.passed, result.detail


def test_criterion_1_exhaustive_oracle_equivalence():
    _run(selfcheck.suite_exhaustive(max_n=6))


def test_criterion_2_randomized_differential():
    _run(selfcheck.suite_randomized(total=2000))


def test_criterion_3_hard_instances():
    _run(selfcheck.suite_hard_instances(perturbations=100))


def test_criterion_4_decomposition_invariants():
    _run(selfcheck.suite_decomposition(instances=100))


def test_criterion_5_ordering_suite():
    _run(selfcheck.suite_orderings(cases=1000))


def test_criterion_6_rangequery_differential():
    _run(selfcheck.suite_rangequery(cases_per_dim=10000))


def test_criterion_7_structural_spot_suites():
    _run(selfcheck.suite_structural(cases=500))


def test_criterion_8_scaling_report():
    _run(selfcheck.suite_scaling(sizes=(1024, 2048, 4096, 8192), reps=3, gate=3.2))
