"""Closed-form and exact-algebra paths must agree with the brute-force oracle."""

import pytest

from ecsim.oraclechecks import SUITES, circuits_suite

TOL = 1e-8
UNITARITY_TOL = 1e-9


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_within_tolerance(suite):
    failures = [(n, d) for n, d in SUITES[suite]() if d > TOL]
    assert not failures, f"deviations above {TOL}: {failures}"


def test_unitarity_checks_tighter():
    checks = dict(SUITES["elements"]())
    for name, dev in checks.items():
        if "unitarity" in name or "involution" in name:
            assert dev < UNITARITY_TOL, (name, dev)


def test_circuit_suite_other_operating_point():
    failures = [(n, d) for n, d in circuits_suite(gamma=0.9, theta=-0.7) if d > TOL]
    assert not failures, failures
