import math
from itertools import product

import numpy as np
import pytest

from conftest import ex1_model
from redundalloc import Exponential, GumbelCopula, IndependenceCopula, SystemModel
from redundalloc.errors import BadIndex, ZeroFailureProbability
from redundalloc.expectations import (
    expectation_report,
    expected_failed_at_failure,
    expected_failed_at_failure_given_early_failure,
    expected_failures_by_tau_given_survival,
)
from redundalloc.structure import signature_k_out_of_n, signature_series_parallel


def series2(t1=0.2, t2=0.3):
    return SystemModel(signature_k_out_of_n(2, (1, 1)), IndependenceCopula(), [Exponential(t1), Exponential(t2)])


def example1_double_sum(phi, n, theta, alpha, i):
    """E(X_i(T)) from the closed form for Gumbel copulas with exponential marginals."""
    a = [x**alpha for x in theta]
    o = 1 - i
    total = 0.0
    for mi, mo in product(range(n[i]), range(n[o] + 1)):
        l = [0, 0]
        l[i], l[o] = mi + 1, mo
        p = phi[tuple(l)]
        if p == 0:
            continue
        inner = 0.0
        for ji, jo in product(range(n[i] - mi), range(n[o] - mo + 1)):
            inner += (
                (-1) ** (ji + jo)
                * math.comb(n[i] - mi - 1, ji)
                * math.comb(n[o] - mo, jo)
                * a[i]
                / ((mi + ji + 1) * a[i] + (mo + jo) * a[o])
            )
        total += math.comb(n[i] - 1, mi) * math.comb(n[o], mo) * p * inner
    return n[i] * total


@pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0])
def test_failed_at_failure_matches_double_sum(ex1_structure, alpha):
    m = ex1_model(GumbelCopula(alpha))
    for i in range(2):
        ref = example1_double_sum(ex1_structure.table, (3, 3), (0.2, 0.3), alpha, i)
        assert expected_failed_at_failure(m, i) == pytest.approx(ref, rel=1e-8)


def test_series_first_failure_probability():
    m = series2()
    assert expected_failed_at_failure(m, 0) == pytest.approx(0.4, rel=1e-9)


def test_parallel_all_fail():
    m = SystemModel(signature_series_parallel((3,)), GumbelCopula(2.0), [Exponential(1.0)])
    assert expected_failed_at_failure(m, 0) == 3.0
    m = SystemModel(signature_k_out_of_n(1, (2,)), IndependenceCopula(), [Exponential(1.0)])
    assert expected_failed_at_failure(m, 0) == pytest.approx(2.0)


def test_bad_type(ex1):
    with pytest.raises(BadIndex):
        expected_failed_at_failure(ex1.model, 2)


def test_survivors_small_tau(ex1):
    for i in range(2):
        assert expected_failures_by_tau_given_survival(ex1.model, i, 1e-6) == pytest.approx(0.0, abs=1e-5)


def test_survivors_parallel_single():
    m = SystemModel(signature_series_parallel((1,)), IndependenceCopula(), [Exponential(1.0)])
    assert expected_failures_by_tau_given_survival(m, 0, 1.5) == pytest.approx(0.0, abs=1e-12)


def test_survivors_nondecreasing(ex1):
    vals = [expected_failures_by_tau_given_survival(ex1.model, 0, t) for t in np.linspace(0.1, 6, 12)]
    assert np.all(np.diff(vals) >= -1e-10)


def test_early_failure_series_closed_form():
    t1, t2, tau = 0.2, 0.3, 1.5
    m = series2(t1, t2)
    # P(T_1 < T_2, T_1 <= tau) / P(min <= tau); the stopping unit is the one counted
    p = t1 / (t1 + t2) * (1 - math.exp(-(t1 + t2) * tau))
    ref = p / (1 - math.exp(-(t1 + t2) * tau))
    got = expected_failed_at_failure_given_early_failure(m, 0, tau, include_fatal=True)
    assert got == pytest.approx(ref, rel=1e-8)
    # strict convention excludes the stopping unit, and nothing else has failed
    assert expected_failed_at_failure_given_early_failure(m, 0, tau) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("tau", [0.5, 2.0, 8.0])
def test_early_failure_bounds(ex1, tau):
    for i in range(2):
        for inc in (False, True):
            v = expected_failed_at_failure_given_early_failure(ex1.model, i, tau, include_fatal=inc)
            assert 0.0 <= v <= 3.0


def test_early_failure_inclusive_limit(ex1):
    # the inclusive convention tends to E(X_i(T)) as tau grows
    tau = 50 / 0.2
    for i in range(2):
        v = expected_failed_at_failure_given_early_failure(ex1.model, i, tau, include_fatal=True)
        assert v == pytest.approx(expected_failed_at_failure(ex1.model, i), abs=1e-4)


def test_early_failure_strict_misses_stopping_unit(ex1):
    # strict and inclusive differ by the probability that type i stops the system
    tau = 250.0
    gaps = [
        expected_failed_at_failure_given_early_failure(ex1.model, i, tau, include_fatal=True)
        - expected_failed_at_failure_given_early_failure(ex1.model, i, tau)
        for i in range(2)
    ]
    assert sum(gaps) == pytest.approx(1.0, abs=1e-6)


def test_degenerate_tau():
    m = SystemModel(signature_series_parallel((1,)), IndependenceCopula(), [Exponential(1e-9)])
    with pytest.raises(ZeroFailureProbability):
        expected_failed_at_failure_given_early_failure(m, 0, 1e-6)


def test_report(ex1):
    rep = expectation_report(ex1.model, 2.0)
    assert len(rep.failed_at_failure) == 2
    assert rep.tau == 2.0
    assert rep.failures_given_survival[0] == pytest.approx(expected_failures_by_tau_given_survival(ex1.model, 0, 2.0))
