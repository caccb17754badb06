import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ex1_model
from redundalloc import ClaytonCopula, Exponential, GumbelCopula, IndependenceCopula, SystemModel
from redundalloc.errors import DivergentIntegral, NegativeTime, ValidationError, WrongCopula
from redundalloc.marginals import ParetoLinear
from redundalloc.reliability import (
    expected_min_tau,
    mttf,
    redundant_reliability,
    system_reliability,
    system_reliability_indep,
)
from redundalloc.structure import signature_k_out_of_n, signature_series_parallel

T_GRID = np.linspace(0.0, 15.0, 20)


def single(rate=1.0):
    return SystemModel(signature_series_parallel((1,)), IndependenceCopula(), [Exponential(rate)])


def test_time_zero(ex1):
    assert system_reliability(ex1.model, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_series_exponentials():
    m = SystemModel(signature_k_out_of_n(2, (1, 1)), IndependenceCopula(), [Exponential(0.2), Exponential(0.3)])
    assert system_reliability(m, 1.7) == pytest.approx(math.exp(-0.5 * 1.7), rel=1e-12)


def test_parallel_indep():
    m = SystemModel(signature_series_parallel((2,)), IndependenceCopula(), [Exponential(1.0)])
    assert system_reliability_indep(m, 0.8) == pytest.approx(1 - (1 - math.exp(-0.8)) ** 2, rel=1e-12)


def test_indep_path_rejects_dependence(ex1):
    with pytest.raises(WrongCopula):
        system_reliability_indep(ex1.model, 1.0)


def test_table1_indep_agrees(ex1_indep):
    assert system_reliability(ex1_indep, 1.0) == pytest.approx(system_reliability_indep(ex1_indep, 1.0), abs=1e-10)


def test_negative_time(ex1):
    with pytest.raises(NegativeTime):
        system_reliability(ex1.model, -1.0)


def test_zero_redundancy_identity(ex1):
    assert np.allclose(redundant_reliability(ex1.model, (0, 0), T_GRID), system_reliability(ex1.model, T_GRID), atol=1e-12)


def test_two_unit_parallel():
    m = single(0.7)
    t = np.array([0.3, 1.0, 4.0])
    assert np.allclose(redundant_reliability(m, (1,), t), 1 - (1 - np.exp(-0.7 * t)) ** 2, rtol=1e-12)


def test_bad_redundancy(ex1):
    with pytest.raises(ValidationError):
        redundant_reliability(ex1.model, (1,), 1.0)


def test_mttf_simple():
    assert mttf(single(0.5)) == pytest.approx(2.0, rel=1e-9)
    m = SystemModel(signature_series_parallel((2,)), IndependenceCopula(), [Exponential(1.0)])
    assert mttf(m) == pytest.approx(1.5, rel=1e-9)


def test_mttf_divergent():
    m = SystemModel(signature_series_parallel((1,)), IndependenceCopula(), [ParetoLinear(1.0, 1.0)])
    with pytest.raises(DivergentIntegral):
        mttf(m)


def test_expected_min_tau():
    assert expected_min_tau(single(0.5), (0,), 1.3) == pytest.approx((1 - math.exp(-0.65)) / 0.5, rel=1e-10)
    assert expected_min_tau(single(0.5), (0,), 1e-6) / 1e-6 == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("name", ["example1", "example2", "example3"])
def test_monotone_in_t_and_bounded(name, request):
    model = request.getfixturevalue(name.replace("example", "ex")).model
    t = np.linspace(0, 20, 200)
    r = system_reliability(model, t)
    assert np.all(np.diff(r) <= 1e-12)
    assert np.all((r >= -1e-9) & (r <= 1 + 1e-9))


@settings(max_examples=30, deadline=None)
@given(t=st.floats(0.01, 30.0), v1=st.integers(0, 3), v2=st.integers(0, 2), k=st.integers(0, 1))
def test_monotone_in_v(t, v1, v2, k):
    m = ex1_model(GumbelCopula(2.0))
    v = [v1, v2]
    w = list(v)
    w[k] += 1
    assert redundant_reliability(m, w, t) >= redundant_reliability(m, v, t) - 1e-12


def test_clayton_reliability_bounded():
    m = ex1_model(ClaytonCopula(0.001))
    r = system_reliability(m, np.linspace(0, 30, 50))
    assert np.all((r >= -1e-9) & (r <= 1 + 1e-9))
