import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redundalloc.dependence import (
    ClaytonCopula,
    CustomCopula,
    GumbelCopula,
    IndependenceCopula,
    copula_eval,
    copula_from_config,
    copula_partial,
    copula_sample,
    copula_to_config,
)
from redundalloc.errors import BadParameter, BoundaryArgument, OutOfRange, ValidationError

FAMILIES = [IndependenceCopula(), GumbelCopula(1.0), GumbelCopula(2.0), GumbelCopula(3.5), ClaytonCopula(0.5), ClaytonCopula(2.0)]
unit = st.floats(0.001, 0.999)


def kendall_tau(x, y):
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    n = len(x)
    return float((dx * dy).sum() / (n * (n - 1)))


def test_spot_values():
    assert copula_eval(GumbelCopula(1.0), [0.3, 0.5]) == pytest.approx(0.15)
    assert copula_eval(ClaytonCopula(1.0), [0.5, 0.5]) == pytest.approx(1 / 3)
    e = math.exp(-1)
    assert copula_eval(GumbelCopula(2.0), [e, e]) == pytest.approx(math.exp(-math.sqrt(2)))


def test_partial_spot_values():
    assert copula_partial(IndependenceCopula(), [0.3, 0.5], 0) == pytest.approx(0.5)
    assert copula_partial(GumbelCopula(1.0), [0.3, 0.5, 0.7], 1) == pytest.approx(0.21)


def test_errors():
    with pytest.raises(BadParameter):
        GumbelCopula(0.5)
    with pytest.raises(BadParameter):
        ClaytonCopula(0.0)
    with pytest.raises(OutOfRange):
        copula_eval(GumbelCopula(2.0), [0.5, 1.5])
    with pytest.raises(BoundaryArgument):
        copula_partial(GumbelCopula(2.0), [0.5, 1.0], 1)


def test_tiny_clayton_is_finite():
    v = copula_eval(ClaytonCopula(0.001), [0.4, 0.6, 0.9])
    assert v == pytest.approx(0.4, rel=1e-3)  # close to comonotone min


@pytest.mark.parametrize("cop", FAMILIES)
@settings(max_examples=60, deadline=None)
@given(u=st.lists(unit, min_size=2, max_size=5), k=st.integers(0, 4))
def test_margins(cop, u, k):
    k %= len(u)
    args = [1.0] * len(u)
    args[k] = u[k]
    assert copula_eval(cop, args) == pytest.approx(u[k], abs=1e-12)


@pytest.mark.parametrize("cop", FAMILIES)
@settings(max_examples=60, deadline=None)
@given(a=st.lists(unit, min_size=3, max_size=3), b=st.lists(unit, min_size=3, max_size=3), dim=st.sampled_from([2, 3]))
def test_n_increasing(cop, a, b, dim):
    lo = np.minimum(a, b)[:dim]
    hi = np.maximum(a, b)[:dim]
    vol = 0.0
    for corner in np.ndindex(*(2,) * dim):
        pt = [hi[j] if c else lo[j] for j, c in enumerate(corner)]
        vol += (-1) ** (dim - sum(corner)) * copula_eval(cop, pt)
    assert vol >= -1e-12


@pytest.mark.parametrize("cop", FAMILIES)
@settings(max_examples=60, deadline=None)
@given(u=st.lists(st.floats(0.05, 0.95), min_size=2, max_size=4), k=st.integers(0, 3))
def test_partial_matches_difference(cop, u, k):
    k %= len(u)
    h = 1e-6
    up = list(u)
    dn = list(u)
    up[k] += h
    dn[k] -= h
    num = (copula_eval(cop, up) - copula_eval(cop, dn)) / (2 * h)
    assert copula_partial(cop, u, k) == pytest.approx(num, rel=1e-6, abs=1e-9)


def test_gumbel_partial_three_args():
    u = [0.6, 0.7, 1.0]
    h = 1e-7
    num = (copula_eval(GumbelCopula(2.0), [0.6, 0.7 + h, 1.0]) - copula_eval(GumbelCopula(2.0), [0.6, 0.7 - h, 1.0])) / (2 * h)
    assert copula_partial(GumbelCopula(2.0), u, 1) == pytest.approx(num, rel=1e-6)


def test_custom_copula_matches_builtin():
    g = GumbelCopula(2.0)
    custom = CustomCopula(lambda u: math.exp(-math.sqrt(sum(np.log(u) ** 2))))
    assert copula_eval(custom, [0.3, 0.8]) == pytest.approx(copula_eval(g, [0.3, 0.8]), rel=1e-12)
    assert copula_partial(custom, [0.3, 0.8], 0) == pytest.approx(copula_partial(g, [0.3, 0.8], 0), rel=1e-6)


@pytest.mark.parametrize(
    "cop, tau",
    [(IndependenceCopula(), 0.0), (GumbelCopula(2.0), 0.5), (ClaytonCopula(1.0), 1 / 3)],
)
def test_sample_kendall_tau(cop, tau):
    rng = np.random.default_rng(11)
    u = copula_sample(cop, 2, rng, 3000)
    n = len(u)
    se = math.sqrt(2 * (2 * n + 5) / (9 * n * (n - 1)))
    assert abs(kendall_tau(u[:, 0], u[:, 1]) - tau) < 3 * se


def test_clayton_tau_matches_generator_integral():
    # tau = 1 + 4 * int_0^1 phi/phi' with phi(t) = t**(-1/a) - 1
    a = 1.0
    t = np.linspace(1e-6, 1, 200_001)
    ratio = (t ** (-1 / a) - 1) / (-(1 / a) * t ** (-1 / a - 1))
    tau = 1 + 4 * np.trapezoid(ratio, t)
    assert tau == pytest.approx(1 / (1 + 2 * a), abs=1e-4)


@pytest.mark.parametrize("cop", [GumbelCopula(2.0), ClaytonCopula(2.0), IndependenceCopula()])
def test_empirical_copula(cop):
    rng = np.random.default_rng(5)
    N = 100_000
    u = copula_sample(cop, 2, rng, N)
    for a in np.linspace(0.1, 0.9, 5):
        for b in np.linspace(0.1, 0.9, 5):
            p = copula_eval(cop, [a, b])
            emp = np.mean((u[:, 0] <= a) & (u[:, 1] <= b))
            assert abs(emp - p) <= 3 * math.sqrt(p * (1 - p) / N) + 1e-12


def test_sample_shapes():
    rng = np.random.default_rng(0)
    assert copula_sample(GumbelCopula(2.0), 3, rng).shape == (3,)
    assert copula_sample(GumbelCopula(2.0), 3, rng, 7).shape == (7, 3)


def test_config_round_trip():
    for cop in [IndependenceCopula(), GumbelCopula(2.0), ClaytonCopula(0.5)]:
        assert copula_from_config(copula_to_config(cop)) == cop
    with pytest.raises(ValidationError, match=r"copula\.alpha"):
        copula_from_config({"family": "gumbel", "alpha": 0.2})
