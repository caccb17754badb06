"""Expected numbers of failed components.

Three quantities are provided for each component type ``i``:

* ``E(X_i(T))``, failed components of type ``i`` when the system fails;
* ``E(N_i(tau) | T > tau)``, failures by ``tau`` given the system survives;
* ``E(X_i(T) | T <= tau)``, failed components at system failure given the
  system fails by ``tau``.

The general paths expand each probability into copula evaluations and take
the ``delta -> 0`` limits analytically: the limit of the difference quotient
in the differentiated argument is ``dC/du * f_i(t)``, computed here as
``(u dC/du) * h_i(t)`` with ``h_i`` the hazard rate. Type indices are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _expansion as ex
from .errors import BadIndex, ValidationError, WrongCopula, ZeroFailureProbability, ZeroSurvival
from .quadrature import integrate_halfline, integrate_interval
from .dependence import IndependenceCopula
from .reliability import SystemModel, _mix, _reliability_nodes, component_w, is_independent

__all__ = [
    "ExpectationReport",
    "expected_failed_at_failure",
    "expected_failed_at_failure_indep",
    "expected_failures_by_tau_given_survival",
    "expected_failures_by_tau_given_survival_indep",
    "expected_failed_at_failure_given_early_failure",
    "expected_failed_at_failure_given_early_failure_indep",
    "expectation_report",
    "DEGENERATE_PROB",
]

DEGENERATE_PROB = 1e-12


@dataclass(frozen=True)
class ExpectationReport:
    """Per-type expectations, optionally at a replacement age ``tau``."""

    failed_at_failure: tuple
    tau: float | None = None
    failures_given_survival: tuple | None = None
    failed_given_early_failure: tuple | None = None
    quadrature_errors: dict = field(default_factory=dict, compare=False)


def _check_type(model: SystemModel, i: int) -> int:
    if not (isinstance(i, (int, np.integer)) and 0 <= i < model.L):
        raise BadIndex(f"type index {i!r} outside 0..{model.L - 1}")
    return int(i)


def _check_tau(tau) -> float:
    if not (tau is not None and float(tau) > 0 and math.isfinite(float(tau))):
        raise ValidationError(f"tau must be a positive finite number, got {tau}")
    return float(tau)


def _is_parallel_block(model: SystemModel) -> bool:
    # a single parallel subsystem fails only once all of its components have
    return model.L == 1 and model.structure.is_series_parallel


def expected_failed_at_failure(model: SystemModel, i: int, *, return_error: bool = False):
    """``E(X_i(T))``.

    Integrates over ``t`` the density that a given type-``i`` component fails
    at ``t`` while the system is still working just before, times ``n_i``.

    Parameters
    ----------
    model : SystemModel
    i : int
        Component type, 0-based.
    return_error : bool
        Also return the quadrature error estimate.
    """
    i = _check_type(model, i)
    n_i = model.n[i]
    if _is_parallel_block(model):
        return (float(n_i), 0.0) if return_error else float(n_i)
    counts, coef = ex.failure_keys(model.structure, i)
    marg = model.marginals[i]

    def integrand(t):
        W = component_w(model, t)
        terms = model.copula.slot_term_counts(W, counts, i)
        return n_i * ex.compensated_dot(coef, terms) * marg.hazard(t)

    res = integrate_halfline(integrand, abs_tol=1e-10 * n_i, rel_tol=1e-9)
    value = min(max(res.value, 0.0), float(n_i))
    return (value, res.error) if return_error else value


def _binomial_factors(model, t, ns):
    out = []
    for marg, nk in zip(model.marginals, ns):
        R = marg.reliability(t)
        F = marg.cdf(t)
        l = np.arange(nk + 1)[:, None]
        binom = np.array([float(math.comb(nk, x)) for x in range(nk + 1)])[:, None]
        out.append(binom * R[None, :] ** l * F[None, :] ** (nk - l))
    return out


def _require_independent(model):
    if not is_independent(model.copula):
        raise WrongCopula("the product-form path requires independent components")


def expected_failed_at_failure_indep(model: SystemModel, i: int) -> float:
    """``E(X_i(T))`` for independent components (single product-form integral)."""
    _require_independent(model)
    i = _check_type(model, i)
    n_i = model.n[i]
    phi = model.structure.table
    shifted = np.take(phi, np.arange(1, n_i + 1), axis=i)
    ns = list(model.n)
    ns[i] -= 1
    marg = model.marginals[i]

    def integrand(t):
        return n_i * _mix(shifted, _binomial_factors(model, t, ns)) * marg.density(t)

    res = integrate_halfline(integrand, abs_tol=1e-10 * n_i, rel_tol=1e-9)
    return min(max(res.value, 0.0), float(n_i))


def _survival_at(model, tau):
    R = float(_reliability_nodes(model, np.array([tau]), None)[0])
    if R <= DEGENERATE_PROB:
        raise ZeroSurvival(f"system reliability at tau={tau} is {R:.3g}; conditioning on survival is undefined")
    return R


def expected_failures_by_tau_given_survival(model: SystemModel, i: int, tau: float) -> float:
    """``E(N_i(tau) | T > tau)``.

    Sums ``j_i * P(exactly j failed by tau, system up)`` over failure-count
    vectors ``j``; each joint probability is an inclusion-exclusion sum of
    copula values at ``F_k(tau)``. No integration is needed.

    Raises
    ------
    ZeroSurvival
        If ``P(T > tau)`` is numerically zero.
    """
    i = _check_type(model, i)
    tau = _check_tau(tau)
    t = np.array([tau])
    R = _survival_at(model, tau)
    if isinstance(model.copula, IndependenceCopula):
        num = _survivor_numerator_indep(model, i, t)
    else:
        counts, coef = ex.survivor_count_keys(model.structure, i)
        num = float(ex.compensated_dot(coef, model.copula.evaluate_counts(component_w(model, t), counts))[0])
    return min(max(num / R, 0.0), float(model.n[i]))


def _survivor_numerator_indep(model, i, t):
    phi = model.structure.table
    alive = np.indices(phi.shape)[i]
    return float(_mix(phi * (model.n[i] - alive), _binomial_factors(model, t, model.n))[0])


def expected_failures_by_tau_given_survival_indep(model: SystemModel, i: int, tau: float) -> float:
    """``E(N_i(tau) | T > tau)`` for independent components (binomial product form)."""
    _require_independent(model)
    i = _check_type(model, i)
    tau = _check_tau(tau)
    t = np.array([tau])
    R = float(_mix(model.structure.table, _binomial_factors(model, t, model.n))[0])
    if R <= DEGENERATE_PROB:
        raise ZeroSurvival(f"system reliability at tau={tau} is {R:.3g}; conditioning on survival is undefined")
    return min(max(_survivor_numerator_indep(model, i, t) / R, 0.0), float(model.n[i]))


def _early_w(model, s, tau):
    W_tau = component_w(model, np.array([tau]))
    W_s = component_w(model, s)
    return np.vstack([np.repeat(W_tau, len(s), axis=1), W_s])


def expected_failed_at_failure_given_early_failure(
    model: SystemModel, i: int, tau: float, *, include_fatal: bool = False, return_error: bool = False
):
    """``E(X_i(T) | T <= tau)``.

    Integrates over ``s`` in ``[0, tau]`` the density that a given type-``i``
    component fails at ``s`` and the system fails in ``(s, tau]``.

    Parameters
    ----------
    model : SystemModel
    i : int
        Component type, 0-based.
    tau : float
        Replacement age.
    include_fatal : bool
        If False (default), the system must still work right after the
        component fails, so the component whose failure stops the system is
        not counted. If True it is counted; this is the number of failed
        components found when the failed system is inspected.

    Raises
    ------
    ZeroFailureProbability
        If ``P(T <= tau)`` is numerically zero.
    """
    i = _check_type(model, i)
    tau = _check_tau(tau)
    n_i = model.n[i]
    R = float(_reliability_nodes(model, np.array([tau]), None)[0])
    F_T = 1.0 - R
    if F_T <= DEGENERATE_PROB:
        raise ZeroFailureProbability(f"P(T <= tau) at tau={tau} is {F_T:.3g}; conditioning is undefined")
    L = model.L
    marg = model.marginals[i]

    if isinstance(model.copula, IndependenceCopula):
        integrand = _early_integrand_indep(model, i, tau, include_fatal)
    else:
        counts, coef = ex.early_failure_keys(model.structure, i, include_fatal)

        def integrand(s):
            terms = model.copula.slot_term_counts(_early_w(model, s, tau), counts, L + i)
            return n_i * ex.compensated_dot(coef, terms) * marg.hazard(s)

    res = integrate_interval(integrand, 0.0, tau, abs_tol=1e-9 * n_i * F_T, rel_tol=1e-9)
    value = min(max(res.value / F_T, 0.0), float(n_i))
    return (value, res.error / F_T) if return_error else value


def expected_failed_at_failure_given_early_failure_indep(
    model: SystemModel, i: int, tau: float, *, include_fatal: bool = False
) -> float:
    """``E(X_i(T) | T <= tau)`` for independent components (product-form integrand)."""
    _require_independent(model)
    i = _check_type(model, i)
    tau = _check_tau(tau)
    R = float(_mix(model.structure.table, _binomial_factors(model, np.array([tau]), model.n))[0])
    F_T = 1.0 - R
    if F_T <= DEGENERATE_PROB:
        raise ZeroFailureProbability(f"P(T <= tau) at tau={tau} is {F_T:.3g}; conditioning is undefined")
    integrand = _early_integrand_indep(model, i, tau, include_fatal)
    res = integrate_interval(integrand, 0.0, tau, abs_tol=1e-9 * model.n[i] * F_T, rel_tol=1e-9)
    return min(max(res.value / F_T, 0.0), float(model.n[i]))


def _early_integrand_indep(model, i, tau, include_fatal):
    """Product-form integrand for independent components."""
    n_i = model.n[i]
    phi = model.structure.table
    ns = list(model.n)
    ns[i] -= 1
    start = 1 if include_fatal else 0
    phi_m = np.take(phi, np.arange(start, start + ns[i] + 1), axis=i)
    phi_l = np.take(phi, np.arange(0, ns[i] + 1), axis=i)
    L = model.L
    D = phi_m.reshape(phi_m.shape + (1,) * L) - phi_l.reshape((1,) * L + phi_l.shape)
    marg = model.marginals[i]
    R_tau = [float(m.reliability(tau)) for m in model.marginals]

    def integrand(s):
        operands = [D, list(range(2 * L))]
        for k, (mk, nk) in enumerate(zip(model.marginals, ns)):
            R_s = mk.reliability(s)
            F_s = mk.cdf(s)
            mid = np.maximum(R_s - R_tau[k], 0.0)
            m = np.arange(nk + 1)
            # factor[m, l, node] = C(nk, m) C(m, l) F(s)^(nk - m) (R(s) - R(tau))^(m - l) R(tau)^l
            fac = np.zeros((nk + 1, nk + 1, len(s)))
            for mm in m:
                for ll in range(mm + 1):
                    fac[mm, ll] = (
                        math.comb(nk, mm) * math.comb(mm, ll) * F_s ** (nk - mm) * mid ** (mm - ll) * R_tau[k] ** ll
                    )
            operands += [fac, [k, L + k, 2 * L]]
        return n_i * np.einsum(*operands, [2 * L], optimize=True) * marg.density(s)

    return integrand


def expectation_report(model: SystemModel, tau: float | None = None, *, include_fatal: bool = False) -> ExpectationReport:
    """All per-type expectations, with quadrature error estimates."""
    errors = {}
    fx = []
    for i in range(model.L):
        val, err = expected_failed_at_failure(model, i, return_error=True)
        fx.append(val)
        errors[f"failed_at_failure[{i}]"] = err
    if tau is None:
        return ExpectationReport(tuple(fx), quadrature_errors=errors)
    en = tuple(expected_failures_by_tau_given_survival(model, i, tau) for i in range(model.L))
    early = []
    for i in range(model.L):
        val, err = expected_failed_at_failure_given_early_failure(
            model, i, tau, include_fatal=include_fatal, return_error=True
        )
        early.append(val)
        errors[f"failed_given_early_failure[{i}]"] = err
    return ExpectationReport(tuple(fx), float(tau), en, tuple(early), errors)
