"""Mean cost rates for failure replacement and age replacement.

``cost1``/``cost2`` price a system whose components receive ``v_i`` active
spares; ``cost3``/``cost4`` price a series-parallel system with ``n_i``
components in subsystem ``i``. All four are renewal-reward ratios: expected
cycle cost over expected cycle length.

Expectations of the original system do not depend on ``v`` and are cached,
so sweeping a grid of ``v`` costs one reliability integral per point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DegenerateDenominator, DegenerateMTTF, Infeasible, NumericalError, ValidationError
from .expectations import (
    DEGENERATE_PROB,
    expected_failed_at_failure,
    expected_failed_at_failure_given_early_failure,
    expected_failures_by_tau_given_survival,
)
from .reliability import SystemModel, check_redundancy, expected_min_tau, mttf, redundant_reliability, system_reliability
from .structure import signature_series_parallel

__all__ = [
    "CostModel",
    "SURVIVOR_COUNT_MODES",
    "SINGLETON_RULES",
    "cost1",
    "cost2",
    "cost3",
    "cost4",
    "series_parallel_model",
    "check_feasible_allocation",
    "check_feasible_sizes",
]

SURVIVOR_COUNT_MODES = ("per_type", "first_type")
SINGLETON_RULES = ("own_type", "all_types")


@dataclass(frozen=True)
class CostModel:
    """Cost parameters.

    Parameters
    ----------
    c : sequence of float
        Replacement cost of each failed component, per type.
    c_star : sequence of float
        Refresh cost of each working component, per type (``c_star <= c``).
    c_fixed : float
        Fixed cost of a system failure.
    M : sequence of int
        Spare stock per type.
    tau : float, optional
        Replacement age used by ``cost2``/``cost4`` when none is passed.
    """

    c: tuple
    c_star: tuple
    c_fixed: float
    M: tuple
    tau: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(float(x) for x in self.c))
        object.__setattr__(self, "c_star", tuple(float(x) for x in self.c_star))
        object.__setattr__(self, "M", tuple(int(x) for x in self.M))
        object.__setattr__(self, "c_fixed", float(self.c_fixed))
        if not (len(self.c) == len(self.c_star) == len(self.M)):
            raise ValidationError("c, c_star and M must have one entry per type", "costs")
        for k, (ci, cs) in enumerate(zip(self.c, self.c_star)):
            if not cs >= 0:
                raise ValidationError(f"c_star[{k}] = {cs} must be >= 0", f"costs.c_star[{k}]")
            if not ci >= cs:
                raise ValidationError(f"requires c_i >= c*_i, got c[{k}]={ci} < c_star[{k}]={cs}", f"costs.c[{k}]")
        if not self.c_fixed >= 0:
            raise ValidationError(f"c_fixed must be >= 0, got {self.c_fixed}", "costs.c_fixed")
        if any(m < 0 for m in self.M):
            raise ValidationError(f"spare stocks must be >= 0, got {self.M}", "costs.M")
        if self.tau is not None:
            object.__setattr__(self, "tau", float(self.tau))
            if not (self.tau > 0 and math.isfinite(self.tau)):
                raise ValidationError(f"tau must be > 0, got {self.tau}", "costs.tau")

    @property
    def L(self) -> int:
        return len(self.c)

    def scaled(self, factor: float) -> "CostModel":
        return CostModel(
            tuple(factor * x for x in self.c),
            tuple(factor * x for x in self.c_star),
            factor * self.c_fixed,
            self.M,
            self.tau,
        )


def _check_dims(model: SystemModel, cm: CostModel):
    if cm.L != model.L:
        raise ValidationError(f"cost model has {cm.L} types but the system has {model.L}", "costs")


def check_feasible_allocation(n: Sequence[int], M: Sequence[int], v) -> tuple:
    v = tuple(int(x) for x in v)
    if len(v) != len(n) or any(x < 0 for x in v):
        raise Infeasible(f"redundancy vector {v} must have {len(n)} nonnegative entries")
    for k, (nk, mk, vk) in enumerate(zip(n, M, v)):
        if nk * vk > mk:
            raise Infeasible(f"v[{k}]={vk} needs {nk * vk} spares but only M[{k}]={mk} are available")
    return v


def check_feasible_sizes(M: Sequence[int], n_vec) -> tuple:
    n_vec = tuple(int(x) for x in n_vec)
    if len(n_vec) != len(M):
        raise Infeasible(f"size vector {n_vec} must have {len(M)} entries")
    for k, (nk, mk) in enumerate(zip(n_vec, M)):
        if not 1 <= nk <= mk:
            raise Infeasible(f"subsystem {k} size {nk} must lie in [1, M[{k}]={mk}]")
    return n_vec


def _tau(cm: CostModel, tau):
    tau = cm.tau if tau is None else tau
    if tau is None:
        raise ValidationError("a replacement age tau is required", "costs.tau")
    tau = float(tau)
    if not (tau > 0 and math.isfinite(tau)):
        raise ValidationError(f"tau must be > 0, got {tau}", "costs.tau")
    return tau


@lru_cache(maxsize=512)
def _failed_at_failure(model: SystemModel) -> tuple:
    return tuple(expected_failed_at_failure(model, i) for i in range(model.L))


@lru_cache(maxsize=4096)
def _mttf(model: SystemModel, v: tuple) -> float:
    return mttf(model, v)


@lru_cache(maxsize=4096)
def _tau_terms(model: SystemModel, tau: float, include_fatal: bool):
    """Conditional expectations of the original system at ``tau``.

    Either tuple is None when its conditioning event has probability zero.
    """
    R = system_reliability(model, tau)
    early = None
    if 1.0 - R > DEGENERATE_PROB:
        early = tuple(
            expected_failed_at_failure_given_early_failure(model, i, tau, include_fatal=include_fatal)
            for i in range(model.L)
        )
    surv = None
    if R > DEGENERATE_PROB:
        surv = tuple(expected_failures_by_tau_given_survival(model, i, tau) for i in range(model.L))
    return R, early, surv


def _ratio(num: float, den: float, err_cls, what: str) -> float:
    if not (den > 0 and math.isfinite(den)):
        raise err_cls(f"{what} is {den!r}")
    return num / den


def _failure_cost(cm, n, scale, failed) -> float:
    return sum(
        (cm.c[k] - cm.c_star[k]) * scale[k] * failed[k] + cm.c_star[k] * scale[k] * n[k] for k in range(len(n))
    )


def cost1(model: SystemModel, cost_model: CostModel, v) -> float:
    """Mean cost rate when the redundant system is renewed at failure.

    Each of the ``n_i (v_i + 1)`` type-``i`` units is replaced (``c_i``) if
    failed or refreshed (``c*_i``) otherwise, plus ``c**`` per failure. The
    expected number of failed units is taken as ``(v_i + 1) E(X_i(T))`` with
    ``T`` the lifetime of the system without spares.

    Raises
    ------
    Infeasible
        If ``n_i v_i > M_i`` for some type.
    DegenerateMTTF
        If the mean lifetime is zero or not finite.
    """
    _check_dims(model, cost_model)
    v = check_feasible_allocation(model.n, cost_model.M, v)
    scale = [vk + 1 for vk in v]
    num = _failure_cost(cost_model, model.n, scale, _failed_at_failure(model)) + cost_model.c_fixed
    try:
        den = _mttf(model, v)
    except NumericalError as exc:
        raise DegenerateMTTF(f"MTTF could not be computed for v={v}: {exc}") from exc
    return _ratio(num, den, DegenerateMTTF, f"MTTF for v={v}")


def _age_replacement(model, cm, v, tau, scale, n, early, surv, R_sys, den) -> float:
    """``[M1 P(fail by tau) + M2 P(survive tau)] / E(min(tau, lifetime))``."""
    total = 0.0
    if 1.0 - R_sys > 0.0:
        if early is None:
            if 1.0 - R_sys > DEGENERATE_PROB:
                raise DegenerateDenominator("missing conditional expectation at tau")
        else:
            m1 = _failure_cost(cm, n, scale, early) + cm.c_fixed
            total += m1 * (1.0 - R_sys)
    if R_sys > 0.0:
        if surv is None:
            if R_sys > DEGENERATE_PROB:
                raise DegenerateDenominator("missing conditional expectation at tau")
        else:
            m2 = _failure_cost(cm, n, scale, surv)
            total += m2 * R_sys
    return _ratio(total, den, DegenerateDenominator, f"E(min(tau, T)) at tau={tau}")


def _survivors(surv, mode):
    if surv is None or mode == "per_type":
        return surv
    if mode == "first_type":
        return tuple(surv[0] for _ in surv)
    raise ValidationError(f"survivor_counts must be one of {SURVIVOR_COUNT_MODES}, got {mode!r}")


def cost2(
    model: SystemModel,
    cost_model: CostModel,
    v,
    tau: float | None = None,
    *,
    include_fatal: bool = False,
    survivor_counts: str = "per_type",
) -> float:
    """Mean cost rate under age replacement at ``min(tau, T_R)``.

    Parameters
    ----------
    model, cost_model
        System and costs.
    v : sequence of int
        Spares per component of each type.
    tau : float, optional
        Replacement age; defaults to ``cost_model.tau``.
    include_fatal : bool
        Count the component whose failure stops the system among the failed
        ones on a failure renewal (see
        :func:`~redundalloc.expectations.expected_failed_at_failure_given_early_failure`).
    survivor_counts : {"per_type", "first_type"}
        ``"per_type"`` charges each type its own expected number of failures
        on a planned renewal. ``"first_type"`` charges every type with the
        first type's expectation; it exists only to regenerate reference
        tables that were computed that way.

    Raises
    ------
    Infeasible, DegenerateDenominator
    """
    _check_dims(model, cost_model)
    v = check_feasible_allocation(model.n, cost_model.M, v)
    tau = _tau(cost_model, tau)
    R_sys, early, surv = _tau_terms(model, tau, include_fatal)
    surv = _survivors(surv, survivor_counts)
    R_red = redundant_reliability(model, v, tau)
    den = expected_min_tau(model, v, tau)
    scale = [vk + 1 for vk in v]
    # weights use the redundant system, conditional means the original one
    total = 0.0
    if 1.0 - R_red > 0.0 and early is not None:
        total += (_failure_cost(cost_model, model.n, scale, early) + cost_model.c_fixed) * (1.0 - R_red)
    elif 1.0 - R_red > DEGENERATE_PROB:
        raise DegenerateDenominator(f"P(T <= tau) vanishes at tau={tau} but P(T_R <= tau) does not")
    if R_red > 0.0 and surv is not None:
        total += _failure_cost(cost_model, model.n, scale, surv) * R_red
    elif R_red > DEGENERATE_PROB:
        raise DegenerateDenominator(f"P(T > tau) vanishes at tau={tau} but P(T_R > tau) does not")
    return _ratio(total, den, DegenerateDenominator, f"E(min(tau, T_R)) at tau={tau}")


def series_parallel_model(template: SystemModel, n_vec) -> SystemModel:
    """Replace the template's structure by a series-parallel one with sizes ``n_vec``."""
    n_vec = tuple(int(x) for x in n_vec)
    if len(n_vec) != template.L:
        raise ValidationError(f"size vector {n_vec} must have {template.L} entries")
    return template.with_structure(signature_series_parallel(n_vec))


def cost3(model: SystemModel, cost_model: CostModel, n_vec=None) -> float:
    """Mean cost rate of a series-parallel system renewed at failure.

    Parameters
    ----------
    model : SystemModel
        Template supplying copula and marginals. Its structure is replaced by
        the series-parallel structure with sizes ``n_vec`` (default: its own
        ``n``, which must then be series-parallel).
    n_vec : sequence of int, optional
        Subsystem sizes, ``1 <= n_i <= M_i``.
    """
    _check_dims(model, cost_model)
    sp = _series_parallel(model, n_vec)
    n_vec = check_feasible_sizes(cost_model.M, sp.n)
    failed = _failed_at_failure(sp)
    num = (
        sum(cost_model.c[k] * failed[k] + cost_model.c_star[k] * (n_vec[k] - failed[k]) for k in range(sp.L))
        + cost_model.c_fixed
    )
    try:
        den = _mttf(sp, (0,) * sp.L)
    except NumericalError as exc:
        raise DegenerateMTTF(f"MTTF could not be computed for n={n_vec}: {exc}") from exc
    return _ratio(num, den, DegenerateMTTF, f"MTTF for n={n_vec}")


def _series_parallel(model, n_vec):
    if n_vec is None:
        if not model.structure.is_series_parallel:
            raise ValidationError("model structure is not series-parallel; pass n_vec")
        return model
    return series_parallel_model(model, n_vec)


def cost4(
    model: SystemModel,
    cost_model: CostModel,
    n_vec=None,
    tau: float | None = None,
    *,
    include_fatal: bool = False,
    survivor_counts: str = "per_type",
    singleton_rule: str = "own_type",
) -> float:
    """Mean cost rate of a series-parallel system under age replacement.

    Parameters
    ----------
    model, cost_model, n_vec
        As in :func:`cost3`.
    tau : float, optional
        Replacement age; defaults to ``cost_model.tau``.
    include_fatal, survivor_counts
        As in :func:`cost2`. With ``include_fatal=True`` the rate tends to
        :func:`cost3` as ``tau`` grows.
    singleton_rule : {"own_type", "all_types"}
        For a subsystem with a single component the expected number of
        failed components given a failure by ``tau`` is taken as
        ``F_i(tau) / P(T <= tau)``. ``"own_type"`` applies this to
        single-component subsystems only. ``"all_types"`` replaces every
        type's value by ``n_i F_i(tau) / P(T <= tau)`` as soon as one
        subsystem has a single component; it exists only to regenerate
        reference tables that were computed that way.
    """
    if singleton_rule not in SINGLETON_RULES:
        raise ValidationError(f"singleton_rule must be one of {SINGLETON_RULES}, got {singleton_rule!r}")
    _check_dims(model, cost_model)
    sp = _series_parallel(model, n_vec)
    n_vec = check_feasible_sizes(cost_model.M, sp.n)
    tau = _tau(cost_model, tau)
    R_sys, early, surv = _tau_terms(sp, tau, bool(include_fatal))
    surv = _survivors(surv, survivor_counts)
    if early is not None:
        by_tau = [n_vec[k] * float(sp.marginals[k].cdf(tau)) / (1.0 - R_sys) for k in range(sp.L)]
        if singleton_rule == "all_types" and min(n_vec) == 1:
            early = tuple(by_tau)
        else:
            early = tuple(by_tau[k] if n_vec[k] == 1 else early[k] for k in range(sp.L))
    den = expected_min_tau(sp, None, tau)
    return _age_replacement(sp, cost_model, None, tau, [1] * sp.L, n_vec, early, surv, R_sys, den)


def clear_caches():
    """Drop cached expectations (useful in long sessions with many models)."""
    _failed_at_failure.cache_clear()
    _mttf.cache_clear()
    _tau_terms.cache_clear()
