"""System reliability, with and without active redundancy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _expansion as ex
from .dependence import GumbelCopula, IndependenceCopula, SurvivalCopula
from .errors import DivergenceSuspected, DivergentIntegral, NegativeTime, ValidationError, WrongCopula
from .marginals import Marginal
from .quadrature import integrate_halfline, integrate_interval
from .structure import SystemStructure

__all__ = [
    "SystemModel",
    "check_redundancy",
    "system_reliability",
    "system_reliability_indep",
    "redundant_reliability",
    "mttf",
    "expected_min_tau",
    "is_independent",
]


@dataclass(frozen=True)
class SystemModel:
    """A structure, a survival copula and one marginal per component type."""

    structure: SystemStructure
    copula: SurvivalCopula
    marginals: tuple

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        if len(self.marginals) != self.structure.L:
            raise ValidationError(
                f"{len(self.marginals)} marginals given for {self.structure.L} component types", "marginals"
            )
        if not all(isinstance(m, Marginal) for m in self.marginals):
            raise ValidationError("marginals must be Marginal instances", "marginals")

    @property
    def L(self) -> int:
        return self.structure.L

    @property
    def n(self) -> tuple:
        return self.structure.n

    def with_structure(self, structure: SystemStructure) -> "SystemModel":
        return SystemModel(structure, self.copula, self.marginals)


def is_independent(copula: SurvivalCopula) -> bool:
    return isinstance(copula, IndependenceCopula) or (isinstance(copula, GumbelCopula) and copula.alpha == 1.0)


def check_redundancy(model: SystemModel, v) -> tuple:
    if v is None:
        return (0,) * model.L
    v = tuple(int(x) for x in v)
    if len(v) != model.L or any(x < 0 for x in v):
        raise ValidationError(f"redundancy vector must have {model.L} nonnegative entries, got {v}")
    return v


def _times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise NegativeTime(f"time must be >= 0, got {t}")
    return arr


def component_w(model: SystemModel, t: np.ndarray, v=None) -> np.ndarray:
    """``-log`` of each type's (redundant) reliability, shape ``(L, len(t))``."""
    v = v or (0,) * model.L
    rows = []
    for marg, vk in zip(model.marginals, v):
        H = marg.cumulative_hazard(t)
        if vk:
            # a parallel block of vk + 1 i.i.d. units
            F = -np.expm1(-H)
            with np.errstate(divide="ignore"):
                H = -np.log1p(-(F ** (vk + 1)))
        rows.append(H)
    return np.vstack(rows)


def _reliability_nodes(model: SystemModel, t: np.ndarray, v) -> np.ndarray:
    counts, coef = ex.reliability_keys(model.structure)
    W = component_w(model, t, v)
    vals = ex.compensated_dot(coef, model.copula.evaluate_counts(W, counts))
    return np.clip(vals, 0.0, 1.0)


def _evaluate(fn, model, t, v):
    arr = _times(t)
    out = fn(model, np.atleast_1d(arr).ravel(), v).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def system_reliability(model: SystemModel, t):
    """Reliability of the system without redundancy.

    Parameters
    ----------
    model : SystemModel
    t : float or array_like
        Nonnegative times.

    Returns
    -------
    float or ndarray
        ``P(T > t)``, computed from the survival-signature mixture expanded
        into copula evaluations.
    """
    return _evaluate(_reliability_nodes, model, t, None)


def system_reliability_indep(model: SystemModel, t):
    """Reliability for independent components, as a binomial mixture.

    Raises
    ------
    WrongCopula
        If the model's copula is not the independence copula.
    """
    if not is_independent(model.copula):
        raise WrongCopula("system_reliability_indep requires independent components")

    def nodes(model, t, v):
        factors = []
        for marg, nk in zip(model.marginals, model.n):
            R = marg.reliability(t)
            F = marg.cdf(t)
            l = np.arange(nk + 1)[:, None]
            binom = np.array([float(math.comb(nk, x)) for x in range(nk + 1)])
            factors.append(binom[:, None] * R[None, :] ** l * F[None, :] ** (nk - l))
        return np.clip(_mix(model.structure.table, factors), 0.0, 1.0)

    return _evaluate(nodes, model, t, None)


def _mix(table: np.ndarray, factors) -> np.ndarray:
    """``sum_l table[l] prod_k factors[k][l_k, node]``."""
    L = table.ndim
    operands = [table, list(range(L))]
    for k, f in enumerate(factors):
        operands += [f, [k, L]]
    return np.einsum(*operands, [L], optimize=True)


def redundant_reliability(model: SystemModel, v, t):
    """Reliability after adding ``v_i`` active i.i.d. spares to each type-``i`` component.

    Each component becomes a parallel block, so its reliability becomes
    ``1 - F_i(t)**(v_i + 1)``; the blocks keep the original copula.
    """
    return _evaluate(_reliability_nodes, model, t, check_redundancy(model, v))


def mttf(model: SystemModel, v=None, rel_tol: float = 1e-8) -> float:
    """Mean lifetime of the (redundant) system.

    Raises
    ------
    DivergentIntegral
        If the reliability tail is too heavy for a finite mean.
    QuadratureFailure
        If the adaptive rule does not converge.
    """
    v = check_redundancy(model, v)
    try:
        res = integrate_halfline(lambda t: _reliability_nodes(model, t, v), abs_tol=1e-10, rel_tol=rel_tol)
    except DivergenceSuspected as exc:
        raise DivergentIntegral(f"system lifetime has no finite mean: {exc}") from None
    return res.value


def expected_min_tau(model: SystemModel, v, tau: float) -> float:
    """``E(min(tau, T_R))`` as the integral of the reliability over ``[0, tau]``."""
    if not tau > 0:
        raise ValidationError(f"tau must be > 0, got {tau}")
    v = check_redundancy(model, v)
    return integrate_interval(lambda t: _reliability_nodes(model, t, v), 0.0, float(tau), abs_tol=1e-10).value
