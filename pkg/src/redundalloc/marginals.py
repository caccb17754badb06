"""Component lifetime models.

Every model exposes its reliability through the cumulative hazard
``H(t) = -log R(t)`` as well, because the copula code works on ``-log u``
to keep tails and values close to one accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadParameter, NegativeTime, OutOfRange, ValidationError

__all__ = [
    "Marginal",
    "Exponential",
    "Weibull",
    "ParetoLinear",
    "CustomMarginal",
    "reliability",
    "density",
    "quantile",
    "marginal_from_config",
    "marginal_to_config",
]


class Marginal:
    """Base class; subclasses provide vectorized hazard functions."""

    family = "custom"

    def cumulative_hazard(self, t):
        raise NotImplementedError

    def hazard(self, t):
        raise NotImplementedError

    def inverse_cumulative_hazard(self, w):
        raise NotImplementedError

    def reliability(self, t):
        return np.exp(-self.cumulative_hazard(t))

    def cdf(self, t):
        return -np.expm1(-self.cumulative_hazard(t))

    def density(self, t):
        return self.hazard(t) * self.reliability(t)

    def quantile(self, u):
        """Smallest ``t`` with ``R(t) <= u``."""
        return self.inverse_cumulative_hazard(-np.log(u))

    @property
    def has_finite_mean(self) -> bool:
        return True

    def mean(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Exponential(Marginal):
    """``R(t) = exp(-rate * t)``."""

    rate: float
    family = "exponential"

    def __post_init__(self):
        if not self.rate > 0:
            raise BadParameter(f"exponential rate must be > 0, got {self.rate}")

    def cumulative_hazard(self, t):
        return self.rate * np.asarray(t, dtype=float)

    def hazard(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.rate)

    def inverse_cumulative_hazard(self, w):
        return np.asarray(w, dtype=float) / self.rate

    def mean(self):
        return 1.0 / self.rate


@dataclass(frozen=True)
class Weibull(Marginal):
    """``R(t) = exp(-rate * t**shape)``."""

    shape: float
    rate: float
    family = "weibull"

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0):
            raise BadParameter(f"weibull needs shape > 0 and rate > 0, got {self.shape}, {self.rate}")

    def cumulative_hazard(self, t):
        return self.rate * np.power(np.asarray(t, dtype=float), self.shape)

    def hazard(self, t):
        t = np.asarray(t, dtype=float)
        return self.rate * self.shape * np.power(t, self.shape - 1.0)

    def inverse_cumulative_hazard(self, w):
        return np.power(np.asarray(w, dtype=float) / self.rate, 1.0 / self.shape)

    def mean(self):
        return math.gamma(1.0 + 1.0 / self.shape) * self.rate ** (-1.0 / self.shape)


@dataclass(frozen=True)
class ParetoLinear(Marginal):
    """``R(t) = (1 + rate * t) ** -exponent`` (Lomax)."""

    rate: float
    exponent: float
    family = "pareto_linear"

    def __post_init__(self):
        if not (self.rate > 0 and self.exponent > 0):
            raise BadParameter(
                f"pareto_linear needs rate > 0 and exponent > 0, got {self.rate}, {self.exponent}"
            )

    def cumulative_hazard(self, t):
        return self.exponent * np.log1p(self.rate * np.asarray(t, dtype=float))

    def hazard(self, t):
        return self.exponent * self.rate / (1.0 + self.rate * np.asarray(t, dtype=float))

    def inverse_cumulative_hazard(self, w):
        return np.expm1(np.asarray(w, dtype=float) / self.exponent) / self.rate

    @property
    def has_finite_mean(self):
        return self.exponent > 1.0

    def mean(self):
        if self.exponent <= 1.0:
            return math.inf
        return 1.0 / (self.rate * (self.exponent - 1.0))


@dataclass(frozen=True)
class CustomMarginal(Marginal):
    """User-supplied ``(reliability, density, quantile)`` triple.

    The callables must be vectorized over numpy arrays.
    """

    reliability_fn: Callable
    density_fn: Callable
    quantile_fn: Callable
    mean_value: float = math.nan

    def cumulative_hazard(self, t):
        return -np.log(self.reliability_fn(np.asarray(t, dtype=float)))

    def hazard(self, t):
        t = np.asarray(t, dtype=float)
        return self.density_fn(t) / self.reliability_fn(t)

    def inverse_cumulative_hazard(self, w):
        return self.quantile_fn(np.exp(-np.asarray(w, dtype=float)))

    def reliability(self, t):
        return self.reliability_fn(np.asarray(t, dtype=float))

    def density(self, t):
        return self.density_fn(np.asarray(t, dtype=float))

    def quantile(self, u):
        return self.quantile_fn(np.asarray(u, dtype=float))

    @property
    def has_finite_mean(self):
        return not math.isinf(self.mean_value)

    def mean(self):
        return self.mean_value


def _check_time(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise NegativeTime(f"time must be >= 0, got {t}")
    return arr


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def reliability(model: Marginal, t):
    """Survival probability ``R(t)``."""
    return _scalar(model.reliability(_check_time(t)))


def density(model: Marginal, t):
    """Lifetime density ``-dR/dt``."""
    return _scalar(model.density(_check_time(t)))


def quantile(model: Marginal, u):
    """Inverse of the reliability function on ``(0, 1]``."""
    arr = np.asarray(u, dtype=float)
    if np.any((arr <= 0) | (arr > 1)):
        raise OutOfRange(f"quantile level must lie in (0, 1], got {u}")
    return _scalar(model.quantile(arr))


_FAMILIES = {
    "exponential": (Exponential, ("rate",)),
    "weibull": (Weibull, ("shape", "rate")),
    "pareto_linear": (ParetoLinear, ("rate", "exponent")),
}


def marginal_from_config(cfg: dict, path: str = "marginal") -> Marginal:
    """Build a model from ``{"family": ..., "params": {...}}``."""
    if not isinstance(cfg, dict):
        raise ValidationError("expected an object", path)
    family = cfg.get("family")
    if family not in _FAMILIES:
        raise ValidationError(f"unknown family {family!r}; expected one of {sorted(_FAMILIES)}", f"{path}.family")
    cls, names = _FAMILIES[family]
    params = cfg.get("params", {})
    missing = [k for k in names if k not in params]
    if missing:
        raise ValidationError(f"missing parameters {missing}", f"{path}.params")
    extra = set(params) - set(names)
    if extra:
        raise ValidationError(f"unexpected parameters {sorted(extra)}", f"{path}.params")
    try:
        return cls(**{k: float(params[k]) for k in names})
    except BadParameter as exc:
        raise BadParameter(str(exc), f"{path}.params") from None


def marginal_to_config(model: Marginal) -> dict:
    if model.family not in _FAMILIES:
        raise ValidationError("custom marginals have no config form")
    _, names = _FAMILIES[model.family]
    return {"family": model.family, "params": {k: getattr(model, k) for k in names}}
