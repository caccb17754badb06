"""Exchangeable survival copulas.

Archimedean copulas are evaluated on ``w = -log u`` with the generator kept in
log form, so arguments near zero (long times) and near one (short times) stay
accurate, and a Clayton copula with a tiny parameter does not overflow.

Besides the scalar ``evaluate``/``partial`` interface, every copula offers a
count-based vectorized interface used by the reliability expansions: because
the copulas are exchangeable, ``C`` only depends on how many arguments take
each distinct value. ``W`` has one row per distinct value ("group") and one
column per time node, ``counts`` has one row per requested evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadParameter, BoundaryArgument, OutOfRange, ValidationError

__all__ = [
    "SurvivalCopula",
    "IndependenceCopula",
    "GumbelCopula",
    "ClaytonCopula",
    "CustomCopula",
    "copula_eval",
    "copula_partial",
    "copula_sample",
    "copula_from_config",
    "copula_to_config",
]

U_MIN = 1e-300
W_MAX = -math.log(U_MIN)


class SurvivalCopula:
    """Base class. Subclasses implement ``evaluate_counts`` and ``slot_term_counts``."""

    family = "custom"

    def evaluate_counts(self, W: np.ndarray, counts: np.ndarray) -> np.ndarray:
        """``C`` with ``counts[k, g]`` arguments equal to ``exp(-W[g])``.

        Returns an array of shape ``(len(counts), W.shape[1])``.
        """
        raise NotImplementedError

    def slot_term_counts(self, W: np.ndarray, counts: np.ndarray, slot: int) -> np.ndarray:
        """``u * dC/du`` for one extra argument ``u = exp(-W[slot])``.

        The derivative is taken with respect to that extra argument; the
        remaining arguments are given by ``counts`` as in ``evaluate_counts``.
        """
        raise NotImplementedError

    def sample_w(self, dim: int, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``-log U`` for ``size`` vectors ``U`` with distribution ``C``."""
        raise BadParameter(f"sampling is not available for the {self.family} copula")

    # scalar conveniences
    def evaluate(self, u) -> float:
        w = _to_w(u)
        return float(self.evaluate_counts(w[:, None], np.ones((1, len(w)), dtype=np.int64))[0, 0])

    def partial(self, u, k: int) -> float:
        arr = np.asarray(u, dtype=float)
        if not 0 <= k < arr.size:
            raise OutOfRange(f"argument index {k} outside 0..{arr.size - 1}")
        if arr[k] <= 0.0 or arr[k] >= 1.0:
            raise BoundaryArgument(f"derivative requested at boundary value u[{k}]={arr[k]}")
        w = _to_w(arr)
        counts = np.ones((1, len(w)), dtype=np.int64)
        counts[0, k] = 0
        return float(self.slot_term_counts(w[:, None], counts, k)[0, 0] / arr[k])


def _to_w(u) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(u, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise OutOfRange("copula arguments must be a nonempty 1-D sequence")
    if np.any(~(arr >= 0.0) | (arr > 1.0)):
        raise OutOfRange(f"copula arguments must lie in [0, 1], got {arr}")
    return -np.log(np.clip(arr, U_MIN, 1.0))


def _log_sum(log_phi: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """``log(sum_g counts[k, g] * exp(log_phi[g]))`` with a per-row shift."""
    K = counts.shape[0]
    N = log_phi.shape[1]
    shift = np.full((K, N), -np.inf)
    for g in range(counts.shape[1]):
        rows = counts[:, g] > 0
        if rows.any():
            shift[rows] = np.maximum(shift[rows], log_phi[g])
    finite = np.isfinite(shift)
    safe = np.where(finite, shift, 0.0)
    acc = np.zeros((K, N))
    for g in range(counts.shape[1]):
        rows = counts[:, g] > 0
        if rows.any():
            acc[rows] += counts[rows, g][:, None] * np.exp(log_phi[g] - safe[rows])
    with np.errstate(divide="ignore"):
        return np.where(finite, np.log(acc) + safe, -np.inf)


def _with_slot(counts: np.ndarray, slot: int) -> np.ndarray:
    out = np.array(counts, dtype=np.int64, copy=True)
    out[:, slot] += 1
    return out


class _Archimedean(SurvivalCopula):
    def _log_phi(self, W):
        raise NotImplementedError

    def _psi(self, log_s):
        raise NotImplementedError

    def _slot(self, log_s, w_slot, log_phi_slot):
        raise NotImplementedError

    def evaluate_counts(self, W, counts):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        counts = np.asarray(counts, dtype=np.int64)
        return self._psi(_log_sum(self._log_phi(W), counts))

    def slot_term_counts(self, W, counts, slot):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        log_phi = self._log_phi(W)
        log_s = _log_sum(log_phi, _with_slot(np.asarray(counts, dtype=np.int64), slot))
        return self._slot(log_s, W[slot][None, :], log_phi[slot][None, :])


@dataclass(frozen=True)
class GumbelCopula(_Archimedean):
    """``C(u) = exp(-(sum (-log u_k)**alpha)**(1/alpha))``, ``alpha >= 1``."""

    alpha: float
    family = "gumbel"

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 1.0):
            raise BadParameter(f"gumbel alpha must be >= 1, got {self.alpha}")

    def _log_phi(self, W):
        with np.errstate(divide="ignore"):
            return self.alpha * np.log(W)

    def _psi(self, log_s):
        return np.exp(-np.exp(log_s / self.alpha))

    def _slot(self, log_s, w_slot, log_phi_slot):
        # u dC/du = (S/phi_slot)**(1/alpha - 1) * exp(-S**(1/alpha))
        with np.errstate(invalid="ignore"):
            log_ratio = np.where(np.isfinite(log_phi_slot), log_s - log_phi_slot, np.inf)
            out = np.exp((1.0 / self.alpha - 1.0) * log_ratio - np.exp(log_s / self.alpha))
        if self.alpha == 1.0:
            out = np.exp(-np.exp(log_s))
        # all arguments equal to one
        return np.where(np.isneginf(log_s), 1.0, out)

    def sample_w(self, dim, rng, size):
        e = rng.standard_exponential((size, dim))
        if self.alpha == 1.0:
            return e
        a = 1.0 / self.alpha
        theta = rng.uniform(0.0, math.pi, size)
        e0 = rng.standard_exponential(size)
        # Chambers-Mallows-Stuck (Kanter) positive stable variate, Laplace transform exp(-s**a)
        log_v = (
            np.log(np.sin(a * theta))
            - np.log(np.sin(theta)) / a
            + (1.0 - a) / a * (np.log(np.sin((1.0 - a) * theta)) - np.log(e0))
        )
        return np.exp(a * (np.log(e) - log_v[:, None]))


@dataclass(frozen=True)
class ClaytonCopula(_Archimedean):
    """``C(u) = (sum u_k**(-1/alpha) - n + 1)**(-alpha)``, ``alpha > 0``.

    Larger ``alpha`` means weaker dependence; ``alpha -> 0`` tends to the
    comonotone copula and ``alpha -> inf`` to independence.
    """

    alpha: float
    family = "clayton"

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise BadParameter(f"clayton alpha must be > 0, got {self.alpha}")

    def _log_phi(self, W):
        x = W / self.alpha
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(x > 30.0, x + np.log1p(-np.exp(-x)), np.log(np.expm1(np.minimum(x, 30.0))))

    def _log1p_s(self, log_s):
        return np.logaddexp(0.0, log_s)

    def _psi(self, log_s):
        return np.exp(-self.alpha * self._log1p_s(log_s))

    def _slot(self, log_s, w_slot, log_phi_slot):
        # u dC/du = u**(-1/alpha) * (1 + S)**(-alpha - 1)
        return np.exp(w_slot / self.alpha - (self.alpha + 1.0) * self._log1p_s(log_s))

    def sample_w(self, dim, rng, size):
        e = rng.standard_exponential((size, dim))
        # gamma(alpha) frailty in log form: G(a) = G(a + 1) * U**(1/a)
        log_v = np.log(rng.standard_gamma(self.alpha + 1.0, size)) + np.log(rng.random(size)) / self.alpha
        return self.alpha * np.logaddexp(0.0, np.log(e) - log_v[:, None])


@dataclass(frozen=True)
class IndependenceCopula(SurvivalCopula):
    """Product copula."""

    family = "independence"

    @property
    def alpha(self):
        return None

    def evaluate_counts(self, W, counts):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        return np.exp(-(np.asarray(counts, dtype=float) @ W))

    def slot_term_counts(self, W, counts, slot):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        return np.exp(-(_with_slot(np.asarray(counts), slot).astype(float) @ W))

    def sample_w(self, dim, rng, size):
        return rng.standard_exponential((size, dim))


@dataclass(frozen=True)
class CustomCopula(SurvivalCopula):
    """Wrap a user function ``f(u: 1-D array) -> float``.

    The function must be an exchangeable survival copula. Derivatives use
    central differences with relative step ``1e-6``; evaluation loops in
    Python, so this is only suitable for small systems.
    """

    func: Callable
    name: str = "custom"
    family = "custom"

    def _args(self, W, row, node):
        return np.repeat(np.exp(-W[:, node]), row)

    def evaluate_counts(self, W, counts):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        counts = np.asarray(counts, dtype=np.int64)
        out = np.empty((counts.shape[0], W.shape[1]))
        for k, row in enumerate(counts):
            for j in range(W.shape[1]):
                u = self._args(W, row, j)
                out[k, j] = self.func(u) if u.size else 1.0
        return out

    def slot_term_counts(self, W, counts, slot):
        W = np.minimum(np.asarray(W, dtype=float), W_MAX)
        counts = np.asarray(counts, dtype=np.int64)
        out = np.empty((counts.shape[0], W.shape[1]))
        for k, row in enumerate(counts):
            for j in range(W.shape[1]):
                u0 = math.exp(-W[slot, j])
                rest = self._args(W, row, j)
                h = 1e-6 * u0
                hi, lo = min(u0 + h, 1.0), max(u0 - h, 0.0)
                d = (self.func(np.append(rest, hi)) - self.func(np.append(rest, lo))) / (hi - lo)
                out[k, j] = u0 * d
        return out


# -- module-level operations ---------------------------------------------------


def copula_eval(copula: SurvivalCopula, u) -> float:
    """Evaluate the copula at ``u``."""
    return copula.evaluate(u)


def copula_partial(copula: SurvivalCopula, u, k: int) -> float:
    """Partial derivative with respect to argument ``k`` (0-based)."""
    return copula.partial(u, k)


def copula_sample(copula: SurvivalCopula, dim: int, rng: np.random.Generator, size: int | None = None):
    """Sample uniforms whose joint distribution function is ``copula``.

    Returns shape ``(dim,)`` when ``size`` is None, else ``(size, dim)``.
    """
    if dim < 1:
        raise BadParameter(f"dim must be >= 1, got {dim}")
    w = copula.sample_w(dim, rng, 1 if size is None else size)
    u = np.exp(-w)
    return u[0] if size is None else u


_COPULAS = {"independence": IndependenceCopula, "gumbel": GumbelCopula, "clayton": ClaytonCopula}


def copula_from_config(cfg: dict, path: str = "copula") -> SurvivalCopula:
    """Build from ``{"family": ..., "alpha": ...}``."""
    if not isinstance(cfg, dict):
        raise ValidationError("expected an object", path)
    family = cfg.get("family")
    if family not in _COPULAS:
        raise ValidationError(f"unknown copula family {family!r}; expected one of {sorted(_COPULAS)}", f"{path}.family")
    if family == "independence":
        return IndependenceCopula()
    if "alpha" not in cfg:
        raise ValidationError("missing alpha", f"{path}.alpha")
    try:
        return _COPULAS[family](float(cfg["alpha"]))
    except BadParameter as exc:
        raise BadParameter(str(exc), f"{path}.alpha") from None


def copula_to_config(copula: SurvivalCopula) -> dict:
    if isinstance(copula, IndependenceCopula):
        return {"family": "independence"}
    if isinstance(copula, (GumbelCopula, ClaytonCopula)):
        return {"family": copula.family, "alpha": copula.alpha}
    raise ValidationError("custom copulas have no config form")
