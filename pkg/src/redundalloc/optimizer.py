"""Exhaustive search over redundancy vectors and subsystem sizes, and a
scalar search over the replacement age.

The instances are small (tens of grid points), so every feasible point is
evaluated; points are spread over a thread pool and gathered back in
lexicographic order, which keeps results independent of scheduling.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .costs import CostModel, cost1, cost2, cost3, cost4
from .errors import BracketError, EmptyGrid, RedundAllocError, ValidationError
from .quadrature import minimize_scalar
from .reliability import SystemModel

__all__ = [
    "AllocationResult",
    "TauResult",
    "enumerate_feasible",
    "enumerate_sizes",
    "optimize_allocation",
    "optimize_subsystem_sizes",
    "optimize_tau",
    "default_tau_bracket",
    "thread_count",
    "format_value",
]

ALLOCATION_OBJECTIVES = {"cost1": cost1, "cost2": cost2}
SIZING_OBJECTIVES = {"cost3": cost3, "cost4": cost4}
TAU_TOL = 1e-3


def format_value(x: float, precision: int = 6) -> str:
    return f"{x:.{precision}g}"


def thread_count(threads: int | None = None) -> int:
    """Explicit value, else ``REDUNDALLOC_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get("REDUNDALLOC_THREADS", "").strip()
        threads = int(env) if env else 1
    if threads < 1:
        raise ValidationError(f"thread count must be >= 1, got {threads}", "threads")
    return threads


@dataclass(frozen=True)
class AllocationResult:
    """Minimizer of an objective over a finite grid.

    ``grid`` holds every ``(vector, value)`` pair in lexicographic order;
    ties are broken towards the lexicographically smallest vector.
    """

    best: tuple
    best_value: float
    grid: tuple
    objective: str
    tau_used: float | None = None

    @property
    def label(self) -> str:
        return "n" if self.objective in SIZING_OBJECTIVES else "v"

    def to_dict(self) -> dict:
        out = {
            "objective": self.objective,
            "best": list(self.best),
            "value": self.best_value,
            "grid": [{self.label: list(vec), "value": val} for vec, val in self.grid],
        }
        if self.tau_used is not None:
            out["tau"] = self.tau_used
        return out

    def to_json(self, precision: int = 6) -> str:
        # floats go through %.6g so the output is stable across runs
        def fmt(obj):
            if isinstance(obj, float):
                return float(format_value(obj, precision))
            if isinstance(obj, dict):
                return {k: fmt(v) for k, v in obj.items()}
            if isinstance(obj, list):
                return [fmt(v) for v in obj]
            return obj

        return json.dumps(fmt(self.to_dict()), indent=2) + "\n"

    def to_csv(self, precision: int = 6) -> str:
        L = len(self.best)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow([f"{self.label}{k + 1}" for k in range(L)] + [self.objective])
        for vec, val in self.grid:
            w.writerow(list(vec) + [format_value(val, precision)])
        return buf.getvalue()


@dataclass(frozen=True)
class TauResult:
    tau_star: float
    value: float
    bracket: tuple
    tolerance: float
    at_endpoint: bool = False
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "tau": self.tau_star,
            "value": self.value,
            "bracket": list(self.bracket),
            "tolerance": self.tolerance,
            "at_endpoint": self.at_endpoint,
        }


def enumerate_feasible(n: Sequence[int], M: Sequence[int]) -> list:
    """All ``v`` with ``0 <= v_i <= M_i // n_i``, lexicographically ordered."""
    if len(n) != len(M):
        raise ValidationError(f"n and M lengths differ: {len(n)} vs {len(M)}")
    if any(int(k) < 1 for k in n) or any(int(m) < 0 for m in M):
        raise ValidationError(f"need n_i >= 1 and M_i >= 0, got n={tuple(n)}, M={tuple(M)}")
    return list(itertools.product(*[range(int(m) // int(k) + 1) for k, m in zip(n, M)]))


def enumerate_sizes(M: Sequence[int]) -> list:
    """All ``n`` with ``1 <= n_i <= M_i``, lexicographically ordered."""
    return list(itertools.product(*[range(1, int(m) + 1) for m in M]))


def _annotate(exc: RedundAllocError, label: str, vec) -> RedundAllocError:
    new = type(exc).__new__(type(exc))
    Exception.__init__(new, f"{label}={tuple(vec)}: {exc}")
    if hasattr(exc, "path"):
        new.path = exc.path
    return new


def _evaluate_grid(fn: Callable, points: list, label: str, threads: int | None) -> tuple:
    def one(vec):
        try:
            return fn(vec)
        except RedundAllocError as exc:
            raise _annotate(exc, label, vec) from exc

    workers = min(thread_count(threads), max(len(points), 1))
    if workers == 1:
        values = [one(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, points))
    return tuple(zip((tuple(p) for p in points), values))


def _reduce(grid: tuple, objective: str, tau) -> AllocationResult:
    if not grid:
        raise EmptyGrid("no feasible point to evaluate")
    # grid is already lexicographic, so min() keeps the first of any tie
    best, value = min(grid, key=lambda item: item[1])
    return AllocationResult(best, value, grid, objective, tau)


def optimize_allocation(
    model: SystemModel,
    cost_model: CostModel,
    objective: str = "cost1",
    tau: float | None = None,
    *,
    threads: int | None = None,
    **options,
) -> AllocationResult:
    """Minimize ``cost1`` or ``cost2`` over every feasible redundancy vector.

    Extra keyword options are passed through to the objective.
    """
    if objective not in ALLOCATION_OBJECTIVES:
        raise ValidationError(f"objective must be one of {sorted(ALLOCATION_OBJECTIVES)}, got {objective!r}")
    fn = ALLOCATION_OBJECTIVES[objective]
    if objective == "cost2":
        tau = cost_model.tau if tau is None else tau
        if tau is None:
            raise ValidationError("cost2 requires a replacement age tau", "costs.tau")
        call = lambda v: fn(model, cost_model, v, tau, **options)  # noqa: E731
    else:
        tau = None
        call = lambda v: fn(model, cost_model, v, **options)  # noqa: E731
    points = enumerate_feasible(model.n, cost_model.M)
    return _reduce(_evaluate_grid(call, points, "v", threads), objective, tau)


def optimize_subsystem_sizes(
    template: SystemModel,
    cost_model: CostModel,
    objective: str = "cost3",
    tau: float | None = None,
    *,
    threads: int | None = None,
    **options,
) -> AllocationResult:
    """Minimize ``cost3`` or ``cost4`` over all sizes ``1 <= n_i <= M_i``."""
    if objective not in SIZING_OBJECTIVES:
        raise ValidationError(f"objective must be one of {sorted(SIZING_OBJECTIVES)}, got {objective!r}")
    if cost_model.L != template.L:
        raise ValidationError(f"cost model has {cost_model.L} types but the system has {template.L}", "costs")
    fn = SIZING_OBJECTIVES[objective]
    if objective == "cost4":
        tau = cost_model.tau if tau is None else tau
        if tau is None:
            raise ValidationError("cost4 requires a replacement age tau", "costs.tau")
        call = lambda n: fn(template, cost_model, n, tau, **options)  # noqa: E731
    else:
        tau = None
        call = lambda n: fn(template, cost_model, n, **options)  # noqa: E731
    points = enumerate_sizes(cost_model.M)
    return _reduce(_evaluate_grid(call, points, "n", threads), objective, tau)


def default_tau_bracket(model: SystemModel) -> tuple:
    """``(1e-3, 5 * largest marginal mean)``."""
    means = [m.mean() for m in model.marginals]
    top = max(means)
    if not (math.isfinite(top) and top > 0):
        raise ValidationError("no finite marginal mean; pass an explicit tau bracket", "tau_bracket")
    return (1e-3, 5.0 * top)


def optimize_tau(
    model: SystemModel,
    cost_model: CostModel,
    v,
    bracket: tuple | None = None,
    *,
    objective: str = "cost2",
    tol: float = TAU_TOL,
    strict: bool = False,
    **options,
) -> TauResult:
    """Replacement age minimizing ``cost2`` (or ``cost4``) for fixed ``v``.

    For ``cost4`` the vector is the subsystem sizes. Golden-section search
    to width ``tol`` then one parabolic step.

    Raises
    ------
    BracketError
        Only with ``strict=True``, when the minimum sits on a bracket end
        (the objective is monotone over the bracket). Otherwise the endpoint
        is returned with ``at_endpoint`` set.
    """
    if objective == "cost2":
        f = lambda t: cost2(model, cost_model, v, t, **options)  # noqa: E731
    elif objective == "cost4":
        f = lambda t: cost4(model, cost_model, v, t, **options)  # noqa: E731
    else:
        raise ValidationError(f"tau search supports cost2 and cost4, got {objective!r}")
    lo, hi = bracket if bracket is not None else default_tau_bracket(model)
    if not 0 < lo < hi:
        raise ValidationError(f"need 0 < tau_lo < tau_hi, got ({lo}, {hi})", "tau_bracket")
    res = minimize_scalar(f, float(lo), float(hi), tol)
    if strict and res.at_endpoint:
        raise BracketError(f"objective is monotone on [{lo}, {hi}]; minimum at tau={res.x}")
    return TauResult(res.x, res.fun, (float(lo), float(hi)), tol, res.at_endpoint, res.iterations)
