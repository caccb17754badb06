"""Monte Carlo reference for every closed-form quantity.

Component lifetimes are drawn from the copula by inverting each marginal's
cumulative hazard at ``w = -log U``. Spares are i.i.d. copies of their
original and independent of everything else (``spares="independent"``);
with ``spares="block_copula"`` the copula couples whole parallel blocks
instead, which is the law behind the closed-form redundant reliability.
The system dies at the first
failure epoch where ``phi`` of the working counts drops below a single
uniform drawn per run; for a 0/1 signature that is the usual structure
function, for a fractional one it samples the signature mixture.

Runs are generated in fixed-size chunks, each seeded from
``SeedSequence(seed, spawn_key=(chunk,))``, so estimates are bit-identical
whatever the number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .costs import CostModel, check_feasible_allocation
from .errors import ValidationError
from .optimizer import thread_count
from .reliability import SystemModel, check_redundancy

__all__ = [
    "SimulationConfig",
    "SimulationEstimate",
    "SimulationRuns",
    "sample_component_lifetimes",
    "simulate_system_lifetime",
    "simulate_runs",
    "simulate_reliability",
    "simulate_mttf",
    "simulate_expectations",
    "simulate_cost1",
    "simulate_cost2",
    "mean_estimate",
    "ratio_estimate",
]

CHUNK = 1 << 16
SPARE_MODES = ("independent", "block_copula")


@dataclass(frozen=True)
class SimulationConfig:
    """Sample size, master seed and optional ``v`` / ``tau`` defaults."""

    N: int = 100_000
    seed: int = 0
    v: tuple | None = None
    tau: float | None = None
    threads: int | None = None
    spares: str = "independent"

    def __post_init__(self):
        if self.spares not in SPARE_MODES:
            raise ValidationError(f"spares must be one of {SPARE_MODES}, got {self.spares!r}", "spares")
        if int(self.N) < 1:
            raise ValidationError(f"N must be >= 1, got {self.N}", "N")
        object.__setattr__(self, "N", int(self.N))
        if self.v is not None:
            object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        if self.tau is not None and not float(self.tau) > 0:
            raise ValidationError(f"tau must be > 0, got {self.tau}", "tau")


@dataclass(frozen=True)
class SimulationEstimate:
    mean: float
    stderr: float
    N: int
    seed: int | None = None

    def to_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "N": self.N, "seed": self.seed}

    def z(self, value: float) -> float:
        """Distance to ``value`` in standard errors."""
        if self.stderr == 0.0:
            return 0.0 if value == self.mean else math.inf
        return abs(self.mean - value) / self.stderr


def sample_component_lifetimes(model: SystemModel, rng: np.random.Generator, size: int | None = None) -> list:
    """One lifetime array per type, shape ``(size, n_i)`` (``(n_i,)`` if size is None).

    Slots are assigned type-blockwise: the first ``n_1`` copula coordinates
    go to type 1, and so on.
    """
    m = 1 if size is None else int(size)
    W = model.copula.sample_w(sum(model.n), rng, m)
    out, start = [], 0
    for marg, nk in zip(model.marginals, model.n):
        block = np.asarray(marg.inverse_cumulative_hazard(W[:, start : start + nk]), dtype=float)
        out.append(block[0] if size is None else block)
        start += nk
    return out


def _spare_lifetimes(model, v, rng, m) -> list:
    out = []
    for marg, nk, vk in zip(model.marginals, model.n, v):
        if vk:
            w = rng.standard_exponential((m, nk, vk))
            out.append(np.asarray(marg.inverse_cumulative_hazard(w), dtype=float))
        else:
            out.append(np.zeros((m, nk, 0)))
    return out


def _block_units(model, v, rng, m):
    """Unit lifetimes ``(m, n_i, v_i + 1)`` when the copula couples the blocks.

    Block maxima come from the copula with margins ``1 - F_i**(v_i + 1)``;
    the other units of a block are i.i.d. given that they fail earlier, and
    the last one sits at a uniformly random position. The system without
    spares is read off the same copula draw with the plain margins.
    """
    W = model.copula.sample_w(sum(model.n), rng, m)
    out, orig, start = [], [], 0
    for marg, nk, vk in zip(model.marginals, model.n, v):
        w = W[:, start : start + nk]
        start += nk
        orig.append(np.asarray(marg.inverse_cumulative_hazard(w), dtype=float))
        F_top = (-np.expm1(-w)) ** (1.0 / (vk + 1))
        top = marg.inverse_cumulative_hazard(-np.log1p(-F_top))
        units = np.empty((m, nk, vk + 1))
        units[:, :, 0] = top
        if vk:
            Fo = F_top[:, :, None] * (1.0 - rng.random((m, nk, vk)))
            units[:, :, 1:] = marg.inverse_cumulative_hazard(-np.log1p(-Fo))
            pos = rng.integers(0, vk + 1, (m, nk))
            rows, cols = np.indices((m, nk))
            units[:, :, 0], units[rows, cols, pos] = units[rows, cols, pos], top
        out.append(units)
    return out, orig


def _death(table: np.ndarray, n: tuple, times: np.ndarray, types: np.ndarray, u: np.ndarray):
    """First failure epoch where ``phi`` of the working counts drops below ``u``.

    ``times`` is ``(m, n_tot)`` with slot types ``types``. Returns the death
    time and the index (into the slot axis) of the killing slot.
    """
    m, n_tot = times.shape
    L = len(n)
    order = np.argsort(times, axis=1, kind="stable")
    sorted_types = types[order]
    working = np.empty((m, n_tot, L), dtype=np.int64)
    for k in range(L):
        working[:, :, k] = n[k] - np.cumsum(sorted_types == k, axis=1)
    flat = np.ravel_multi_index(tuple(working[:, :, k] for k in range(L)), table.shape)
    phi_path = table.ravel()[flat]
    idx = np.argmax(phi_path < u[:, None], axis=1)
    rows = np.arange(m)
    killer = order[rows, idx]
    return times[rows, killer], killer


@dataclass
class SimulationRuns:
    """Per-run outputs for one sample.

    Counts are per type, shape ``(N, L)``. ``*_red`` counts run over all
    ``n_i (v_i + 1)`` units of the redundant system at its death time
    ``T_R``; ``*_orig`` counts run over the ``n_i`` originals at the death
    time ``T`` of the system without spares (same draws). "strict" counts
    failures before the death time, "incl" includes the unit whose failure
    stops the system.
    """

    T: np.ndarray
    T_R: np.ndarray
    X_orig_strict: np.ndarray
    X_orig_incl: np.ndarray
    X_red_strict: np.ndarray
    X_red_incl: np.ndarray
    N_orig_tau: np.ndarray | None = None
    N_red_tau: np.ndarray | None = None


def _chunk(model: SystemModel, v: tuple, tau, seed: int, index: int, m: int, spares: str) -> SimulationRuns:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    if spares == "block_copula":
        units, orig = _block_units(model, v, rng, m)
    else:
        orig = sample_component_lifetimes(model, rng, m)
        extra = _spare_lifetimes(model, v, rng, m)
        units = [np.concatenate([o[:, :, None], s], axis=2) for o, s in zip(orig, extra)]
    u = 1.0 - rng.random(m)  # in (0, 1]
    types = np.repeat(np.arange(model.L), model.n)
    table = model.structure.table
    t_orig = np.concatenate(orig, axis=1)
    blocks = np.concatenate([b.max(axis=2) for b in units], axis=1)
    T, _ = _death(table, model.n, t_orig, types, u)
    T_R, _ = _death(table, model.n, blocks, types, u)

    def counts(arrays, when, strict):
        cmp = np.less if strict else np.less_equal
        return np.stack(
            [cmp(a.reshape(m, -1), when[:, None]).sum(axis=1) for a in arrays], axis=1
        )

    runs = SimulationRuns(
        T=T,
        T_R=T_R,
        X_orig_strict=counts(orig, T, True),
        X_orig_incl=counts(orig, T, False),
        X_red_strict=counts(units, T_R, True),
        X_red_incl=counts(units, T_R, False),
    )
    if tau is not None:
        at = np.full(m, float(tau))
        runs.N_orig_tau = counts(orig, at, False)
        runs.N_red_tau = counts(units, at, False)
    return runs


def simulate_runs(model: SystemModel, config: SimulationConfig, v=None, tau=None) -> SimulationRuns:
    """Simulate ``config.N`` renewal cycles and return the per-run arrays."""
    v = check_redundancy(model, v if v is not None else config.v)
    tau = tau if tau is not None else config.tau
    sizes = [CHUNK] * (config.N // CHUNK) + ([config.N % CHUNK] if config.N % CHUNK else [])
    jobs = list(enumerate(sizes))
    workers = min(thread_count(config.threads), len(jobs))
    if workers == 1:
        parts = [_chunk(model, v, tau, config.seed, k, m, config.spares) for k, m in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _chunk(model, v, tau, config.seed, *job, config.spares), jobs))
    fields = SimulationRuns.__dataclass_fields__
    merged = {}
    for name in fields:
        chunks = [getattr(p, name) for p in parts]
        merged[name] = None if chunks[0] is None else np.concatenate(chunks)
    return SimulationRuns(**merged)


def simulate_system_lifetime(model: SystemModel, v=None, rng: np.random.Generator | None = None, size=None):
    """System lifetime(s) with ``v_i`` active spares per type-``i`` component."""
    v = check_redundancy(model, v)
    rng = rng if rng is not None else np.random.default_rng()
    m = 1 if size is None else int(size)
    orig = sample_component_lifetimes(model, rng, m)
    spares = _spare_lifetimes(model, v, rng, m)
    u = 1.0 - rng.random(m)
    blocks = np.concatenate(
        [np.maximum(o, s.max(axis=2)) if s.shape[2] else o for o, s in zip(orig, spares)], axis=1
    )
    T, _ = _death(model.structure.table, model.n, blocks, np.repeat(np.arange(model.L), model.n), u)
    return float(T[0]) if size is None else T


# -- estimators ------------------------------------------------------------------


def mean_estimate(x: np.ndarray, seed=None) -> SimulationEstimate:
    x = np.asarray(x, dtype=float)
    n = len(x)
    se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return SimulationEstimate(float(x.mean()), se, n, seed)


def ratio_estimate(a: np.ndarray, b: np.ndarray, seed=None) -> SimulationEstimate:
    """``mean(a) / mean(b)`` with the delta-method standard error."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = len(a)
    ma, mb = a.mean(), b.mean()
    r = ma / mb
    if n < 2:
        return SimulationEstimate(float(r), math.inf, n, seed)
    cov = np.cov(a, b)
    var = (cov[0, 0] - 2.0 * r * cov[0, 1] + r * r * cov[1, 1]) / (n * mb * mb)
    return SimulationEstimate(float(r), float(math.sqrt(max(var, 0.0))), n, seed)


def simulate_reliability(model: SystemModel, t, config: SimulationConfig, v=None) -> list:
    """Empirical ``P(T_R > t)`` at each time in ``t``."""
    runs = simulate_runs(model, config, v)
    return [mean_estimate(runs.T_R > float(ti), config.seed) for ti in np.atleast_1d(t)]


def simulate_mttf(model: SystemModel, config: SimulationConfig, v=None) -> SimulationEstimate:
    return mean_estimate(simulate_runs(model, config, v).T_R, config.seed)


def simulate_expectations(model: SystemModel, tau: float, config: SimulationConfig) -> dict:
    """Estimates of the original system's expectations.

    Keys: ``mttf``, ``reliability_tau``, and per type ``i`` (0-based)
    ``failed_at_failure[i]`` (stopping unit included), ``survivors_failed[i]`` (failures by ``tau``
    given survival), ``early_strict[i]`` and ``early_inclusive[i]``
    (failed at the system failure given a failure by ``tau``).
    """
    runs = simulate_runs(model, config, (0,) * model.L, tau)
    alive = runs.T > tau
    dead = ~alive
    out = {"mttf": mean_estimate(runs.T, config.seed), "reliability_tau": mean_estimate(alive, config.seed)}
    for key in ("failed_at_failure", "survivors_failed", "early_strict", "early_inclusive"):
        out[key] = []
    for i in range(model.L):
        out["failed_at_failure"].append(mean_estimate(runs.X_orig_incl[:, i], config.seed))
        out["survivors_failed"].append(ratio_estimate(runs.N_orig_tau[:, i] * alive, alive, config.seed))
        out["early_strict"].append(ratio_estimate(runs.X_orig_strict[:, i] * dead, dead, config.seed))
        out["early_inclusive"].append(ratio_estimate(runs.X_orig_incl[:, i] * dead, dead, config.seed))
    return out


def _unit_totals(model, v):
    return np.array([nk * (vk + 1) for nk, vk in zip(model.n, v)], dtype=float)


def simulate_cost1(
    model: SystemModel,
    cost_model: CostModel,
    v,
    config: SimulationConfig,
    *,
    counting: str = "physical",
) -> SimulationEstimate:
    """Renewal-reward estimate of the failure-replacement cost rate.

    ``counting="physical"`` charges the units of the redundant system that
    have failed at its death (the stopping unit included). ``"scaled"``
    charges ``(v_i + 1)`` times the originals failed at the death of the
    system without spares, which is the accounting of the closed form;
    both use the redundant lifetime as cycle length.
    """
    v = check_feasible_allocation(model.n, cost_model.M, v)
    runs = simulate_runs(model, config, v)
    c, cs = np.array(cost_model.c), np.array(cost_model.c_star)
    total = _unit_totals(model, v)
    if counting == "physical":
        X = runs.X_red_incl
    elif counting == "scaled":
        X = runs.X_orig_incl * (np.array(v) + 1)
    else:
        raise ValidationError(f"counting must be 'physical' or 'scaled', got {counting!r}")
    cost = X @ (c - cs) + total @ cs + cost_model.c_fixed
    return ratio_estimate(cost, runs.T_R, config.seed)


def simulate_cost2(
    model: SystemModel,
    cost_model: CostModel,
    v,
    tau: float,
    config: SimulationConfig,
    *,
    include_fatal: bool = True,
) -> SimulationEstimate:
    """Renewal-reward estimate of the age-replacement cost rate.

    Failures are counted on the redundant system's units: at its death when
    that comes first (the stopping unit counted only with
    ``include_fatal``), else at ``tau``. Cycle length is ``min(tau, T_R)``.
    """
    v = check_feasible_allocation(model.n, cost_model.M, v)
    if not tau > 0:
        raise ValidationError(f"tau must be > 0, got {tau}", "tau")
    runs = simulate_runs(model, config, v, tau)
    c, cs = np.array(cost_model.c), np.array(cost_model.c_star)
    total = _unit_totals(model, v)
    failed = runs.T_R <= tau
    X = runs.X_red_incl if include_fatal else runs.X_red_strict
    counts = np.where(failed[:, None], X, runs.N_red_tau)
    cost = counts @ (c - cs) + total @ cs + cost_model.c_fixed * failed
    return ratio_estimate(cost, np.minimum(runs.T_R, tau), config.seed)
