"""Command-line front end.

Every command reads one JSON specification::

    {"system": {...}, "copula": {...}, "marginals": [...],
     "costs": {"c": [...], "c_star": [...], "c_fixed": ..., "M": [...], "tau": ...},
     "run": {"t_grid": [...], "v": [...], "N": ..., "seed": ..., "tau_bracket": [lo, hi],
             "objective": ..., "options": {...}}}

``system.kind`` is one of ``table``, ``k_out_of_n``, ``series_parallel`` or
``paths``. Command-line flags override the ``run`` block.

Exit status: 0 on success, 2 on invalid input, 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .costs import CostModel, cost1, cost2
from .dependence import copula_from_config
from .errors import NumericalError, ParseError, ValidationError
from .marginals import marginal_from_config
from .optimizer import (
    enumerate_feasible,
    format_value,
    optimize_allocation,
    optimize_subsystem_sizes,
    optimize_tau,
)
from .oracle import SimulationConfig, simulate_cost1, simulate_cost2, simulate_mttf
from .reliability import SystemModel, mttf, redundant_reliability, system_reliability
from .structure import (
    SystemStructure,
    signature_from_paths,
    signature_k_out_of_n,
    signature_series_parallel,
    structure_from_json,
)

__all__ = ["RunSpec", "parse_spec", "build_structure", "run", "main"]

COMMANDS = (
    "reliability",
    "mttf",
    "cost1-grid",
    "cost2-grid",
    "cost3-grid",
    "cost4-grid",
    "optimize",
    "tau-opt",
    "simulate",
)
OPTION_KEYS = {"survivor_counts", "include_fatal", "singleton_rule"}


@dataclass
class RunSpec:
    model: SystemModel
    costs: CostModel | None = None
    t_grid: list = field(default_factory=list)
    v: tuple | None = None
    N: int = 100_000
    seed: int = 0
    tau_bracket: tuple | None = None
    objective: str | None = None
    options: dict = field(default_factory=dict)


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", path)
    if key not in obj:
        raise ValidationError(f"missing field '{key}'", path)
    return obj[key]


def _int_list(value, path) -> list:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ValidationError("expected a list of integers", path)
    return value


def build_structure(cfg: dict, path: str = "system") -> SystemStructure:
    """Structure from one of the four ``system`` forms."""
    kind = _get(cfg, "kind", path)
    try:
        if kind == "table":
            return structure_from_json(cfg, path)
        if kind == "k_out_of_n":
            return signature_k_out_of_n(_get(cfg, "k", path), _int_list(_get(cfg, "n", path), f"{path}.n"))
        if kind == "series_parallel":
            return signature_series_parallel(_int_list(_get(cfg, "n", path), f"{path}.n"))
        if kind == "paths":
            types = _get(cfg, "types", path)
            if not isinstance(types, dict):
                raise ValidationError("expected an object of label -> type", f"{path}.types")
            # JSON keys are strings; integer-looking labels become ints
            labels = {(int(k) if str(k).isdigit() else k): t for k, t in types.items()}
            paths = [[int(x) if isinstance(x, str) and x.isdigit() else x for x in p] for p in _get(cfg, "paths", path)]
            return signature_from_paths(
                _get(cfg, "L", path), _int_list(_get(cfg, "n", path), f"{path}.n"), labels, paths
            )
    except ValidationError as exc:
        if exc.path:
            raise
        raise type(exc)(str(exc), path) from None
    raise ValidationError(
        f"unknown kind {kind!r}; expected table, k_out_of_n, series_parallel or paths", f"{path}.kind"
    )


def _costs(cfg, L) -> CostModel:
    for key in ("c", "c_star", "c_fixed", "M"):
        _get(cfg, key, "costs")
    for key in ("c", "c_star", "M"):
        if not isinstance(cfg[key], list) or len(cfg[key]) != L:
            raise ValidationError(f"expected a list of {L} numbers", f"costs.{key}")
    return CostModel(cfg["c"], cfg["c_star"], cfg["c_fixed"], cfg["M"], cfg.get("tau"))


def parse_spec(source) -> RunSpec:
    """Validate a spec given as a path, a JSON string or a parsed dict.

    Raises
    ------
    ParseError
        Malformed JSON.
    ValidationError
        Any invalid field; ``path`` locates it.
    OSError
        Unreadable file.
    """
    if isinstance(source, dict):
        obj = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValidationError("top level must be an object", "$")

    structure = build_structure(_get(obj, "system", "$"))
    copula = copula_from_config(_get(obj, "copula", "$"))
    margs_cfg = _get(obj, "marginals", "$")
    if not isinstance(margs_cfg, list):
        raise ValidationError("expected a list", "marginals")
    if len(margs_cfg) != structure.L:
        raise ValidationError(f"{len(margs_cfg)} marginals given for {structure.L} component types", "marginals")
    margs = [marginal_from_config(m, f"marginals[{k}]") for k, m in enumerate(margs_cfg)]
    model = SystemModel(structure, copula, margs)
    costs = _costs(obj["costs"], structure.L) if "costs" in obj else None

    run_cfg = obj.get("run", {})
    if not isinstance(run_cfg, dict):
        raise ValidationError("expected an object", "run")
    spec = RunSpec(model, costs)
    if "t_grid" in run_cfg:
        spec.t_grid = [float(t) for t in run_cfg["t_grid"]]
    if "v" in run_cfg:
        v = _int_list(run_cfg["v"], "run.v")
        if len(v) != structure.L:
            raise ValidationError(f"expected {structure.L} entries", "run.v")
        spec.v = tuple(v)
    spec.N = int(run_cfg.get("N", spec.N))
    spec.seed = int(run_cfg.get("seed", spec.seed))
    if "tau_bracket" in run_cfg:
        lo, hi = run_cfg["tau_bracket"]
        spec.tau_bracket = (float(lo), float(hi))
    spec.objective = run_cfg.get("objective")
    options = run_cfg.get("options", {})
    unknown = set(options) - OPTION_KEYS
    if unknown:
        raise ValidationError(f"unknown options {sorted(unknown)}", "run.options")
    spec.options = dict(options)
    return spec


# -- commands -------------------------------------------------------------------


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _need_costs(spec):
    if spec.costs is None:
        raise ValidationError("this command needs a 'costs' block", "costs")
    return spec.costs


def _opts(spec, allowed):
    return {k: v for k, v in spec.options.items() if k in allowed}


def _v_labels(L, prefix="v"):
    return [f"{prefix}{k + 1}" for k in range(L)]


def run(spec: RunSpec, command: str, *, precision: int = 6, threads: int | None = None, quantity: str = "cost1") -> str:
    """Execute one command and return its output text."""
    fmt = lambda x: format_value(x, precision)  # noqa: E731
    model = spec.model
    L = model.L
    v = spec.v or (0,) * L

    if command == "reliability":
        if not spec.t_grid:
            raise ValidationError("no time grid; set run.t_grid or pass --t", "run.t_grid")
        rows = [[fmt(t), fmt(system_reliability(model, t)), fmt(redundant_reliability(model, v, t))] for t in spec.t_grid]
        return _csv(["t", "R_T", "R_TR"], rows)

    if command == "mttf":
        return _csv(_v_labels(L) + ["mttf"], [list(v) + [fmt(mttf(model, v))]])

    if command in ("cost1-grid", "cost2-grid"):
        objective = command.split("-")[0]
        opts = _opts(spec, {"survivor_counts", "include_fatal"}) if objective == "cost2" else {}
        res = optimize_allocation(model, _need_costs(spec), objective, threads=threads, **opts)
        return res.to_csv(precision)

    if command in ("cost3-grid", "cost4-grid"):
        objective = command.split("-")[0]
        opts = _opts(spec, {"survivor_counts", "singleton_rule", "include_fatal"}) if objective == "cost4" else {}
        res = optimize_subsystem_sizes(model, _need_costs(spec), objective, threads=threads, **opts)
        return res.to_csv(precision)

    if command == "optimize":
        objective = spec.objective or "cost1"
        cm = _need_costs(spec)
        if objective in ("cost1", "cost2"):
            opts = _opts(spec, {"survivor_counts", "include_fatal"}) if objective == "cost2" else {}
            res = optimize_allocation(model, cm, objective, threads=threads, **opts)
        else:
            opts = _opts(spec, {"survivor_counts", "singleton_rule", "include_fatal"}) if objective == "cost4" else {}
            res = optimize_subsystem_sizes(model, cm, objective, threads=threads, **opts)
        return res.to_json(precision)

    if command == "tau-opt":
        cm = _need_costs(spec)
        points = [spec.v] if spec.v is not None else enumerate_feasible(model.n, cm.M)
        opts = _opts(spec, {"survivor_counts", "include_fatal"})
        rows = []
        for p in points:
            r = optimize_tau(model, cm, p, spec.tau_bracket, **opts)
            rows.append(list(p) + [fmt(r.tau_star), fmt(r.value), int(r.at_endpoint)])
        return _csv(_v_labels(L) + ["tau", "cost2", "at_endpoint"], rows)

    if command == "simulate":
        config = SimulationConfig(N=spec.N, seed=spec.seed, threads=threads)
        if quantity == "cost1":
            est = simulate_cost1(model, _need_costs(spec), v, config)
        elif quantity == "cost2":
            cm = _need_costs(spec)
            if cm.tau is None:
                raise ValidationError("cost2 simulation needs costs.tau", "costs.tau")
            est = simulate_cost2(model, cm, v, cm.tau, config, include_fatal=spec.options.get("include_fatal", True))
        elif quantity == "mttf":
            est = simulate_mttf(model, config, v)
        else:
            raise ValidationError(f"unknown quantity {quantity!r}; expected cost1, cost2 or mttf", "quantity")
        out = {k: (float(fmt(x)) if isinstance(x, float) else x) for k, x in est.to_dict().items()}
        out["quantity"] = quantity
        return json.dumps(out, indent=2) + "\n"

    raise ValidationError(f"unknown command {command!r}")


def _parse_ints(text):
    return tuple(int(x) for x in text.split(","))


def _parse_floats(text):
    return [float(x) for x in text.split(",")]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="redundalloc", description="Redundancy allocation with dependent components.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="JSON specification file")
    p.add_argument("-o", "--out", help="write output here instead of stdout")
    p.add_argument("--precision", type=int, default=6, help="significant digits (default 6)")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: REDUNDALLOC_THREADS or 1)")
    p.add_argument("--v", type=_parse_ints, help="redundancy vector, e.g. 2,0")
    p.add_argument("--t", type=_parse_floats, help="time grid, e.g. 0.5,1,2")
    p.add_argument("--tau", type=float, help="replacement age")
    p.add_argument("--tau-bracket", type=_parse_floats, help="tau search bracket lo,hi")
    p.add_argument("--objective", choices=("cost1", "cost2", "cost3", "cost4"))
    p.add_argument("--quantity", choices=("cost1", "cost2", "mttf"), default="cost1", help="for simulate")
    p.add_argument("--N", type=int, help="simulation runs")
    p.add_argument("--seed", type=int, help="simulation seed")
    p.add_argument("--survivor-counts", choices=("per_type", "first_type"))
    p.add_argument("--include-fatal", action="store_true", default=None)
    p.add_argument("--singleton-rule", choices=("own_type", "all_types"))
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        spec = parse_spec(args.spec)
        if args.v is not None:
            if len(args.v) != spec.model.L:
                raise ValidationError(f"expected {spec.model.L} entries", "--v")
            spec.v = args.v
        if args.t is not None:
            spec.t_grid = args.t
        if args.tau is not None:
            if spec.costs is None:
                raise ValidationError("--tau needs a 'costs' block", "costs")
            c = spec.costs
            spec.costs = CostModel(c.c, c.c_star, c.c_fixed, c.M, args.tau)
        if args.tau_bracket is not None:
            if len(args.tau_bracket) != 2:
                raise ValidationError("expected lo,hi", "--tau-bracket")
            spec.tau_bracket = tuple(args.tau_bracket)
        if args.objective:
            spec.objective = args.objective
        if args.N is not None:
            spec.N = args.N
        if args.seed is not None:
            spec.seed = args.seed
        for key in ("survivor_counts", "include_fatal", "singleton_rule"):
            if getattr(args, key) is not None:
                spec.options[key] = getattr(args, key)
        text = run(spec, args.command, precision=args.precision, threads=args.threads, quantity=args.quantity)
    except (ValidationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
