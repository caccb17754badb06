"""Monte Carlo cross-check of the closed forms for one bundled example.

Usage: python scripts/oracle_check.py example1 --v 2 0 --N 200000 --spares block_copula
"""

import argparse

from redundalloc import cost1, cost2
from redundalloc.examples import EXAMPLES, load_example
from redundalloc.oracle import SimulationConfig, mean_estimate, simulate_cost1, simulate_cost2, simulate_runs
from redundalloc.reliability import mttf, redundant_reliability


def main():
    p = argparse.ArgumentParser()
    p.add_argument("example", choices=EXAMPLES)
    p.add_argument("--v", type=int, nargs="+")
    p.add_argument("--tau", type=float)
    p.add_argument("--N", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spares", default="independent", choices=("independent", "block_copula"))
    p.add_argument("--counting", default="physical", choices=("physical", "scaled"))
    args = p.parse_args()

    spec = load_example(args.example)
    model, cm = spec.model, spec.costs
    v = tuple(args.v) if args.v else (0,) * model.L
    tau = args.tau or cm.tau or 1.0
    cfg = SimulationConfig(N=args.N, seed=args.seed, spares=args.spares)

    runs = simulate_runs(model, cfg, v)
    rows = [(f"R_TR({t:g})", mean_estimate(runs.T_R > t), redundant_reliability(model, v, t)) for t in (0.5 * tau, tau, 2 * tau)]
    rows.append(("MTTF", mean_estimate(runs.T_R), mttf(model, v)))
    rows.append(("Cost1", simulate_cost1(model, cm, v, cfg, counting=args.counting), cost1(model, cm, v)))
    rows.append(("Cost2", simulate_cost2(model, cm, v, tau, cfg), cost2(model, cm, v, tau)))
    print(f"{args.example} v={v} tau={tau} N={args.N} spares={args.spares} counting={args.counting}")
    for name, est, exact in rows:
        z = (est.mean - exact) / est.stderr if est.stderr else float("nan")
        print(f"{name:12s} mc {est.mean:10.5f} +- {est.stderr:.5f}   closed {exact:10.5f}   z {z:6.1f}")


if __name__ == "__main__":
    main()
