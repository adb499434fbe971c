"""Command-line entry points.

torus-games  run a named experiment kind from a JSON spec file
coalesce     quick coalescence estimates for a kernel preset
simulate     replicated particle-system runs from a JSON run config
"""

import argparse
import json
import os
import sys

import numpy as np


def torus_games_main(argv=None):
    """torus-games <kind> --spec spec.json --out dir/ [--reps R --seed S]

    Exit code 0 iff every criterion in the resulting report passes.
    """
    from .harness import EXPERIMENT_KINDS, ExperimentSpec, run_experiment

    ap = argparse.ArgumentParser(
        prog="torus-games",
        description="run one experiment kind and write CSV tables, "
                    "summary.json, and manifest.json",
    )
    ap.add_argument("kind", choices=EXPERIMENT_KINDS)
    ap.add_argument("--spec", required=True, help="JSON experiment spec file")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--reps", type=float, default=None,
                    help="override replicate count")
    ap.add_argument("--seed", type=int, default=None, help="override seed")
    args = ap.parse_args(argv)

    spec = ExperimentSpec.from_json(
        args.spec, args.out,
        replicates=None if args.reps is None else int(args.reps),
        seed=args.seed,
    )
    if spec.kind != args.kind:
        print(f"spec file is kind {spec.kind!r}, not {args.kind!r}",
              file=sys.stderr)
        return 2
    report = run_experiment(spec)
    for c in report.criteria:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.comparison}")
    print(f"report written to {spec.output_dir}")
    return 0 if report.passed else 1


def coalesce_main(argv=None):
    """coalesce --kernel nn --d 3 --horizon 1e4 --reps 1e5 --seed S

    Prints the pair and three-walker constants for both update rules and
    writes them as JSON records when --out is given.
    """
    from .coalescence import (estimate_bd_probs, estimate_db_probs,
                              estimate_pair, estimate_record, kappa)
    from .lattice import load_kernel

    ap = argparse.ArgumentParser(
        prog="coalesce",
        description="Monte Carlo coalescing-walk constants for a kernel",
    )
    ap.add_argument("--kernel", default="nn",
                    help="preset name (nn, moore-1) or kernel JSON file")
    ap.add_argument("--d", type=int, default=3, help="lattice dimension")
    ap.add_argument("--horizon", type=float, default=1e4)
    ap.add_argument("--reps", type=float, default=1e5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="JSON output path")
    args = ap.parse_args(argv)

    kern = load_kernel(args.kernel, args.d)
    reps = int(args.reps)
    pair = estimate_pair(kern, args.horizon, reps, args.seed)
    bd = estimate_bd_probs(kern, args.horizon, reps, args.seed + 1)
    db = estimate_db_probs(kern, args.horizon, reps, args.seed + 2)
    kap = kappa(kern)

    print(f"kernel {kern.name} d={kern.d} support {kern.support_size} "
          f"kappa {kap!r}")
    print(f"pair non-coalescence  {pair.value:.5f} +- {pair.std_error:.5f} "
          f"(tail bound {pair.tail_bound:.2g})")
    print(f"BD p1 {bd.p1.value:.5f} +- {bd.p1.std_error:.5f}   "
          f"p2 {bd.p2.value:.5f} +- {bd.p2.std_error:.5f} "
          f"(identity {bd.p2.cross_check:.5f})")
    print(f"DB pbar1 {db.p1.value:.5f} +- {db.p1.std_error:.5f}   "
          f"pbar2 {db.p2.value:.5f} +- {db.p2.std_error:.5f} "
          f"(identity {db.p2.cross_check:.5f})")
    print(f"DB two-start pair {db.pair.value:.5f} +- {db.pair.std_error:.5f}")
    print(f"sigma_bd 1  sigma_db {(kap + 1) / (kap - 1)!r}")

    if args.out:
        records = [
            estimate_record("pair_noncoalescence", pair, kern, args.seed),
            estimate_record("bd_p1", bd.p1, kern, args.seed + 1),
            estimate_record("bd_p2", bd.p2, kern, args.seed + 1),
            estimate_record("db_pbar1", db.p1, kern, args.seed + 2),
            estimate_record("db_pbar2", db.p2, kern, args.seed + 2),
            estimate_record("db_pair_two_starts", db.pair, kern, args.seed + 2),
        ]
        from .coalescence import export_estimates
        export_estimates(args.out, records)
        print(f"records written to {args.out}")
    return 0


def simulate_main(argv=None):
    """simulate --config run.json --reps 20 --out dir/

    Runs replicated trajectories of one SimConfig and writes a CSV of
    recorded densities per replicate plus the echoed config.
    """
    from .games import GameMatrix
    from .lattice import TorusGeom, kernel_from_config
    from .sim import Initial, SimConfig, run_replicates

    ap = argparse.ArgumentParser(
        prog="simulate",
        description="replicated particle-system runs from a JSON config",
    )
    ap.add_argument("--config", required=True, help="JSON run config")
    ap.add_argument("--reps", type=float, default=1)
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--seed", type=int, default=None, help="override seed")
    args = ap.parse_args(argv)

    with open(args.config) as f:
        raw = json.load(f)
    geom = TorusGeom(L=int(raw["L"]), d=int(raw["d"]))
    cfg = SimConfig(
        geometry=geom,
        kernel=kernel_from_config(raw["kernel"]),
        game=GameMatrix.from_config(raw["game"]),
        rule=raw["rule"],
        w=float(raw["w"]),
        mu=float(raw.get("mu", 0.0)),
        t_end=float(raw["t_end"]),
        record_times=tuple(float(t) for t in raw["record_times"]),
        seed=int(args.seed if args.seed is not None else raw["seed"]),
        initial=Initial.from_jsonable(raw["initial"]),
    )
    trajs = run_replicates(cfg, int(args.reps))

    os.makedirs(args.out, exist_ok=True)
    n = cfg.game.n
    with open(os.path.join(args.out, "densities.csv"), "w", newline="\n") as f:
        f.write("rep,t_process," + ",".join(f"u_{k}" for k in range(n)) + "\n")
        for rep, tr in enumerate(trajs):
            for ti, t in enumerate(tr.times):
                f.write(f"{rep},{float(t)!r},"
                        + ",".join(repr(float(v)) for v in tr.densities[ti])
                        + "\n")
    with open(os.path.join(args.out, "config.json"), "w") as f:
        json.dump({**cfg.to_jsonable(), "replicates": int(args.reps),
                   "config_id": cfg.config_id()}, f, indent=2, sort_keys=True)
        f.write("\n")
    finals = np.array([tr.densities[-1] for tr in trajs])
    print(f"{len(trajs)} replicates, config {cfg.config_id()}")
    print("final density mean "
          + " ".join(f"{v:.4f}" for v in finals.mean(axis=0)))
    print(f"outputs in {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(torus_games_main())
