"""Pick the regime-2 game strength and horizon.

Sweeps the off-diagonal payoff of the symmetric hawk-dove game
G = [[0, s], [s, 0]] (interior attractor at 1/2) and reports the mean
sup-deviation from the ODE per lattice size, so the preset spec can fix
a strength with headroom against both the monotone-decrease check and
the absolute cap at the largest L.
"""

import json
import sys
import time

import numpy as np

from torus_games.games import GameMatrix, ReactionParams, reaction_callable
from torus_games.harness import process_horizon
from torus_games.lattice import TorusGeom, preset_kernel
from torus_games.limits import OdeSpec, integrate_ode
from torus_games.rng import derive_state
from torus_games.sim import Initial, SimConfig, run_replicates

P1, P2 = 0.2959, 0.1813  # early BD constants; final values via the coalesce CLI

def sweep(s, L_list, t_end, u0, reps, seed, exponent=2.5, n_rec=10):
    G = GameMatrix(np.array([[0.0, s], [s, 0.0]]))
    par = ReactionParams(rule="BD", p1=P1, p2=P2)
    f = reaction_callable(G, par)
    grid = np.linspace(0.0, t_end, n_rec + 1)[1:]
    ode = integrate_ode(OdeSpec(reaction=f, mu_over_w=0.0,
                                u0=np.array([u0, 1 - u0]), t_end=t_end))
    u_ode = ode.at(grid).T
    out = []
    for li, L in enumerate(L_list):
        w = float(L) ** (-exponent)
        cfg = SimConfig(
            geometry=TorusGeom(L=L, d=3),
            kernel=preset_kernel("nn", 3),
            game=G, rule="BD", w=w, mu=0.0,
            t_end=process_horizon(t_end, w),
            record_times=tuple(process_horizon(t, w) for t in grid),
            seed=int(derive_state(seed, 901, li)),
            initial=Initial.product(np.array([u0, 1 - u0])),
        )
        t0 = time.time()
        trajs = run_replicates(cfg, reps)
        devs = np.array([np.max(np.abs(tr.densities - u_ode)) for tr in trajs])
        out.append((L, float(devs.mean()),
                    float(devs.std(ddof=1) / np.sqrt(reps)), time.time() - t0))
    return out

if __name__ == "__main__":
    s_list = [float(x) for x in sys.argv[1].split(",")]
    seeds = [int(x) for x in sys.argv[2].split(",")] if len(sys.argv) > 2 else [0]
    reps = int(sys.argv[3]) if len(sys.argv) > 3 else 10
    t_end = float(sys.argv[4]) if len(sys.argv) > 4 else 0.5
    for s in s_list:
        for seed in seeds:
            rows = sweep(s, [12, 16, 20, 24], t_end, 0.35, reps, seed)
            mono = all(rows[i + 1][1] < rows[i][1] for i in range(len(rows) - 1))
            print(f"s={s:6.1f} seed={seed} T={t_end}  "
                  + "  ".join(f"L{L}:{m:.4f}+-{se:.4f}" for L, m, se, _ in rows)
                  + f"  mono={mono}  [{sum(r[3] for r in rows):.0f}s]")
