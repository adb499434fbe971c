"""Exact event-driven simulation of torus evolutionary games.

Dynamics: voter copying at rate 1 per site, payoff corrections at rate
w and mutation at rate mu.  Under Birth-Death a neighbor y replaces x
at rate p(x-y) psi(y) with fitness psi(y) = 1 + w S(y), where S(y) is
the kernel-weighted payoff of y against its own neighborhood.  Under
Death-Birth x dies at rate 1 and copies neighbor y with probability
proportional to p(x-y) psi(y); the exact quotient is simulated, not its
small-w expansion.  Mutation resets a site to a uniformly random
strategy (possibly the same one).

The event loop is uniformized: candidate events arrive at the constant
global rate N C with C = bmax + mu (Birth-Death, bmax = 1 + w max(0,
max G)) or 1 + mu (Death-Birth); a candidate picks a uniform site and
is thinned against the actual local rates.  The fitness field S is
maintained incrementally (a flip touches only the flipped site and its
neighbors), so thinning costs O(K) per candidate.  Between recording
times only the order of candidates matters, never their exact times, so
candidate counts per recording interval are drawn Poisson and the loop
runs log-free.

Raw event times are process time (voter events at rate 1 per site); the
sped-up clock of the weak-selection limit is applied downstream, never
here.
"""

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import NegativeRateError
from .games import GameMatrix
from .lattice import Kernel, TorusGeom, neighbor_table
from .rng import derive_state, generator_for, sm_uniform
from .rules import RULE_BD, RULE_DB, normalize_rule

_S_INIT = 201
_S_EVENTS = 202
_S_FIRST = 203
_S_CONTACT = 204


@dataclass(frozen=True)
class Initial:
    """Initial condition: product measure with the given density vector,
    an explicit assignment, or a single strategy everywhere."""

    kind: str  # "product" | "explicit" | "mono"
    u0: np.ndarray | None = None
    assignment: np.ndarray | None = None
    strategy: int = 0

    @classmethod
    def product(cls, u0) -> "Initial":
        v = np.asarray(u0, dtype=np.float64)
        if np.any(v < 0) or abs(v.sum() - 1.0) > 1e-9:
            raise ValueError(f"initial densities must lie on the simplex, got {v}")
        return cls(kind="product", u0=v)

    @classmethod
    def explicit(cls, assignment) -> "Initial":
        return cls(kind="explicit", assignment=np.asarray(assignment, dtype=np.uint8))

    @classmethod
    def mono(cls, strategy: int) -> "Initial":
        return cls(kind="mono", strategy=int(strategy))

    def to_jsonable(self):
        if self.kind == "product":
            return {"kind": "product", "u0": list(map(float, self.u0))}
        if self.kind == "mono":
            return {"kind": "mono", "strategy": self.strategy}
        return {"kind": "explicit", "assignment": self.assignment.tolist()}

    @classmethod
    def from_jsonable(cls, obj) -> "Initial":
        if obj["kind"] == "product":
            return cls.product(obj["u0"])
        if obj["kind"] == "mono":
            return cls.mono(obj["strategy"])
        return cls.explicit(obj["assignment"])


@dataclass(frozen=True)
class LatticeState:
    """Strategy assignment with maintained per-strategy counts."""

    assignment: np.ndarray
    strategy_counts: np.ndarray
    time: float

    @classmethod
    def from_assignment(cls, assignment, n: int, time: float = 0.0) -> "LatticeState":
        a = np.asarray(assignment, dtype=np.uint8)
        counts = np.bincount(a, minlength=n).astype(np.int64)
        return cls(assignment=a, strategy_counts=counts, time=time)

    def consistent(self) -> bool:
        n = self.strategy_counts.shape[0]
        return bool(
            np.array_equal(
                np.bincount(self.assignment, minlength=n).astype(np.int64),
                self.strategy_counts,
            )
        )


@dataclass(frozen=True)
class SimConfig:
    """Full description of one simulation run."""

    geometry: TorusGeom
    kernel: Kernel
    game: GameMatrix
    rule: str
    w: float
    mu: float
    t_end: float
    record_times: np.ndarray
    seed: int
    initial: Initial

    def __post_init__(self):
        object.__setattr__(self, "rule", normalize_rule(self.rule))
        rt = np.asarray(self.record_times, dtype=np.float64)
        object.__setattr__(self, "record_times", rt)
        if self.w < 0 or self.mu < 0:
            raise ValueError("w and mu must be nonnegative")
        if rt.size == 0 or np.any(rt < 0) or np.any(np.diff(rt) <= 0):
            raise ValueError("record_times must be nonempty and strictly increasing")
        if rt[-1] > self.t_end + 1e-12:
            raise ValueError("record_times exceed t_end")
        if self.kernel.d != self.geometry.d:
            raise ValueError("kernel and geometry dimensions differ")
        if self.geometry.L <= self.kernel.range:
            raise ValueError("side length must exceed the kernel range")
        gmax = float(np.max(np.abs(self.game.entries)))
        # all Birth-Death rates stay nonnegative under this bound
        if self.w > 0 and self.w * (self.game.n * gmax + 1.0) > 1.0:
            raise NegativeRateError(
                f"w={self.w} exceeds 1/(n max|G|+1)={1.0 / (self.game.n * gmax + 1.0):.3g}"
            )
        if self.initial.kind == "product" and self.initial.u0.shape != (self.game.n,):
            raise ValueError("u0 length must equal the strategy count")
        if self.initial.kind == "explicit":
            a = self.initial.assignment
            if a.shape != (self.geometry.N,):
                raise ValueError("explicit assignment must have N entries")
            if a.max(initial=0) >= self.game.n:
                raise ValueError("assignment uses unknown strategies")
        if self.initial.kind == "mono" and not 0 <= self.initial.strategy < self.game.n:
            raise ValueError("mono strategy index out of range")

    def to_jsonable(self) -> dict:
        return {
            "L": self.geometry.L,
            "d": self.geometry.d,
            "kernel": {
                "id": self.kernel.kernel_id(),
                "pairs": [
                    [list(map(int, self.kernel.offsets[k])), float(self.kernel.weights[k])]
                    for k in range(self.kernel.support_size)
                ],
            },
            "game": {"n": self.game.n, "rows": self.game.entries.tolist()},
            "rule": self.rule,
            "w": self.w,
            "mu": self.mu,
            "t_end": self.t_end,
            "record_times": self.record_times.tolist(),
            "seed": self.seed,
            "initial": self.initial.to_jsonable(),
        }

    def config_id(self) -> str:
        blob = json.dumps(self.to_jsonable(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class DensityTrajectory:
    """Recorded strategy counts over time for one run.

    densities are exact rationals counts/N evaluated in floating point.
    ever[s] marks whether strategy s was present at any event time.
    extinction_time (contact variant) is the first record time at which
    the occupied count was zero, an upper bound on the absorption time
    at record resolution.
    """

    times: np.ndarray
    counts: np.ndarray
    config_id: str
    seed: int
    N: int
    ever: np.ndarray | None = None
    extinction_time: float | None = None
    snapshots: dict | None = None

    @property
    def densities(self) -> np.ndarray:
        return self.counts / float(self.N)


def build_initial_assignment(config: SimConfig) -> np.ndarray:
    N = config.geometry.N
    init = config.initial
    if init.kind == "mono":
        return np.full(N, init.strategy, dtype=np.uint8)
    if init.kind == "explicit":
        return init.assignment.copy()
    # product measure: one uniform per site against the cumulative u0
    rng = generator_for(config.seed, _S_INIT)
    cum = np.cumsum(init.u0)
    cum[-1] = 1.0
    return np.searchsorted(cum, rng.random(N), side="right").astype(np.uint8)


def payoff_field(assign: np.ndarray, nbr: np.ndarray, pw: np.ndarray, Gm: np.ndarray):
    """S[x] = sum_k p_k G(xi(x), xi(x + z_k)), vectorized reference."""
    return np.einsum("k,xk->x", pw, Gm[assign[:, None], assign[nbr]])


@njit(cache=True, inline="always")
def _apply_flip(nbr, pw, pwm, Gm, assign, S, counts, ever, x, i, j):
    """Flip site x from strategy i to j; refresh S locally."""
    K = nbr.shape[1]
    counts[i] -= 1
    counts[j] += 1
    assign[x] = j
    ever[j] = 1
    acc = 0.0
    for k in range(K):
        acc += pw[k] * Gm[j, assign[nbr[x, k]]]
    S[x] = acc
    for k in range(K):
        y = nbr[x, k]
        S[y] += pwm[k] * (Gm[assign[y], j] - Gm[assign[y], i])


@njit(cache=True)
def _sim_chunks(
    nbr, pw, pwm, Gm, assign, S, counts, ever,
    rule_db, w, mu, C, bmax,
    n_ev, snap_slot, out_counts, out_snaps, state,
):
    """Run the candidate-event chain over recording intervals.

    n_ev[i] candidates in interval i; counts recorded at each interval
    end, assignment copied out where snap_slot >= 0.  Intervals after
    absorption (single strategy, mu = 0) are skipped: every further
    event would be a no-op.
    """
    N, K = nbr.shape
    n = counts.shape[0]
    T = n_ev.shape[0]
    psi = np.empty(K, dtype=np.float64)
    s = state
    for ti in range(T):
        absorbed = False
        if mu == 0.0:
            for q in range(n):
                if counts[q] == N:
                    absorbed = True
        if not absorbed:
            for _ in range(n_ev[ti]):
                s, u = sm_uniform(s)
                x = int(u * N)
                i = assign[x]
                s, u = sm_uniform(s)
                r = u * C
                if r < mu:
                    s, u = sm_uniform(s)
                    j = np.uint8(int(u * n))
                    if j != i:
                        _apply_flip(nbr, pw, pwm, Gm, assign, S, counts, ever, x, i, j)
                elif rule_db:
                    A = 0.0
                    for k in range(K):
                        psi[k] = pw[k] * (1.0 + w * S[nbr[x, k]])
                        A += psi[k]
                    s, u = sm_uniform(s)
                    tgt = u * A
                    acc = 0.0
                    ky = K - 1
                    for k in range(K):
                        acc += psi[k]
                        if tgt < acc:
                            ky = k
                            break
                    j = assign[nbr[x, ky]]
                    if j != i:
                        _apply_flip(nbr, pw, pwm, Gm, assign, S, counts, ever, x, i, j)
                else:
                    # accept and select the source in one draw:
                    # tgt beyond the psi prefix sum means rejection
                    s, u = sm_uniform(s)
                    tgt = u * bmax
                    acc = 0.0
                    ky = -1
                    for k in range(K):
                        acc += pw[k] * (1.0 + w * S[nbr[x, k]])
                        if tgt < acc:
                            ky = k
                            break
                    if ky >= 0:
                        j = assign[nbr[x, ky]]
                        if j != i:
                            _apply_flip(nbr, pw, pwm, Gm, assign, S, counts, ever, x, i, j)
        for q in range(n):
            out_counts[ti, q] = counts[q]
        if snap_slot[ti] >= 0:
            for xx in range(N):
                out_snaps[snap_slot[ti], xx] = assign[xx]
    return s


def _candidate_rate(config: SimConfig) -> tuple:
    gmax_pos = max(0.0, float(np.max(config.game.entries)))
    bmax = 1.0 + config.w * gmax_pos
    if config.rule == RULE_DB:
        return 1.0 + config.mu, bmax
    return bmax + config.mu, bmax


def run_sim(config: SimConfig, snapshot_times=None) -> DensityTrajectory:
    """One exact trajectory; density recorded at config.record_times.

    snapshot_times (a subset of record_times) additionally copy out the
    full assignment.  Fixed seed gives a bit-identical trajectory.
    """
    geom, kern = config.geometry, config.kernel
    nbr = neighbor_table(kern, geom)
    pw = kern.weights
    pwm = np.array(
        [kern.weight_of(-kern.offsets[k]) for k in range(kern.support_size)]
    )
    Gm = config.game.entries
    n = config.game.n

    assign = build_initial_assignment(config)
    counts = np.bincount(assign, minlength=n).astype(np.int64)
    S = payoff_field(assign, nbr, pw, Gm)
    ever = (counts > 0).astype(np.uint8)

    C, bmax = _candidate_rate(config)
    times = config.record_times
    deltas = np.diff(np.concatenate([[0.0], times]))
    rng = generator_for(config.seed, _S_EVENTS, 0)
    n_ev = rng.poisson(geom.N * C * deltas).astype(np.int64)

    snap_slot = np.full(times.size, -1, dtype=np.int64)
    if snapshot_times is not None:
        for si, st in enumerate(np.asarray(snapshot_times, dtype=np.float64)):
            hits = np.flatnonzero(np.isclose(times, st))
            if hits.size == 0:
                raise ValueError(f"snapshot time {st} is not a record time")
            snap_slot[hits[0]] = si
        out_snaps = np.empty((len(snapshot_times), geom.N), dtype=np.uint8)
    else:
        out_snaps = np.empty((0, geom.N), dtype=np.uint8)

    out_counts = np.empty((times.size, n), dtype=np.int64)
    _sim_chunks(
        nbr, pw, pwm, Gm, assign, S, counts, ever,
        config.rule == RULE_DB, config.w, config.mu, C, bmax,
        n_ev, snap_slot, out_counts, out_snaps,
        derive_state(config.seed, _S_EVENTS, 1),
    )
    snaps = None
    if snapshot_times is not None:
        snaps = {float(st): out_snaps[si] for si, st in enumerate(snapshot_times)}
    return DensityTrajectory(
        times=times,
        counts=out_counts,
        config_id=config.config_id(),
        seed=config.seed,
        N=geom.N,
        ever=ever,
        snapshots=snaps,
    )


def run_replicates(config: SimConfig, replicates: int) -> list:
    """Independent trajectories with seeds derived from (seed, index)."""
    out = []
    for rep in range(replicates):
        rep_seed = int(derive_state(config.seed, 1000, rep))
        cfg = SimConfig(
            geometry=config.geometry,
            kernel=config.kernel,
            game=config.game,
            rule=config.rule,
            w=config.w,
            mu=config.mu,
            t_end=config.t_end,
            record_times=config.record_times,
            seed=rep_seed,
            initial=config.initial,
        )
        out.append(run_sim(cfg))
    return out


def flip_rate(state: LatticeState, x: int, j: int, config: SimConfig) -> float:
    """Rate at which site x flips to strategy j, from the definitions.

    Birth-Death: f_j(x) + w sum over two-step pairs of payoffs; written
    as the literal double sum over neighbors y of x and neighbors z of
    y.  Death-Birth: the exact quotient r_j / sum_k r_k of the same
    numerators.  Mutation adds mu/n toward every strategy.  Independent
    of the event-loop machinery; used as the reference enumerator.
    """
    a = state.assignment
    i = a[x]
    if j == i:
        raise ValueError("flip target equals the current strategy")
    kern, geom = config.kernel, config.geometry
    nbr = neighbor_table(kern, geom)
    pw = kern.weights
    Gm = config.game.entries
    n = config.game.n

    def numerator(jj):
        total = 0.0
        for k in range(kern.support_size):
            y = nbr[x, k]
            if a[y] == jj:
                two_step = 0.0
                for m in range(kern.support_size):
                    two_step += pw[m] * Gm[jj, a[nbr[y, m]]]
                total += pw[k] * (1.0 + config.w * two_step)
        return total

    if config.rule == RULE_BD:
        rate = numerator(j)
    else:
        den = sum(numerator(q) for q in range(n))
        rate = numerator(j) / den
    rate += config.mu / n
    if rate < 0:
        raise NegativeRateError(f"rate {rate} at site {x} toward {j}")
    return float(rate)


def brute_force_rates(state: LatticeState, config: SimConfig) -> np.ndarray:
    """All single-site flip rates r[x, j] (0 on the diagonal strategy)."""
    N = config.geometry.N
    n = config.game.n
    rates = np.zeros((N, n))
    for x in range(N):
        for j in range(n):
            if j != state.assignment[x]:
                rates[x, j] = flip_rate(state, x, j, config)
    return rates


@njit(cache=True)
def _first_flip(
    nbr, pw, pwm, Gm, assign, S, counts, ever,
    rule_db, w, mu, C, bmax, max_cand, state,
):
    """Run candidates until the first real strategy change.

    Returns (site, new strategy) or (-1, -1) if none within max_cand.
    Mutates the passed state arrays.
    """
    N, K = nbr.shape
    n = counts.shape[0]
    psi = np.empty(K, dtype=np.float64)
    s = state
    for _ in range(max_cand):
        s, u = sm_uniform(s)
        x = int(u * N)
        i = assign[x]
        s, u = sm_uniform(s)
        r = u * C
        if r < mu:
            s, u = sm_uniform(s)
            j = np.uint8(int(u * n))
            if j != i:
                return x, int(j)
        elif rule_db:
            A = 0.0
            for k in range(K):
                psi[k] = pw[k] * (1.0 + w * S[nbr[x, k]])
                A += psi[k]
            s, u = sm_uniform(s)
            tgt = u * A
            acc = 0.0
            ky = K - 1
            for k in range(K):
                acc += psi[k]
                if tgt < acc:
                    ky = k
                    break
            j = assign[nbr[x, ky]]
            if j != i:
                return x, int(j)
        else:
            s, u = sm_uniform(s)
            tgt = u * bmax
            acc = 0.0
            ky = -1
            for k in range(K):
                acc += pw[k] * (1.0 + w * S[nbr[x, k]])
                if tgt < acc:
                    ky = k
                    break
            if ky >= 0:
                j = assign[nbr[x, ky]]
                if j != i:
                    return x, int(j)
    return -1, -1


def sample_first_flips(config: SimConfig, replicates: int, max_cand: int = 10**7):
    """Empirical distribution of the first strategy change from the
    configured initial state; (N, n) counts over (site, new strategy).

    The first change is distributed as rate(x, j) normalized over all
    admissible flips, which criterion tests compare against the
    brute-force enumerator.
    """
    geom, kern = config.geometry, config.kernel
    nbr = neighbor_table(kern, geom)
    pw = kern.weights
    pwm = np.array(
        [kern.weight_of(-kern.offsets[k]) for k in range(kern.support_size)]
    )
    Gm = config.game.entries
    n = config.game.n
    base_assign = build_initial_assignment(config)
    base_S = payoff_field(base_assign, nbr, pw, Gm)
    C, bmax = _candidate_rate(config)

    hits = np.zeros((geom.N, n), dtype=np.int64)
    for rep in range(replicates):
        assign = base_assign.copy()
        S = base_S.copy()
        counts = np.bincount(assign, minlength=n).astype(np.int64)
        ever = np.zeros(n, dtype=np.uint8)
        x, j = _first_flip(
            nbr, pw, pwm, Gm, assign, S, counts, ever,
            config.rule == RULE_DB, config.w, config.mu, C, bmax,
            max_cand, derive_state(config.seed, _S_FIRST, rep),
        )
        if x >= 0:
            hits[x, j] += 1
    return hits


@njit(cache=True)
def _contact_chunks(nbr, pw, assign, counts, w, lam, C, n_ev, out_counts, state):
    """Contact process with fast voting: voter copies at rate 1, deaths
    (1 -> 0) at rate w, births (0 -> 1) at rate w lam f_1.

    Returns the interval index at which occupancy was first seen
    extinct, or -1.
    """
    N, K = nbr.shape
    T = n_ev.shape[0]
    pb = w * max(1.0, lam)
    extinct_ti = -1
    s = state
    for ti in range(T):
        if counts[1] == 0:
            if extinct_ti < 0:
                extinct_ti = ti
            out_counts[ti, 0] = counts[0]
            out_counts[ti, 1] = counts[1]
            continue
        for _ in range(n_ev[ti]):
            s, u = sm_uniform(s)
            x = int(u * N)
            s, u = sm_uniform(s)
            r = u * C
            if r < 1.0:
                # voter copy from a kernel neighbor
                s, u = sm_uniform(s)
                acc = 0.0
                ky = K - 1
                for k in range(K):
                    acc += pw[k]
                    if u < acc:
                        ky = k
                        break
                j = assign[nbr[x, ky]]
                if j != assign[x]:
                    counts[assign[x]] -= 1
                    counts[j] += 1
                    assign[x] = j
            else:
                s, u = sm_uniform(s)
                if assign[x] == 1:
                    if u * pb < w:
                        assign[x] = 0
                        counts[1] -= 1
                        counts[0] += 1
                else:
                    f1 = 0.0
                    for k in range(K):
                        if assign[nbr[x, k]] == 1:
                            f1 += pw[k]
                    if u * pb < w * lam * f1:
                        assign[x] = 1
                        counts[0] -= 1
                        counts[1] += 1
            if counts[1] == 0:
                break
        out_counts[ti, 0] = counts[0]
        out_counts[ti, 1] = counts[1]
        if counts[1] == 0 and extinct_ti < 0:
            extinct_ti = ti
    return extinct_ti


def run_contact_fast_voting(
    geometry: TorusGeom,
    kernel: Kernel,
    lam: float,
    t_end: float,
    record_times,
    seed: int,
    w: float,
    u0: float = 0.5,
    initial=None,
) -> DensityTrajectory:
    """Two-state contact variant; records the density of occupied sites.

    Occupied sites (state 1) die at rate w, empty sites turn on at rate
    w lam f_1, voter copying runs at rate 1; the limiting drift is
    lam p(0|v1) u(1-u) - u on the clock t/w.  initial overrides the
    product-u0 start with an explicit 0/1 assignment.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if w < 0:
        raise ValueError("w must be nonnegative")
    times = np.asarray(record_times, dtype=np.float64)
    if times.size == 0 or np.any(np.diff(times) <= 0) or times[-1] > t_end + 1e-12:
        raise ValueError("record_times must be increasing and within t_end")
    nbr = neighbor_table(kernel, geometry)
    if initial is not None:
        assign = np.asarray(initial, dtype=np.uint8).copy()
        if assign.shape != (geometry.N,):
            raise ValueError("explicit contact initial must have N entries")
    else:
        rng = generator_for(seed, _S_CONTACT, 0)
        assign = (rng.random(geometry.N) < u0).astype(np.uint8)
    counts = np.bincount(assign, minlength=2).astype(np.int64)

    C = 1.0 + w * max(1.0, lam)
    deltas = np.diff(np.concatenate([[0.0], times]))
    rng = generator_for(seed, _S_CONTACT, 1)
    n_ev = rng.poisson(geometry.N * C * deltas).astype(np.int64)
    out_counts = np.empty((times.size, 2), dtype=np.int64)
    extinct_ti = _contact_chunks(
        nbr, kernel.weights, assign, counts, w, lam, C, n_ev, out_counts,
        derive_state(seed, _S_CONTACT, 2),
    )
    return DensityTrajectory(
        times=times,
        counts=out_counts,
        config_id=f"contact-{kernel.kernel_id()}-L{geometry.L}",
        seed=seed,
        N=geometry.N,
        extinction_time=float(times[extinct_ti]) if extinct_ti >= 0 else None,
    )


def voter_pair_statistic(config: SimConfig, offsets, t: float, replicates: int):
    """Disagreement frequencies P(xi_t(x) = 1, xi_t(x + z) = 0) averaged
    over sites and replicates, one value per requested offset z.

    Requires the pure voter setting (w = 0, mu = 0, two strategies,
    product start).  Returns (means, std_errors) arrays aligned with
    offsets.
    """
    if config.w != 0 or config.mu != 0:
        raise ValueError("voter statistic needs w = 0 and mu = 0")
    if config.game.n != 2:
        raise ValueError("voter statistic is a two-strategy quantity")
    if config.initial.kind != "product":
        raise ValueError("voter statistic assumes a product start")
    geom = config.geometry
    offs = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
    coords = geom.unravel(np.arange(geom.N))
    shift_idx = [geom.ravel(coords + z) for z in offs]

    vals = np.empty((replicates, offs.shape[0]))
    for rep in range(replicates):
        rep_seed = int(derive_state(config.seed, 1001, rep))
        cfg = SimConfig(
            geometry=geom,
            kernel=config.kernel,
            game=config.game,
            rule=config.rule,
            w=0.0,
            mu=0.0,
            t_end=t,
            record_times=np.array([t]),
            seed=rep_seed,
            initial=config.initial,
        )
        traj = run_sim(cfg, snapshot_times=[t])
        a = traj.snapshots[float(t)]
        one = a == 1
        zero = ~one
        for oi, idx in enumerate(shift_idx):
            vals[rep, oi] = np.mean(one & zero[idx])
    means = vals.mean(axis=0)
    ses = vals.std(axis=0, ddof=1) / np.sqrt(replicates) if replicates > 1 else np.zeros_like(means)
    return means, ses
