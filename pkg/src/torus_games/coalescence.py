"""Monte Carlo estimation of coalescing-random-walk probabilities.

The weak-selection reaction terms are parameterized by the chance that
two or three rate-1 coalescing walks started at kernel-displaced points
of Z^d never meet.  In d >= 3 these walks are transient, so the
never-meet events are estimated by truncating at a finite horizon; the
post-horizon correction is quantified (not applied) through tail_bound,
using the t^(1-d/2) decay of pair meetings after time t.  Estimated
values therefore overestimate non-coalescence slightly.

Also provides the torus-walk statistics: the full-occupancy census
(particle count decay) and single-walk total-variation mixing.

Time is measured in walk-time units (each walker jumps at rate 1).
Event times are realized by uniformization: candidate jumps arrive at
rate m for m walkers and are assigned to a uniformly chosen walker, so
candidate counts over the horizon are Poisson and the count landing in
the first half-window is Binomial(n, 1/2).  This avoids per-event
exponential draws without approximation.
"""

import json
import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import stats

from .errors import HorizonTooSmallWarning, RuleMismatchError
from .lattice import Kernel, TorusGeom, kappa, neighbor_table
from .rng import derive_state, generator_for, sm_uniform
from .rules import RULE_BD, RULE_DB, normalize_rule

# stream tags: keep Monte Carlo draws of different estimators disjoint
_S_PAIR = 101
_S_TRIPLE_BD = 102
_S_TRIPLE_DB = 103
_S_CENSUS = 104
_S_TV = 105
_S_PARTITION = 106
_S_OCC = 107


@dataclass(frozen=True)
class CoalescenceEstimate:
    """Bernoulli Monte Carlo estimate of a non-coalescence probability.

    value is the within-horizon frequency with no tail correction;
    tail_bound estimates the probability of a post-horizon coalescence
    (the amount by which value can overestimate).  cross_check, when
    set, is the same probability computed through the two-walker
    identity, with its own standard error.
    """

    value: float
    std_error: float
    replicates: int
    horizon: float
    tail_bound: float
    cross_check: float | None = None
    cross_check_se: float | None = None


@dataclass(frozen=True)
class TripleProbs:
    """Per-rule bundle (p1, p2, pair) of CoalescenceEstimates.

    Birth-Death: walkers at 0, v1, v1+v2; pair is p(0|v1).
    Death-Birth: walkers at v1, v2, v2+v3; pair is p(v1|v2).
    Iterates as the (p1, p2, pair) triple.
    """

    rule: str
    p1: CoalescenceEstimate
    p2: CoalescenceEstimate
    pair: CoalescenceEstimate

    def __iter__(self):
        return iter((self.p1, self.p2, self.pair))


@dataclass(frozen=True)
class CensusSeries:
    """Particle counts of the full-occupancy coalescing walk."""

    times: np.ndarray
    counts: np.ndarray
    geometry: TorusGeom


@dataclass(frozen=True)
class TvEstimate:
    """Empirical total-variation distance of a torus walk from uniform.

    raw carries the plug-in bias of an R-sample histogram; bias is the
    expected TV of an exactly-uniform sample of the same size (exact
    binomial mean absolute deviation), adjusted = max(raw - bias, 0).
    """

    t: float
    raw: float
    bias: float
    adjusted: float
    replicates: int


def _tail_factor(d: int) -> float:
    # sum of the t^(1-d/2) tail beyond T relative to the (T/2, T] window
    return 1.0 / (2.0 ** (d / 2.0 - 1.0) - 1.0)


def _bernoulli_se(freq: float, reps: int) -> float:
    return float(np.sqrt(freq * (1.0 - freq) / reps))


@njit(cache=True, inline="always")
def _draw_k(s, aprob, aidx, K):
    """Alias-table draw of a kernel offset row index."""
    s, u = sm_uniform(s)
    k = int(u * K)
    s, u = sm_uniform(s)
    if u >= aprob[k]:
        k = aidx[k]
    return s, k


@njit(cache=True)
def _derive_states(base, n):
    """Replicate streams: splitmix finalizer of base + r-th golden step."""
    out = np.empty(n, dtype=np.uint64)
    for r in range(n):
        z = base + np.uint64(0x9E3779B97F4A7C15) * (np.uint64(r) + np.uint64(1))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        out[r] = z ^ (z >> np.uint64(31))
    return out


def _replicate_setup(seed: int, stream: int, replicates: int, rate_horizon: float):
    """Candidate counts, half-window counts and walk streams per replicate."""
    rng = generator_for(seed, stream, 0)
    ncand = rng.poisson(rate_horizon, size=replicates).astype(np.int64)
    nhalf = rng.binomial(ncand, 0.5).astype(np.int64)
    states = _derive_states(derive_state(seed, stream, 1), replicates)
    return ncand, nhalf, states


@njit(cache=True)
def _pair_runs(offsets, aprob, aidx, start_draws, ncand, nhalf, states):
    """Two-walker non-coalescence via the rate-2 difference walk.

    Start is v1 (start_draws=1) or v1-v2 (start_draws=2), kernel draws.
    Returns per replicate: 0 never met, 1 met in [0, T/2], 2 met in
    (T/2, T].
    """
    R = ncand.shape[0]
    K = offsets.shape[0]
    d = offsets.shape[1]
    out = np.zeros(R, dtype=np.uint8)
    pos = np.empty(d, dtype=np.int64)
    for r in range(R):
        s = states[r]
        s, k = _draw_k(s, aprob, aidx, K)
        for i in range(d):
            pos[i] = offsets[k, i]
        if start_draws == 2:
            s, k = _draw_k(s, aprob, aidx, K)
            for i in range(d):
                pos[i] -= offsets[k, i]
        zero = True
        for i in range(d):
            if pos[i] != 0:
                zero = False
        if zero:
            out[r] = 1
            continue
        n = ncand[r]
        nh = nhalf[r]
        for step in range(1, n + 1):
            s, k = _draw_k(s, aprob, aidx, K)
            zero = True
            for i in range(d):
                pos[i] += offsets[k, i]
                if pos[i] != 0:
                    zero = False
            if zero:
                out[r] = 1 if step <= nh else 2
                break
    return out


@njit(cache=True)
def _triple_runs(offsets, aprob, aidx, db_mode, ncand, nhalf, states):
    """Three coalescing walkers, explicit simulation.

    db_mode False: starts 0, v1, v1+v2 (v1, v2 kernel draws).
    db_mode True: starts v1, v2, v2+v3.
    Returns (R, 2): partition code (0 separate, 1 {0,1}, 2 {0,2},
    3 {1,2}, 4 all merged) and a flag for any merge in (T/2, T].
    """
    R = ncand.shape[0]
    K = offsets.shape[0]
    d = offsets.shape[1]
    out = np.zeros((R, 2), dtype=np.uint8)
    pos = np.empty((3, d), dtype=np.int64)
    cls = np.empty(3, dtype=np.int64)
    alive = np.empty(3, dtype=np.uint8)
    for r in range(R):
        s = states[r]
        s, k1 = _draw_k(s, aprob, aidx, K)
        s, k2 = _draw_k(s, aprob, aidx, K)
        if db_mode:
            s, k3 = _draw_k(s, aprob, aidx, K)
            for i in range(d):
                pos[0, i] = offsets[k1, i]
                pos[1, i] = offsets[k2, i]
                pos[2, i] = offsets[k2, i] + offsets[k3, i]
        else:
            for i in range(d):
                pos[0, i] = 0
                pos[1, i] = offsets[k1, i]
                pos[2, i] = offsets[k1, i] + offsets[k2, i]
        for w in range(3):
            cls[w] = w
            alive[w] = 1
        n_alive = 3
        # coincidences at time 0 merge immediately
        for a in range(3):
            for b in range(a + 1, 3):
                if alive[a] == 1 and alive[b] == 1:
                    same = True
                    for i in range(d):
                        if pos[a, i] != pos[b, i]:
                            same = False
                    if same:
                        cb = cls[b]
                        for w in range(3):
                            if cls[w] == cb:
                                cls[w] = cls[a]
                        alive[b] = 0
                        n_alive -= 1
        n = ncand[r]
        nh = nhalf[r]
        late = 0
        if n_alive > 1:
            for c in range(1, n + 1):
                s, u = sm_uniform(s)
                w = int(u * 3.0)
                if alive[w] == 0:
                    continue
                s, k = _draw_k(s, aprob, aidx, K)
                for i in range(d):
                    pos[w, i] += offsets[k, i]
                hit = -1
                for v in range(3):
                    if v != w and alive[v] == 1:
                        same = True
                        for i in range(d):
                            if pos[v, i] != pos[w, i]:
                                same = False
                        if same:
                            hit = v
                if hit >= 0:
                    lo = min(w, hit)
                    hi = max(w, hit)
                    chi = cls[hi]
                    for v in range(3):
                        if cls[v] == chi:
                            cls[v] = cls[lo]
                    alive[hi] = 0
                    n_alive -= 1
                    if c > nh:
                        late = 1
                    if n_alive == 1:
                        break
        if cls[0] == cls[1] and cls[1] == cls[2]:
            out[r, 0] = 4
        elif cls[0] == cls[1]:
            out[r, 0] = 1
        elif cls[0] == cls[2]:
            out[r, 0] = 2
        elif cls[1] == cls[2]:
            out[r, 0] = 3
        out[r, 1] = late
    return out


@njit(cache=True)
def _multi_walk(offsets, aprob, aidx, pos0, ncand, state):
    """General m-walker coalescing run; returns class labels.

    Candidate jumps at rate m assigned uniformly; dead-walker picks are
    skipped (uniformization keeps each live walker at rate 1).  Labels
    are the least walker index of each class.
    """
    m = pos0.shape[0]
    d = pos0.shape[1]
    K = offsets.shape[0]
    pos = pos0.copy()
    cls = np.arange(m)
    alive = np.ones(m, dtype=np.uint8)
    n_alive = m
    for a in range(m):
        for b in range(a + 1, m):
            if alive[a] == 1 and alive[b] == 1:
                same = True
                for i in range(d):
                    if pos[a, i] != pos[b, i]:
                        same = False
                if same:
                    cb = cls[b]
                    for w in range(m):
                        if cls[w] == cb:
                            cls[w] = cls[a]
                    alive[b] = 0
                    n_alive -= 1
    s = state
    for _ in range(ncand):
        if n_alive <= 1:
            break
        s, u = sm_uniform(s)
        w = int(u * m)
        if alive[w] == 0:
            continue
        s, k = _draw_k(s, aprob, aidx, K)
        for i in range(d):
            pos[w, i] += offsets[k, i]
        hit = -1
        for v in range(m):
            if v != w and alive[v] == 1:
                same = True
                for i in range(d):
                    if pos[v, i] != pos[w, i]:
                        same = False
                if same:
                    hit = v
        if hit >= 0:
            lo = min(w, hit)
            hi = max(w, hit)
            chi = cls[hi]
            for v in range(m):
                if cls[v] == chi:
                    cls[v] = cls[lo]
            alive[hi] = 0
            n_alive -= 1
    return cls


def run_coalescing_walks(kernel: Kernel, initial_offsets, horizon: float, seed: int) -> np.ndarray:
    """Coalescing rate-1 walkers on Z^d from the given start points.

    Returns the partition at the horizon as an array of class labels,
    label = least walker index in the class.  Walkers merge permanently
    on meeting; a single walker returns the trivial partition.
    """
    pos0 = np.atleast_2d(np.asarray(initial_offsets, dtype=np.int64))
    if pos0.shape[1] != kernel.d:
        raise ValueError(f"offsets have dimension {pos0.shape[1]}, kernel d={kernel.d}")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    m = pos0.shape[0]
    if m == 1:
        return np.zeros(1, dtype=np.int64)
    rng = generator_for(seed, _S_PARTITION, 0)
    ncand = int(rng.poisson(m * horizon))
    state = derive_state(seed, _S_PARTITION, 1)
    return _multi_walk(kernel.offsets, kernel.alias_prob, kernel.alias_idx, pos0, ncand, state)


def estimate_pair(
    kernel: Kernel,
    horizon: float,
    replicates: int,
    seed: int,
    start_draws: int = 1,
    stream: int = _S_PAIR,
) -> CoalescenceEstimate:
    """Non-coalescence of two walkers at kernel-displaced starts.

    start_draws=1: walkers at 0 and v1, estimating p(0|v1).
    start_draws=2: walkers at v1 and v2, estimating p(v1|v2).
    """
    ncand, nhalf, states = _replicate_setup(seed, stream, replicates, 2.0 * horizon)
    out = _pair_runs(
        kernel.offsets, kernel.alias_prob, kernel.alias_idx, start_draws, ncand, nhalf, states
    )
    freq = float(np.mean(out == 0))
    tail = float(np.mean(out == 2)) * _tail_factor(kernel.d)
    est = CoalescenceEstimate(
        value=freq,
        std_error=_bernoulli_se(freq, replicates),
        replicates=replicates,
        horizon=horizon,
        tail_bound=tail,
    )
    _advise_horizon(est)
    return est


def _advise_horizon(est: CoalescenceEstimate):
    if est.tail_bound > 3.0 * est.std_error:
        warnings.warn(
            f"tail_bound {est.tail_bound:.3g} exceeds 3 x std_error "
            f"{est.std_error:.3g}; increase the horizon",
            HorizonTooSmallWarning,
        )


def _triple_estimates(
    kernel: Kernel, horizon: float, replicates: int, seed: int, rule: str
) -> TripleProbs:
    db = rule == RULE_DB
    stream = _S_TRIPLE_DB if db else _S_TRIPLE_BD
    ncand, nhalf, states = _replicate_setup(seed, stream, replicates, 3.0 * horizon)
    out = _triple_runs(
        kernel.offsets, kernel.alias_prob, kernel.alias_idx, db, ncand, nhalf, states
    )
    part = out[:, 0]
    tail = float(np.mean(out[:, 1])) * _tail_factor(kernel.d)
    f1 = float(np.mean(part == 0))
    f2 = float(np.mean(part == 3))  # the two game-side walkers merged, third clear

    pair = estimate_pair(kernel, horizon, replicates, seed, 2 if db else 1, _S_PAIR + stream)

    # identity cross-check: 2 p2 = pair - p1 (BD), 2 pbar2 = (1+1/kappa) pair - pbar1 (DB)
    a = (1.0 + 1.0 / kappa(kernel)) if db else 1.0
    ident = 0.5 * (a * pair.value - f1)
    ident_se = 0.5 * float(
        np.sqrt(f1 * (1.0 - f1) / replicates + (a * pair.std_error) ** 2)
    )

    p1 = CoalescenceEstimate(f1, _bernoulli_se(f1, replicates), replicates, horizon, tail)
    p2 = CoalescenceEstimate(
        f2,
        _bernoulli_se(f2, replicates),
        replicates,
        horizon,
        tail,
        cross_check=ident,
        cross_check_se=ident_se,
    )
    _advise_horizon(p1)
    return TripleProbs(rule=rule, p1=p1, p2=p2, pair=pair)


def estimate_bd_probs(kernel: Kernel, horizon: float, replicates: int, seed: int) -> TripleProbs:
    """Birth-Death coalescence probabilities (p1, p2, p(0|v1)).

    Per replicate v1, v2 are kernel draws; three walkers start at 0,
    v1, v1+v2.  p1 = no pair ever meets; p2 = the v1 and v1+v2 walkers
    merge and neither meets the 0 walker (direct count); p2.cross_check
    holds the identity value (p(0|v1) - p1)/2 from the independent
    two-walker run.
    """
    return _triple_estimates(kernel, horizon, replicates, seed, RULE_BD)


def estimate_db_probs(kernel: Kernel, horizon: float, replicates: int, seed: int) -> TripleProbs:
    """Death-Birth coalescence probabilities (pbar1, pbar2, p(v1|v2)).

    Walkers start at v1, v2, v2+v3 (i.i.d. kernel draws); pbar2 is
    cross-checked against ((1+1/kappa) p(v1|v2) - pbar1)/2.
    """
    return _triple_estimates(kernel, horizon, replicates, seed, RULE_DB)


def identity_residual(probs: TripleProbs, kernel: Kernel) -> tuple[float, float]:
    """(|residual|, combined SE) of the two-walker identity.

    residual = 2 p2_direct - (a pair - p1) with a = 1 for Birth-Death
    and 1 + 1/kappa for Death-Birth; the covariance of the disjoint
    same-run frequencies p1, p2 is included in the SE.
    """
    a = (1.0 + 1.0 / kappa(kernel)) if probs.rule == RULE_DB else 1.0
    f1, f2 = probs.p1.value, probs.p2.value
    R = probs.p1.replicates
    resid = 2.0 * f2 - (a * probs.pair.value - f1)
    var = (
        4.0 * f2 * (1.0 - f2) / R
        + f1 * (1.0 - f1) / R
        + 4.0 * f1 * f2 / R  # -2*2*cov(f2, f1), cov = -f1 f2 / R
        + (a * probs.pair.std_error) ** 2
    )
    return abs(resid), float(np.sqrt(var))


def tarnita_alphas(rule: str, bd: TripleProbs = None, db: TripleProbs = None, kernel: Kernel = None):
    """Coefficients (alpha1, alpha2, alpha3) of the selection condition.

    Birth-Death: (p1, p2, p2).  Death-Birth: (pbar1, pbar2,
    pbar2 - (1/kappa) p(v1|v2)), kappa from the kernel.
    """
    rule = normalize_rule(rule)
    if rule == RULE_BD:
        if bd is None or bd.rule != RULE_BD:
            raise RuleMismatchError("Birth-Death alphas need Birth-Death estimates")
        return (bd.p1.value, bd.p2.value, bd.p2.value)
    if db is None or db.rule != RULE_DB:
        raise RuleMismatchError("Death-Birth alphas need Death-Birth estimates")
    if kernel is None:
        raise RuleMismatchError("Death-Birth alphas need the kernel for kappa")
    k = kappa(kernel)
    return (db.p1.value, db.p2.value, db.p2.value - db.pair.value / k)


def sigma_from_alphas(alphas) -> float:
    """Two-strategy structure constant implied by the alpha triple.

    For n=2 the selection condition collapses to
    sigma*(G11-G22) + (G12-G21) > 0 with
    sigma = (a1 + 2 a2)/(a1 + 2 a3); equals 1 for Birth-Death and
    (kappa+1)/(kappa-1) for Death-Birth when the two-walker identities
    hold exactly.
    """
    a1, a2, a3 = alphas
    return (a1 + 2.0 * a2) / (a1 + 2.0 * a3)


@njit(cache=True)
def _census_run(nbr, aprob, aidx, sample_times, state):
    """Full-occupancy coalescing walk; counts at sample times.

    Global exponential clock at rate n_alive; move events pick a live
    walker uniformly.  Merges keep the lower walker index.
    """
    N, K = nbr.shape
    T = sample_times.shape[0]
    counts = np.zeros(T, dtype=np.int64)
    pos = np.arange(N)
    occ = np.arange(N)  # site -> walker id, -1 empty
    alive_ids = np.arange(N)
    slot = np.arange(N)  # walker id -> index in alive_ids
    n_alive = N
    t = 0.0
    si = 0
    s = state
    while si < T:
        if n_alive == 1:
            while si < T:
                counts[si] = 1
                si += 1
            break
        s, u = sm_uniform(s)
        t_next = t - np.log(1.0 - u) / n_alive
        while si < T and sample_times[si] < t_next:
            counts[si] = n_alive
            si += 1
        t = t_next
        s, u = sm_uniform(s)
        w = alive_ids[int(u * n_alive)]
        s, k = _draw_k(s, aprob, aidx, K)
        new = nbr[pos[w], k]
        occ[pos[w]] = -1
        other = occ[new]
        if other >= 0:
            keep = min(w, other)
            lose = max(w, other)
            occ[new] = keep
            pos[keep] = new
            j = slot[lose]
            last = alive_ids[n_alive - 1]
            alive_ids[j] = last
            slot[last] = j
            n_alive -= 1
        else:
            occ[new] = w
            pos[w] = new
    return counts


def torus_census(
    kernel: Kernel, geometry: TorusGeom, t_max: float, sample_times, seed: int
) -> CensusSeries:
    """Coalescing walk started from every torus site; counts over time.

    Counts are recorded at the given increasing sample times (all
    <= t_max); count at time 0 is N.
    """
    st = np.asarray(sample_times, dtype=np.float64)
    if np.any(np.diff(st) <= 0):
        raise ValueError("sample_times must be strictly increasing")
    if st[-1] > t_max:
        raise ValueError("sample_times exceed t_max")
    if t_max > 100.0 * geometry.L**2:
        raise ValueError("t_max beyond the configured bound of 100 L^2")
    nbr = neighbor_table(kernel, geometry)
    counts = _census_run(
        nbr, kernel.alias_prob, kernel.alias_idx, st, derive_state(seed, _S_CENSUS)
    )
    return CensusSeries(times=st, counts=counts, geometry=geometry)


@njit(cache=True)
def _census_occupancy(nbr, aprob, aidx, t_end, states):
    """Occupancy indicators at one time, replicated; (R, N) uint8."""
    N, K = nbr.shape
    R = states.shape[0]
    out = np.zeros((R, N), dtype=np.uint8)
    for r in range(R):
        pos = np.arange(N)
        occ = np.arange(N)
        alive_ids = np.arange(N)
        slot = np.arange(N)
        n_alive = N
        t = 0.0
        s = states[r]
        while n_alive > 1:
            s, u = sm_uniform(s)
            t_next = t - np.log(1.0 - u) / n_alive
            if t_next > t_end:
                break
            t = t_next
            s, u = sm_uniform(s)
            w = alive_ids[int(u * n_alive)]
            s, k = _draw_k(s, aprob, aidx, K)
            new = nbr[pos[w], k]
            occ[pos[w]] = -1
            other = occ[new]
            if other >= 0:
                keep = min(w, other)
                lose = max(w, other)
                occ[new] = keep
                pos[keep] = new
                j = slot[lose]
                last = alive_ids[n_alive - 1]
                alive_ids[j] = last
                slot[last] = j
                n_alive -= 1
            else:
                occ[new] = w
                pos[w] = new
        for x in range(N):
            if occ[x] >= 0:
                out[r, x] = 1
    return out


def census_occupancy(
    kernel: Kernel, geometry: TorusGeom, t: float, replicates: int, seed: int
) -> np.ndarray:
    """Replicated site-occupancy indicators of the full census at time t."""
    nbr = neighbor_table(kernel, geometry)
    states = _derive_states(derive_state(seed, _S_OCC), replicates)
    return _census_occupancy(nbr, kernel.alias_prob, kernel.alias_idx, t, states)


@njit(cache=True)
def _walk_endpoints(nbr, aprob, aidx, njump, states, start):
    """Endpoint histogram of single torus walks (jump counts pre-drawn)."""
    N, K = nbr.shape
    hist = np.zeros(N, dtype=np.int64)
    R = njump.shape[0]
    for r in range(R):
        s = states[r]
        site = start
        for _ in range(njump[r]):
            s, k = _draw_k(s, aprob, aidx, K)
            site = nbr[site, k]
        hist[site] += 1
    return hist


def _uniform_tv_bias(N: int, replicates: int) -> float:
    """Expected TV of an R-sample uniform histogram from uniform.

    Exact via the binomial mean absolute deviation of each cell count.
    """
    p = 1.0 / N
    m = replicates * p
    hi = int(m + 12.0 * np.sqrt(m) + 20.0)
    ks = np.arange(0, hi + 1)
    pmf = stats.binom.pmf(ks, replicates, p)
    mad = float(np.sum(pmf * np.abs(ks - m)))
    return 0.5 * N * mad / replicates


def torus_walk_tv(
    kernel: Kernel, geometry: TorusGeom, t: float, replicates: int, seed: int
) -> TvEstimate:
    """TV distance of the time-t torus walk law from uniform.

    Estimated from replicate endpoints started at the origin site; the
    raw plug-in value is reported with the exact finite-sample bias of
    a uniform null and the bias-adjusted difference.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    nbr = neighbor_table(kernel, geometry)
    rng = generator_for(seed, _S_TV, 0)
    njump = rng.poisson(t, size=replicates).astype(np.int64)
    states = _derive_states(derive_state(seed, _S_TV, 1), replicates)
    hist = _walk_endpoints(nbr, kernel.alias_prob, kernel.alias_idx, njump, states, 0)
    raw = 0.5 * float(np.sum(np.abs(hist / replicates - 1.0 / geometry.N)))
    bias = _uniform_tv_bias(geometry.N, replicates)
    return TvEstimate(
        t=t, raw=raw, bias=bias, adjusted=max(raw - bias, 0.0), replicates=replicates
    )


def estimate_record(
    quantity: str, est: CoalescenceEstimate, kernel: Kernel, seed: int
) -> dict:
    """JSON-ready record for one exported estimate."""
    return {
        "quantity": quantity,
        "value": est.value,
        "std_error": est.std_error,
        "replicates": est.replicates,
        "horizon": est.horizon,
        "tail_bound": est.tail_bound,
        "kernel_id": kernel.kernel_id(),
        "seed": seed,
    }


def export_estimates(path, records: list):
    with open(path, "w") as f:
        json.dump(records, f, indent=2)
        f.write("\n")
