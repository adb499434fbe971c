"""Game matrices, limit reaction terms and the selection condition.

The weak-selection limit turns an n-strategy payoff matrix G and the
coalescence probabilities into a polynomial drift on the simplex: the
replicator field of G scaled by p1, plus quadratic corrections whose
coefficients are differences of G entries.  The same drift evaluated at
the uniform point collapses to a linear statistic of G aggregates (row,
column, diagonal and grand means), which decides whether a strategy is
favored under mutation.

Strategy indices are 0-based throughout.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateCubicError,
    DegenerateP1Error,
    DimensionMismatchError,
    NonSimplexInputError,
    SignDisagreementError,
)
from .rules import RULE_BD, RULE_DB, normalize_rule

SIMPLEX_TOL = 1e-9
SUM_ZERO_TOL = 1e-12
DEGENERATE_TOL = 1e-12
PROPORTIONALITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GameMatrix:
    """Payoff matrix: entries[i, j] is the payoff of strategy i against j."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"payoff matrix must be square, got {a.shape}")
        if a.shape[0] < 2:
            raise DimensionMismatchError("need at least 2 strategies")
        if not np.all(np.isfinite(a)):
            raise ValueError("payoff entries must be finite")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    # aggregates used by the uniform-point statistic
    def row_means(self) -> np.ndarray:
        return self.entries.mean(axis=1)

    def col_means(self) -> np.ndarray:
        return self.entries.mean(axis=0)

    def diag_mean(self) -> float:
        return float(np.trace(self.entries) / self.n)

    def grand_mean(self) -> float:
        return float(self.entries.mean())

    @classmethod
    def from_config(cls, cfg: dict) -> "GameMatrix":
        rows = np.asarray(cfg["rows"], dtype=np.float64)
        if "n" in cfg and int(cfg["n"]) != rows.shape[0]:
            raise DimensionMismatchError(
                f"config n={cfg['n']} but rows give {rows.shape[0]}"
            )
        return cls(rows)


@dataclass(frozen=True)
class ReactionParams:
    """Coalescence probabilities consumed by the reaction terms.

    Point values only; Monte Carlo uncertainty is carried upstream.
    Both rules' parameters are stored, rule selects which are used.
    """

    rule: str
    p1: float = 1.0
    p2: float = 0.0
    pbar1: float = 1.0
    pbar2: float = 0.0
    p12: float = 0.0
    kappa: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rule", normalize_rule(self.rule))
        for f in ("p1", "p2", "pbar1", "pbar2", "p12"):
            v = getattr(self, f)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{f}={v} outside [0, 1]")
        if self.kappa < 1.0:
            raise ValueError(f"kappa={self.kappa} must be >= 1")

    @classmethod
    def from_estimates(cls, rule, bd=None, db=None, kappa=1.0) -> "ReactionParams":
        """Point values from coalescence TripleProbs bundles."""
        kw = {}
        if bd is not None:
            kw["p1"] = bd.p1.value
            kw["p2"] = bd.p2.value
        if db is not None:
            kw["pbar1"] = db.p1.value
            kw["pbar2"] = db.p2.value
            kw["p12"] = db.pair.value
        return cls(rule=rule, kappa=kappa, **kw)

    def alphas(self) -> tuple:
        """Selection-condition coefficients for the stored rule."""
        if self.rule == RULE_BD:
            return (self.p1, self.p2, self.p2)
        return (self.pbar1, self.pbar2, self.pbar2 - self.p12 / self.kappa)


@dataclass(frozen=True)
class CubicClass:
    """Sign class of the two-strategy cubic u(1-u)(c + Gamma u).

    case S1: interior root attracting; S2: repelling; S3: negative on
    (0,1); S4: positive.  ubar is the interior root, present only for
    S1/S2.  coefficients = (c, Gamma) of the effective game.
    """

    case: str
    ubar: float | None
    coefficients: tuple


def _as_frequencies(u, n: int) -> np.ndarray:
    v = np.asarray(u, dtype=np.float64)
    if v.shape != (n,):
        raise DimensionMismatchError(f"frequency vector has shape {v.shape}, expected ({n},)")
    if np.any(v < 0.0):
        raise NonSimplexInputError(f"negative frequency in {v}")
    if abs(v.sum() - 1.0) > SIMPLEX_TOL:
        raise NonSimplexInputError(f"frequencies sum to {v.sum()!r}")
    return v


def _replicator_field(G: np.ndarray, U: np.ndarray) -> np.ndarray:
    """u_i((Gu)_i - u'Gu) over columns; U shape (n, ...)."""
    GU = np.tensordot(G, U, axes=(1, 0))
    avg = np.sum(U * GU, axis=0)
    return U * (GU - avg)


def _symmetric_diff(G: np.ndarray) -> np.ndarray:
    # D[i, j] = G_ii - G_ji + G_ij - G_jj; zero diagonal
    diag = np.diag(G)
    return diag[:, None] - G.T + G - diag[None, :]


def _skew_diff(G: np.ndarray) -> np.ndarray:
    # E[i, j] = G_ij - G_ji
    return G - G.T


def replicator_rhs(G: GameMatrix, u) -> np.ndarray:
    """Replicator drift u_i((Gu)_i - u'Gu) on the simplex."""
    v = _as_frequencies(u, G.n)
    return _replicator_field(G.entries, v)


def _reaction_field(G: GameMatrix, params: ReactionParams, U: np.ndarray) -> np.ndarray:
    D = _symmetric_diff(G.entries)
    if params.rule == RULE_BD:
        lead, quad = params.p1, params.p2
        corr = quad * np.tensordot(D, U, axes=(1, 0))
    else:
        lead = params.pbar1
        E = _skew_diff(G.entries)
        M = params.pbar2 * D - (params.p12 / params.kappa) * E
        corr = np.tensordot(M, U, axes=(1, 0))
    return lead * _replicator_field(G.entries, U) + U * corr


def reaction_rhs(G: GameMatrix, params: ReactionParams, u) -> np.ndarray:
    """Limit drift: p1 (or pbar1) times the replicator field plus the
    pair-coalescence corrections selected by params.rule."""
    v = _as_frequencies(u, G.n)
    return _reaction_field(G, params, v)


def reaction_callable(G: GameMatrix, params: ReactionParams):
    """Vectorized drift for integrators: maps (n, ...) to (n, ...)."""

    def phi(U):
        return _reaction_field(G, params, np.asarray(U, dtype=np.float64))

    return phi


def modified_game(G: GameMatrix, params: ReactionParams) -> GameMatrix:
    """Effective game whose replicator field, scaled by p1 (pbar1),
    equals the reaction term.  The additive part is skew-symmetric."""
    if params.rule == RULE_BD:
        if params.p1 <= 0.0:
            raise DegenerateP1Error(f"p1={params.p1}")
        A = (params.p2 / params.p1) * _symmetric_diff(G.entries)
    else:
        if params.pbar1 <= 0.0:
            raise DegenerateP1Error(f"pbar1={params.pbar1}")
        A = (params.pbar2 / params.pbar1) * _symmetric_diff(G.entries) - (
            params.p12 / (params.kappa * params.pbar1)
        ) * _skew_diff(G.entries)
    return GameMatrix(A + G.entries)


def cubic_coefficients(G: GameMatrix, params: ReactionParams) -> tuple:
    """(c, Gamma) of the effective two-strategy cubic u(1-u)(c + Gamma u)."""
    if G.n != 2:
        raise DimensionMismatchError(f"two strategies required, got n={G.n}")
    M = modified_game(G, params).entries
    c = float(M[0, 1] - M[1, 1])
    gamma = float(M[0, 0] - M[0, 1] - M[1, 0] + M[1, 1])
    return c, gamma


def classify_2x2(G: GameMatrix, params: ReactionParams) -> CubicClass:
    """Sign classification of the effective cubic.

    The boundary derivatives are c at 0 and -(c + Gamma) at 1; a zero
    derivative (within 1e-12) is degenerate and raises rather than
    being binned.
    """
    c, gamma = cubic_coefficients(G, params)
    s = c + gamma
    if abs(c) <= DEGENERATE_TOL or abs(s) <= DEGENERATE_TOL:
        raise DegenerateCubicError(f"boundary derivative vanishes: c={c}, c+Gamma={s}")
    if c > 0.0 and s < 0.0:
        return CubicClass("S1", -c / gamma, (c, gamma))
    if c < 0.0 and s > 0.0:
        return CubicClass("S2", -c / gamma, (c, gamma))
    if c < 0.0:
        return CubicClass("S3", None, (c, gamma))
    return CubicClass("S4", None, (c, gamma))


def tarnita_statistic(G: GameMatrix, k: int, alphas) -> float:
    """Linear selection statistic of strategy k (0-based).

    a1 (rowmean_k - grand) + a2 (G_kk - diagmean)
    + a3 (rowmean_k - colmean_k); k is favored iff positive.
    """
    if not 0 <= k < G.n:
        raise DimensionMismatchError(f"strategy index {k} outside 0..{G.n - 1}")
    a1, a2, a3 = alphas
    rk = float(G.row_means()[k])
    ck = float(G.col_means()[k])
    return (
        a1 * (rk - G.grand_mean())
        + a2 * (float(G.entries[k, k]) - G.diag_mean())
        + a3 * (rk - ck)
    )


@dataclass(frozen=True)
class FavoredResult:
    """Diagnostic record of the favored-strategy test."""

    favored: bool
    neutral: bool
    phi_at_uniform: float
    statistic: float
    k: int
    rule: str


def favored_by_selection(G: GameMatrix, params: ReactionParams, k: int) -> FavoredResult:
    """Whether strategy k exceeds frequency 1/n under weak selection
    with mutation: sign of the reaction term at the uniform point.

    The uniform-point value must equal statistic/n with this module's
    alphas; disagreement indicates an internal bug and raises.
    """
    n = G.n
    uniform = np.full(n, 1.0 / n)
    value = float(reaction_rhs(G, params, uniform)[k])
    stat = tarnita_statistic(G, k, params.alphas())
    scale = max(1.0, float(np.max(np.abs(G.entries))))
    if abs(value - stat / n) > PROPORTIONALITY_TOL * scale:
        raise SignDisagreementError(
            f"phi_k(uniform)={value!r} but statistic/n={stat / n!r}"
        )
    return FavoredResult(
        favored=value > 0.0,
        neutral=value == 0.0,
        phi_at_uniform=value,
        statistic=stat,
        k=k,
        rule=params.rule,
    )
