"""Numerical integration of the limiting ODE and reaction-diffusion PDE.

On the sped-up clock the empirical densities follow du/dt = phi(u),
plus (mu/w)(1/n - u) with mutation; in the strong-selection regime the
density field follows du/dt = (sigma^2/2) Lap u + phi(u).  Both are
integrated explicitly.  The simplex is a correctness invariant, never
restored by renormalization: drift beyond tolerance raises.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    NonConvergenceError,
    NonSimplexInputError,
    SimplexDriftError,
    StabilityViolationError,
    StepUnderflowError,
)

ODE_SIMPLEX_TOL = 1e-9
PDE_SIMPLEX_TOL = 1e-12


def _check_simplex_u0(u0):
    v = np.asarray(u0, dtype=np.float64)
    if np.any(v < 0) or abs(v.sum() - 1.0) > ODE_SIMPLEX_TOL:
        raise NonSimplexInputError(f"initial frequencies {v} off the simplex")
    return v


@dataclass(frozen=True)
class OdeSpec:
    """Right-hand side phi plus mutation pull (mu/w)(1/n - u)."""

    reaction: callable
    mu_over_w: float
    u0: np.ndarray
    t_end: float
    first_step: float | None = None
    tolerance: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "u0", _check_simplex_u0(self.u0))
        if self.mu_over_w < 0:
            raise ValueError("mu_over_w must be nonnegative")
        if self.t_end <= 0:
            raise ValueError("t_end must be positive")


@dataclass(frozen=True)
class OdeTrajectory:
    times: np.ndarray
    values: np.ndarray  # (T, n)
    dense: object = field(repr=False, default=None)

    def at(self, t):
        """Dense-output evaluation, shape (n,) or (n, len(t))."""
        return self.dense(t)


def integrate_ode(spec: OdeSpec, t_eval=None) -> OdeTrajectory:
    """Adaptive explicit Runge-Kutta integration of the limit ODE.

    The trajectory must stay on the simplex to 1e-9 at every sampled
    point; violations raise SimplexDrift.  Integration failure from
    vanishing step size raises StepUnderflow.
    """
    n = spec.u0.shape[0]
    pull = spec.mu_over_w

    def rhs(_, u):
        return spec.reaction(u) + pull * (1.0 / n - u)

    sol = solve_ivp(
        rhs,
        (0.0, spec.t_end),
        spec.u0,
        method="RK45",
        dense_output=True,
        rtol=spec.tolerance,
        atol=spec.tolerance * 1e-2,
        first_step=spec.first_step,
        t_eval=t_eval,
    )
    if not sol.success:
        raise StepUnderflowError(f"integrator failed: {sol.message}")
    U = sol.y.T
    sums = U.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > ODE_SIMPLEX_TOL) or np.any(U < -ODE_SIMPLEX_TOL):
        worst = float(np.max(np.abs(sums - 1.0)))
        raise SimplexDriftError(f"simplex drift {worst:.3g} beyond {ODE_SIMPLEX_TOL}")
    return OdeTrajectory(times=sol.t, values=U, dense=sol.sol)


@dataclass(frozen=True)
class EquilibriumShift:
    """Fixed point of u = 1/n + (w/mu) phi(u) and its first-order form.

    first_order = 1/n + (w/mu) phi(uniform); c2_fit is the observed
    quadratic-remainder constant |u - first_order|_inf / (w/mu)^2.
    """

    u: np.ndarray
    first_order: np.ndarray
    c2_fit: float
    iterations: int
    residual: float


def equilibrium_shift(
    reaction, mu_over_w: float, n: int, tol: float = 1e-13, max_iter: int = 10**4
) -> EquilibriumShift:
    """Mutation-selection equilibrium by fixed-point iteration from the
    uniform point; raises NonConvergence after max_iter steps."""
    if mu_over_w <= 0:
        raise ValueError("mu_over_w must be positive")
    eps = 1.0 / mu_over_w
    uniform = np.full(n, 1.0 / n)
    first_order = uniform + eps * np.asarray(reaction(uniform), dtype=np.float64)
    u = uniform.copy()
    for it in range(1, max_iter + 1):
        nxt = uniform + eps * np.asarray(reaction(u), dtype=np.float64)
        resid = float(np.max(np.abs(nxt - u)))
        u = nxt
        if resid <= tol:
            c2 = float(np.max(np.abs(u - first_order))) / eps**2
            return EquilibriumShift(
                u=u, first_order=first_order, c2_fit=c2, iterations=it, residual=resid
            )
    raise NonConvergenceError(resid, max_iter)


@dataclass(frozen=True)
class PdeSpec:
    """Explicit scheme data for the reaction-diffusion limit.

    diffusion is the coefficient sigma^2/2 multiplying the Laplacian;
    the stability bound dt <= dx^2/(2 d sigma^2) is checked at
    construction (d = grid dimension).  reaction maps (n, M) column
    frequencies to (n, M).
    """

    reaction: callable
    diffusion: float
    u0_field: np.ndarray  # (n, *grid)
    t_end: float
    dx: float
    dt: float

    def __post_init__(self):
        f = np.asarray(self.u0_field, dtype=np.float64)
        object.__setattr__(self, "u0_field", f)
        if f.ndim < 2:
            raise ValueError("u0_field must be (n, *grid)")
        if self.diffusion < 0 or self.dx <= 0 or self.dt <= 0 or self.t_end <= 0:
            raise ValueError("diffusion, dx, dt, t_end must be positive")
        sums = f.sum(axis=0)
        if np.any(np.abs(sums - 1.0) > 1e-9) or np.any(f < -1e-12):
            raise NonSimplexInputError("u0_field off the simplex pointwise")
        d_grid = f.ndim - 1
        sigma_sq = 2.0 * self.diffusion
        if sigma_sq > 0:
            dt_max = self.dx**2 / (2.0 * d_grid * sigma_sq)
            if self.dt > dt_max * (1 + 1e-12):
                raise StabilityViolationError(
                    f"dt={self.dt} exceeds stability bound {dt_max:.3g}"
                )

    @property
    def grid_shape(self):
        return self.u0_field.shape[1:]


def _laplacian(f: np.ndarray) -> np.ndarray:
    """Second-order periodic Laplacian over the grid axes of (n, *grid)."""
    out = np.zeros_like(f)
    for ax in range(1, f.ndim):
        out += np.roll(f, 1, axis=ax) + np.roll(f, -1, axis=ax) - 2.0 * f
    return out


@dataclass(frozen=True)
class PdeTrajectory:
    times: np.ndarray
    fields: np.ndarray  # (T, n, *grid)


def integrate_pde(spec: PdeSpec, record_times=None) -> PdeTrajectory:
    """Forward Euler with central periodic Laplacian.

    Pointwise strategy sums are conserved by construction (the reaction
    sums to zero, the Laplacian is linear); checked to 1e-12 at every
    record time.  record_times defaults to the final time; each is
    rounded to the nearest step.
    """
    if record_times is None:
        record_times = [spec.t_end]
    rts = np.asarray(record_times, dtype=np.float64)
    if np.any(rts < 0) or np.any(rts > spec.t_end + 1e-12):
        raise ValueError("record times outside [0, t_end]")
    n_steps = int(np.ceil(spec.t_end / spec.dt - 1e-12))
    rec_steps = np.minimum(np.round(rts / spec.dt).astype(np.int64), n_steps)

    u = spec.u0_field.copy()
    M = u.reshape(u.shape[0], -1)
    coef = spec.diffusion / spec.dx**2
    out = np.empty((rts.size,) + u.shape)
    grid_reach = {}
    for i, rs in enumerate(rec_steps):
        grid_reach.setdefault(int(rs), []).append(i)

    def record(step):
        for i in grid_reach.get(step, []):
            sums = u.sum(axis=0)
            if np.any(np.abs(sums - 1.0) > PDE_SIMPLEX_TOL):
                raise SimplexDriftError(
                    f"pointwise sum drift {np.max(np.abs(sums - 1.0)):.3g}"
                )
            out[i] = u

    record(0)
    for step in range(1, n_steps + 1):
        phi = np.asarray(spec.reaction(M)).reshape(u.shape)
        u = u + spec.dt * (coef * _laplacian(u) + phi)
        M = u.reshape(u.shape[0], -1)
        record(step)
    return PdeTrajectory(times=rec_steps * spec.dt, fields=out)


def save_field(path_base: str, field_arr: np.ndarray, dx: float, dt: float):
    """Field to flat binary (row-major float64) plus a JSON descriptor."""
    import json

    a = np.ascontiguousarray(field_arr, dtype=np.float64)
    bin_path = f"{path_base}.bin"
    with open(bin_path, "wb") as f:
        f.write(a.tobytes())
    with open(f"{path_base}.json", "w") as f:
        json.dump(
            {
                "shape": list(a.shape),
                "dx": dx,
                "dt": dt,
                "dtype": "<f8",
                "order": "C",
                "bin": bin_path.rsplit("/", 1)[-1],
            },
            f,
            indent=2,
        )
        f.write("\n")


def load_field(path_base: str):
    """Inverse of save_field; returns (array, descriptor dict)."""
    import json
    import os

    with open(f"{path_base}.json") as f:
        desc = json.load(f)
    bin_path = os.path.join(os.path.dirname(f"{path_base}.json"), desc["bin"])
    a = np.fromfile(bin_path, dtype=np.float64).reshape(desc["shape"])
    return a, desc
