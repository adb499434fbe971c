"""Hitting-probability oracle for symmetric walks on Z^d.

Independent of the Monte Carlo estimators: solves the harmonicity
equations h(x) = sum_z p(z) h(x+z), h(0) = 1, on a finite box with
absorbing (h = 0) boundary, then removes the O(1/R) truncation bias by
Richardson extrapolation across two box radii.  Used only by tests and
calibration scripts as the reference for coalescence constants.

The two-walker difference walk has the same jump chain as a single
p-walk, so pair non-coalescence probabilities reduce to these hitting
probabilities.
"""

import numpy as np
from scipy import sparse

from .lattice import Kernel


def _box_hit(kernel: Kernel, points: np.ndarray, R: int) -> np.ndarray:
    """h at the given points for the radius-R absorbing box."""
    d = kernel.d
    S = 2 * R + 1
    n = S**d
    axes = [np.arange(-R, R + 1)] * d
    coords = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(n, d)

    def ravel(c):
        idx = c[..., 0] + R
        for i in range(1, d):
            idx = idx * S + (c[..., i] + R)
        return idx

    origin = ravel(np.zeros(d, dtype=np.int64))
    rows, cols, vals = [], [], []
    b = np.zeros(n)
    for k in range(kernel.support_size):
        z = kernel.offsets[k]
        p = kernel.weights[k]
        tgt = coords + z
        src = np.flatnonzero(np.all(np.abs(tgt) <= R, axis=1))
        ti = ravel(tgt[src])
        hit0 = ti == origin
        b[src[hit0]] += p
        rows.append(src[~hit0])
        cols.append(ti[~hit0])
        vals.append(np.full(src.size - hit0.sum(), -p))
    A = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    ).tocsr() + sparse.identity(n, format="csr")

    keep = np.ones(n, dtype=bool)
    keep[origin] = False
    A = A[keep][:, keep]
    b = b[keep]
    try:
        import pyamg

        ml = pyamg.smoothed_aggregation_solver(A.tocsr())
        x = ml.solve(b, tol=1e-12, accel="cg")
    except ImportError:
        from scipy.sparse.linalg import cg

        x, info = cg(A, b, rtol=1e-12, maxiter=20000)
        if info != 0:
            raise RuntimeError(f"cg failed to converge, info={info}")
    h = np.empty(n)
    h[keep] = x
    h[origin] = 1.0
    pts = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if np.any(np.abs(pts) > R):
        raise ValueError("query point outside the solve box")
    return h[ravel(pts)]


def hit_probability(kernel: Kernel, points, radii=(16, 32)) -> np.ndarray:
    """P(p-walk from each point ever hits 0), extrapolated over radii.

    The absorbing box underestimates h by ~c/R; two radii R1 < R2 give
    the 1/R-free combination (R2 h2 - R1 h1)/(R2 - R1).
    """
    R1, R2 = sorted(radii)
    if R1 == R2:
        raise ValueError("extrapolation needs two distinct radii")
    h1 = _box_hit(kernel, points, R1)
    h2 = _box_hit(kernel, points, R2)
    return (R2 * h2 - R1 * h1) / (R2 - R1)


def return_probability(kernel: Kernel, radii=(16, 32)) -> float:
    """P(walk started at 0 ever returns to 0) = sum_z p(z) h(z)."""
    h = hit_probability(kernel, kernel.offsets, radii)
    return float(np.sum(kernel.weights * h))


def pair_noncoalescence(kernel: Kernel, radii=(16, 32)) -> float:
    """p(0 | v1): two walkers at 0 and a kernel draw never meet.

    Equals 1 minus the return probability of the difference-walk jump
    chain, which has step distribution p.
    """
    return 1.0 - return_probability(kernel, radii)
