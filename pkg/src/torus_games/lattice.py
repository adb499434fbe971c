"""Torus geometry and symmetric finite-range step kernels.

A kernel is a probability distribution p on a finite set of nonzero
offsets in Z^d, d >= 3, invariant under coordinate permutations and
single-coordinate sign flips.  Everything downstream (walkers, flip
rates, diffusion constants) samples steps from it, so construction
validates the invariants exhaustively and builds an alias table for
O(1) sampling.

Sites of the torus (Z mod L)^d are indexed row-major (C order); all
coordinate arithmetic wraps mod L componentwise.
"""

import hashlib
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonStochasticError,
    SymmetryViolationError,
    ZeroOffsetWeightedError,
)

STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True)
class TorusGeom:
    """Side length, dimension and site count of the torus (Z mod L)^d."""

    L: int
    d: int

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"side length must be positive, got L={self.L}")
        if self.d < 3:
            # theory below requires transient walks
            raise ValueError(f"dimension must be >= 3, got d={self.d}")

    @property
    def N(self) -> int:
        return self.L**self.d

    def wrap(self, coords: np.ndarray) -> np.ndarray:
        """Reduce coordinates mod L componentwise."""
        return np.mod(coords, self.L)

    def ravel(self, coords: np.ndarray) -> np.ndarray:
        """Row-major site index of wrapped coordinates; coords shape (..., d)."""
        c = self.wrap(np.asarray(coords))
        idx = c[..., 0]
        for i in range(1, self.d):
            idx = idx * self.L + c[..., i]
        return idx

    def unravel(self, idx) -> np.ndarray:
        """Coordinates (..., d) of row-major site indices."""
        idx = np.asarray(idx)
        out = np.empty(idx.shape + (self.d,), dtype=np.int64)
        for i in range(self.d - 1, -1, -1):
            out[..., i] = idx % self.L
            idx = idx // self.L
        return out


@dataclass(frozen=True, eq=False)
class Kernel:
    """Validated symmetric step distribution.

    offsets has shape (K, d); weights sum to 1 and exclude the origin.
    alias_prob / alias_idx implement Vose alias sampling over rows of
    offsets.  Arrays are read-only; instances are shareable.
    """

    d: int
    offsets: np.ndarray
    weights: np.ndarray
    range: int
    alias_prob: np.ndarray = field(repr=False)
    alias_idx: np.ndarray = field(repr=False)
    name: str = "custom"

    @property
    def support_size(self) -> int:
        return self.offsets.shape[0]

    def weight_of(self, offset) -> float:
        """Weight of a single offset, 0 if outside the support."""
        z = np.asarray(offset, dtype=np.int64)
        hit = np.all(self.offsets == z, axis=1)
        k = np.flatnonzero(hit)
        return float(self.weights[k[0]]) if k.size else 0.0

    def kernel_id(self) -> str:
        if self.name != "custom":
            return f"{self.name}-d{self.d}"
        h = hashlib.sha256()
        h.update(self.offsets.tobytes())
        h.update(self.weights.tobytes())
        return f"custom-{h.hexdigest()[:8]}"


def _build_alias(weights: np.ndarray):
    """Vose alias table; returns (prob, alias) arrays of length K."""
    K = weights.size
    prob = np.empty(K, dtype=np.float64)
    alias = np.zeros(K, dtype=np.int64)
    scaled = weights * K
    small = [i for i in range(K) if scaled[i] < 1.0]
    large = [i for i in range(K) if scaled[i] >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        g = large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] = (scaled[g] + scaled[s]) - 1.0
        (small if scaled[g] < 1.0 else large).append(g)
    for i in large:
        prob[i] = 1.0
    for i in small:
        prob[i] = 1.0  # numerical leftovers
    return prob, alias


def validate_kernel(weights: dict, name: str = "custom", check_symmetry: bool = True) -> Kernel:
    """Check the kernel invariants and build a Kernel.

    weights maps offset tuples to probabilities.  Zero-weight entries
    are dropped.  Raises NonStochasticError, ZeroOffsetWeightedError or
    SymmetryViolationError (reporting the offending offset and
    transformation) when an invariant fails.

    check_symmetry=False skips the symmetry bullets only; intended for
    deliberately degenerate diagnostics (e.g. a walk confined to a
    line), never for production dynamics.
    """
    if not weights:
        raise NonStochasticError("empty weight map")
    items = [(tuple(int(c) for c in z), float(p)) for z, p in weights.items()]
    d = len(items[0][0])
    for z, _ in items:
        if len(z) != d:
            raise DimensionMismatchError(f"offset {z} has length {len(z)}, expected {d}")
    if d < 3:
        raise ValueError(f"dimension must be >= 3, got d={d}")

    total = 0.0
    table = {}
    for z, p in items:
        if p < 0.0:
            raise NonStochasticError(f"negative weight {p} at offset {z}")
        total += p
        if p > 0.0:
            if all(c == 0 for c in z):
                raise ZeroOffsetWeightedError(f"origin carries weight {p}")
            table[z] = table.get(z, 0.0) + p
    if abs(total - 1.0) > STOCHASTIC_TOL:
        raise NonStochasticError(f"weights sum to {total!r}, not 1 within {STOCHASTIC_TOL}")
    if not table:
        raise NonStochasticError("all weights are zero")

    def lookup(z):
        return table.get(z, 0.0)

    if check_symmetry:
        # exhaustive check over the support
        for z, p in table.items():
            for perm in itertools.permutations(range(d)):
                pz = tuple(z[i] for i in perm)
                if abs(lookup(pz) - p) > STOCHASTIC_TOL:
                    raise SymmetryViolationError(z, f"permutation {perm}")
            for i in range(d):
                fz = tuple(-c if j == i else c for j, c in enumerate(z))
                if abs(lookup(fz) - p) > STOCHASTIC_TOL:
                    raise SymmetryViolationError(z, f"sign flip of coordinate {i}")

    order = sorted(table)
    offsets = np.array(order, dtype=np.int64)
    w = np.array([table[z] for z in order], dtype=np.float64)
    prob, alias = _build_alias(w)
    for a in (offsets, w, prob, alias):
        a.setflags(write=False)
    return Kernel(
        d=d,
        offsets=offsets,
        weights=w,
        range=int(np.max(np.abs(offsets))),
        alias_prob=prob,
        alias_idx=alias,
        name=name,
    )


def kappa_of_weights(weights: dict) -> float:
    """1 / sum_x p(x) p(-x) by direct summation over a raw weight map.

    Does not require the symmetry invariants; p(-x) is looked up
    literally rather than assumed equal to p(x).
    """
    table = {tuple(int(c) for c in z): float(p) for z, p in weights.items()}
    s = 0.0
    for z, p in table.items():
        s += p * table.get(tuple(-c for c in z), 0.0)
    return 1.0 / s


def kappa(kernel: Kernel) -> float:
    """Effective neighbor count 1 / sum_x p(x) p(-x)."""
    return kappa_of_weights(
        {tuple(kernel.offsets[k]): kernel.weights[k] for k in range(kernel.support_size)}
    )


def sigma_sq(kernel: Kernel) -> float:
    """Per-coordinate variance sum_z p(z) z_1^2 of a single jump."""
    return float(np.sum(kernel.weights * kernel.offsets[:, 0].astype(np.float64) ** 2))


def sample_step(kernel: Kernel, rng: np.random.Generator) -> np.ndarray:
    """One offset drawn from the kernel."""
    k = int(rng.integers(kernel.support_size))
    if rng.random() >= kernel.alias_prob[k]:
        k = int(kernel.alias_idx[k])
    return kernel.offsets[k]


def sample_steps(kernel: Kernel, rng: np.random.Generator, size: int) -> np.ndarray:
    """size offsets, shape (size, d), drawn independently."""
    k = rng.integers(kernel.support_size, size=size)
    u = rng.random(size)
    k = np.where(u < kernel.alias_prob[k], k, kernel.alias_idx[k])
    return kernel.offsets[k]


def neighbor_table(kernel: Kernel, geom: TorusGeom) -> np.ndarray:
    """Site index table nbr[x, k] = x + offset_k wrapped, shape (N, K), int32.

    Precomputed once per run; flip-rate loops index it instead of doing
    coordinate arithmetic.
    """
    if kernel.d != geom.d:
        raise DimensionMismatchError(f"kernel d={kernel.d} vs geometry d={geom.d}")
    coords = geom.unravel(np.arange(geom.N))  # (N, d)
    nbr = np.empty((geom.N, kernel.support_size), dtype=np.int32)
    for k in range(kernel.support_size):
        nbr[:, k] = geom.ravel(coords + kernel.offsets[k])
    nbr.setflags(write=False)
    return nbr


def _uniform_ball(d: int, radius: int, norm: str) -> dict:
    pts = []
    for z in itertools.product(range(-radius, radius + 1), repeat=d):
        if all(c == 0 for c in z):
            continue
        if norm == "linf" and max(abs(c) for c in z) <= radius:
            pts.append(z)
        elif norm == "l1" and sum(abs(c) for c in z) <= radius:
            pts.append(z)
    w = 1.0 / len(pts)
    return {z: w for z in pts}


def preset_kernel(preset: str, d: int = 3) -> Kernel:
    """Named presets: "nn" (uniform nearest neighbor) and "moore-1"
    (uniform on the L-infinity ball of radius 1 minus the origin)."""
    if preset == "nn":
        return validate_kernel(_uniform_ball(d, 1, "l1"), name="nn")
    if preset == "moore-1":
        return validate_kernel(_uniform_ball(d, 1, "linf"), name="moore-1")
    raise ValueError(f"unknown kernel preset {preset!r}")


PRESETS = ("nn", "moore-1")


def kernel_from_config(cfg: dict) -> Kernel:
    """Kernel from a config mapping.

    Either {"preset": name, "d": d} or {"d": d, "pairs": [[offset, weight], ...]}.
    """
    if "preset" in cfg:
        return preset_kernel(cfg["preset"], int(cfg.get("d", 3)))
    d = int(cfg["d"])
    weights = {}
    for off, p in cfg["pairs"]:
        z = tuple(int(c) for c in off)
        if len(z) != d:
            raise DimensionMismatchError(f"offset {z} has length {len(z)}, expected d={d}")
        weights[z] = weights.get(z, 0.0) + float(p)
    return validate_kernel(weights)


def load_kernel(spec: str, d: int = 3) -> Kernel:
    """Kernel from a preset name or a JSON config file path."""
    if spec in PRESETS:
        return preset_kernel(spec, d)
    with open(spec) as f:
        return kernel_from_config(json.load(f))
