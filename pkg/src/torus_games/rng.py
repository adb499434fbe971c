"""Reproducible random streams.

Every Monte Carlo routine derives an independent stream from
``(master seed, replicate index, ...)`` so that results are bit-identical
regardless of scheduling and worker count, and aggregation is a
deterministic fold ordered by replicate index.

Two concrete generators are used, both named, portable and splittable:

* splitmix64 -- raw 64-bit state advanced inline inside jitted kernels
  (:func:`sm_next`, :func:`sm_uniform`); streams are keyed through
  :func:`derive_state`.
* numpy PCG64 seeded through ``SeedSequence`` with the same key tuple,
  for Python-level sampling (:func:`generator_for`).
"""

import numpy as np
from numba import njit

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

U53_INV = float(2.0**-53)


def _mix(z: int) -> int:
    """splitmix64 output finalizer on a python int."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def derive_state(master_seed: int, *keys: int) -> np.uint64:
    """splitmix64 starting state for the stream keyed by (master_seed, *keys)."""
    s = _mix((master_seed + _GOLDEN) & _MASK64)
    for k in keys:
        s = _mix((s + (_GOLDEN * (k + 1))) & _MASK64)
    return np.uint64(s)


def generator_for(master_seed: int, *keys: int) -> np.random.Generator:
    """numpy Generator (PCG64) for the stream keyed by (master_seed, *keys)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([master_seed, *keys])))


@njit(cache=True, inline="always")
def sm_next(s):
    """Advance splitmix64 state; returns (new_state, 64 random bits)."""
    s = s + np.uint64(0x9E3779B97F4A7C15)
    z = s
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return s, z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def sm_uniform(s):
    """Advance state; returns (new_state, uniform double in [0, 1))."""
    s, z = sm_next(s)
    return s, np.float64(z >> np.uint64(11)) * U53_INV
