"""Input checks shared by the CLI and the estimator adapters."""
from __future__ import annotations

import numpy as np

from . import lattice as zl
from .lattice import DualLattice
from .subgroups import Ambient, CentralProduct, Full, Toral, from_json

_DESCRIPTOR_TYPES = (Toral, Full, CentralProduct, Ambient)


def check_truncation(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"truncation must be a positive integer, got {m!r}")
    return int(m)


def check_ambient(ambient, allowed=("U2", "N")) -> str:
    if ambient not in allowed:
        raise ValueError(f"ambient must be one of {allowed}, got {ambient!r}")
    return ambient


def check_descriptor(k):
    """A subgroup descriptor from a descriptor or its JSON dict."""
    if isinstance(k, _DESCRIPTOR_TYPES):
        return k
    if isinstance(k, dict):
        return from_json(k)
    raise TypeError(f"expected a subgroup descriptor or its JSON form, got {type(k).__name__}")


def check_descriptors(xs) -> list:
    if isinstance(xs, (dict, *_DESCRIPTOR_TYPES)):
        raise TypeError("expected a sequence of descriptors, got a single one")
    return [check_descriptor(k) for k in xs]


def check_lattice(x) -> DualLattice:
    if isinstance(x, DualLattice):
        return x
    if isinstance(x, dict):
        return DualLattice.from_json(x)
    if len(x) == 0:
        return zl.ZERO
    arr = np.asarray(x)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] > 2:
        raise ValueError(f"a lattice basis is at most two integer vectors of length 2, got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("lattice basis entries must be integers")
    return zl.canonicalize(arr.tolist())


def check_random_state(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (int, np.integer)):
        return np.random.default_rng(seed)
    raise TypeError(f"seed must be None, an int or a Generator, got {type(seed).__name__}")
