"""Normalizers, Weyl groups and U(2)-fusion of subgroup descriptors.

Everything here works at the level of descriptors.  Two ambients are
supported: "U2" (the default) and "N", the normalizer of the maximal torus.
The torus part of N_N(H) for a full subgroup H is computed directly: t
normalizes H exactly when t w(t)^{-1} lies in the toral part of H, i.e. when
t is killed by d(1-w) with d = gcd(a - b) over the dagger of H.

For n = 2 the full subgroups of N are the double covers of D4 (times a
central circle segment), and their U(2)-normalizers leave N.  Those cases
are routed through the central product data, see ``_d4_key``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import lattice as zl
from ._finite_groups import (ABELIANIZATION, LABEL_TO_SO3, NORMALIZER_SO3, WEYL_SO3,
                             weyl_orbits, orbit_representative)
from .lattice import INF, DualLattice
from .subgroups import (AMBIENT, NORMALIZER, TORUS, Ambient, CentralProduct, Full, Toral,
                        SubgroupClass, centre_order, is_abelian_full, position_lattice,
                        toral_form, toral_key)

AMBIENTS = ("U2", "N")

_SO3_NAMES = {
    "SO3": "SO3", "SU2": "SO3", "A5": "A5", "S4": "S4", "Σ4": "S4", "Sigma4": "S4",
    "A4": "A4", "D4": "D4",
}


class TableIncompleteError(ValueError):
    """Raised for descriptors that the normalizer rules do not cover."""


@dataclass(frozen=True)
class WeylData:
    identity_rank: int
    component_group: str

    @property
    def is_finite(self) -> bool:
        return self.identity_rank == 0

    def to_json(self):
        return {"identity_rank": self.identity_rank, "component_group": self.component_group}


def group_name(factors) -> str:
    """Name of a finite abelian group from its invariant factors."""
    factors = [f for f in factors if f > 1]
    if not factors:
        return "1"
    return "x".join(f"C{f}" for f in factors)


def _check_ambient(ambient):
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}, got {ambient!r}")


def _is_central(lat: DualLattice) -> bool:
    return (1, -1) in lat


def _twist_divisor(lat: DualLattice) -> int:
    d = 0
    for a, b in lat.basis:
        d = gcd(d, a - b)
    return d


def _full_normalizer_in_N(k: Full) -> Full:
    d = _twist_divisor(position_lattice(k.m, k.n, k.lam))
    return NORMALIZER if d == 0 else Full(INF, d, "1s")


def _d4_key(k: Full):
    """(s, orbit) of the D4 central product equal to a full subgroup over n = 2."""
    if k.m is INF:
        return INF, 0
    s = centre_order(k) // 2
    if k.lam == "2":
        return s, 1
    canonical = "1s" if s % 2 == 0 else "1ns"
    return s, 0 if k.lam == canonical else 1


def as_central_product(k: Full) -> CentralProduct | None:
    """The D4 central product descriptor of ``k`` when n = 2, else None."""
    if k.n != 2:
        return None
    s, orbit = _d4_key(k)
    return CentralProduct("D4", s, orbit)


def normalizer(k: SubgroupClass, ambient: str = "U2") -> SubgroupClass:
    """Descriptor of the normalizer of ``k`` in U(2) or in N."""
    _check_ambient(ambient)
    if isinstance(k, (Ambient, CentralProduct)):
        if ambient == "N":
            raise TableIncompleteError(f"{k} is not a subgroup of N")
        if isinstance(k, Ambient):
            return AMBIENT
        return _central_product_normalizer(k)
    if isinstance(k, Toral):
        lat = k.lattice
        if _is_central(lat):
            return AMBIENT if ambient == "U2" else NORMALIZER
        return NORMALIZER if zl.is_invariant(lat) else TORUS
    if isinstance(k, Full):
        if ambient == "U2":
            if k.n == 2:
                return _central_product_normalizer(as_central_product(k))
            if is_abelian_full(k.m, k.n, k.lam):
                return normalizer(Toral(toral_form(k)), "U2")
        return _full_normalizer_in_N(k)
    raise TableIncompleteError(f"no normalizer rule for {k!r}")


def _central_product_normalizer(k: CentralProduct) -> SubgroupClass:
    if k.group == "SU2":
        return AMBIENT
    h = LABEL_TO_SO3[k.group]
    if k.s is INF or k.variant == 0:
        top = NORMALIZER_SO3[h]
        return CentralProduct(top, INF, 0)
    # stabilizer of a non-canonical class inside W_SO(3)(H)
    if h == "A4":
        return CentralProduct("A4", INF, 0)
    if h == "D4":
        # the stabilizer C2 in S3 lifts to D8 in S4, whose preimage is full over n = 4
        return Full(INF, 4, "1s")
    return CentralProduct(k.group, INF, 0)


_STABILIZER = {
    ("A4", True): "C2", ("A4", False): "1",
    ("D4", True): "S3", ("D4", False): "C2",
}


def weyl(k: SubgroupClass, ambient: str = "U2") -> WeylData:
    """W = N(K)/K as (rank of the identity component, component group)."""
    _check_ambient(ambient)
    if isinstance(k, Ambient):
        if ambient == "N":
            raise TableIncompleteError("U(2) is not a subgroup of N")
        return WeylData(0, "1")
    if isinstance(k, CentralProduct):
        if ambient == "N":
            raise TableIncompleteError(f"{k} is not a subgroup of N")
        return _central_product_weyl(k)
    if isinstance(k, Toral):
        lat = k.lattice
        if _is_central(lat):
            return WeylData(lat.rank, "1" if ambient == "U2" else "C2")
        return WeylData(lat.rank, "C2" if zl.is_invariant(lat) else "1")
    if isinstance(k, Full):
        if ambient == "U2":
            if k.n == 2:
                return _central_product_weyl(as_central_product(k))
            if is_abelian_full(k.m, k.n, k.lam):
                return weyl(Toral(toral_form(k)), "U2")
        big = _full_normalizer_in_N(k)
        free, torsion = zl.quotient_invariants(position_lattice(big.m, big.n, big.lam),
                                               position_lattice(k.m, k.n, k.lam))
        return WeylData(free, group_name(torsion))
    raise TableIncompleteError(f"no Weyl rule for {k!r}")


def _central_product_weyl(k: CentralProduct) -> WeylData:
    h = LABEL_TO_SO3[k.group]
    if k.s is INF:
        return WeylData(0, WEYL_SO3[h])
    if (h, True) in _STABILIZER:
        return WeylData(1, _STABILIZER[h, k.variant == 0])
    return WeylData(1, "1")


# -- counts and fusion ----------------------------------------------------------

def count_full_classes(h: str, ambient: str = "U2") -> int:
    """a(H) (ambient "preimage") or b(H) (ambient "U2") for an isolated H."""
    if h not in _SO3_NAMES:
        raise ValueError(f"unknown isolated subgroup {h!r}")
    h = _SO3_NAMES[h]
    if ambient == "preimage":
        a = 1
        for x in ABELIANIZATION[h]:
            a *= x
        return a
    if ambient == "U2":
        return len(weyl_orbits(h))
    raise ValueError(f"ambient must be 'preimage' or 'U2', got {ambient!r}")


def u2_class_key(k: SubgroupClass) -> tuple:
    """A hashable key that is equal for two descriptors iff they are U(2)-conjugate."""
    if isinstance(k, Ambient):
        return ("ambient",)
    if isinstance(k, CentralProduct):
        return ("cp", k.group, k.s, orbit_representative(LABEL_TO_SO3[k.group], k.variant))
    if isinstance(k, Toral):
        return ("toral", toral_key(k.lattice))
    if isinstance(k, Full):
        if k.n == 2:
            return u2_class_key(as_central_product(k))
        if is_abelian_full(k.m, k.n, k.lam):
            return ("toral", toral_key(toral_form(k)))
        return ("full", k.m, k.n, k.lam)
    raise TypeError(f"not a subgroup descriptor: {k!r}")


def fuse(k1: SubgroupClass, k2: SubgroupClass) -> bool:
    """True iff the two descriptors name U(2)-conjugate subgroups."""
    return u2_class_key(k1) == u2_class_key(k2)


def fusion_classes(descriptors) -> list[list[SubgroupClass]]:
    groups: dict[tuple, list] = {}
    for k in descriptors:
        groups.setdefault(u2_class_key(k), []).append(k)
    return list(groups.values())
