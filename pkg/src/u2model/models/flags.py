"""Cotoral flags in the torus block and the rings and component groups attached to them.

A flag S0 > S1 > ... of toral subgroups is stored on the dagger side as an
increasing chain of W-invariant lattices L0 < L1 < ..., each inclusion
cofree.  The Weyl data of the flag is that of the largest subgroup S0, so
everything is read off L0:

  * (1, -1) in L0 (S0 central): ambient N gives Q[c, c'] (rank 2) or Q[c']
    (rank 1) with component C2; ambient U(2) gives Q[c, d'] or Q[d'] with
    trivial component, d' = c'^2 of codegree 4.
  * otherwise: polynomial on rank L0 generators of codegree 2 (Q, Q[c],
    Q[c, c']) with component C2, for either ambient.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import lattice as zl
from ..lattice import DualLattice
from ..subgroups import invariant_toral_lattices

AMBIENTS = ("N", "U2")
CODEGREE = {"c": 2, "c'": 2, "d'": 4}


@dataclass(frozen=True)
class FlagData:
    flag: tuple
    ambient: str
    generators: tuple
    component: str
    central: bool

    @property
    def ring(self) -> str:
        return "Q[" + ",".join(self.generators) + "]" if self.generators else "Q"

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def codegrees(self) -> tuple:
        return tuple(CODEGREE[g] for g in self.generators)

    def ring_map(self) -> dict:
        """Images of the generators in the ring for ambient N."""
        return {g: ("c'^2" if g == "d'" else g) for g in self.generators}

    def to_json(self):
        return {
            "flag": [lat.to_json() for lat in self.flag],
            "classes": [str(zl.classify(lat)) for lat in self.flag],
            "ambient": self.ambient, "ring": self.ring, "generators": list(self.generators),
            "codegrees": list(self.codegrees), "component": self.component,
            "central": self.central, "ring_map_to_N": self.ring_map(),
        }


def check_flag(flag) -> list[str]:
    """Reasons the chain is not a cofree W-invariant flag (empty if it is)."""
    flag = tuple(flag)
    bad = []
    if not 1 <= len(flag) <= 3:
        bad.append(f"flag length {len(flag)} not in 1..3")
    for i, lat in enumerate(flag):
        if not zl.is_invariant(lat):
            bad.append(f"step {i} is not W-invariant")
    for i in range(len(flag) - 1):
        a, b = flag[i], flag[i + 1]
        if a == b:
            bad.append(f"steps {i} and {i + 1} are equal")
        elif not zl.is_cofree_in(a, b):
            bad.append(f"step {i} is not cofree in step {i + 1}")
    return bad


def flag_ring(flag, ambient: str = "N") -> FlagData:
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}, got {ambient!r}")
    flag = tuple(flag)
    bad = check_flag(flag)
    if bad:
        raise ValueError("; ".join(bad))
    return _assign(flag, ambient)


def _assign(flag, ambient) -> FlagData:
    top = flag[0]
    central = (1, -1) in top
    if central:
        if ambient == "N":
            gens = ("c", "c'") if top.rank == 2 else ("c'",)
            comp = "C2"
        else:
            gens = ("c", "d'") if top.rank == 2 else ("d'",)
            comp = "1"
    else:
        gens = ("c", "c'")[:top.rank]
        comp = "C2"
    return FlagData(flag, ambient, gens, comp, central)


def enumerate_flags(truncation: int, ambient: str = "N") -> list[FlagData]:
    """All cofree flags of length 1 to 3 among the invariant lattices with parameters <= M."""
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}, got {ambient!r}")
    lats = invariant_toral_lattices(truncation)
    up = {i: [j for j, b in enumerate(lats) if i != j and a != b and zl.is_cofree_in(a, b)]
          for i, a in enumerate(lats)}
    chains = [(i,) for i in range(len(lats))]
    out = list(chains)
    for _ in range(2):
        chains = [c + (j,) for c in chains for j in up[c[-1]]]
        out += chains
    return [_assign(tuple(lats[i] for i in c), ambient) for c in out]


def flip(data: FlagData) -> FlagData:
    """The same flag with the other ambient."""
    return _assign(data.flag, "U2" if data.ambient == "N" else "N")


def lattice_from_json(data) -> DualLattice:
    return DualLattice.from_json(data)
