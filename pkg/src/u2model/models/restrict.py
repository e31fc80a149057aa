"""Restriction from the U(2)-model of an easy block to the model over p^{-1}H.

Points of the U(2)-side object are U(2)-classes CentralProduct(H, s, v)
with v an orbit representative; each such point is repeated over every
variant in its W_SO(3)(H)-orbit, and the action of the Weyl group is
forgotten.  Point labels are the descriptor strings, e.g. "D4x2C6[1]".
"""
from __future__ import annotations

import re

from .._finite_groups import LABEL_TO_SO3, weyl_orbits
from ..lattice import INF
from ..subgroups import CentralProduct
from . import graded as gd
from .graded import GradedVS
from .type1 import Type1Object, Type1Point

_LABEL = re.compile(r"^(\w+?)x2(Z|C(\d+))(?:\[(\d+)\])?$")


def parse_label(label: str) -> CentralProduct:
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"not a central product label: {label!r}")
    group, _, order, variant = m.groups()
    s = INF if order is None else int(order) // 2
    if order is not None and int(order) % 2:
        raise ValueError(f"central order must be even in {label!r}")
    return CentralProduct(group, s, int(variant or 0))


def orbit_of(k: CentralProduct) -> list[int]:
    if k.s is INF:
        return [0]
    for orbit in weyl_orbits(LABEL_TO_SO3[k.group]):
        if k.variant in orbit:
            return list(orbit)
    raise ValueError(f"variant out of range in {k}")


def restrict_easy_block(x: Type1Object, group: str) -> Type1Object:
    """Pull back along the quotient to the classes in p^{-1}H; forget the Weyl action."""
    seen = set()
    points = []
    for p in x.points:
        k = parse_label(p.label)
        if k.group != group:
            raise ValueError(f"point {p.label} is not over {group}")
        orbit = orbit_of(k)
        if k.variant != orbit[0]:
            raise ValueError(f"point {p.label} is not labelled by its orbit representative")
        if (k.s, orbit[0]) in seen:
            raise ValueError(f"orbit of {p.label} appears twice")
        seen.add((k.s, orbit[0]))
        module = gd.restrict_group(p.module, "1", {})
        for v in orbit:
            label = str(CentralProduct(group, k.s, v))
            points.append(Type1Point(label, module, {}, dict(p.beta)))
    V = GradedVS(x.V.lo, x.V.hi, dict(x.V.dims), "1", {})
    return Type1Object(V, tuple(points), x.margin)
