"""The seven-block partition of the space of subgroups of U(2).

``block_of`` assigns blocks by descriptor tag.  The independent description
is the pullback along p: U(2) -> SO(3) of the SO(3) partition (``lift`` of
``so3_block_of``), and ``validate_partition`` checks the two against each
other, together with closure under cotoral specialization.  Fault-injection
rules live in ``FAULTS`` so the validator itself can be tested.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .lattice import INF
from .subgroups import (AMBIENT, NORMALIZER, TORUS, Ambient, CentralProduct, Full, SO3Class,
                        SubgroupClass, Toral, enumerate_subgroups, is_cotoral, project)
from .weyl import fusion_classes, u2_class_key, weyl


@dataclass(frozen=True)
class Block:
    id: str
    dominant: SubgroupClass
    dimension: int

    def to_json(self):
        return {"id": self.id, "dominant": self.dominant.to_json(), "dimension": self.dimension}


BLOCKS = {
    "T": Block("T", TORUS, 2),
    "N": Block("N", NORMALIZER, 2),
    "U2": Block("U2", AMBIENT, 1),
    "A5Z": Block("A5Z", CentralProduct("A5", INF), 1),
    "S4Z": Block("S4Z", CentralProduct("S4", INF), 1),
    "A4Z": Block("A4Z", CentralProduct("A4", INF), 1),
    "D4Z": Block("D4Z", CentralProduct("D4", INF), 1),
}
BLOCK_IDS = tuple(BLOCKS)

# SO(3) blocks and their preimages
SO3_BLOCK_IDS = ("SO2", "O2", "SO3", "A5", "S4", "A4", "D4")
_LIFT = {"SO2": "T", "O2": "N", "SO3": "U2", "A5": "A5Z", "S4": "S4Z", "A4": "A4Z", "D4": "D4Z"}


def so3_block_of(c: SO3Class) -> str:
    if c.kind in ("cyclic", "SO2"):
        return "SO2"
    if c.kind in ("dihedral", "O2"):
        return "O2"
    return c.kind


def lift(so3_block: str) -> str:
    return _LIFT[so3_block]


def block_id(k: SubgroupClass) -> str:
    """Block id by descriptor tag."""
    if isinstance(k, Ambient):
        return "U2"
    if isinstance(k, CentralProduct):
        return "U2" if k.group == "SU2" else k.group + "Z"
    if isinstance(k, Toral):
        return "T"
    if isinstance(k, Full):
        if k.n == 1:
            return "T"
        if k.n == 2:
            return "D4Z"
        return "N"
    raise TypeError(f"not a subgroup descriptor: {k!r}")


def block_of(k: SubgroupClass) -> Block:
    return BLOCKS[block_id(k)]


# -- validation -----------------------------------------------------------------

Rule = Callable[[SubgroupClass], str]


def _fault(base: Rule, when: Callable[[SubgroupClass], bool], to) -> Rule:
    return lambda k: to if when(k) else base(k)


FAULTS: dict[str, Rule] = {
    # Full(m, 2) sent to the dihedral block
    "d4_full_to_N": _fault(block_id, lambda k: isinstance(k, Full) and k.n == 2, "N"),
    # abelian full subgroups left in N
    "abelian_full_to_N": _fault(block_id, lambda k: isinstance(k, Full) and k.n == 1, "N"),
    # central toral subgroups moved to the SU(2) block
    "centre_to_U2": _fault(block_id, lambda k: isinstance(k, Toral) and (1, -1) in k.lattice,
                           "U2"),
    # A4 and S4 blocks merged
    "a4_into_s4": _fault(block_id, lambda k: isinstance(k, CentralProduct) and k.group == "A4",
                         "S4Z"),
    # finite-centre SU(2) products split off from U(2)
    "su2_finite_to_T": _fault(block_id, lambda k: isinstance(k, CentralProduct)
                              and k.group == "SU2", "T"),
    # a rule that is not total
    "partial_rule": _fault(block_id, lambda k: k == NORMALIZER, None),
    # a rule that separates U(2)-conjugate descriptors
    "splits_fused_pair": _fault(block_id, lambda k: isinstance(k, CentralProduct)
                                and k.group == "D4" and k.variant == 3, "N"),
}


@dataclass
class PartitionReport:
    truncation: int
    blocks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v["kind"] for v in self.violations}

    def to_json(self):
        return {"truncation": self.truncation, "ok": self.ok, "blocks": self.blocks,
                "pairs_checked": self.pairs_checked, "violations": self.violations}


def validate_partition(truncation: int, rule: Rule | None = None) -> PartitionReport:
    """Check ``rule`` (default: ``block_id``) on ``enumerate_subgroups(truncation)``.

    Checks: totality and single-valuedness (U(2)-conjugate descriptors get
    the same block), cotoral down-closure, and agreement with the lifted
    SO(3) partition.
    """
    rule = rule or block_id
    subs = enumerate_subgroups(truncation)
    report = PartitionReport(truncation, {b: 0 for b in BLOCK_IDS})
    assigned = {}
    for k in subs:
        b = rule(k)
        if b not in BLOCKS:
            report.violations.append({"kind": "not_total", "subgroup": k.to_json(), "got": b})
            continue
        if rule(k) != b:
            report.violations.append({"kind": "not_single_valued", "subgroup": k.to_json()})
        assigned[k] = b
        report.blocks[b] += 1
        expected = lift(so3_block_of(project(k)))
        if b != expected:
            report.violations.append({"kind": "projection", "subgroup": k.to_json(),
                                      "expected": expected, "got": b})
    for cls in fusion_classes(assigned):
        ids = {assigned[k] for k in cls}
        if len(ids) > 1:
            report.violations.append({"kind": "not_single_valued",
                                      "subgroups": [k.to_json() for k in cls],
                                      "got": sorted(ids)})
    items = list(assigned.items())
    for k, bk in items:
        for h, bh in items:
            if k is h:
                continue
            report.pairs_checked += 1
            if bk != bh and is_cotoral(k, h):
                report.violations.append({"kind": "cotoral", "subgroup": k.to_json(),
                                          "over": h.to_json(), "got": [bk, bh]})
    return report


# -- Burnside idempotents ---------------------------------------------------------

@dataclass
class BurnsideFunctions:
    """Q-valued functions on the U(2)-classes with finite Weyl group, at a truncation."""

    classes: list
    keys: list
    idempotents: dict

    def one(self):
        return tuple(Fraction(1) for _ in self.classes)

    def zero(self):
        return tuple(Fraction(0) for _ in self.classes)

    @staticmethod
    def mul(f, g):
        return tuple(x * y for x, y in zip(f, g))

    @staticmethod
    def add(f, g):
        return tuple(x + y for x, y in zip(f, g))

    def support(self, f) -> list:
        return [c for c, x in zip(self.classes, f) if x != 0]

    def check(self) -> dict:
        e = self.idempotents
        total = self.zero()
        for f in e.values():
            total = self.add(total, f)
        orthogonal = all(self.mul(e[a], e[b]) == self.zero()
                         for a in e for b in e if a != b)
        return {
            "idempotent": all(self.mul(f, f) == f for f in e.values()),
            "orthogonal": orthogonal,
            "sum_is_one": total == self.one(),
            # membership through the projection, independent of the tag rule
            "supports_match_blocks": all(
                set(map(u2_class_key, self.support(f)))
                == {u2_class_key(c) for c in self.classes
                    if lift(so3_block_of(project(c))) == a}
                for a, f in e.items()),
        }


def burnside_functions(truncation: int) -> BurnsideFunctions:
    reps = []
    for cls in fusion_classes(enumerate_subgroups(truncation)):
        rep = cls[0]
        if weyl(rep).is_finite:
            reps.append(rep)
    keys = [u2_class_key(r) for r in reps]
    idem = {a: tuple(Fraction(int(block_id(r) == a)) for r in reps) for a in BLOCK_IDS}
    return BurnsideFunctions(reps, keys, idem)
