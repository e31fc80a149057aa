"""0-dimensional objects: torsion modules over H*(BW^e) with a W^d action, at one subgroup.

H*(BW^e) is polynomial on ``identity_rank`` generators of codegree 2, each
stored as a degree -2 operator.  The component group may permute the
generators (the swap in the torus normalizer, say); ``generator_action``
records that as integer matrices, identity by default.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .. import subgroups as sg
from ..lattice import FULL, INF
from ..weyl import weyl
from . import groups as gr
from . import linalg as la
from .report import Report

DEFAULT_MARGIN = 3


@dataclass(frozen=True)
class TorsionModule:
    lo: int
    hi: int
    dims: dict
    ops: tuple                                   # one {degree: matrix M_d -> M_{d-2}} per generator
    group: str = "1"
    action: dict = field(default_factory=dict)   # generator -> degree -> matrix
    generator_action: dict = field(default_factory=dict)

    def dim(self, d):
        return self.dims.get(d, 0)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def to_json(self):
        return {
            "window": [self.lo, self.hi], "group": self.group,
            "dims": {str(d): self.dim(d) for d in self.degrees()},
            "ops": [{str(d): la.to_json(m) for d, m in op.items()} for op in self.ops],
            "action": {g: {str(d): la.to_json(m) for d, m in per.items()}
                       for g, per in self.action.items()},
            "generator_action": {g: [[str(x) for x in row] for row in m]
                                 for g, m in self.generator_action.items()},
        }

    @classmethod
    def from_json(cls, data):
        lo, hi = data["window"]
        return cls(lo, hi, {int(d): int(n) for d, n in data["dims"].items()},
                   tuple({int(d): la.from_json(m) for d, m in op.items()}
                         for op in data.get("ops", [])),
                   data.get("group", "1"),
                   {g: {int(d): la.from_json(m) for d, m in per.items()}
                    for g, per in data.get("action", {}).items()},
                   {g: [[Fraction(x) for x in row] for row in m]
                    for g, m in data.get("generator_action", {}).items()})


@dataclass(frozen=True)
class ZeroDimObject:
    subgroup: object
    module: TorsionModule
    ambient: str = "U2"
    margin: int = DEFAULT_MARGIN

    def to_json(self):
        return {"kind": "zero_dim", "subgroup": self.subgroup.to_json(), "ambient": self.ambient,
                "margin": self.margin, "module": self.module.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(sg.from_json(data["subgroup"]), TorsionModule.from_json(data["module"]),
                   data.get("ambient", "U2"), int(data.get("margin", DEFAULT_MARGIN)))


def _weyl_of(h, ambient):
    """Weyl data, refusing subgroups whose Weyl identity component is not a torus."""
    if isinstance(h, sg.Toral) and ambient == "U2" and (1, -1) in h.lattice:
        raise ValueError(f"the Weyl group of {h} in U(2) has non-abelian identity component")
    return weyl(h, ambient)


def validate_zero_dim(x: ZeroDimObject) -> Report:
    rep = Report("zero_dim")
    m = x.module
    try:
        w = _weyl_of(x.subgroup, x.ambient)
    except ValueError as exc:
        rep.fail("subgroup", detail=str(exc))
        return rep
    r = w.identity_rank
    if len(m.ops) != r:
        rep.fail("number of polynomial generators", expected=r, got=len(m.ops))
    if m.group != w.component_group:
        rep.fail("component group", expected=w.component_group, got=m.group)
    if rep.failures:
        return rep
    for i, op in enumerate(m.ops):
        for d in range(m.lo + 2, m.hi + 1):
            if d not in op or op[d].shape != (m.dim(d - 2), m.dim(d)):
                rep.fail("operator shape", generator=i, degree=d)
    for g in gr.generators(m.group):
        for d in m.degrees():
            if g not in m.action or d not in m.action[g] \
                    or m.action[g][d].shape != (m.dim(d), m.dim(d)):
                rep.fail("action shape", degree=d, detail=g)
    if rep.failures:
        return rep
    for d in m.degrees():
        acts = {g: m.action[g][d] for g in gr.generators(m.group)}
        for rel in gr.check_action(m.group, acts, m.dim(d)):
            rep.fail("group relation", degree=d, detail=rel)
    for d in range(m.lo + 4, m.hi + 1):
        for i in range(r):
            for j in range(i + 1, r):
                if not la.equal(la.mul(m.ops[i][d - 2], m.ops[j][d]),
                                la.mul(m.ops[j][d - 2], m.ops[i][d])):
                    rep.fail("generators commute", degree=d, detail=[i, j])
    for g in gr.generators(m.group):
        mat = m.generator_action.get(g)
        for d in range(m.lo + 2, m.hi + 1):
            for i in range(r):
                lhs = la.mul(m.action[g][d - 2], m.ops[i][d])
                rhs = la.zeros(m.dim(d - 2), m.dim(d))
                for j in range(r):
                    coeff = (mat[j][i] if mat is not None else int(i == j))
                    if coeff:
                        rhs = la.add(rhs, la.mul(la.scalar(m.dim(d - 2), coeff), m.ops[j][d],
                                                 m.action[g][d]))
                if not la.equal(lhs, rhs):
                    rep.fail("action compatible with generators", degree=d, detail=[g, i])
    if r:
        zone = range(m.lo, min(m.hi, m.lo + 2 * x.margin + 1) + 1)
        if any(m.dim(d) for d in zone):
            steps = [d for d in zone if d >= m.lo + 2]
            free_like = any(all(op[d].shape[0] == op[d].shape[1] and la.is_invertible(op[d])
                                for d in steps) for op in m.ops)
            if free_like:
                rep.fail("torsion", detail="a generator acts invertibly at the bottom")
            else:
                rep.inconclusive.append({"check": "torsion", "detail": "nonzero at the bottom"})
    return rep


def zero_dim_object(h, module: TorsionModule, ambient: str = "U2",
                    margin: int = DEFAULT_MARGIN) -> ZeroDimObject:
    """Build and validate; raises ValueError with the report if invalid."""
    x = ZeroDimObject(h, module, ambient, margin)
    rep = validate_zero_dim(x)
    if not rep.ok:
        raise ValueError(f"not a valid 0-dimensional object: {rep.to_json()}")
    return x


# -- constructors ----------------------------------------------------------------------

def string_module(lo, hi, top, length, group="1", rep=None, dim=1) -> TorsionModule:
    """Q[c]/(c^length)<top> (x) rep, with one polynomial generator."""
    rep = rep if rep is not None else gr.trivial(group, dim)
    present = {d: d <= top and (top - d) % 2 == 0 and (top - d) // 2 < length
               for d in range(lo, hi + 1)}
    dims = {d: dim if present[d] else 0 for d in range(lo, hi + 1)}
    op = {d: la.eye(dim) if present[d] and present[d - 2] else la.zeros(dims[d - 2], dims[d])
          for d in range(lo + 2, hi + 1)}
    action = {g: {d: rep[g] if dims[d] else la.zeros(0, 0) for d in range(lo, hi + 1)}
              for g in gr.generators(group)}
    return TorsionModule(lo, hi, dims, (op,), group, action)


def graded_module(lo, hi, pieces: dict, group="1") -> TorsionModule:
    """No polynomial generators: {degree: (rep, dim)}."""
    dims = {d: pieces[d][1] if d in pieces else 0 for d in range(lo, hi + 1)}
    action = {g: {d: pieces[d][0][g] if d in pieces else la.zeros(0, 0)
                  for d in range(lo, hi + 1)} for g in gr.generators(group)}
    return TorsionModule(lo, hi, dims, (), group, action)


def truncated_square(lo, hi, top, size) -> TorsionModule:
    """Q[x, y]/(x^size, y^size)<top> with C2 swapping x and y."""
    mono = {}
    for i in range(size):
        for j in range(size):
            mono.setdefault(top - 2 * (i + j), []).append((i, j))
    dims = {d: len(mono.get(d, [])) for d in range(lo, hi + 1)}
    if any(top - 2 * (i + j) < lo for i in range(size) for j in range(size)) or top > hi:
        raise ValueError("window too small for the truncated square")

    def op(di, dj):
        out = {}
        for d in range(lo + 2, hi + 1):
            rows = [[0] * dims[d] for _ in range(dims[d - 2])]
            for col, (i, j) in enumerate(mono.get(d, [])):
                tgt = (i + di, j + dj)
                if tgt in mono.get(d - 2, []):
                    rows[mono[d - 2].index(tgt)][col] = 1
            out[d] = la.qm(rows, (dims[d - 2], dims[d]))
        return out

    swap = {}
    for d in range(lo, hi + 1):
        basis = mono.get(d, [])
        rows = [[0] * len(basis) for _ in basis]
        for col, (i, j) in enumerate(basis):
            rows[basis.index((j, i))][col] = 1
        swap[d] = la.qm(rows, (len(basis), len(basis)))
    return TorsionModule(lo, hi, dims, (op(1, 0), op(0, 1)), "C2", {"a": swap},
                         {"a": [[0, 1], [1, 0]]})


def change_basis(m: TorsionModule, bases: dict) -> TorsionModule:
    inv = {d: bases[d].inv() if m.dim(d) else la.zeros(0, 0) for d in m.degrees()}
    ops = tuple({d: la.mul(inv[d - 2], op[d], bases[d]) for d in op} for op in m.ops)
    action = {g: {d: la.mul(inv[d], per[d], bases[d]) for d in per} for g, per in m.action.items()}
    return replace(m, ops=ops, action=action)


def direct_sum(*mods: TorsionModule) -> TorsionModule:
    first = mods[0]
    lo, hi = first.lo, first.hi
    dims = {d: sum(x.dim(d) for x in mods) for d in first.degrees()}
    ops = tuple({d: la.block_diag(*(x.ops[i][d] for x in mods)) for d in range(lo + 2, hi + 1)}
                for i in range(len(first.ops)))
    action = {g: {d: la.block_diag(*(x.action[g][d] for x in mods)) for d in first.degrees()}
              for g in gr.generators(first.group)}
    return TorsionModule(lo, hi, dims, ops, first.group, action, first.generator_action)


def _involution_entry(a) -> tuple[int, int] | None:
    """A column of an involution that is not an eigenvector, if any."""
    rows = la.entries(a)
    for j in range(a.shape[1]):
        if any(rows[i][j] for i in range(a.shape[0]) if i != j):
            return j
    return None


def random_zero_dim(rng: np.random.Generator, lo: int = -8, hi: int = 8,
                    margin: int = DEFAULT_MARGIN) -> ZeroDimObject:
    pool = _pool()
    h, ambient = pool[int(rng.integers(len(pool)))]
    w = weyl(h, ambient)
    group, r = w.component_group, w.identity_rank
    floor = lo + 2 * margin + 2
    if r == 2:
        top = int(rng.integers(floor + 4, hi + 1))
        size = 3 if top - 8 >= floor and rng.random() < 0.5 else 2
        mod = truncated_square(lo, hi, top, size)
    elif r == 1:
        parts = [string_module(lo, hi, int(rng.integers(floor, hi + 1)), 1, group,
                               gr.regular(group), gr.order(group))]
        for _ in range(int(rng.integers(0, 3))):
            length = int(rng.integers(1, 3))
            top = int(rng.integers(floor + 2 * (length - 1), hi + 1))
            rep, dim = gr.random_rep(rng, group, max_copies=1)
            if dim:
                parts.append(string_module(lo, hi, top, length, group, rep, dim))
        mod = direct_sum(*parts)
    else:
        pieces = {int(rng.integers(lo, hi + 1)): (gr.regular(group), gr.order(group))}
        for d in range(lo, hi + 1):
            if d not in pieces and rng.random() < 0.3:
                rep, dim = gr.random_rep(rng, group, max_copies=1)
                if dim:
                    pieces[d] = (rep, dim)
        mod = graded_module(lo, hi, pieces, group)
    bases = {d: la.random_invertible(rng, mod.dim(d)) for d in mod.degrees()}
    moved = change_basis(mod, bases)
    if _witness(moved) is not None:
        mod = moved
    return ZeroDimObject(h, mod, ambient, margin)


def _pool():
    return [
        (sg.CentralProduct("A4", 3, 0), "U2"),
        (sg.CentralProduct("D4", 3, 0), "U2"),
        (sg.CentralProduct("D4", 3, 1), "U2"),
        (sg.CentralProduct("D4", INF, 0), "U2"),
        (sg.TORUS, "U2"),
        (sg.Toral(FULL), "N"),
    ]


def _witness(m: TorsionModule):
    gen = "a" if "a" in m.action else None
    if gen is None:
        return None
    for d in m.degrees():
        if m.dim(d):
            j = _involution_entry(m.action[gen][d])
            if j is not None:
                return gen, d, j
    return None


def mutate_zero_dim(x: ZeroDimObject, rng: np.random.Generator) -> tuple[ZeroDimObject, dict]:
    """Change one entry of an involution in a column that is not an eigenvector.

    Writing A for the involution and E = e_j e_b^T, (A + tE)^2 - 1 has the
    nonzero off-diagonal part of t A e_j outside row j, so the relation a^2
    is broken.
    """
    found = _witness(x.module)
    if found is None:
        raise ValueError("object has no non-diagonal involution to perturb")
    g, d, j = found
    a = x.module.action[g][d]
    b = int(rng.integers(a.shape[1]))
    old = la.entries(a)[j][b]
    action = {k: dict(v) for k, v in x.module.action.items()}
    action[g][d] = la.with_entry(a, j, b, old + la.random_nonzero(rng))
    return replace(x, module=replace(x.module, action=action)), {"degree": d, "entry": [j, b]}
