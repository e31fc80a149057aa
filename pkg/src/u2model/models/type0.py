"""Type 0 objects: a vector space F_H spread into stalks F_k at finitely many points.

Inverting the idempotents that are 1 almost everywhere means that an element
of F_H may die at finitely many stalks but not at all of them.  At finite
support this becomes: the spreading maps, stacked over the points outside a
declared exception set, are injective in every degree.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import graded as gd
from . import groups as gr
from . import linalg as la
from .graded import GradedVS
from .report import Report


@dataclass(frozen=True)
class Stalk:
    label: str
    F: GradedVS
    hom: dict           # generator of the stalk group -> word in the group of F_H
    sigma: dict         # degree -> matrix F_H -> F_k

    def to_json(self):
        return {"label": self.label, "F": self.F.to_json(), "hom": self.hom,
                "sigma": {str(d): la.to_json(m) for d, m in self.sigma.items()}}

    @classmethod
    def from_json(cls, data):
        return cls(data["label"], GradedVS.from_json(data["F"]),
                   {g: list(w) for g, w in data.get("hom", {}).items()},
                   {int(d): la.from_json(m) for d, m in data["sigma"].items()})


@dataclass(frozen=True)
class Type0Object:
    FH: GradedVS
    stalks: tuple
    exceptions: frozenset = frozenset()

    def to_json(self):
        return {"kind": "type0", "FH": self.FH.to_json(),
                "stalks": [s.to_json() for s in self.stalks],
                "exceptions": sorted(self.exceptions)}

    @classmethod
    def from_json(cls, data):
        return cls(GradedVS.from_json(data["FH"]),
                   tuple(Stalk.from_json(s) for s in data["stalks"]),
                   frozenset(data.get("exceptions", [])))


def validate_type0(x: Type0Object) -> Report:
    rep = Report("type0")
    FH = x.FH
    for f in FH.check():
        rep.fail("FH: " + f["check"], degree=f["degree"])
    labels = [s.label for s in x.stalks]
    for lab in x.exceptions - set(labels):
        rep.fail("unknown exception", point=lab)
    for s in x.stalks:
        if (s.F.lo, s.F.hi) != (FH.lo, FH.hi):
            rep.fail("window mismatch", point=s.label)
            continue
        for f in s.F.check():
            rep.fail("stalk: " + f["check"], point=s.label, degree=f["degree"])
        for f in gr.check_homomorphism(s.F.group, FH.group, s.hom):
            rep.fail("component map", point=s.label, detail=f)
        for d in FH.degrees():
            if d not in s.sigma or s.sigma[d].shape != (s.F.dim(d), FH.dim(d)):
                rep.fail("sigma shape", point=s.label, degree=d)
    if rep.failures:
        return rep
    for s in x.stalks:
        for g in gr.generators(s.F.group):
            for d in FH.degrees():
                lhs = la.mul(s.sigma[d], gr.word_matrix(FH.degree_action(d), s.hom[g], FH.dim(d)))
                rhs = la.mul(s.F.action[g][d], s.sigma[d])
                if not la.equal(lhs, rhs):
                    rep.fail("sigma equivariant", point=s.label, degree=d, detail=g)
    kept = [s for s in x.stalks if s.label not in x.exceptions]
    for d in FH.degrees():
        if not FH.dim(d):
            continue
        stacked = la.vstack(*(s.sigma[d] for s in kept), cols=FH.dim(d))
        if la.rank(stacked) < FH.dim(d):
            rep.fail("spreading map injective off the exceptions", degree=d)
    return rep


# -- constructors -------------------------------------------------------------------

def _swap(n: int):
    return la.vstack(la.hstack(la.zeros(n, n), la.eye(n), rows=n),
                     la.hstack(la.eye(n), la.zeros(n, n), rows=n), cols=2 * n)


def constant_object(lo: int, hi: int, labels) -> Type0Object:
    """F_H = Q in degree 0 mapping diagonally into Q at every point."""
    FH = gd.graded_vs(lo, hi, {0: ({}, 1)})
    stalks = tuple(Stalk(lab, FH, {}, {d: la.eye(FH.dim(d)) for d in FH.degrees()})
                   for lab in labels)
    return Type0Object(FH, stalks)


def dihedral_object(lo: int, hi: int, n_points: int, fixed: bool = True) -> Type0Object:
    """O(2)-shaped data: W = C2 at the dihedral points, trivial at O(2) itself.

    With ``fixed`` the stalks are Q with trivial C2 action; otherwise they are
    the regular representation and F_H = Q goes in diagonally.
    """
    FH = gd.graded_vs(lo, hi, {0: ({}, 1)})
    stalks = []
    for i in range(n_points):
        if fixed:
            F = gd.graded_vs(lo, hi, {0: (gr.trivial("C2"), 1)}, "C2")
            sig = la.eye(1)
        else:
            F = gd.graded_vs(lo, hi, {0: (gr.regular("C2"), 2)}, "C2")
            sig = la.qm([[1], [1]])
        sigma = {d: sig if d == 0 else la.zeros(F.dim(d), FH.dim(d)) for d in FH.degrees()}
        stalks.append(Stalk(f"D{2 * (i + 1)}", F, {"a": []}, sigma))
    return Type0Object(FH, tuple(stalks))


WITNESS = "witness"


def random_type0(rng: np.random.Generator, group: str | None = None, n_points: int | None = None,
                 lo: int = 0, hi: int = 3) -> Type0Object:
    """A random valid object.

    One point (label "witness") always has group C2 mapping trivially, with
    stalk two copies of F_H swapped by the generator and the diagonal
    spreading map; it carries injectivity by itself.
    """
    if group is None:
        group = ["1", "C2", "C3", "S3"][int(rng.integers(4))]
    if n_points is None:
        n_points = int(rng.integers(1, 4))
    pieces = {}
    for e in range(lo, hi + 1):
        rep, dim = gr.random_rep(rng, group, max_copies=1 if group == "S3" else 2)
        if dim:
            pieces[e] = (rep, dim)
    if not pieces:
        pieces[lo] = (gr.trivial(group), 1)
    FH = gd.graded_vs(lo, hi, pieces, group)

    dims = {d: 2 * FH.dim(d) for d in FH.degrees()}
    wit = GradedVS(lo, hi, dims, "C2", {"a": {d: _swap(FH.dim(d)) for d in FH.degrees()}})
    stalks = [Stalk(WITNESS, wit, {"a": []},
                    {d: la.vstack(la.eye(FH.dim(d)), la.eye(FH.dim(d)), cols=FH.dim(d))
                     for d in FH.degrees()})]
    exceptions = set()
    for i in range(n_points):
        lab = f"k{i}"
        same = group != "1" and rng.random() < 0.6
        extra = {}
        for d in FH.degrees():
            r, n = gr.random_rep(rng, group if same else "1", max_copies=1)
            extra[d] = (r, n)
        if same:
            hom = {g: [g] for g in gr.generators(group)}
            pg = group
        else:
            hom, pg = {}, "1"
        dims = {d: FH.dim(d) + extra[d][1] for d in FH.degrees()}
        action = {g: {d: la.block_diag(FH.action[g][d], extra[d][0][g]) for d in FH.degrees()}
                  for g in gr.generators(pg)}
        if rng.random() < 0.3:
            sigma = {d: la.zeros(dims[d], FH.dim(d)) for d in FH.degrees()}
        else:
            t = la.random_nonzero(rng)
            sigma = {d: la.vstack(la.scalar(FH.dim(d), t), la.zeros(extra[d][1], FH.dim(d)),
                                  cols=FH.dim(d)) for d in FH.degrees()}
        F = GradedVS(lo, hi, dims, pg, action)
        if pg == "1":
            bases = {d: la.random_invertible(rng, dims[d]) for d in FH.degrees()}
            sigma = {d: la.mul(bases[d].inv() if dims[d] else la.zeros(0, 0), sigma[d])
                     for d in FH.degrees()}
        stalks.append(Stalk(lab, F, hom, sigma))
        if rng.random() < 0.3:
            exceptions.add(lab)
    order = rng.permutation(len(stalks))
    return Type0Object(FH, tuple(stalks[i] for i in order), frozenset(exceptions))


def mutate_type0(x: Type0Object, rng: np.random.Generator) -> tuple[Type0Object, dict]:
    """Change one entry of the witness spreading map, which breaks C2-equivariance."""
    idx = next(i for i, s in enumerate(x.stalks) if s.label == WITNESS)
    s = x.stalks[idx]
    degs = [d for d in x.FH.degrees() if x.FH.dim(d)]
    d = degs[int(rng.integers(len(degs)))]
    r, c = s.sigma[d].shape
    a, b = int(rng.integers(r)), int(rng.integers(c))
    old = la.entries(s.sigma[d])[a][b]
    sigma = dict(s.sigma)
    sigma[d] = la.with_entry(s.sigma[d], a, b, old + la.random_nonzero(rng))
    stalks = list(x.stalks)
    stalks[idx] = replace(s, sigma=sigma)
    return replace(x, stalks=tuple(stalks)), {"point": WITNESS, "degree": d, "entry": [a, b]}
