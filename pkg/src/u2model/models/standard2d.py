"""A finite stand-in for the standard 2-dimensional model with its four corners.

The points of the support are the labels in ``N1`` other than ``TAIL``;
``TAIL`` stands for the germ at the compactifying point, where the
idempotent direction is inverted.  The corners are:

  N1[k]   graded Q[c]-module at each point (including the tail)
  NZ[k]   periodic module, stored as its two parity pieces, with ellZ[k]: N1[k] -> NZ[k]
  NT      Q[c]-module at the tail, with ellT: N1[TAIL] -> NT
  NG      periodic module at the tail, with ellTG: NT -> NG and ellZG: NZ[TAIL] -> NG

Quasicoherence: ellZ and ellTG invert c (c-compatible, isomorphisms at the
bottom of the window), ellT and ellZG are isomorphisms, and the square
commutes.  Extendedness: each corner is base-changed from vertex data
through the witnesses psiZ, psiT, psiG.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import graded as gd
from . import linalg as la
from .graded import CModule, GradedVS
from .report import Report
from .type1 import build_point

TAIL = "tail"
DEFAULT_MARGIN = 3


def _mats_json(d):
    return {str(k): la.to_json(m) for k, m in d.items()}


def _mats_from(d):
    return {int(k): la.from_json(m) for k, m in d.items()}


@dataclass(frozen=True)
class Standard2DObject:
    N1: dict
    NZ: dict            # label -> (dim of even part, dim of odd part)
    ellZ: dict          # label -> degree -> matrix
    NT: CModule
    ellT: dict          # degree -> matrix
    NG: tuple
    ellTG: dict         # degree -> matrix
    ellZG: dict         # parity -> matrix
    phiZ: dict          # label -> GradedVS
    psiZ: dict          # label -> parity -> matrix
    phiT: GradedVS
    psiT: dict          # degree -> matrix
    phiG: GradedVS
    psiG: dict          # parity -> matrix
    margin: int = DEFAULT_MARGIN

    @property
    def lo(self):
        return self.NT.lo

    @property
    def hi(self):
        return self.NT.hi

    @property
    def points(self):
        return [k for k in self.N1 if k != TAIL]

    def to_json(self):
        return {
            "kind": "standard2d", "margin": self.margin,
            "N1": {k: m.to_json() for k, m in self.N1.items()},
            "NZ": {k: list(v) for k, v in self.NZ.items()},
            "ellZ": {k: _mats_json(v) for k, v in self.ellZ.items()},
            "NT": self.NT.to_json(), "ellT": _mats_json(self.ellT),
            "NG": list(self.NG), "ellTG": _mats_json(self.ellTG), "ellZG": _mats_json(self.ellZG),
            "phiZ": {k: v.to_json() for k, v in self.phiZ.items()},
            "psiZ": {k: _mats_json(v) for k, v in self.psiZ.items()},
            "phiT": self.phiT.to_json(), "psiT": _mats_json(self.psiT),
            "phiG": self.phiG.to_json(), "psiG": _mats_json(self.psiG),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            {k: CModule.from_json(m) for k, m in data["N1"].items()},
            {k: tuple(v) for k, v in data["NZ"].items()},
            {k: _mats_from(v) for k, v in data["ellZ"].items()},
            CModule.from_json(data["NT"]), _mats_from(data["ellT"]),
            tuple(data["NG"]), _mats_from(data["ellTG"]), _mats_from(data["ellZG"]),
            {k: GradedVS.from_json(v) for k, v in data["phiZ"].items()},
            {k: _mats_from(v) for k, v in data["psiZ"].items()},
            GradedVS.from_json(data["phiT"]), _mats_from(data["psiT"]),
            GradedVS.from_json(data["phiG"]), _mats_from(data["psiG"]),
            int(data.get("margin", DEFAULT_MARGIN)),
        )


def free_over(V: GradedVS) -> CModule:
    """Q[c] (x) V: a copy of Q[c]<e> (x) V_e for each degree e."""
    parts = [gd.free_module(V.lo, V.hi, e, None, V.dim(e)) for e in V.degrees() if V.dim(e)]
    return gd.direct_sum(*parts) if parts else gd.zero_module(V.lo, V.hi)


def canonical_map(V: GradedVS, d: int):
    """(Q[c] (x) V)_d -> (Q[c, 1/c] (x) V)_d, the parity block."""
    rows = V.laurent_dim(d % 2)
    cols = []
    for e, off, size in V.laurent_blocks(d % 2):
        if size and e >= d:
            cols.append(la.vstack(la.zeros(off, size), la.eye(size),
                                  la.zeros(rows - off - size, size), cols=size))
    return la.hstack(*cols, rows=rows)


def _shape(rep, name, mat, shape, **where):
    if mat is None or mat.shape != shape:
        rep.fail(name + " shape", **where)
        return False
    return True


def _inverts_c(rep, what, module: CModule, ell: dict, margin: int, **where):
    for d in range(module.lo + 2, module.hi + 1):
        if not la.equal(la.mul(ell[d - 2], module.c[d]), ell[d]):
            rep.fail(what + " compatible with c", degree=d, **where)
    if not module.window_fits(margin) or module.unstable_bottom(margin):
        rep.inconclusive.append({"check": what + ": c not stable at the bottom", **where})
        return
    for d in (module.lo, module.lo + 1):
        if not la.is_invertible(ell[d]):
            rep.fail(what + " invertible after inverting c", degree=d, **where)


def validate_standard2d(x: Standard2DObject) -> Report:
    rep = Report("standard2d")
    lo, hi = x.lo, x.hi
    degrees = range(lo, hi + 1)
    if TAIL not in x.N1:
        rep.fail("missing tail module")
        return rep
    for k, m in x.N1.items():
        if (m.lo, m.hi) != (lo, hi):
            rep.fail("window mismatch", point=k)
        for f in m.check():
            rep.fail("N1: " + f["check"], point=k, degree=f["degree"])
        if k not in x.NZ or k not in x.ellZ:
            rep.fail("missing periodic corner", point=k)
            continue
        for d in degrees:
            _shape(rep, "ellZ", x.ellZ[k].get(d), (x.NZ[k][d % 2], m.dim(d)), point=k, degree=d)
    n1t = x.N1[TAIL]
    for d in degrees:
        _shape(rep, "ellT", x.ellT.get(d), (x.NT.dim(d), n1t.dim(d)), degree=d)
        _shape(rep, "ellTG", x.ellTG.get(d), (x.NG[d % 2], x.NT.dim(d)), degree=d)
    for p in (0, 1):
        if TAIL in x.NZ:
            _shape(rep, "ellZG", x.ellZG.get(p), (x.NG[p], x.NZ[TAIL][p]), parity=p)
    if rep.failures:
        return rep

    # quasicoherence
    for k, m in x.N1.items():
        _inverts_c(rep, "ellZ", m, x.ellZ[k], x.margin, point=k)
    for d in degrees:
        if not la.is_invertible(x.ellT[d]):
            rep.fail("ellT invertible", degree=d)
        if d >= lo + 2 and not la.equal(la.mul(x.NT.c[d], x.ellT[d]),
                                         la.mul(x.ellT[d - 2], n1t.c[d])):
            rep.fail("ellT commutes with c", degree=d)
    _inverts_c(rep, "ellTG", x.NT, x.ellTG, x.margin, point=TAIL)
    for p in (0, 1):
        if not la.is_invertible(x.ellZG[p]):
            rep.fail("ellZG invertible", parity=p)
    for d in degrees:
        if not la.equal(la.mul(x.ellZG[d % 2], x.ellZ[TAIL][d]), la.mul(x.ellTG[d], x.ellT[d])):
            rep.fail("square commutes", degree=d)

    # extendedness
    for k in x.N1:
        phi = x.phiZ.get(k)
        for p in (0, 1):
            psi = x.psiZ.get(k, {}).get(p)
            if phi is None or psi is None or psi.shape != (x.NZ[k][p], phi.laurent_dim(p)) \
                    or not la.is_invertible(psi):
                rep.fail("NZ extended from vertex data", point=k, parity=p)
    free = free_over(x.phiT)
    for d in degrees:
        psi = x.psiT.get(d)
        if psi is None or psi.shape != (x.NT.dim(d), free.dim(d)) or not la.is_invertible(psi):
            rep.fail("NT extended from vertex data", degree=d)
    if not any(f["check"] == "NT extended from vertex data" for f in rep.failures):
        for d in range(lo + 2, hi + 1):
            if not la.equal(la.mul(x.NT.c[d], x.psiT[d]), la.mul(x.psiT[d - 2], free.c[d])):
                rep.fail("psiT commutes with c", degree=d)
    for p in (0, 1):
        psi = x.psiG.get(p)
        if psi is None or psi.shape != (x.NG[p], x.phiG.laurent_dim(p)) \
                or not la.is_invertible(psi):
            rep.fail("NG extended from vertex data", parity=p)
    return rep


# -- constructors ------------------------------------------------------------------------

def _periodic_dims(V: GradedVS):
    return (V.laurent_dim(0), V.laurent_dim(1))


def unit_object(lo: int, hi: int, labels, margin: int = DEFAULT_MARGIN) -> Standard2DObject:
    """The structure ring itself: Q[c] at every point, Q[c, 1/c] on the periodic corners."""
    V = gd.graded_vs(lo, hi, {0: ({}, 1)})
    return _assemble(lo, hi, {k: (V, {0: 0}, [], None, None) for k in labels},
                     V, None, None, None, None, margin)


def _assemble(lo, hi, point_data, U, B, C, A_tail, G, margin) -> Standard2DObject:
    """Glue point data and tail data; None for a basis change means the identity."""
    N1, NZ, ellZ, phiZ, psiZ = {}, {}, {}, {}, {}
    for k, (W, tops, torsion, A, bases) in point_data.items():
        pt = build_point(W, k, tops, torsion, "1", {})
        module, beta = pt.module, pt.beta
        if bases is not None:
            module = gd.change_basis(module, bases)
            beta = {d: la.mul(beta[d], bases[d]) for d in beta}
        A = A or {p: la.eye(W.laurent_dim(p)) for p in (0, 1)}
        N1[k] = module
        NZ[k] = _periodic_dims(W)
        ellZ[k] = {d: la.mul(A[d % 2], beta[d]) for d in beta}
        phiZ[k], psiZ[k] = W, A

    free = free_over(U)
    degs = range(lo, hi + 1)
    ident = {d: la.eye(free.dim(d)) for d in degs}
    B = B or ident
    C = C or ident
    A_tail = A_tail or {p: la.eye(U.laurent_dim(p)) for p in (0, 1)}
    G = G or {p: la.eye(U.laurent_dim(p)) for p in (0, 1)}
    binv = {d: B[d].inv() if free.dim(d) else la.zeros(0, 0) for d in degs}
    N1[TAIL] = gd.change_basis(free, C)
    NT = gd.change_basis(free, B)
    beta0 = {d: canonical_map(U, d) for d in degs}
    NZ[TAIL] = _periodic_dims(U)
    ellZ[TAIL] = {d: la.mul(A_tail[d % 2], beta0[d], C[d]) for d in degs}
    phiZ[TAIL], psiZ[TAIL] = U, A_tail
    ellT = {d: la.mul(binv[d], C[d]) for d in degs}
    ellTG = {d: la.mul(G[d % 2], beta0[d], B[d]) for d in degs}
    ellZG = {p: la.mul(G[p], A_tail[p].inv() if U.laurent_dim(p) else la.zeros(0, 0))
             for p in (0, 1)}
    return Standard2DObject(N1, NZ, ellZ, NT, ellT, (U.laurent_dim(0), U.laurent_dim(1)), ellTG,
                            ellZG, phiZ, psiZ, U, binv, U, G, margin)


def _random_vs(rng, lo, hi):
    pieces = {}
    for e in range(-1, 2):
        n = int(rng.integers(0, 3))
        if n:
            pieces[e] = ({}, n)
    if not pieces:
        pieces[0] = ({}, 1)
    return gd.graded_vs(lo, hi, pieces)


def random_standard2d(rng: np.random.Generator, n_points: int | None = None, lo: int = -10,
                      hi: int = 3, margin: int = DEFAULT_MARGIN) -> Standard2DObject:
    """Random vertex data phiZ, phiT, phiG with random bases on every corner."""
    if n_points is None:
        n_points = int(rng.integers(1, 4))
    zone_top = lo + 2 * margin + 1
    degs = range(lo, hi + 1)
    point_data = {}
    for i in range(n_points):
        W = _random_vs(rng, lo, hi)
        tops = {}
        for e in W.degrees():
            if W.dim(e):
                choices = [t for t in range(zone_top - 1, hi + 1) if (t - e) % 2 == 0]
                tops[e] = int(rng.choice(choices))
        torsion = []
        for _ in range(int(rng.integers(0, 3))):
            length = int(rng.integers(1, 3))
            top_choices = list(range(zone_top + 1 + 2 * (length - 1), hi + 1))
            if top_choices:
                torsion.append((int(rng.choice(top_choices)), length, {}, int(rng.integers(1, 3))))
        A = {p: la.random_invertible(rng, W.laurent_dim(p)) for p in (0, 1)}
        pt = build_point(W, f"k{i}", tops, torsion, "1", {})
        bases = {d: la.random_invertible(rng, pt.module.dim(d)) for d in degs}
        point_data[f"k{i}"] = (W, tops, torsion, A, bases)
    U = _random_vs(rng, lo, hi)
    free = free_over(U)
    B = {d: la.random_invertible(rng, free.dim(d)) for d in degs}
    C = {d: la.random_invertible(rng, free.dim(d)) for d in degs}
    A_tail = {p: la.random_invertible(rng, U.laurent_dim(p)) for p in (0, 1)}
    G = {p: la.random_invertible(rng, U.laurent_dim(p)) for p in (0, 1)}
    return _assemble(lo, hi, point_data, U, B, C, A_tail, G, margin)


def mutate_standard2d(x: Standard2DObject, rng: np.random.Generator):
    """Change one entry of one ellZ map."""
    spots = [(k, d) for k, per in x.ellZ.items() for d, m in per.items() if min(m.shape)]
    k, d = spots[int(rng.integers(len(spots)))]
    m = x.ellZ[k][d]
    a, b = int(rng.integers(m.shape[0])), int(rng.integers(m.shape[1]))
    ellZ = {kk: dict(v) for kk, v in x.ellZ.items()}
    ellZ[k][d] = la.with_entry(m, a, b, la.entries(m)[a][b] + la.random_nonzero(rng))
    return replace(x, ellZ=ellZ), {"point": k, "degree": d, "entry": [a, b]}


def kill_top_corner(x: Standard2DObject) -> Standard2DObject:
    """Replace NG (and its vertex data) by zero."""
    zero = gd.graded_vs(x.lo, x.hi, {})
    return replace(x, NG=(0, 0),
                   ellTG={d: la.zeros(0, x.NT.dim(d)) for d in range(x.lo, x.hi + 1)},
                   ellZG={p: la.zeros(0, x.NZ[TAIL][p]) for p in (0, 1)},
                   phiG=zero, psiG={0: la.zeros(0, 0), 1: la.zeros(0, 0)})
