"""Objects of the Type 1 model: beta_k: N_k -> Q[c, 1/c] (x) V at finitely many points.

A point carries a graded Q[c]-module N_k with an action of its component
group W_k, a homomorphism W_k -> W_H (generator -> word), and beta_k given
degreewise as a matrix into the parity block of V.  Points outside the
recorded support are implicitly standard.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import graded as gd
from . import groups as gr
from . import linalg as la
from .graded import CModule, GradedVS
from .report import Report

DEFAULT_MARGIN = 3


@dataclass(frozen=True)
class Type1Point:
    label: str
    module: CModule
    hom: dict
    beta: dict          # degree -> matrix

    def to_json(self):
        return {"label": self.label, "module": self.module.to_json(),
                "hom": self.hom, "beta": {str(d): la.to_json(m) for d, m in self.beta.items()}}

    @classmethod
    def from_json(cls, data):
        return cls(data["label"], CModule.from_json(data["module"]),
                   {g: list(w) for g, w in data.get("hom", {}).items()},
                   {int(d): la.from_json(m) for d, m in data["beta"].items()})


@dataclass(frozen=True)
class Type1Object:
    V: GradedVS
    points: tuple
    margin: int = DEFAULT_MARGIN

    @property
    def lo(self):
        return self.V.lo

    @property
    def hi(self):
        return self.V.hi

    def point(self, label: str) -> Type1Point:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)

    @property
    def labels(self):
        return [p.label for p in self.points]

    def to_json(self):
        return {"kind": "type1", "margin": self.margin, "V": self.V.to_json(),
                "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data):
        return cls(GradedVS.from_json(data["V"]),
                   tuple(Type1Point.from_json(p) for p in data["points"]),
                   int(data.get("margin", DEFAULT_MARGIN)))


def laurent_word(V: GradedVS, word, parity: int):
    acts = {g: V.laurent_action(g, parity) for g in gr.generators(V.group)}
    return gr.word_matrix(acts, word, V.laurent_dim(parity))


# -- validation ---------------------------------------------------------------------

def validate_type1(x: Type1Object) -> Report:
    rep = Report("type1")
    V = x.V
    for f in V.check():
        rep.fail("V: " + f["check"], degree=f["degree"], detail=f["detail"])
    for p in x.points:
        n = p.module
        if (n.lo, n.hi) != (V.lo, V.hi):
            rep.fail("window mismatch", point=p.label)
            continue
        for f in n.check():
            rep.fail("module: " + f["check"], point=p.label, degree=f["degree"])
        for f in gr.check_homomorphism(n.group, V.group, p.hom):
            rep.fail("component map", point=p.label, detail=f)
        for d in n.degrees():
            want = (V.laurent_dim(d % 2), n.dim(d))
            if d not in p.beta or p.beta[d].shape != want:
                rep.fail("beta shape", point=p.label, degree=d)
    if rep.failures:
        return rep
    for p in x.points:
        _check_point(x, p, rep)
    return rep


def _check_point(x: Type1Object, p: Type1Point, rep: Report):
    n, V, beta = p.module, x.V, p.beta
    for d in range(n.lo + 2, n.hi + 1):
        if not la.equal(la.mul(beta[d - 2], n.c[d]), beta[d]):
            rep.fail("beta commutes with c", point=p.label, degree=d)
    for g in gr.generators(n.group):
        for d in n.degrees():
            lhs = la.mul(beta[d], n.action[g][d])
            rhs = la.mul(laurent_word(V, p.hom[g], d), beta[d])
            if not la.equal(lhs, rhs):
                rep.fail("beta equivariant", point=p.label, degree=d, detail=g)
    if not n.window_fits(x.margin):
        rep.inconclusive.append({"check": "window too small", "point": p.label})
        return
    unstable = n.unstable_bottom(x.margin)
    if unstable:
        rep.inconclusive.append({"check": "c not invertible at the bottom", "point": p.label,
                                 "degrees": unstable})
        return
    for d in (n.lo, n.lo + 1):
        if not la.is_invertible(beta[d]):
            rep.fail("beta invertible after inverting c", point=p.label, degree=d)


# -- constructors -------------------------------------------------------------------

def _beta_free(V: GradedVS, e: int, d: int, block) -> "la.Mat":
    """Matrix sending V_e (in degree d) into the parity block of V by ``block``."""
    rows = V.laurent_dim(d % 2)
    out = la.zeros(rows, V.dim(e))
    for e2, off, size in V.laurent_blocks(d % 2):
        if e2 == e:
            out = la.vstack(la.zeros(off, size), block, la.zeros(rows - off - size, size),
                            cols=size)
    return out


def build_point(V: GradedVS, label: str, free_tops: dict, torsion: list, point_group: str,
                hom: dict, scalars: dict | None = None) -> Type1Point:
    """A point whose module is the sum of Q[c]<t_e> (x) V_e and the given torsion strings.

    ``free_tops`` maps a degree e of V to the top t_e (same parity, t_e >= e is
    not required); ``torsion`` lists (top, length, rep, dim) with the point's
    group acting by ``rep``; ``scalars`` optionally maps e to an invertible
    matrix commuting with the action on V_e.
    """
    lo, hi = V.lo, V.hi
    pieces = []
    betas = []
    for e, t in free_tops.items():
        if not V.dim(e):
            continue
        rep = gr.pull_back({g: V.action[g][e] for g in gr.generators(V.group)}, hom, V.dim(e))
        pieces.append(gd.free_module(lo, hi, t, rep, V.dim(e), point_group))
        block = (scalars or {}).get(e, la.eye(V.dim(e)))
        betas.append((e, t, block))
    for top, length, rep, dim in torsion:
        pieces.append(gd.torsion_module(lo, hi, top, length, rep, dim, point_group))
        betas.append((None, None, None))
    module = gd.direct_sum(*pieces) if pieces else gd.zero_module(lo, hi, point_group)
    beta = {}
    for d in range(lo, hi + 1):
        cols = []
        for (e, t, block), piece in zip(betas, pieces):
            if e is None or not piece.dim(d):
                cols.append(la.zeros(V.laurent_dim(d % 2), piece.dim(d)))
            else:
                cols.append(_beta_free(V, e, d, block))
        beta[d] = la.hstack(*cols, rows=V.laurent_dim(d % 2))
    return Type1Point(label, module, dict(hom), beta)


def free_object(lo: int, hi: int, labels, margin: int = DEFAULT_MARGIN) -> Type1Object:
    """N_k = Q[c] at every point, V = Q in degree 0, beta the canonical map."""
    V = gd.graded_vs(lo, hi, {0: ({}, 1)})
    pts = tuple(build_point(V, lab, {0: 0}, [], "1", {}) for lab in labels)
    return Type1Object(V, pts, margin)


def torsion_object(lo: int, hi: int, labels, top: int, length: int,
                   margin: int = DEFAULT_MARGIN) -> Type1Object:
    V = gd.graded_vs(lo, hi, {})
    pts = tuple(build_point(V, lab, {}, [(top, length, {}, 1)], "1", {}) for lab in labels)
    return Type1Object(V, pts, margin)


def random_type1(rng: np.random.Generator, group: str | None = None, n_points: int | None = None,
                 lo: int = -10, hi: int = 3, margin: int = DEFAULT_MARGIN,
                 point_groups: list | None = None) -> Type1Object:
    """A random valid object: free parts matching V, torsion above the bottom zone.

    ``point_groups`` fixes, per point, whether the point carries the full
    group (True) or the trivial one (False); two objects built with the same
    choices can be compared by morphisms.
    """
    if group is None:
        group = ["1", "C2", "C3", "S3"][int(rng.integers(4))]
    if point_groups is not None:
        n_points = len(point_groups)
    elif n_points is None:
        n_points = int(rng.integers(1, 4))
    zone_top = lo + 2 * margin + 1
    pieces = {}
    for e in range(-1, 2):
        rep, dim = gr.random_rep(rng, group, max_copies=1 if group == "S3" else 2)
        if dim:
            pieces[e] = (rep, dim)
    if not pieces:
        pieces[0] = (gr.trivial(group), 1)
    V = gd.graded_vs(lo, hi, pieces, group)
    points = []
    for i in range(n_points):
        full = point_groups[i] if point_groups is not None else rng.random() < 0.6
        if group != "1" and full:
            pg, hom = group, {g: [g] for g in gr.generators(group)}
        else:
            pg, hom = "1", {}
        tops = {}
        for e in pieces:
            choices = [t for t in range(zone_top - 1, hi + 1) if (t - e) % 2 == 0]
            tops[e] = int(rng.choice(choices))
        torsion = []
        for _ in range(int(rng.integers(0, 3))):
            length = int(rng.integers(1, 3))
            low = zone_top + 1
            top_choices = [t for t in range(low + 2 * (length - 1), hi + 1)]
            if not top_choices:
                continue
            rep, dim = gr.random_rep(rng, pg, max_copies=1)
            if dim:
                torsion.append((int(rng.choice(top_choices)), length, rep, dim))
        scalars = {}
        for e, (_, dim) in pieces.items():
            if group == "1":
                scalars[e] = la.random_invertible(rng, dim)
            else:
                scalars[e] = la.scalar(dim, la.random_nonzero(rng))
        pt = build_point(V, f"k{i}", tops, torsion, pg, hom, scalars)
        if pg == "1":
            bases = {d: la.random_invertible(rng, pt.module.dim(d)) for d in pt.module.degrees()}
            module = gd.change_basis(pt.module, bases)
            beta = {d: la.mul(pt.beta[d], bases[d]) for d in pt.module.degrees()}
            pt = Type1Point(pt.label, module, pt.hom, beta)
        points.append(pt)
    return Type1Object(V, tuple(points), margin)


def mutate_type1(x: Type1Object, rng: np.random.Generator) -> tuple[Type1Object, dict]:
    """Change one entry of one beta_k; returns the mutant and where it was changed."""
    spots = [(i, d) for i, p in enumerate(x.points) for d in p.module.degrees()
             if p.beta[d].shape[0] and p.beta[d].shape[1]]
    if not spots:
        raise ValueError("object has no beta entries to mutate")
    i, d = spots[int(rng.integers(len(spots)))]
    p = x.points[i]
    r, c = p.beta[d].shape
    a, b = int(rng.integers(r)), int(rng.integers(c))
    old = la.entries(p.beta[d])[a][b]
    new_beta = dict(p.beta)
    new_beta[d] = la.with_entry(p.beta[d], a, b, old + la.random_nonzero(rng))
    pts = list(x.points)
    pts[i] = replace(p, beta=new_beta)
    return replace(x, points=tuple(pts)), {"point": p.label, "degree": d, "entry": [a, b]}


# -- morphisms ------------------------------------------------------------------------

@dataclass(frozen=True)
class Type1Morphism:
    source: Type1Object
    target: Type1Object
    fN: dict            # label -> degree -> matrix
    fV: dict            # degree -> matrix

    def fV_laurent(self, parity: int):
        return la.block_diag(*(self.fV[e] for e in self.source.V.degrees() if e % 2 == parity % 2))


def _compatible(x: Type1Object, y: Type1Object) -> bool:
    if (x.lo, x.hi, x.V.group) != (y.lo, y.hi, y.V.group) or x.labels != y.labels:
        return False
    return all(p.module.group == q.module.group and p.hom == q.hom
               for p, q in zip(x.points, y.points))


def check_morphism(f: Type1Morphism) -> list[dict]:
    x, y = f.source, f.target
    if not _compatible(x, y):
        return [{"check": "objects not comparable"}]
    bad = []
    for e in x.V.degrees():
        for g in gr.generators(x.V.group):
            if not la.equal(la.mul(y.V.action[g][e], f.fV[e]), la.mul(f.fV[e], x.V.action[g][e])):
                bad.append({"check": "fV equivariant", "degree": e})
    for p, q in zip(x.points, y.points):
        m, n, fk = p.module, q.module, f.fN[p.label]
        for d in range(m.lo + 2, m.hi + 1):
            if not la.equal(la.mul(n.c[d], fk[d]), la.mul(fk[d - 2], m.c[d])):
                bad.append({"check": "fN commutes with c", "point": p.label, "degree": d})
        for d in m.degrees():
            for g in gr.generators(m.group):
                if not la.equal(la.mul(n.action[g][d], fk[d]), la.mul(fk[d], m.action[g][d])):
                    bad.append({"check": "fN equivariant", "point": p.label, "degree": d})
            if not la.equal(la.mul(q.beta[d], fk[d]), la.mul(f.fV_laurent(d % 2), p.beta[d])):
                bad.append({"check": "commutes with beta", "point": p.label, "degree": d})
    return bad


class _System:
    """Sparse homogeneous linear system in matrix-valued unknowns."""

    def __init__(self):
        self.blocks = {}
        self.nvars = 0
        self.rows = []

    def var(self, key, shape):
        self.blocks[key] = (self.nvars, shape)
        self.nvars += shape[0] * shape[1]

    def equation(self, terms, shape):
        """sum of sign * L X R = 0, for terms (L, key, R, sign); L or R None means identity."""
        rows = [dict() for _ in range(shape[0] * shape[1])]
        for left, key, right, sign in terms:
            off, (xr, xc) = self.blocks[key]
            L = la.entries(left) if left is not None else None
            R = la.entries(right) if right is not None else None
            for i in range(shape[0]):
                for j in range(shape[1]):
                    row = rows[i * shape[1] + j]
                    a_range = range(xr) if L is not None else [i]
                    b_range = range(xc) if R is not None else [j]
                    for a in a_range:
                        la_ = L[i][a] if L is not None else 1
                        if not la_:
                            continue
                        for b in b_range:
                            rb = R[b][j] if R is not None else 1
                            if rb:
                                k = off + a * xc + b
                                row[k] = row.get(k, 0) + sign * la_ * rb
        self.rows.extend(r for r in rows if any(r.values()))

    def nullspace(self):
        if self.nvars == 0:
            return []
        if not self.rows:
            return [[Fraction(int(i == j)) for j in range(self.nvars)] for i in range(self.nvars)]
        data = {i: {k: QQ(v.numerator, v.denominator) if isinstance(v, Fraction) else QQ(v)
                    for k, v in r.items() if v}
                for i, r in enumerate(self.rows)}
        m = DomainMatrix(data, (len(self.rows), self.nvars), QQ)
        ns = m.nullspace()
        return la.entries(ns) if ns.shape[0] else []

    def unpack(self, vec):
        out = {}
        for key, (off, (r, c)) in self.blocks.items():
            out[key] = la.qm([[vec[off + a * c + b] for b in range(c)] for a in range(r)], (r, c))
        return out


def morphism_basis(x: Type1Object, y: Type1Object) -> tuple[_System, list]:
    """All morphisms x -> y, as a basis of the solution space."""
    if not _compatible(x, y):
        raise ValueError("objects must share window, groups and point labels")
    sys_ = _System()
    for e in x.V.degrees():
        sys_.var(("V", e), (y.V.dim(e), x.V.dim(e)))
    for p, q in zip(x.points, y.points):
        for d in p.module.degrees():
            sys_.var((p.label, d), (q.module.dim(d), p.module.dim(d)))
    for e in x.V.degrees():
        shape = (y.V.dim(e), x.V.dim(e))
        for g in gr.generators(x.V.group):
            sys_.equation([(y.V.action[g][e], ("V", e), None, 1),
                           (None, ("V", e), x.V.action[g][e], -1)], shape)
    for p, q in zip(x.points, y.points):
        m, n = p.module, q.module
        for d in m.degrees():
            shape = (n.dim(d), m.dim(d))
            if d >= m.lo + 2:
                sys_.equation([(n.c[d], (p.label, d), None, 1),
                               (None, (p.label, d - 2), m.c[d], -1)], (n.dim(d - 2), m.dim(d)))
            for g in gr.generators(m.group):
                sys_.equation([(n.action[g][d], (p.label, d), None, 1),
                               (None, (p.label, d), m.action[g][d], -1)], shape)
            par = d % 2
            terms = [(q.beta[d], (p.label, d), None, 1)]
            tgt_blocks = {e: (off, size) for e, off, size in y.V.laurent_blocks(par)}
            rows_t = y.V.laurent_dim(par)
            for e, off, size in x.V.laurent_blocks(par):
                t_off, t_size = tgt_blocks[e]
                if not size or not t_size:
                    continue
                incl = la.vstack(la.zeros(t_off, t_size), la.eye(t_size),
                                 la.zeros(rows_t - t_off - t_size, t_size), cols=t_size)
                rows_b = la.qm([r for r in la.entries(p.beta[d])[off:off + size]],
                               (size, m.dim(d)))
                terms.append((incl, ("V", e), rows_b, -1))
            sys_.equation(terms, (rows_t, m.dim(d)))
    return sys_, sys_.nullspace()


def random_morphism(rng: np.random.Generator, x: Type1Object, y: Type1Object) -> Type1Morphism:
    sys_, basis = morphism_basis(x, y)
    vec = [Fraction(0)] * sys_.nvars
    for b in basis:
        k = int(rng.integers(-2, 3))
        if k:
            vec = [v + k * w for v, w in zip(vec, b)]
    blocks = sys_.unpack(vec)
    fV = {e: blocks["V", e] for e in x.V.degrees()}
    fN = {p.label: {d: blocks[p.label, d] for d in p.module.degrees()} for p in x.points}
    return Type1Morphism(x, y, fN, fV)


def identity(x: Type1Object) -> Type1Morphism:
    return Type1Morphism(x, x, {p.label: {d: la.eye(p.module.dim(d)) for d in p.module.degrees()}
                                for p in x.points},
                         {e: la.eye(x.V.dim(e)) for e in x.V.degrees()})


def zero_morphism(x: Type1Object, y: Type1Object) -> Type1Morphism:
    return Type1Morphism(x, y, {p.label: {d: la.zeros(q.module.dim(d), p.module.dim(d))
                                          for d in p.module.degrees()}
                                for p, q in zip(x.points, y.points)},
                         {e: la.zeros(y.V.dim(e), x.V.dim(e)) for e in x.V.degrees()})


def compose(g: Type1Morphism, f: Type1Morphism) -> Type1Morphism:
    """g after f."""
    return Type1Morphism(f.source, g.target,
                         {lab: {d: la.mul(g.fN[lab][d], f.fN[lab][d]) for d in f.fN[lab]}
                          for lab in f.fN},
                         {e: la.mul(g.fV[e], f.fV[e]) for e in f.fV})


def _check_input(f: Type1Morphism):
    bad = check_morphism(f)
    if bad:
        raise ValueError(f"not a morphism: {bad[:3]}")


def _sub_object(x: Type1Object, incl_N: dict, incl_V: dict) -> Type1Object:
    """The subobject spanned by the given column bases (assumed closed)."""
    V = x.V
    lv = {e: la.left_inverse(incl_V[e]) for e in V.degrees()}
    dims_v = {e: incl_V[e].shape[1] for e in V.degrees()}
    act_v = {g: {e: la.mul(lv[e], V.action[g][e], incl_V[e]) for e in V.degrees()}
             for g in V.action}
    newV = GradedVS(V.lo, V.hi, dims_v, V.group, act_v)
    points = []
    for p in x.points:
        m, inc = p.module, incl_N[p.label]
        lft = {d: la.left_inverse(inc[d]) for d in m.degrees()}
        c = {d: la.mul(lft[d - 2], m.c[d], inc[d]) for d in range(m.lo + 2, m.hi + 1)}
        act = {g: {d: la.mul(lft[d], m.action[g][d], inc[d]) for d in m.degrees()}
               for g in m.action}
        mod = CModule(m.lo, m.hi, {d: inc[d].shape[1] for d in m.degrees()}, c, m.group, act)
        beta = {}
        for d in m.degrees():
            lvp = la.block_diag(*(lv[e] for e in V.degrees() if e % 2 == d % 2))
            beta[d] = la.mul(lvp, p.beta[d], inc[d])
        points.append(Type1Point(p.label, mod, p.hom, beta))
    return Type1Object(newV, tuple(points), x.margin)


def kernel(f: Type1Morphism) -> tuple[Type1Object, Type1Morphism]:
    """The kernel object and its inclusion into the source."""
    _check_input(f)
    x = f.source
    incl_V = {e: la.kernel(f.fV[e]) if x.V.dim(e) else la.zeros(0, 0) for e in x.V.degrees()}
    incl_V = {e: m if m.shape[0] == x.V.dim(e) else la.zeros(x.V.dim(e), 0)
              for e, m in incl_V.items()}
    incl_N = {}
    for p in x.points:
        inc = {}
        for d in p.module.degrees():
            k = la.kernel(f.fN[p.label][d])
            inc[d] = k if k.shape[0] == p.module.dim(d) else la.zeros(p.module.dim(d), 0)
        incl_N[p.label] = inc
    ker = _sub_object(x, incl_N, incl_V)
    return ker, Type1Morphism(ker, x, incl_N, incl_V)


def cokernel(f: Type1Morphism) -> tuple[Type1Object, Type1Morphism]:
    """The cokernel object and the projection from the target."""
    _check_input(f)
    y = f.target
    V = y.V
    qv = {e: la.cokernel_projection(f.fV[e]) for e in V.degrees()}
    qv = {e: q if q.shape[1] == V.dim(e) else la.zeros(0, V.dim(e)) for e, q in qv.items()}
    sv = {e: la.right_inverse(qv[e]) for e in V.degrees()}
    act_v = {g: {e: la.mul(qv[e], V.action[g][e], sv[e]) for e in V.degrees()} for g in V.action}
    newV = GradedVS(V.lo, V.hi, {e: qv[e].shape[0] for e in V.degrees()}, V.group, act_v)
    points, proj_N = [], {}
    for q in y.points:
        n = q.module
        qs, ss = {}, {}
        for d in n.degrees():
            pr = la.cokernel_projection(f.fN[q.label][d])
            qs[d] = pr if pr.shape[1] == n.dim(d) else la.zeros(0, n.dim(d))
            ss[d] = la.right_inverse(qs[d])
        c = {d: la.mul(qs[d - 2], n.c[d], ss[d]) for d in range(n.lo + 2, n.hi + 1)}
        act = {g: {d: la.mul(qs[d], n.action[g][d], ss[d]) for d in n.degrees()} for g in n.action}
        mod = CModule(n.lo, n.hi, {d: qs[d].shape[0] for d in n.degrees()}, c, n.group, act)
        beta = {}
        for d in n.degrees():
            qvp = la.block_diag(*(qv[e] for e in V.degrees() if e % 2 == d % 2))
            beta[d] = la.mul(qvp, q.beta[d], ss[d])
        points.append(Type1Point(q.label, mod, q.hom, beta))
        proj_N[q.label] = qs
    cok = Type1Object(newV, tuple(points), y.margin)
    return cok, Type1Morphism(y, cok, proj_N, qv)


def _interleave(VX: GradedVS, VY: GradedVS, parity: int):
    """Permutation from (P_X, P_Y) stacking to the degree-interleaved basis of P_{X+Y}."""
    bx, by = VX.laurent_blocks(parity), VY.laurent_blocks(parity)
    nx = VX.laurent_dim(parity)
    order = []
    for (e, ox, sx), (_, oy, sy) in zip(bx, by):
        order += list(range(ox, ox + sx)) + [nx + i for i in range(oy, oy + sy)]
    n = len(order)
    rows = [[0] * n for _ in range(n)]
    for new, old in enumerate(order):
        rows[new][old] = 1
    return la.qm(rows, (n, n))


def direct_sum(x: Type1Object, y: Type1Object) -> Type1Object:
    if not _compatible(x, y):
        raise ValueError("summands must share window, groups and point labels")
    V = GradedVS(x.lo, x.hi, {e: x.V.dim(e) + y.V.dim(e) for e in x.V.degrees()}, x.V.group,
                 {g: {e: la.block_diag(x.V.action[g][e], y.V.action[g][e]) for e in x.V.degrees()}
                  for g in x.V.action})
    pts = []
    for p, q in zip(x.points, y.points):
        mod = gd.direct_sum(p.module, q.module)
        beta = {d: la.mul(_interleave(x.V, y.V, d % 2), la.block_diag(p.beta[d], q.beta[d]))
                for d in mod.degrees()}
        pts.append(Type1Point(p.label, mod, p.hom, beta))
    return Type1Object(V, tuple(pts), x.margin)
