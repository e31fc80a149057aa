"""Independent oracles used across the test suite.

Nothing here calls into the package except to build inputs; the answers are
computed by brute force or with sympy.
"""
from fractions import Fraction
from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def _member(v, p, q, r):
    # v in <(p,q),(0,r)> ?
    a, b = v
    if a % p:
        return False
    return (b - (a // p) * q) % r == 0


def hnf_invariant_triples(max_index):
    """All (p, q, r) with 0 <= q < r, p*r <= max_index whose lattice is swap-invariant."""
    out = []
    for p in range(1, max_index + 1):
        for r in range(1, max_index // p + 1):
            for q in range(r):
                if _member((q, p), p, q, r) and _member((r, 0), p, q, r):
                    out.append((p, q, r))
    return out


def triple_members(p, q, r, box=12):
    """The lattice as a finite set of points in a box; enough to compare small lattices."""
    return {(a, b) for a, b in product(range(-box, box + 1), repeat=2) if _member((a, b), p, q, r)}


def formula_lattices(max_index):
    """(family, m, n) predicted by the two-type classification."""
    out = set()
    for m in range(1, max_index + 1):
        for n in range(1, max_index + 1):
            if 2 * m * n <= max_index:
                out.add((1, m, n))
            if m * n <= max_index and (m + n) % 2 == 0:
                out.add((2, m, n))
    return out


def snf_cofree(sub_basis, sup_basis):
    """Is <sub> inside <sup> with torsion-free quotient?  Decided with sympy's SNF."""
    if not sub_basis:
        return True
    if not sup_basis:
        return False
    S = Matrix(sub_basis)
    P = Matrix(sup_basis)
    gram = P * P.T
    X = S * P.T * gram.inv()
    if X * P != S:
        return False
    if any(Fraction(str(x)).denominator != 1 for x in X):
        return False
    D = smith_normal_form(X.applyfunc(int), domain=ZZ)
    diag = [abs(D[i, i]) for i in range(min(D.shape))]
    return all(d in (0, 1) for d in diag)


def span_rank(vectors):
    return Matrix(vectors).rank() if vectors else 0


def model_cotoral(model, k, h):
    """Full K cotoral in Full H, decided inside the finite model T[level] x| W.

    The torus quotient is read off the daggers (the finite model cannot see
    it); normality is searched for directly: some conjugate of K must sit
    inside H as a normal subgroup.
    """
    import numpy as np
    from u2model import lattice as zl
    from u2model.oracles import descriptor_generators, generate
    from u2model.subgroups import position_lattice

    lk = position_lattice(k.m, k.n, k.lam)
    lh = position_lattice(h.m, h.n, h.lam)
    if not zl.is_cofree_in(lh, lk):
        return False
    hg = descriptor_generators(model, h)
    hmask = generate(model, hg)
    kmask = generate(model, descriptor_generators(model, k))
    kel = model.decode(np.flatnonzero(kmask))
    size = kel[0].shape
    seen = set()
    for c in range(model.order):
        g = model.decode(np.array([c]))
        gi = model.inv(g)
        conj = model.mul(model.mul(tuple(np.broadcast_to(v, size) for v in gi), kel),
                         tuple(np.broadcast_to(v, size) for v in g))
        codes = model.encode(*conj)
        key = frozenset(codes.tolist())
        if key in seen:
            continue
        seen.add(key)
        if not hmask[codes].all():
            continue
        mine = np.zeros(model.order, bool)
        mine[codes] = True
        if all(mine[model.encode(*model.mul(model.mul(tuple(np.full(size, v) for v in x), conj),
                                            model.inv(tuple(np.full(size, v) for v in x))))].all()
               for x in hg):
            return True
    return False


GROUPS = ["1", "C2", "C3", "S3"]


def morphism_case(seed):
    """A random morphism between two Type 1 objects with matching point data."""
    import numpy as np
    from u2model.models import type1 as t1

    rng = np.random.default_rng(seed)
    g = GROUPS[seed % 4]
    pg = [bool(rng.integers(2)) for _ in range(2)]
    x = t1.random_type1(rng, group=g, point_groups=pg)
    y = t1.random_type1(rng, group=g, point_groups=pg)
    return t1.random_morphism(rng, x, y)


def rank_nullity_failures(f, ker, cok):
    """Degreewise dim ker + rank = dim source and dim coker + rank = dim target."""
    from u2model.models import linalg as la

    bad = []
    x, y = f.source, f.target
    for e in x.V.degrees():
        r = la.rank(f.fV[e]) if x.V.dim(e) and y.V.dim(e) else 0
        if ker.V.dim(e) + r != x.V.dim(e) or cok.V.dim(e) + r != y.V.dim(e):
            bad.append(("V", e))
    for p, q, kp, cp in zip(x.points, y.points, ker.points, cok.points):
        for d in p.module.degrees():
            mat = f.fN[p.label][d]
            r = la.rank(mat) if p.module.dim(d) and q.module.dim(d) else 0
            if kp.module.dim(d) + r != p.module.dim(d) or cp.module.dim(d) + r != q.module.dim(d):
                bad.append((p.label, d))
    return bad


def composite_is_zero(g, f):
    from u2model.models import linalg as la
    from u2model.models.type1 import compose

    h = compose(g, f)
    return (all(la.is_zero(m) for m in h.fV.values())
            and all(la.is_zero(m) for lab in h.fN for m in h.fN[lab].values()))


def contains(sub_basis, sup_basis):
    """Is every vector of ``sub_basis`` an integer combination of ``sup_basis``?"""
    for v in sub_basis:
        if not sup_basis:
            return False
        if len(sup_basis) == 1:
            (p, q), (a, b) = sup_basis[0], v
            if a * q != b * p:
                return False
            t = Fraction(a, p) if p else Fraction(b, q)
        else:
            (p, q), (r, s) = sup_basis
            det = p * s - q * r
            x, y = Fraction(v[0] * s - v[1] * r, det), Fraction(p * v[1] - q * v[0], det)
            if x.denominator != 1 or y.denominator != 1:
                return False
            continue
        if t.denominator != 1:
            return False
    return True
