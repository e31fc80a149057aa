"""Exact rational matrices: thin helpers over sympy's DomainMatrix on QQ.

Shapes with a zero dimension are common (a degree where a module vanishes),
so every helper here accepts them.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Mat = DomainMatrix


def _q(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def qm(rows, shape=None) -> Mat:
    rows = [list(r) for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    if shape[0] == 0 or shape[1] == 0:
        return zeros(*shape)
    return DomainMatrix([[_q(x) for x in r] for r in rows], tuple(shape), QQ)


def zeros(r: int, c: int) -> Mat:
    return DomainMatrix.zeros((r, c), QQ)


def eye(n: int) -> Mat:
    return DomainMatrix.eye(n, QQ) if n else zeros(0, 0)


def scalar(n: int, x) -> Mat:
    return eye(n) * _q(x) if n else zeros(0, 0)


def rank(a: Mat) -> int:
    r, c = a.shape
    return 0 if r == 0 or c == 0 else a.rank()


def is_zero(a: Mat) -> bool:
    return a.to_dense().is_zero_matrix if min(a.shape) else True


def equal(a: Mat, b: Mat) -> bool:
    return a.shape == b.shape and (min(a.shape) == 0 or a.to_dense() == b.to_dense())


def is_invertible(a: Mat) -> bool:
    r, c = a.shape
    return r == c and rank(a) == r


def mul(*mats: Mat) -> Mat:
    out = mats[0]
    for m in mats[1:]:
        if out.shape[1] != m.shape[0]:
            raise ValueError(f"shape mismatch {out.shape} x {m.shape}")
        if 0 in (out.shape[0], out.shape[1], m.shape[1]):
            out = zeros(out.shape[0], m.shape[1])
        else:
            out = out * m
    return out


def add(a: Mat, b: Mat) -> Mat:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} + {b.shape}")
    return a if min(a.shape) == 0 else a + b


def sub(a: Mat, b: Mat) -> Mat:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} - {b.shape}")
    return a if min(a.shape) == 0 else a - b


def transpose(a: Mat) -> Mat:
    return zeros(a.shape[1], a.shape[0]) if min(a.shape) == 0 else a.transpose()


def kernel(a: Mat) -> Mat:
    """Columns spanning {x : a x = 0}; shape (cols, nullity)."""
    r, c = a.shape
    if c == 0:
        return zeros(0, 0)
    if r == 0:
        return eye(c)
    ns = a.nullspace()
    if ns.shape[0] == 0:
        return zeros(c, 0)
    return ns.transpose()


def cokernel_projection(a: Mat) -> Mat:
    """Rows q with ker q = image(a); shape (rows - rank, rows)."""
    return transpose(kernel(transpose(a)))


def left_inverse(a: Mat) -> Mat:
    """For injective ``a``: some l with l a = 1."""
    r, c = a.shape
    if c == 0:
        return zeros(0, r)
    at = transpose(a)
    return mul((at * a).inv(), at)


def right_inverse(a: Mat) -> Mat:
    """For surjective ``a``: some s with a s = 1."""
    return transpose(left_inverse(transpose(a)))


def block_diag(*mats: Mat) -> Mat:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    rows = [[QQ(0)] * c for _ in range(r)]
    i = j = 0
    for m in mats:
        for a, row in enumerate(entries(m)):
            for b, x in enumerate(row):
                rows[i + a][j + b] = _q(x)
        i += m.shape[0]
        j += m.shape[1]
    return qm(rows, (r, c))


def hstack(*mats: Mat, rows: int | None = None) -> Mat:
    r = mats[0].shape[0] if mats else (rows or 0)
    data = [[] for _ in range(r)]
    for m in mats:
        for i, row in enumerate(entries(m)):
            data[i].extend(row)
    return qm(data, (r, sum(m.shape[1] for m in mats)))


def vstack(*mats: Mat, cols: int | None = None) -> Mat:
    c = mats[0].shape[1] if mats else (cols or 0)
    data = []
    for m in mats:
        data.extend(entries(m))
    return qm(data, (sum(m.shape[0] for m in mats), c))


def entries(a: Mat) -> list[list[Fraction]]:
    r, c = a.shape
    if r == 0 or c == 0:
        return [[] for _ in range(r)]
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in a.to_list()]


def with_entry(a: Mat, i: int, j: int, value) -> Mat:
    rows = entries(a)
    rows[i][j] = Fraction(value)
    return qm(rows, a.shape)


def to_json(a: Mat) -> dict:
    return {"shape": list(a.shape), "rows": [[str(x) for x in row] for row in entries(a)]}


def from_json(data) -> Mat:
    if isinstance(data, dict):
        return qm(data["rows"], tuple(data["shape"]))
    return qm(data)


# -- random matrices ------------------------------------------------------------

def random_int(rng: np.random.Generator, r: int, c: int, bound: int = 3) -> Mat:
    return qm(rng.integers(-bound, bound + 1, size=(r, c)).tolist(), (r, c))


def random_invertible(rng: np.random.Generator, n: int, bound: int = 2) -> Mat:
    """Product of random unitriangular matrices and a diagonal of nonzero integers."""
    if n == 0:
        return zeros(0, 0)
    low = np.tril(rng.integers(-bound, bound + 1, size=(n, n)), -1) + np.eye(n, dtype=int)
    up = np.triu(rng.integers(-bound, bound + 1, size=(n, n)), 1) + np.eye(n, dtype=int)
    d = rng.choice([-2, -1, 1, 2, 3], size=n)
    return mul(qm(low.tolist()), qm(np.diag(d).tolist()), qm(up.tolist()))


def random_nonzero(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.choice([1, 2])))
