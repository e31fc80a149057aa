"""Sublattices of the group ring ZW = Z^2, with W acting by swapping coordinates.

A vector ``(a, b)`` stands for ``a + b*w``.  Lattices are stored in row
Hermite normal form:

* rank 2: ``((p, q), (0, r))`` with ``p, r > 0`` and ``0 <= q < r``;
* rank 1: ``((p, q),)`` with the first nonzero entry positive;
* rank 0: ``()``.

Two lattices are equal exactly when their canonical bases are equal.

The W-invariant lattices are the eigenlines ``<m(1+w)>`` (``EdgePlus``) and
``<n(1-w)>`` (``EdgeMinus``), and in rank 2

    Lambda1(m, n) = <m(1+w), n(1-w)>                        (index 2mn)
    Lambda2(m, n) = Lambda1(m, n) + <(m+n)/2 + (m-n)/2 w>    (index mn, m+-n even)

``classify`` recovers ``m`` as the least ``t > 0`` with ``t(1+w)`` in the
lattice and ``n`` as the least ``t > 0`` with ``t(1-w)`` in the lattice;
Lambda1 and Lambda2 are then told apart by the index.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import product
from math import gcd
from typing import Iterable, Sequence


@total_ordering
class _Infinity:
    """The symbol used for unbounded parameters and infinite indices."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("u2model.INF")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def param_to_json(x):
    return "inf" if x is INF else x


def param_from_json(x):
    if x in ("inf", "INF", "∞"):
        return INF
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"parameter must be a positive integer or 'inf', got {x!r}")
    if x < 1:
        raise ValueError(f"parameter must be positive, got {x}")
    return x


Vector = tuple[int, int]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf(vectors: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    rows = [(int(v[0]), int(v[1])) for v in vectors]
    pivot = None
    rest = []
    for a, b in rows:
        if a == 0:
            rest.append(b)
            continue
        if pivot is None:
            pivot = (a, b)
            continue
        pa, pb = pivot
        g, x, y = _xgcd(pa, a)
        pivot = (g, x * pb + y * b)
        rest.append((a // g) * pb - (pa // g) * b)
    r = 0
    for b in rest:
        r = gcd(r, b)
    if pivot is None:
        return ((0, r),) if r else ()
    p, q = pivot
    if p < 0:
        p, q = -p, -q
    if r == 0:
        return ((p, q),)
    return ((p, q % r), (0, r))


@dataclass(frozen=True)
class DualLattice:
    """A sublattice of ZW in canonical (row Hermite normal form) basis.

    Build instances with :func:`canonicalize`; the constructor does not
    normalise its input.
    """

    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        a, b = int(v[0]), int(v[1])
        if self.rank == 0:
            return a == 0 and b == 0
        if self.rank == 1:
            p, q = self.basis[0]
            return a * q == b * p and (a % p == 0 if p else b % q == 0)
        (p, q), (_, r) = self.basis
        if a % p:
            return False
        return (b - (a // p) * q) % r == 0

    def contains_lattice(self, other: "DualLattice") -> bool:
        return all(v in self for v in other.basis)

    def to_json(self) -> dict:
        return {"rank": self.rank, "basis": [list(v) for v in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "DualLattice":
        lat = canonicalize(data.get("basis", []))
        if "rank" in data and data["rank"] != lat.rank:
            raise ValueError(f"declared rank {data['rank']} but basis spans rank {lat.rank}")
        return lat

    def __str__(self):
        if not self.basis:
            return "<0>"
        return "<" + ", ".join(f"({a},{b})" for a, b in self.basis) + ">"


ZERO = DualLattice(())
FULL = DualLattice(((1, 0), (0, 1)))


def canonicalize(generators: Iterable[Sequence[int]]) -> DualLattice:
    """Canonical lattice spanned by ``generators`` (an empty list gives ZERO)."""
    return DualLattice(_hnf(generators))


def w_image(lat: DualLattice) -> DualLattice:
    return canonicalize((b, a) for a, b in lat.basis)


def is_invariant(lat: DualLattice) -> bool:
    return w_image(lat) == lat


def lattice_sum(*lats: DualLattice) -> DualLattice:
    return canonicalize(v for lat in lats for v in lat.basis)


def index(lat: DualLattice):
    """``|det|`` of the basis for rank 2, otherwise INF."""
    if lat.rank < 2:
        return INF
    (p, _), (_, r) = lat.basis
    return p * r


def line_content(lat: DualLattice, sign: int):
    """Least ``t > 0`` with ``t(1 + sign*w)`` in ``lat``, or INF if none."""
    if lat.rank == 0:
        return INF
    if lat.rank == 1:
        p, q = lat.basis[0]
        return p if q == sign * p and p > 0 else INF
    (p, q), (_, r) = lat.basis
    for j in range(1, r + 1):
        if (sign * j * p - j * q) % r == 0:
            return j * p
    raise AssertionError("unreachable: a rank-2 lattice meets every line")


def plus_content(lat: DualLattice):
    return line_content(lat, 1)


def minus_content(lat: DualLattice):
    return line_content(lat, -1)


def edge_plus(m: int) -> DualLattice:
    return canonicalize([(m, m)])


def edge_minus(n: int) -> DualLattice:
    return canonicalize([(n, -n)])


def lambda2_legal(m: int, n: int) -> bool:
    return (m + n) % 2 == 0 and (m - n) % 2 == 0


def make_lambda(family: int, m: int, n: int) -> DualLattice:
    """Lambda1(m, n) or Lambda2(m, n)."""
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got ({m}, {n})")
    gens = [(m, m), (n, -n)]
    if family == 1:
        return canonicalize(gens)
    if family == 2:
        if not lambda2_legal(m, n):
            raise ValueError(f"Lambda2({m},{n}) needs m+n and m-n even")
        return canonicalize(gens + [((m + n) // 2, (m - n) // 2)])
    raise ValueError(f"family must be 1 or 2, got {family!r}")


@dataclass(frozen=True)
class LatticeClass:
    family: str
    m: int | None = None
    n: int | None = None

    FAMILIES = ("Zero", "EdgePlus", "EdgeMinus", "Lambda1", "Lambda2", "NonInvariant")

    def __post_init__(self):
        if self.family not in self.FAMILIES:
            raise ValueError(f"unknown lattice family {self.family!r}")
        if self.family == "Lambda2" and not lambda2_legal(self.m, self.n):
            raise ValueError(f"Lambda2({self.m},{self.n}) violates parity")

    def to_json(self) -> dict:
        return {"family": self.family, "m": self.m, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "LatticeClass":
        return cls(data["family"], data.get("m"), data.get("n"))

    def build(self) -> DualLattice:
        if self.family == "Zero":
            return ZERO
        if self.family == "EdgePlus":
            return edge_plus(self.m)
        if self.family == "EdgeMinus":
            return edge_minus(self.n)
        if self.family == "Lambda1":
            return make_lambda(1, self.m, self.n)
        if self.family == "Lambda2":
            return make_lambda(2, self.m, self.n)
        raise ValueError("NonInvariant does not determine a lattice")

    def __str__(self):
        if self.family in ("Zero", "NonInvariant"):
            return self.family
        if self.family == "EdgePlus":
            return f"EdgePlus({self.m})"
        if self.family == "EdgeMinus":
            return f"EdgeMinus({self.n})"
        return f"{self.family}({self.m},{self.n})"


def classify(lat: DualLattice) -> LatticeClass:
    if lat.rank == 0:
        return LatticeClass("Zero")
    if not is_invariant(lat):
        return LatticeClass("NonInvariant")
    m, n = plus_content(lat), minus_content(lat)
    if lat.rank == 1:
        if m is not INF:
            return LatticeClass("EdgePlus", m=m)
        if n is not INF:
            return LatticeClass("EdgeMinus", n=n)
        raise AssertionError(f"invariant rank-1 lattice {lat} off both eigenlines")
    idx = index(lat)
    if idx == 2 * m * n:
        return LatticeClass("Lambda1", m, n)
    if idx == m * n and lambda2_legal(m, n) and make_lambda(2, m, n) == lat:
        return LatticeClass("Lambda2", m, n)
    raise AssertionError(f"invariant lattice {lat} is neither Lambda1 nor Lambda2")


def coordinates(lat: DualLattice, v: Sequence[int]) -> tuple[int, ...]:
    """Integer coordinates of ``v`` in the canonical basis of ``lat``."""
    if v not in lat:
        raise ValueError(f"{tuple(v)} is not in {lat}")
    a, b = v
    if lat.rank == 0:
        return ()
    if lat.rank == 1:
        p, q = lat.basis[0]
        return (a // p,) if p else (b // q,)
    (p, q), (_, r) = lat.basis
    c0 = a // p
    return (c0, (b - c0 * q) // r)


def inclusion_matrix(sub: DualLattice, sup: DualLattice) -> list[list[int]]:
    """Rows: the basis of ``sub`` written in the basis of ``sup``."""
    return [list(coordinates(sup, v)) for v in sub.basis]


def is_cofree_in(sub: DualLattice, sup: DualLattice) -> bool:
    """True iff ``sub`` is contained in ``sup`` with ``sup/sub`` torsion-free.

    Decided by the last determinantal divisor of the inclusion matrix: the
    quotient is free exactly when the gcd of the maximal minors is 1.
    """
    if not sup.contains_lattice(sub):
        return False
    mat = inclusion_matrix(sub, sup)
    k = len(mat)
    if k == 0:
        return True
    if k == 1:
        g = 0
        for x in mat[0]:
            g = gcd(g, x)
        return g == 1
    (a, b), (c, d) = mat
    return abs(a * d - b * c) == 1


def restrict_by_points(lat: DualLattice, points: Iterable[Sequence[Fraction]]) -> DualLattice:
    """``{v in lat : v . t is an integer for every t in points}``.

    Points are elements of the torus written as rational angles; the result is
    the dual lattice of the subgroup generated by the original subgroup and
    the points.
    """
    out = lat
    for t in points:
        t0, t1 = Fraction(t[0]), Fraction(t[1])
        values = [Fraction(a) * t0 + Fraction(b) * t1 for a, b in out.basis]
        den = 1
        for x in values:
            den = den * x.denominator // gcd(den, x.denominator)
        if den == 1:
            continue
        nums = [int(x * den) for x in values]
        gens = []
        for coeffs in product(range(den), repeat=len(nums)):
            if sum(c * x for c, x in zip(coeffs, nums)) % den == 0:
                gens.append(coeffs)
        for j in range(len(nums)):
            gens.append(tuple(den if i == j else 0 for i in range(len(nums))))
        out = canonicalize(
            tuple(sum(c * vec[i] for c, vec in zip(coeffs, out.basis)) for i in range(2))
            for coeffs in gens
        )
    return out


def enumerate_invariant(max_index: int) -> list[tuple[DualLattice, LatticeClass]]:
    """Every rank-2 W-invariant lattice of index at most ``max_index``."""
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    out = []
    for m in range(1, max_index + 1):
        for n in range(1, max_index // m + 1):
            if 2 * m * n <= max_index:
                out.append((make_lambda(1, m, n), LatticeClass("Lambda1", m, n)))
            if lambda2_legal(m, n):
                out.append((make_lambda(2, m, n), LatticeClass("Lambda2", m, n)))
    out.sort(key=lambda item: (index(item[0]), item[1].family, item[1].m, item[1].n))
    return out


def quotient_invariants(sub: DualLattice, sup: DualLattice) -> tuple[int, tuple[int, ...]]:
    """``sup/sub`` as (free rank, torsion invariant factors > 1)."""
    mat = inclusion_matrix(sub, sup)
    k = len(mat)
    free = sup.rank - k
    if k == 0:
        return free, ()
    d1 = 0
    for row in mat:
        for x in row:
            d1 = gcd(d1, x)
    if k == 1:
        return free, (d1,) if d1 > 1 else ()
    (a, b), (c, d) = mat
    d2 = abs(a * d - b * c) // d1
    return free, tuple(x for x in (d1, d2) if x > 1)
