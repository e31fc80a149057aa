"""Descriptors for conjugacy classes of closed subgroups of U(2).

Coordinates: the maximal torus T is the diagonal matrices diag(z1, z2); the
character (a, b) sends it to z1^a z2^b, so T^* = ZW with w swapping a and b.
A subgroup S of T is described by its dual lattice S^dagger (the characters
trivial on S).  The centre Z has dagger <1-w>, the SU(2) torus has <1+w>.

A full subgroup of the normalizer N of T is generated by its toral part S
(with W-invariant dagger) and an anti-diagonal element [[0, 1], [g, 0]].
Up to conjugacy the invariant is g modulo det(S); ``gamma_angle`` records g
as an angle in Q/Z.  Over Lambda1(m, n) and over the column (m, inf) there
is a split class ("1s", g = 1) and a non-split one ("1ns",
g = exp(pi i/m)); over Lambda2(m, n) there is one class ("2").  Positions
with m = inf contain Z, so they are split and carry the label "1s".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import lattice as zl
from ._finite_groups import ABELIANIZATION, COVER_LABEL, LABEL_TO_SO3
from .lattice import INF, DualLattice

LAMBDAS = ("1s", "1ns", "2")
_LAMBDA_ALIASES = {
    "1s": "1s", "(1,s)": "1s", "s": "1s", "1,s": "1s",
    "1ns": "1ns", "(1,ns)": "1ns", "ns": "1ns", "1,ns": "1ns",
    "2": "2", 2: "2",
}
CENTRAL_GROUPS = ("SU2", "A5", "S4", "A4", "D4")


def _check_param(x, name):
    if x is INF:
        return
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise ValueError(f"{name} must be a positive integer or INF, got {x!r}")


@dataclass(frozen=True)
class Toral:
    """A closed subgroup of T, up to conjugacy, given by its dagger lattice."""

    lattice: DualLattice

    def to_json(self):
        return {"kind": "toral", "lattice": self.lattice.to_json()}

    def __str__(self):
        return f"Toral{self.lattice}"


@dataclass(frozen=True)
class Full:
    """The full subgroup H^lambda(m, n) of N."""

    m: object
    n: object
    lam: str = "1s"

    def __post_init__(self):
        _check_param(self.m, "m")
        _check_param(self.n, "n")
        if self.lam not in LAMBDAS:
            raise ValueError(f"lambda must be one of {LAMBDAS}, got {self.lam!r}")
        if self.m is INF:
            if self.lam != "1s":
                raise ValueError("positions with m = inf carry a single class, lambda '1s'")
        elif self.n is INF:
            if self.lam == "2":
                raise ValueError("lambda '2' needs finite m and n")
        elif self.lam == "2" and not zl.lambda2_legal(self.m, self.n):
            raise ValueError(f"H_2({self.m},{self.n}) needs m+n and m-n even")

    def to_json(self):
        return {"kind": "full", "m": zl.param_to_json(self.m),
                "n": zl.param_to_json(self.n), "lambda": self.lam}

    def __str__(self):
        return f"H^{self.lam}({self.m},{self.n})"


@dataclass(frozen=True)
class CentralProduct:
    """The group H~ x_2 C_2s (or H~ x_2 Z for s = INF).

    ``variant`` indexes the conjugacy classes inside p^{-1}H with a given
    centre, i.e. the elements of Hom(H^ab, T); variant 0 is the canonical
    lift.
    """

    group: str
    s: object
    variant: int = 0

    def __post_init__(self):
        if self.group not in CENTRAL_GROUPS:
            raise ValueError(f"group must be one of {CENTRAL_GROUPS}, got {self.group!r}")
        _check_param(self.s, "s")
        if self.group == "SU2" and self.s is INF:
            raise ValueError("SU(2) x_2 Z is U(2) itself; use Ambient()")
        a = a_count(self.group)
        if not (isinstance(self.variant, int) and 0 <= self.variant < a):
            raise ValueError(f"variant must lie in 0..{a - 1} for {self.group}")
        if self.s is INF and self.variant != 0:
            raise ValueError("the top-dimensional group has a single class")

    def to_json(self):
        return {"kind": "central_product", "group": self.group,
                "s": zl.param_to_json(self.s), "variant": self.variant}

    def __str__(self):
        s = "Z" if self.s is INF else f"C{2 * self.s}"
        v = f"[{self.variant}]" if self.variant else ""
        return f"{self.group}x2{s}{v}"


@dataclass(frozen=True)
class Ambient:
    def to_json(self):
        return {"kind": "ambient"}

    def __str__(self):
        return "U(2)"


SubgroupClass = Toral | Full | CentralProduct | Ambient

TORUS = Toral(zl.ZERO)
CENTRE = Toral(zl.edge_minus(1))
SU2_TORUS = Toral(zl.edge_plus(1))
NORMALIZER = Full(INF, INF, "1s")
AMBIENT = Ambient()


def a_count(label: str) -> int:
    """Number of p^{-1}H-conjugacy classes of full subgroups per centre size."""
    order = 1
    for k in ABELIANIZATION[LABEL_TO_SO3[label]]:
        order *= k
    return order


def from_json(data: dict) -> SubgroupClass:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("subgroup descriptor must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "toral":
        return Toral(DualLattice.from_json(data["lattice"]))
    if kind == "full":
        lam = data.get("lambda", "1s")
        if lam not in _LAMBDA_ALIASES:
            raise ValueError(f"unknown lambda {lam!r}")
        return Full(zl.param_from_json(data["m"]), zl.param_from_json(data["n"]),
                    _LAMBDA_ALIASES[lam])
    if kind == "central_product":
        return CentralProduct(data["group"], zl.param_from_json(data["s"]),
                              int(data.get("variant", 0)))
    if kind == "ambient":
        return AMBIENT
    raise ValueError(f"unknown subgroup kind {kind!r}")


# -- lattices attached to descriptors ----------------------------------------

def position_lattice(m, n, lam: str = "1s") -> DualLattice:
    """Dagger of the toral part of H^lambda(m, n)."""
    if m is INF and n is INF:
        return zl.ZERO
    if m is INF:
        return zl.edge_minus(n)
    if n is INF:
        return zl.edge_plus(m)
    return zl.make_lambda(2 if lam == "2" else 1, m, n)


def gamma_angle(k: Full) -> Fraction:
    """Square of the anti-diagonal generator, as an angle in Q/Z."""
    if k.lam == "1ns":
        return Fraction(1, 2 * k.m)
    return Fraction(0)


def is_abelian_full(m, n, lam: str = "1s") -> bool:
    """True iff 1 - w lies in the lattice of the position, i.e. n == 1."""
    return (1, -1) in position_lattice(m, n, lam)


def toral_form(k: SubgroupClass) -> DualLattice | None:
    """Dagger lattice of a toral conjugate of ``k``, or None if ``k`` is not abelian.

    An abelian full subgroup has scalar toral part, and the anti-diagonal
    generator [[0, 1], [g, 0]] diagonalises to diag(r, -r) with r^2 = g.
    """
    if isinstance(k, Toral):
        return k.lattice
    if isinstance(k, Full) and is_abelian_full(k.m, k.n, k.lam):
        half = gamma_angle(k) / 2
        return zl.restrict_by_points(position_lattice(k.m, k.n, k.lam),
                                     [(half, half + Fraction(1, 2))])
    return None


def toral_key(lat: DualLattice) -> tuple:
    """Canonical representative of the W-orbit {lat, w(lat)}."""
    return min(lat.basis, zl.w_image(lat).basis)


# -- SO(3) classes and the projection ------------------------------------------

SO3_KINDS = ("cyclic", "dihedral", "SO2", "O2", "A4", "S4", "A5", "SO3", "D4")


@dataclass(frozen=True)
class SO3Class:
    kind: str
    order: int | None = None

    def __post_init__(self):
        if self.kind not in SO3_KINDS:
            raise ValueError(f"unknown SO(3) class {self.kind!r}")
        if self.kind == "cyclic" and not (isinstance(self.order, int) and self.order >= 1):
            raise ValueError("cyclic classes need an order >= 1")
        if self.kind == "dihedral" and not (isinstance(self.order, int) and self.order >= 6
                                             and self.order % 2 == 0):
            raise ValueError("use so3_dihedral(): D_2 and D_4 are not dihedral classes here")

    def __str__(self):
        if self.kind == "cyclic":
            return f"C{self.order}"
        if self.kind == "dihedral":
            return f"D{self.order}"
        return self.kind


def so3_cyclic(n: int) -> SO3Class:
    return SO3Class("cyclic", n)


def so3_dihedral(order: int) -> SO3Class:
    """The dihedral group of the given order; D_2 is C_2 and D_4 has its own tag."""
    if order == 2:
        return SO3Class("cyclic", 2)
    if order == 4:
        return SO3Class("D4")
    return SO3Class("dihedral", order)


def project(k: SubgroupClass) -> SO3Class:
    """The SO(3)-class of K/(K n Z)."""
    if isinstance(k, Ambient):
        return SO3Class("SO3")
    if isinstance(k, CentralProduct):
        return SO3Class(LABEL_TO_SO3[k.group])
    if isinstance(k, Toral):
        c = zl.minus_content(k.lattice)
        return SO3Class("SO2") if c is INF else so3_cyclic(c)
    n = zl.minus_content(position_lattice(k.m, k.n, k.lam))
    return SO3Class("O2") if n is INF else so3_dihedral(2 * n)


def so3_cotoral(a: SO3Class, b: SO3Class) -> bool:
    """a cotoral in b (or equal) among SO(3) classes."""
    return a == b or (a.kind == "cyclic" and b.kind == "SO2")


def centre_order(k: SubgroupClass):
    """|K n Z|; for toral parts this is the gcd of a + b over the dagger."""
    if isinstance(k, Ambient):
        return INF
    if isinstance(k, CentralProduct):
        return INF if k.s is INF else 2 * k.s
    lat = k.lattice if isinstance(k, Toral) else position_lattice(k.m, k.n, k.lam)
    g = 0
    for a, b in lat.basis:
        g = gcd(g, a + b)
    return INF if g == 0 else g


# -- cotorality ---------------------------------------------------------------

def _toral_cotoral(lk: DualLattice, lh: DualLattice) -> bool:
    return zl.is_cofree_in(lh, lk) or zl.is_cofree_in(lh, zl.w_image(lk))


def _full_cotoral(k: Full, h: Full) -> bool:
    lk = position_lattice(k.m, k.n, k.lam)
    lh = position_lattice(h.m, h.n, h.lam)
    if not zl.is_cofree_in(lh, lk):
        return False
    # normality: T-conjugation moves the anti-diagonal generator of K by
    # (u, 1/u) with u^{n_H} = 1, which has to lie in the toral part of K
    n_h = zl.minus_content(lh)
    for a, b in lk.basis:
        if (n_h is INF and a != b) or (n_h is not INF and (a - b) % n_h):
            return False
    # the generator of K lies in the coset of H: g_K / g_H in det(S_H)
    m_h = zl.plus_content(lh)
    if m_h is INF:
        return True
    return ((gamma_angle(k) - gamma_angle(h)) * m_h).denominator == 1


def is_cotoral(k: SubgroupClass, h: SubgroupClass) -> bool:
    """K is normal in (a conjugate of) H with H/K a torus."""
    if k == h:
        return True
    if isinstance(k, Full) and isinstance(h, Full) and _full_cotoral(k, h):
        return True
    tk, th = toral_form(k), toral_form(h)
    if tk is not None and th is not None:
        return _toral_cotoral(tk, th)
    if isinstance(k, CentralProduct):
        if isinstance(h, CentralProduct):
            return h.group == k.group and h.s is INF and k.s is not INF
        if isinstance(h, Ambient):
            return k.group == "SU2"
    return False


# -- enumeration --------------------------------------------------------------

def invariant_toral_lattices(truncation: int) -> list[DualLattice]:
    out = [zl.ZERO]
    for k in range(1, truncation + 1):
        out += [zl.edge_plus(k), zl.edge_minus(k)]
    for m in range(1, truncation + 1):
        for n in range(1, truncation + 1):
            out.append(zl.make_lambda(1, m, n))
            if zl.lambda2_legal(m, n):
                out.append(zl.make_lambda(2, m, n))
    return out


def full_descriptors(truncation: int) -> list[Full]:
    out = [NORMALIZER]
    for k in range(1, truncation + 1):
        out += [Full(k, INF, "1s"), Full(k, INF, "1ns"), Full(INF, k, "1s")]
    for m in range(1, truncation + 1):
        for n in range(1, truncation + 1):
            out += [Full(m, n, "1s"), Full(m, n, "1ns")]
            if zl.lambda2_legal(m, n):
                out.append(Full(m, n, "2"))
    return out


def central_descriptors(truncation: int) -> list[CentralProduct]:
    out = []
    for label in CENTRAL_GROUPS:
        if label != "SU2":
            out.append(CentralProduct(label, INF, 0))
        for s in range(1, truncation + 1):
            out += [CentralProduct(label, s, v) for v in range(a_count(label))]
    return out


def enumerate_subgroups(truncation: int) -> list[SubgroupClass]:
    """Descriptors with every finite parameter at most ``truncation``.

    Toral subgroups are restricted to W-invariant ones (the picture in the
    (m, n)-square); all INF-parameter descriptors are included.
    """
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    out: list[SubgroupClass] = [Toral(lat) for lat in invariant_toral_lattices(truncation)]
    out += full_descriptors(truncation)
    out += central_descriptors(truncation)
    out.append(AMBIENT)
    return out


def expected_count(truncation: int) -> int:
    """Closed-form size of ``enumerate_subgroups(truncation)``."""
    m = truncation
    same_parity = ((m + 1) // 2) ** 2 + (m // 2) ** 2
    toral = 1 + 2 * m + m * m + same_parity
    full = 1 + 3 * m + 2 * m * m + same_parity
    central = sum(a_count(g) for g in CENTRAL_GROUPS) * m + 4
    return toral + full + central + 1


__all__ = [
    "Toral", "Full", "CentralProduct", "Ambient", "SubgroupClass", "SO3Class",
    "TORUS", "CENTRE", "SU2_TORUS", "NORMALIZER", "AMBIENT", "COVER_LABEL",
    "from_json", "position_lattice", "gamma_angle", "is_abelian_full", "toral_form",
    "toral_key", "project", "so3_cyclic", "so3_dihedral", "so3_cotoral",
    "centre_order", "is_cotoral", "enumerate_subgroups", "expected_count",
    "invariant_toral_lattices", "a_count",
]
