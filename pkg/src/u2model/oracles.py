"""Independent brute-force checks.

``FiniteModel`` is the finite group T[k] x| W: pairs ((a, b) mod k, e) with
(t, e)(t', e') = (t + w^e t', e + e').  The pair (t, 1) stands for
diag(exp(2 pi i t/k)) times the coordinate swap, so the anti-diagonal
generator [[0, 1], [g, 0]] of a full subgroup is ((0, g k), 1).

``unitary_fusion_sample`` tests numerically that a diagonal unitary d with
g d g^{-1} diagonal must be scalar whenever g lies outside N.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .lattice import INF, DualLattice
from .subgroups import Full, Toral, SubgroupClass, gamma_angle, position_lattice


@dataclass(frozen=True)
class FiniteModel:
    level: int

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError("level must be a positive integer")

    @property
    def order(self) -> int:
        return 2 * self.level ** 2

    def all_elements(self):
        return self.decode(np.arange(self.order))

    def encode(self, a, b, e):
        k = self.level
        return ((np.asarray(a) % k) * k + np.asarray(b) % k) * 2 + np.asarray(e) % 2

    def decode(self, codes):
        codes = np.asarray(codes)
        k = self.level
        e = codes % 2
        rest = codes // 2
        return rest // k, rest % k, e

    def mul(self, x, y):
        a, b, e = x
        a2, b2, e2 = y
        swap = np.asarray(e) == 1
        return (a + np.where(swap, b2, a2), b + np.where(swap, a2, b2), (e + e2) % 2)

    def inv(self, x):
        a, b, e = x
        swap = np.asarray(e) == 1
        return (np.where(swap, -b, -a), np.where(swap, -a, -b), e)


def generate(model: FiniteModel, gens) -> np.ndarray:
    """Boolean mask (indexed by element code) of the subgroup generated by ``gens``."""
    mask = np.zeros(model.order, dtype=bool)
    start = model.encode(0, 0, 0)
    mask[start] = True
    frontier = np.array([start])
    gens = [tuple(int(x) for x in g) for g in gens]
    while frontier.size and gens:
        cur = model.decode(frontier)
        found = []
        for g in gens:
            prod = model.encode(*model.mul(cur, tuple(np.full(frontier.shape, x) for x in g)))
            found.append(prod)
        new = np.unique(np.concatenate(found))
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def oracle_normalizer(model: FiniteModel, gens) -> int:
    """Order of the normalizer of <gens> in the model, by brute force."""
    return int(normalizer_mask(model, gens).sum())


def normalizer_mask(model: FiniteModel, gens) -> np.ndarray:
    mask = generate(model, gens)
    g = model.all_elements()
    ginv = model.inv(g)
    ok = np.ones(model.order, dtype=bool)
    for h in gens:
        hh = tuple(np.full(model.order, int(x)) for x in h)
        conj = model.encode(*model.mul(model.mul(g, hh), ginv))
        ok &= mask[conj]
    return ok


def toral_mask(model: FiniteModel, lat: DualLattice) -> np.ndarray:
    """Mask over (a, b) in (Z/k)^2 of the k-torsion of the subgroup with dagger ``lat``."""
    k = model.level
    a, b = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    ok = np.ones((k, k), dtype=bool)
    for x, y in lat.basis:
        ok &= (x * a + y * b) % k == 0
    return ok


def _greedy_generators(model: FiniteModel, candidates) -> list[tuple]:
    gens: list[tuple] = []
    mask = generate(model, gens)
    for c in candidates:
        if not mask[model.encode(*c)]:
            gens.append(c)
            mask = generate(model, gens)
    return gens


def descriptor_generators(model: FiniteModel, k: SubgroupClass) -> list[tuple]:
    """Generators of K n (T[level] x| W) for a Toral or Full descriptor."""
    if isinstance(k, Toral):
        lat, anti = k.lattice, None
    elif isinstance(k, Full):
        lat = position_lattice(k.m, k.n, k.lam)
        g = gamma_angle(k) * model.level
        if g.denominator != 1:
            raise ValueError(f"level {model.level} too small for {k}")
        anti = (0, int(g), 1)
    else:
        raise TypeError(f"only subgroups of N live in the finite model, got {k}")
    pts = np.argwhere(toral_mask(model, lat))
    gens = _greedy_generators(model, [(int(a), int(b), 0) for a, b in pts])
    if anti is not None:
        gens.append(anti)
    return gens


def predicted_order(model: FiniteModel, k: SubgroupClass) -> int:
    """|K n (T[level] x| W)| for a Toral or Full descriptor."""
    lat = k.lattice if isinstance(k, Toral) else position_lattice(k.m, k.n, k.lam)
    t = int(toral_mask(model, lat).sum())
    return t if isinstance(k, Toral) else 2 * t


def default_level(k: SubgroupClass) -> int:
    """2 lcm(4m, 4n) over the finite parameters (8 if there are none)."""
    if isinstance(k, Full):
        params = [x for x in (k.m, k.n) if x is not INF]
    else:
        params = []
    return 2 * lcm(*(4 * x for x in params)) if params else 8


# -- unitary sampler ------------------------------------------------------------

def random_unitaries(rng: np.random.Generator, count: int) -> np.ndarray:
    z = (rng.standard_normal((count, 2, 2)) + 1j * rng.standard_normal((count, 2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def in_torus_normalizer(g: np.ndarray, tol: float) -> np.ndarray:
    """Diagonal or anti-diagonal, up to ``tol``; works on stacks of matrices."""
    g = np.asarray(g)
    diag = (np.abs(g[..., 0, 1]) < tol) & (np.abs(g[..., 1, 0]) < tol)
    anti = (np.abs(g[..., 0, 0]) < tol) & (np.abs(g[..., 1, 1]) < tol)
    return diag | anti


def unitary_fusion_sample(trials: int, tol: float = 1e-6, seed: int = 0, extra=None,
                          unitarity_tol: float = 1e-9) -> dict:
    """Count g outside N admitting a non-scalar diagonal d with g d g^{-1} diagonal.

    The off-diagonal entries of g diag(d1, d2) g^H are linear in (d1, d2);
    (1, 1) always lies in the kernel, and a violation is a kernel of
    dimension 2, i.e. a coefficient matrix with largest singular value
    below ``tol``.
    """
    if trials < 1 or tol <= 0:
        raise ValueError("need trials >= 1 and tol > 0")
    rng = np.random.default_rng(seed)
    g = random_unitaries(rng, trials)
    if extra is not None:
        g = np.concatenate([np.asarray(extra, dtype=complex).reshape(-1, 2, 2), g])
    gh = np.conj(np.swapaxes(g, 1, 2))
    unitarity = np.abs(gh @ g - np.eye(2)).max(axis=(1, 2))
    non_unitary = unitarity >= unitarity_tol
    rejected = in_torus_normalizer(g, tol)
    keep = ~rejected & ~non_unitary
    gk = g[keep]
    coeff = np.stack([
        np.stack([gk[:, 0, 0] * np.conj(gk[:, 1, 0]), gk[:, 0, 1] * np.conj(gk[:, 1, 1])], axis=-1),
        np.stack([gk[:, 1, 0] * np.conj(gk[:, 0, 0]), gk[:, 1, 1] * np.conj(gk[:, 0, 1])], axis=-1),
    ], axis=1)
    sv = np.linalg.svd(coeff, compute_uv=False)
    bad = sv[:, 0] < tol
    return {
        "trials": int(len(g)),
        "rejected_in_N": int(rejected.sum()),
        "rejected_non_unitary": int((non_unitary & ~rejected).sum()),
        "tested": int(keep.sum()),
        "violations": int(bad.sum()),
        "min_top_singular_value": float(sv[:, 0].min()) if len(sv) else None,
        "offending": [[[[z.real, z.imag] for z in row] for row in m] for m in gk[bad][:5].tolist()],
        "tol": tol,
        "seed": seed,
    }


def normalizer_sweep(max_m: int = 6, max_n: int = 6, min_n: int = 2) -> list[dict]:
    """Brute-force normalizer orders against the N-ambient rule, over full descriptors."""
    from . import lattice as zl
    from .weyl import normalizer

    rows = []
    for m in range(1, max_m + 1):
        for n in range(min_n, max_n + 1):
            lams = ["1s", "1ns"] + (["2"] if zl.lambda2_legal(m, n) else [])
            for lam in lams:
                k = Full(m, n, lam)
                model = FiniteModel(default_level(k))
                got = oracle_normalizer(model, descriptor_generators(model, k))
                big = normalizer(k, "N")
                want = predicted_order(model, big)
                rows.append({"subgroup": k.to_json(), "normalizer": big.to_json(),
                             "level": model.level, "oracle_order": got,
                             "predicted_order": want, "agree": got == want})
    return rows
