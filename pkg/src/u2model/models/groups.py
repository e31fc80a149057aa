"""Finite component groups by presentation, and a few small representations.

Groups are named by the strings used in ``WeylData.component_group``: "1",
"Ck", products "C2xC2", and "S3" (generators a of order 2, b of order 3).
"""
from __future__ import annotations

from itertools import product

from . import linalg as la


def generators(group: str) -> list[str]:
    if group == "1":
        return []
    if group == "S3":
        return ["a", "b"]
    factors = group.split("x")
    if len(factors) == 1:
        return ["a"]
    return [f"a{i}" for i in range(len(factors))]


def relations(group: str) -> list[tuple[list[str], str]]:
    """Relators as (word, label); a representation must send each word to 1."""
    if group == "1":
        return []
    if group == "S3":
        return [(["a"] * 2, "a^2"), (["b"] * 3, "b^3"), (["a", "b"] * 2, "(ab)^2")]
    factors = [int(f[1:]) for f in group.split("x")]
    gens = generators(group)
    rels = [([g] * k, f"{g}^{k}") for g, k in zip(gens, factors)]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            x, y = gens[i], gens[j]
            # commutator written as x y x^-1 y^-1 with inverses as powers
            word = [x, y] + [x] * (factors[i] - 1) + [y] * (factors[j] - 1)
            rels.append((word, f"[{x},{y}]"))
    return rels


def order(group: str) -> int:
    if group == "1":
        return 1
    if group == "S3":
        return 6
    out = 1
    for f in group.split("x"):
        out *= int(f[1:])
    return out


def word_matrix(action: dict, word: list[str], dim: int):
    out = la.eye(dim)
    for g in word:
        out = la.mul(out, action[g])
    return out


def check_action(group: str, action: dict, dim: int) -> list[str]:
    """Names of the failed relations (or missing generators) for one degree."""
    bad = []
    for g in generators(group):
        if g not in action:
            bad.append(f"missing generator {g}")
        elif action[g].shape != (dim, dim):
            bad.append(f"generator {g} has shape {action[g].shape}, expected {(dim, dim)}")
    if bad:
        return bad
    for word, label in relations(group):
        if not la.equal(word_matrix(action, word, dim), la.eye(dim)):
            bad.append(label)
    return bad


# -- representations --------------------------------------------------------------

def _perm(images: list[int]):
    n = len(images)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        rows[i][j] = 1
    return la.qm(rows, (n, n))


def trivial(group: str, dim: int = 1) -> dict:
    return {g: la.eye(dim) for g in generators(group)}


def regular(group: str) -> dict:
    """The regular representation, as permutation matrices."""
    if group == "1":
        return {}
    if group == "S3":
        # elements b^i a^j, index i + 3 j; left multiplication
        def idx(i, j):
            return i % 3 + 3 * j
        a_img, b_img = [0] * 6, [0] * 6
        for i, j in product(range(3), range(2)):
            a_img[idx(i, j)] = idx(-i, 1 - j)   # a b^i a^j = b^-i a^(1+j)
            b_img[idx(i, j)] = idx(i + 1, j)
        return {"a": _perm(a_img), "b": _perm(b_img)}
    factors = [int(f[1:]) for f in group.split("x")]
    elems = list(product(*(range(k) for k in factors)))
    pos = {e: i for i, e in enumerate(elems)}
    out = {}
    for gi, g in enumerate(generators(group)):
        imgs = []
        for e in elems:
            f = list(e)
            f[gi] = (f[gi] + 1) % factors[gi]
            imgs.append(pos[tuple(f)])
        out[g] = _perm(imgs)
    return out


def sign(group: str) -> dict | None:
    """A 1-dimensional representation with every order-2 generator acting by -1."""
    if group == "S3":
        return {"a": la.scalar(1, -1), "b": la.eye(1)}
    if group == "1":
        return {}
    factors = [int(f[1:]) for f in group.split("x")]
    if any(k % 2 for k in factors):
        return None
    return {g: la.scalar(1, -1) for g in generators(group)}


def direct_sum(group: str, *reps: tuple[dict, int]) -> tuple[dict, int]:
    dim = sum(d for _, d in reps)
    return {g: la.block_diag(*(r[g] for r, _ in reps)) for g in generators(group)}, dim


def random_rep(rng, group: str, max_copies: int = 2) -> tuple[dict, int]:
    """A random sum of trivial, sign and regular representations."""
    pieces = []
    kinds = ["trivial", "regular"] + (["sign"] if sign(group) is not None and group != "1" else [])
    for _ in range(int(rng.integers(0, max_copies + 1))):
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "trivial":
            pieces.append((trivial(group), 1))
        elif kind == "sign":
            pieces.append((sign(group), 1))
        else:
            pieces.append((regular(group), order(group)))
    if not pieces:
        return {g: la.zeros(0, 0) for g in generators(group)}, 0
    return direct_sum(group, *pieces)


def pull_back(action: dict, homomorphism: dict, dim: int) -> dict:
    """Action of a source group through ``homomorphism``: generator -> word in the target."""
    return {g: word_matrix(action, word, dim) for g, word in homomorphism.items()}


def check_homomorphism(source: str, target: str, homomorphism: dict) -> list[str]:
    """Check a generator map on the regular representation of the target."""
    reg = regular(target)
    dim = order(target)
    bad = [f"missing image of {g}" for g in generators(source) if g not in homomorphism]
    if bad:
        return bad
    return check_action(source, pull_back(reg, homomorphism, dim), dim)
