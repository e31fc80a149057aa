"""Graded vector spaces and graded Q[c]-modules on a finite degree window.

c has degree -2, so a module stores for each degree d in [lo + 2, hi] the
matrix of c: M_d -> M_{d-2}.  A free module Q[c]<t> lives in the degrees
t, t - 2, ... down to the bottom of the window.

The periodic module Q[c, 1/c] (x) V is stored by parity: in degree d it is
the sum of V_e over e = d mod 2 (ascending e), and c acts as the identity.

Inverting c is read off at the bottom of the window: a module is "stable"
there if c is an isomorphism between consecutive bottom degrees, and the
localization in degree d is then the module in the bottom degree of the
same parity.  ``margin`` counts how many such steps are required.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import groups as gr
from . import linalg as la


def _window(lo, hi):
    if hi < lo:
        raise ValueError(f"empty window [{lo}, {hi}]")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class GradedVS:
    lo: int
    hi: int
    dims: dict
    group: str = "1"
    action: dict = field(default_factory=dict)   # generator -> degree -> matrix

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self):
        return _window(self.lo, self.hi)

    def act(self, g: str, d: int):
        return self.action[g][d]

    def degree_action(self, d: int) -> dict:
        return {g: self.action[g][d] for g in gr.generators(self.group)}

    def check(self) -> list[dict]:
        bad = []
        for d in self.degrees():
            for rel in gr.check_action(self.group, self.degree_action_safe(d), self.dim(d)):
                bad.append({"check": "group relation", "degree": d, "detail": rel})
        return bad

    def degree_action_safe(self, d: int) -> dict:
        return {g: self.action[g][d] for g in gr.generators(self.group)
                if g in self.action and d in self.action[g]}

    def laurent_dim(self, parity: int) -> int:
        return sum(self.dim(e) for e in self.degrees() if e % 2 == parity % 2)

    def laurent_action(self, g: str, parity: int):
        return la.block_diag(*(self.action[g][e] for e in self.degrees() if e % 2 == parity % 2))

    def laurent_blocks(self, parity: int) -> list[tuple[int, int, int]]:
        """(degree e, offset, size) of each V_e inside the parity block."""
        out, off = [], 0
        for e in self.degrees():
            if e % 2 == parity % 2:
                out.append((e, off, self.dim(e)))
                off += self.dim(e)
        return out

    def to_json(self):
        return {
            "window": [self.lo, self.hi], "group": self.group,
            "dims": {str(d): self.dim(d) for d in self.degrees()},
            "action": {g: {str(d): la.to_json(m) for d, m in per.items()}
                       for g, per in self.action.items()},
        }

    @classmethod
    def from_json(cls, data):
        lo, hi = data["window"]
        return cls(lo, hi, {int(d): int(n) for d, n in data["dims"].items()},
                   data.get("group", "1"),
                   {g: {int(d): la.from_json(m) for d, m in per.items()}
                    for g, per in data.get("action", {}).items()})


def graded_vs(lo: int, hi: int, pieces: dict, group: str = "1") -> GradedVS:
    """From {degree: (action dict, dim)}; degrees not listed are zero."""
    dims = {d: pieces[d][1] if d in pieces else 0 for d in _window(lo, hi)}
    action = {g: {d: (pieces[d][0][g] if d in pieces else la.zeros(0, 0))
                  for d in _window(lo, hi)} for g in gr.generators(group)}
    return GradedVS(lo, hi, dims, group, action)


@dataclass(frozen=True)
class CModule:
    lo: int
    hi: int
    dims: dict
    c: dict                                        # degree d -> matrix M_d -> M_{d-2}
    group: str = "1"
    action: dict = field(default_factory=dict)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self):
        return _window(self.lo, self.hi)

    def c_map(self, d: int):
        return self.c[d]

    def c_power(self, d: int, j: int):
        out = la.eye(self.dim(d))
        for i in range(j):
            out = la.mul(self.c[d - 2 * i], out)
        return out

    def act(self, g: str, d: int):
        return self.action[g][d]

    @property
    def total_dim(self) -> int:
        return sum(self.dim(d) for d in self.degrees())

    def check(self) -> list[dict]:
        bad = []
        for d in self.degrees():
            acts = {g: self.action[g][d] for g in gr.generators(self.group)
                    if g in self.action and d in self.action[g]}
            for rel in gr.check_action(self.group, acts, self.dim(d)):
                bad.append({"check": "group relation", "degree": d, "detail": rel})
        for d in range(self.lo + 2, self.hi + 1):
            if d not in self.c or self.c[d].shape != (self.dim(d - 2), self.dim(d)):
                bad.append({"check": "c shape", "degree": d})
                continue
            for g in gr.generators(self.group):
                try:
                    lhs = la.mul(self.c[d], self.action[g][d])
                    rhs = la.mul(self.action[g][d - 2], self.c[d])
                except (KeyError, ValueError):
                    continue
                if not la.equal(lhs, rhs):
                    bad.append({"check": "c commutes with action", "degree": d, "detail": g})
        return bad

    def unstable_bottom(self, margin: int) -> list[int]:
        """Bottom degrees where c fails to be an isomorphism."""
        out = []
        for d in range(self.lo + 2, min(self.hi, self.lo + 2 * margin + 1) + 1):
            if not la.is_invertible(self.c[d]):
                out.append(d)
        return out

    def window_fits(self, margin: int) -> bool:
        return self.hi >= self.lo + 2 * margin + 1

    def decompose(self) -> list[tuple]:
        """Summands ("free", t) and ("torsion", t, k) read from the ranks of powers of c.

        A string that reaches the bottom of the window is reported as free.
        """
        out = []
        for d in self.degrees():
            steps = (d - self.lo) // 2
            counts = []
            for j in range(steps + 1):
                r = la.rank(self.c_power(d, j))
                # strings through degree d that start at d: drop those coming from d + 2
                if d + 2 <= self.hi:
                    r_above = la.rank(self.c_power(d + 2, j + 1))
                else:
                    r_above = 0
                counts.append(r - r_above)
            for j in range(steps + 1):
                longer = counts[j + 1] if j + 1 <= steps else 0
                exact = counts[j] - longer
                if j == steps:
                    out += [("free", d)] * counts[j]
                else:
                    out += [("torsion", d, j + 1)] * exact
        return sorted(out, key=repr)

    def to_json(self):
        return {
            "window": [self.lo, self.hi], "group": self.group,
            "dims": {str(d): self.dim(d) for d in self.degrees()},
            "c": {str(d): la.to_json(m) for d, m in self.c.items()},
            "action": {g: {str(d): la.to_json(m) for d, m in per.items()}
                       for g, per in self.action.items()},
        }

    @classmethod
    def from_json(cls, data):
        lo, hi = data["window"]
        return cls(lo, hi, {int(d): int(n) for d, n in data["dims"].items()},
                   {int(d): la.from_json(m) for d, m in data["c"].items()},
                   data.get("group", "1"),
                   {g: {int(d): la.from_json(m) for d, m in per.items()}
                    for g, per in data.get("action", {}).items()})


def _string(lo, hi, top, length, rep, dim, group) -> CModule:
    """Q[c]/(c^length)<top> (x) rep; length None means free."""
    def present(d):
        if d > top or (top - d) % 2:
            return False
        return length is None or (top - d) // 2 < length
    dims = {d: dim if present(d) else 0 for d in _window(lo, hi)}
    c = {}
    for d in range(lo + 2, hi + 1):
        c[d] = la.eye(dim) if present(d) and present(d - 2) else la.zeros(dims[d - 2], dims[d])
    action = {g: {d: rep[g] if dims[d] else la.zeros(0, 0) for d in _window(lo, hi)}
              for g in gr.generators(group)}
    return CModule(lo, hi, dims, c, group, action)


def free_module(lo: int, hi: int, top: int, rep=None, dim: int = 1, group: str = "1") -> CModule:
    rep = rep if rep is not None else gr.trivial(group, dim)
    return _string(lo, hi, top, None, rep, dim, group)


def torsion_module(lo: int, hi: int, top: int, length: int, rep=None, dim: int = 1,
                   group: str = "1") -> CModule:
    rep = rep if rep is not None else gr.trivial(group, dim)
    return _string(lo, hi, top, length, rep, dim, group)


def zero_module(lo: int, hi: int, group: str = "1") -> CModule:
    return CModule(lo, hi, {d: 0 for d in _window(lo, hi)},
                   {d: la.zeros(0, 0) for d in range(lo + 2, hi + 1)}, group,
                   {g: {d: la.zeros(0, 0) for d in _window(lo, hi)}
                    for g in gr.generators(group)})


def direct_sum(*mods: CModule) -> CModule:
    first = mods[0]
    lo, hi, group = first.lo, first.hi, first.group
    if any((m.lo, m.hi, m.group) != (lo, hi, group) for m in mods):
        raise ValueError("summands must share window and group")
    dims = {d: sum(m.dim(d) for m in mods) for d in _window(lo, hi)}
    c = {d: la.block_diag(*(m.c[d] for m in mods)) for d in range(lo + 2, hi + 1)}
    action = {g: {d: la.block_diag(*(m.action[g][d] for m in mods)) for d in _window(lo, hi)}
              for g in gr.generators(group)}
    return CModule(lo, hi, dims, c, group, action)


def change_basis(m: CModule, bases: dict) -> CModule:
    """The isomorphic module with new basis B_d in each degree (columns in old coordinates)."""
    inv = {d: bases[d].inv() if m.dim(d) else la.zeros(0, 0) for d in m.degrees()}
    c = {d: la.mul(inv[d - 2], m.c[d], bases[d]) for d in range(m.lo + 2, m.hi + 1)}
    action = {g: {d: la.mul(inv[d], m.action[g][d], bases[d]) for d in m.degrees()}
              for g in m.action}
    return CModule(m.lo, m.hi, dict(m.dims), c, m.group, action)


def restrict_group(m: CModule, group: str, homomorphism: dict) -> CModule:
    """The module with the action pulled back along a map into its current group."""
    action = {g: {d: gr.word_matrix({h: m.action[h][d] for h in m.action}, word, m.dim(d))
                  for d in m.degrees()}
              for g, word in homomorphism.items()}
    return CModule(m.lo, m.hi, dict(m.dims), dict(m.c), group, action)
