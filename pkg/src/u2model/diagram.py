"""SVG and DOT pictures: the (m, n)-square and Hasse diagrams of the other blocks.

In the square a subgroup with parameters (m, n) sits at (-1/n, -1/m), with
1/INF = 0, so the torus is the corner at the origin and finite subgroups
fill the third quadrant.  Where a Lambda2 lattice (or a second or third
lambda-class) shares a position, the marker gets extra concentric circles.
Edges join covering pairs of cotoral inclusions, drawn from the smaller
subgroup to the larger.
"""
from __future__ import annotations

from fractions import Fraction

from . import lattice as zl
from .blocks import BLOCK_IDS, block_id
from .lattice import INF, DualLattice
from .subgroups import (Ambient, CentralProduct, Full, Toral, enumerate_subgroups,
                        invariant_toral_lattices, is_cotoral, position_lattice)
from .weyl import fusion_classes

FORMATS = ("svg", "dot")
SIZE = 400
PAD = 40


def _inv(x) -> Fraction:
    return Fraction(0) if x is INF else Fraction(1, x)


def lattice_params(lat: DualLattice):
    """(m, n, family) for an invariant lattice; INF marks an infinite parameter."""
    cls = zl.classify(lat)
    if cls.family == "Zero":
        return INF, INF, "Zero"
    if cls.family == "EdgePlus":
        return cls.m, INF, cls.family
    if cls.family == "EdgeMinus":
        return INF, cls.n, cls.family
    return cls.m, cls.n, cls.family


def position(m, n) -> tuple[Fraction, Fraction]:
    return -_inv(n), -_inv(m)


def _square_nodes(truncation: int, block: str):
    """[(key, label, (x, y), rings)] and the subgroups behind each key."""
    groups: dict = {}
    if block == "T":
        for lat in invariant_toral_lattices(truncation):
            m, n, fam = lattice_params(lat)
            groups.setdefault((m, n), []).append((Toral(lat), fam))
    else:
        for k in enumerate_subgroups(truncation):
            if isinstance(k, Full) and block_id(k) == "N":
                groups.setdefault((k.m, k.n), []).append((k, k.lam))
    nodes = []
    for (m, n), members in groups.items():
        label = f"({m},{n})"
        nodes.append(((m, n), label, position(m, n), len(members), [k for k, _ in members]))
    nodes.sort(key=lambda t: (t[2][1], t[2][0], t[1]))
    return nodes


def _hasse_edges(nodes):
    """Covering pairs (i, j) with some member of node i cotoral in some member of node j."""
    n = len(nodes)
    rel = [[i != j and any(is_cotoral(a, b) for a in nodes[i][4] for b in nodes[j][4])
            for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if rel[i][j] and not any(rel[i][k] and rel[k][j] for k in range(n) if k not in (i, j)):
                edges.append((i, j))
    return edges


def square(truncation: int, block: str = "T") -> dict:
    """Nodes and edges of the (m, n)-square for the T or N block."""
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    if block not in ("T", "N"):
        raise ValueError("the square is drawn for blocks T and N")
    nodes = _square_nodes(truncation, block)
    return {"nodes": nodes, "edges": _hasse_edges(nodes)}


def dimension(k) -> int:
    if isinstance(k, Ambient):
        return 4
    if isinstance(k, CentralProduct):
        return 3 if k.group == "SU2" else (1 if k.s is INF else 0)
    lat = k.lattice if isinstance(k, Toral) else position_lattice(k.m, k.n, k.lam)
    return 2 - lat.rank


def hasse(truncation: int, block: str) -> dict:
    """Layered Hasse diagram of a block (one node per U(2)-class), layers by dimension."""
    if block not in BLOCK_IDS:
        raise ValueError(f"unknown block {block!r}")
    members = [k for k in enumerate_subgroups(truncation) if block_id(k) == block]
    reps = [cls[0] for cls in fusion_classes(members)]
    layers: dict = {}
    for k in reps:
        layers.setdefault(dimension(k), []).append(k)
    nodes = []
    top = max(layers) if layers else 0
    for dim, ks in sorted(layers.items()):
        ks = sorted(ks, key=str)
        for i, k in enumerate(ks):
            x = Fraction(-(len(ks) - i), len(ks) + 1)
            y = Fraction(dim - top - 1, top + 1) if top else Fraction(dim - 1)
            nodes.append((str(k), str(k), (x, y), 1, [k]))
    return {"nodes": nodes, "edges": _hasse_edges(nodes)}


def _px(p) -> tuple[float, float]:
    x, y = p
    span = SIZE - 2 * PAD
    return PAD + float(x + 1) * span, PAD + float(-y) * span


def _svg(data, title: str) -> str:
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">', f"<title>{title}</title>",
           f'<rect x="{PAD}" y="{PAD}" width="{SIZE - 2 * PAD}" height="{SIZE - 2 * PAD}" '
           'fill="none" stroke="#bbb"/>']
    nodes = data["nodes"]
    for i, j in data["edges"]:
        (x1, y1), (x2, y2) = _px(nodes[i][2]), _px(nodes[j][2])
        out.append(f'<line class="edge" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   'stroke="#555"/>')
    for key, label, pos, rings, _ in nodes:
        cx, cy = _px(pos)
        x, y = pos
        for r in range(rings):
            out.append(f'<circle class="marker" data-label="{label}" data-x="{x}" data-y="{y}" '
                       f'cx="{cx:.2f}" cy="{cy:.2f}" r="{3 + 3 * r}" fill="none" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dot(data, title: str) -> str:
    out = [f'digraph "{title}" {{', "  node [shape=circle, label=\"\"];"]
    nodes = data["nodes"]
    for i, (key, label, (x, y), rings, _) in enumerate(nodes):
        shape = "doublecircle" if rings > 1 else "circle"
        out.append(f'  n{i} [xlabel="{label}", shape={shape}, peripheries={rings}, '
                   f'pos="{float(x) * 10:.4f},{float(y) * 10:.4f}!"];')
    for i, j in data["edges"]:
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out) + "\n"


def emit_square(truncation: int, fmt: str = "svg", block: str = "T") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    data = square(truncation, block) if block in ("T", "N") else hasse(truncation, block)
    title = f"block {block}, truncation {truncation}"
    return _svg(data, title) if fmt == "svg" else _dot(data, title)
