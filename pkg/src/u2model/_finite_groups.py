"""Fixed data on the five isolated subgroups H of SO(3) and their double covers.

Abelianizations: A5 is perfect, S4^ab = C2 (sign), A4^ab = C3, D4 = C2 x C2.
Weyl groups in SO(3): N(A4) = N(D4) = S4, so W(A4) = S4/A4 = C2 and
W(D4) = S4/D4 = S3; the others are self-normalizing.

The Weyl group acts on Hom(H^ab, T), which is identified with H^ab itself.
W(A4) = C2 swaps the two nontrivial characters of C3 (x -> -x); W(D4) = S3
acts on Hom(D4, T) = F_2^2 through GL_2(F_2).
"""
from itertools import product

ISOLATED = ("SO3", "A5", "S4", "A4", "D4")

# Descriptor label of the double cover of H inside SU(2).
COVER_LABEL = {"SO3": "SU2", "A5": "A5", "S4": "S4", "A4": "A4", "D4": "D4"}
LABEL_TO_SO3 = {v: k for k, v in COVER_LABEL.items()}

ABELIANIZATION = {"SO3": (), "A5": (), "S4": (2,), "A4": (3,), "D4": (2, 2)}

WEYL_SO3 = {"SO3": "1", "A5": "1", "S4": "1", "A4": "C2", "D4": "S3"}

NORMALIZER_SO3 = {"SO3": "SO3", "A5": "A5", "S4": "S4", "A4": "S4", "D4": "S4"}

WEYL_ACTION = {
    "SO3": [],
    "A5": [],
    "S4": [],
    "A4": [((-1,),)],
    "D4": [((0, 1), (1, 0)), ((1, 1), (0, 1))],
}


def hom_elements(h: str) -> list[tuple[int, ...]]:
    """Elements of Hom(H^ab, T) in a fixed order; index 0 is the trivial one."""
    return [tuple(x) for x in product(*(range(k) for k in ABELIANIZATION[h]))]


def _act(matrix, x, orders):
    return tuple(
        sum(matrix[i][j] * x[j] for j in range(len(x))) % orders[i] for i in range(len(x))
    )


def weyl_orbits(h: str) -> list[list[int]]:
    """Orbits of W_SO(3)(H) on Hom(H^ab, T), as lists of element indices."""
    elems = hom_elements(h)
    orders = ABELIANIZATION[h]
    pos = {e: i for i, e in enumerate(elems)}
    seen: set[int] = set()
    orbits = []
    for i, e in enumerate(elems):
        if i in seen:
            continue
        orbit = {i}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for g in WEYL_ACTION[h]:
                y = _act(g, x, orders)
                if pos[y] not in orbit:
                    orbit.add(pos[y])
                    frontier.append(y)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def orbit_representative(h: str, variant: int) -> int:
    for orbit in weyl_orbits(h):
        if variant in orbit:
            return orbit[0]
    raise ValueError(f"variant {variant} out of range for {h}")
