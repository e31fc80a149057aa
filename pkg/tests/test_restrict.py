import numpy as np
import pytest

from u2model.lattice import INF
from u2model.models import type1 as t1
from u2model.models.restrict import orbit_of, parse_label, restrict_easy_block
from u2model.subgroups import CentralProduct


def relabel(x, labels):
    pts = tuple(t1.Type1Point(lab, p.module, p.hom, p.beta) for lab, p in zip(labels, x.points))
    return t1.Type1Object(x.V, pts, x.margin)


def test_parse_label():
    assert parse_label("D4x2C6[1]") == CentralProduct("D4", 3, 1)
    assert parse_label("S4x2Z") == CentralProduct("S4", INF, 0)
    assert parse_label("A4x2C2") == CentralProduct("A4", 1, 0)
    for bad in ("D4x2C5", "D4", "Q8x2C2"):
        with pytest.raises(ValueError):
            parse_label(bad)


def test_orbits():
    assert orbit_of(CentralProduct("D4", 3, 2)) == [1, 2, 3]
    assert orbit_of(CentralProduct("A4", 3, 2)) == [1, 2]
    assert orbit_of(CentralProduct("S4", 3, 1)) == [1]
    assert orbit_of(CentralProduct("D4", INF, 0)) == [0]


@pytest.mark.parametrize("seed", range(5))
def test_d4_non_canonical_class_spreads_to_three(seed):
    rng = np.random.default_rng(seed)
    x = relabel(t1.random_type1(rng, group="S3", n_points=1), ["D4x2C6[1]"])
    assert t1.validate_type1(x).ok
    y = restrict_easy_block(x, "D4")
    assert [p.label for p in y.points] == ["D4x2C6[1]", "D4x2C6[2]", "D4x2C6[3]"]
    mods = {str(p.module.to_json()) for p in y.points}
    betas = {str({d: str(m) for d, m in p.beta.items()}) for p in y.points}
    assert len(mods) == 1 and len(betas) == 1
    assert y.V.group == "1"
    assert t1.validate_type1(y).ok


def test_s4_is_pointwise_identity():
    x = relabel(t1.random_type1(np.random.default_rng(9), n_points=2), ["S4x2C4", "S4x2C4[1]"])
    y = restrict_easy_block(x, "S4")
    assert [p.label for p in y.points] == [p.label for p in x.points]
    for p, q in zip(x.points, y.points):
        assert p.module.dims == q.module.dims
        assert all(str(p.beta[d]) == str(q.beta[d]) for d in p.beta)


def test_zero_object():
    x = t1.torsion_object(-8, 2, [], top=0, length=1)
    y = restrict_easy_block(x, "D4")
    assert y.points == ()


def test_rejections():
    x = t1.free_object(-8, 2, ["D4x2C6[2]"])
    with pytest.raises(ValueError):
        restrict_easy_block(x, "D4")
    with pytest.raises(ValueError):
        restrict_easy_block(t1.free_object(-8, 2, ["A4x2C6"]), "D4")
    with pytest.raises(ValueError):
        restrict_easy_block(t1.free_object(-8, 2, ["D4x2C6[1]", "D4x2C6[1]"]), "D4")
