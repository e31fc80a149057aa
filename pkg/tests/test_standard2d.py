from dataclasses import replace

import numpy as np
import pytest

from u2model.models import linalg as la
from u2model.models import load_object, validate_object
from u2model.models import standard2d as s2


@pytest.mark.parametrize("seed", range(15))
def test_random_pass_and_mutants_fail(seed):
    rng = np.random.default_rng(seed)
    x = s2.random_standard2d(rng)
    assert s2.validate_standard2d(x).ok
    bad, where = s2.mutate_standard2d(x, rng)
    assert s2.validate_standard2d(bad).verdict == "fail", where


def test_unit_object():
    x = s2.unit_object(-10, 3, ["k0", "k1"])
    assert s2.validate_standard2d(x).ok
    assert s2.TAIL in x.N1


def test_killed_top_corner_fails():
    x = s2.unit_object(-10, 3, ["k0"])
    assert s2.validate_standard2d(s2.kill_top_corner(x)).verdict == "fail"


def test_scaled_ell_t_breaks_square():
    x = s2.random_standard2d(np.random.default_rng(1))
    d = next(d for d, m in x.ellT.items() if min(m.shape))
    ellT = dict(x.ellT)
    ellT[d] = la.mul(la.scalar(ellT[d].shape[0], 2), ellT[d])
    assert s2.validate_standard2d(replace(x, ellT=ellT)).verdict == "fail"


def test_json_round_trip():
    x = s2.random_standard2d(np.random.default_rng(2))
    y = s2.Standard2DObject.from_json(x.to_json())
    assert y.to_json() == x.to_json()
    assert validate_object(load_object(x.to_json())).ok
