import numpy as np
import pytest

from u2model.models import linalg as la
from u2model.models import type0 as t0
from u2model.models import load_object, validate_object


@pytest.mark.parametrize("seed", range(25))
def test_random_pass_and_mutants_fail(seed):
    rng = np.random.default_rng(seed)
    x = t0.random_type0(rng)
    assert t0.validate_type0(x).ok
    bad, where = t0.mutate_type0(x, rng)
    assert t0.validate_type0(bad).verdict == "fail", where


def test_constant_and_dihedral():
    assert t0.validate_type0(t0.constant_object(0, 3, ["p", "q"])).ok
    assert t0.validate_type0(t0.dihedral_object(0, 3, 4)).ok
    assert t0.validate_type0(t0.dihedral_object(0, 3, 2, fixed=False)).ok


def _zeroed(x):
    stalks = tuple(t0.Stalk(s.label, s.F, s.hom,
                            {d: la.zeros(*m.shape) for d, m in s.sigma.items()})
                   for s in x.stalks)
    return t0.Type0Object(x.FH, stalks, x.exceptions)


def test_zero_spreading_map_fails():
    x = _zeroed(t0.constant_object(0, 3, ["p", "q"]))
    rep = t0.validate_type0(x)
    assert rep.verdict == "fail"
    assert {f["check"] for f in rep.failures} == {"spreading map injective off the exceptions"}


def test_exceptions_are_ignored_for_injectivity():
    x = t0.constant_object(0, 2, ["p", "q"])
    one_dead = t0.Type0Object(x.FH, (x.stalks[0], _zeroed(x).stalks[1]), frozenset({"q"}))
    assert t0.validate_type0(one_dead).ok
    all_dead = t0.Type0Object(x.FH, (x.stalks[0], _zeroed(x).stalks[1]), frozenset({"p"}))
    assert not t0.validate_type0(all_dead).ok
    unknown = t0.Type0Object(x.FH, x.stalks, frozenset({"zz"}))
    assert not t0.validate_type0(unknown).ok


def test_sigma_shape_checked():
    x = t0.constant_object(0, 2, ["p"])
    s = x.stalks[0]
    broken = t0.Stalk(s.label, s.F, s.hom, {d: m for d, m in s.sigma.items() if d != 0})
    assert not t0.validate_type0(t0.Type0Object(x.FH, (broken,))).ok


def test_json_round_trip():
    x = t0.random_type0(np.random.default_rng(4))
    assert t0.Type0Object.from_json(x.to_json()).to_json() == x.to_json()
    assert validate_object(load_object(x.to_json())).ok
