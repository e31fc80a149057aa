import pytest
from hypothesis import given, settings, strategies as st

from u2model import lattice as zl
from u2model.lattice import INF, DualLattice, canonicalize

from helpers import (formula_lattices, hnf_invariant_triples, snf_cofree, span_rank,
                     triple_members)

vec = st.tuples(st.integers(-12, 12), st.integers(-12, 12))
gens = st.lists(vec, max_size=4)


def L(*vs):
    return canonicalize(vs)


def test_canonicalize_examples():
    even = L((2, 0), (0, 2), (2, 2))
    assert even.rank == 2 and even == L((2, 0), (0, 2))
    assert zl.index(even) == 4
    assert L((1, 1), (2, -2)) == zl.make_lambda(1, 1, 2)
    assert L() == zl.ZERO and zl.ZERO.rank == 0


def test_w_image_examples():
    assert zl.w_image(L((1, 1))) == L((1, 1))
    assert zl.w_image(L((1, 0))) == L((0, 1))
    assert zl.w_image(L((3, 1))) == L((1, 3))


def test_is_invariant_examples():
    assert zl.is_invariant(zl.make_lambda(1, 2, 3))
    assert not zl.is_invariant(L((1, 0), (0, 4)))
    assert zl.w_image(L((1, 0), (0, 4))) == L((0, 1), (4, 0))
    assert zl.is_invariant(zl.ZERO)


def test_classify_examples():
    assert str(zl.classify(L((2, -2)))) == "EdgeMinus(2)"
    assert str(zl.classify(L((3, 3)))) == "EdgePlus(3)"
    assert str(zl.classify(L((2, 0), (0, 2)))) == "Lambda2(2,2)"
    assert str(zl.classify(zl.FULL)) == "Lambda2(1,1)"
    assert zl.classify(zl.ZERO).family == "Zero"
    assert zl.classify(L((1, 0), (0, 4))).family == "NonInvariant"
    assert zl.classify(L((1, 0))).family == "NonInvariant"


def test_make_lambda_examples():
    lam = zl.make_lambda(1, 1, 1)
    assert lam == L((1, 1), (1, -1)) and zl.index(lam) == 2
    assert (3, 5) in lam and (3, 4) not in lam
    assert zl.make_lambda(2, 2, 2) == L((2, 0), (0, 2))
    with pytest.raises(ValueError):
        zl.make_lambda(2, 1, 2)
    with pytest.raises(ValueError):
        zl.make_lambda(3, 1, 1)
    with pytest.raises(ValueError):
        zl.make_lambda(1, 0, 1)


def test_index_examples():
    assert zl.index(zl.make_lambda(1, 3, 5)) == 30
    assert zl.index(zl.make_lambda(2, 2, 4)) == 8
    assert zl.index(zl.ZERO) is INF
    assert zl.index(L((1, 1))) is INF


def test_is_cofree_in_examples():
    assert zl.is_cofree_in(zl.ZERO, L((1, 1)))
    for n in range(1, 12):
        assert zl.is_cofree_in(L((1, 1)), zl.make_lambda(1, 1, n))
    assert not zl.is_cofree_in(L((2, 2)), L((1, 1)))
    assert not zl.is_cofree_in(L((1, 1)), L((2, 2)))


def test_enumerate_invariant_small():
    def names(k):
        return sorted(str(c) for _, c in zl.enumerate_invariant(k))

    assert names(1) == ["Lambda2(1,1)"]
    assert names(2) == ["Lambda1(1,1)", "Lambda2(1,1)"]
    # index 3 contributes Lambda2(1,3) and Lambda2(3,1); the brute force below agrees
    assert names(4) == sorted(["Lambda1(1,1)", "Lambda2(1,1)", "Lambda2(1,3)", "Lambda2(3,1)",
                               "Lambda1(1,2)", "Lambda1(2,1)", "Lambda2(2,2)"])
    assert len(hnf_invariant_triples(4)) == 7
    with pytest.raises(ValueError):
        zl.enumerate_invariant(0)


def test_enumeration_matches_brute_force_hnf():
    got = {lat.basis for lat, _ in zl.enumerate_invariant(60)}
    brute = {((p, q), (0, r)) for p, q, r in hnf_invariant_triples(60)}
    assert got == brute
    want = {(1 if c.family == "Lambda1" else 2, c.m, c.n) for _, c in zl.enumerate_invariant(60)}
    assert want == formula_lattices(60)


def test_hnf_convention_matches_point_sets():
    for lat, _ in zl.enumerate_invariant(12):
        (p, q), (_, r) = lat.basis
        pts = triple_members(p, q, r, box=6)
        assert pts == {v for v in triple_members(1, 0, 1, box=6) if v in lat}


def test_lambda1_index_two_in_lambda2():
    for m in range(1, 15):
        for n in range(1, 15):
            if zl.lambda2_legal(m, n):
                small, big = zl.make_lambda(1, m, n), zl.make_lambda(2, m, n)
                assert big.contains_lattice(small)
                assert zl.index(small) == 2 * zl.index(big)


def test_json_round_trip():
    lat = zl.make_lambda(2, 3, 5)
    assert DualLattice.from_json(lat.to_json()) == lat
    data = lat.to_json()
    assert data["rank"] == 2 and len(data["basis"]) == 2
    cls = zl.classify(lat)
    assert zl.LatticeClass.from_json(cls.to_json()) == cls
    with pytest.raises(ValueError):
        DualLattice.from_json({"rank": 2, "basis": [[1, 1]]})


def test_quotient_invariants():
    assert zl.quotient_invariants(L((2, 2)), L((1, 1))) == (0, (2,))
    assert zl.quotient_invariants(zl.make_lambda(1, 1, 1), zl.FULL) == (0, (2,))
    assert zl.quotient_invariants(L((1, 1)), zl.FULL) == (1, ())


@given(gens)
def test_canonicalize_idempotent(vs):
    lat = canonicalize(vs)
    assert canonicalize(lat.basis) == lat
    assert lat.rank == span_rank(vs)
    assert all(v in lat for v in vs)


@given(gens)
def test_w_image_is_involution(vs):
    lat = canonicalize(vs)
    assert zl.w_image(zl.w_image(lat)) == lat
    assert zl.is_invariant(lat) == (zl.w_image(lat) == lat)


@given(st.integers(1, 20), st.integers(1, 20), st.sampled_from([1, 2]))
def test_classify_inverts_make_lambda(m, n, fam):
    if fam == 2 and not zl.lambda2_legal(m, n):
        return
    cls = zl.classify(zl.make_lambda(fam, m, n))
    assert (cls.family, cls.m, cls.n) == (f"Lambda{fam}", m, n)
    assert cls.build() == zl.make_lambda(fam, m, n)


@settings(max_examples=300)
@given(gens, gens)
def test_cofree_agrees_with_snf(a, b):
    sub, sup = canonicalize(a), canonicalize(b)
    joined = zl.lattice_sum(sub, sup)
    for x, y in ((sub, sup), (sub, joined)):
        assert zl.is_cofree_in(x, y) == snf_cofree([list(v) for v in x.basis],
                                                   [list(v) for v in y.basis])


@given(gens)
def test_cofree_reflexive(vs):
    lat = canonicalize(vs)
    assert zl.is_cofree_in(lat, lat)
