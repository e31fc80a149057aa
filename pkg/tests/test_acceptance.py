"""Acceptance criteria 1 to 10, one test each, with a printed pass/fail line."""
import numpy as np

from u2model import lattice as zl
from u2model.blocks import BLOCK_IDS, FAULTS, burnside_functions, validate_partition
from u2model.lattice import INF, canonicalize
from u2model.models import standard2d as s2
from u2model.models import type0 as t0
from u2model.models import type1 as t1
from u2model.models import zerodim as zd
from u2model.models.flags import enumerate_flags, flip
from u2model.models.restrict import restrict_easy_block
from u2model.oracles import normalizer_sweep, unitary_fusion_sample
from u2model.subgroups import CentralProduct, enumerate_subgroups
from u2model.weyl import count_full_classes, fuse, fusion_classes

from helpers import (composite_is_zero, contains, formula_lattices, hnf_invariant_triples,
                     morphism_case, rank_nullity_failures, snf_cofree)

N_OBJECTS = 100


def test_criterion_01_lattice_classification(verdict):
    brute = hnf_invariant_triples(200)
    classes = set()
    for p, q, r in brute:
        c = zl.classify(canonicalize([(p, q), (0, r)]))
        classes.add((c.family, c.m, c.n))
    want = {(f"Lambda{f}", m, n) for f, m, n in formula_lattices(200)}
    listed = {((p, q), (0, r)) for p, q, r in brute}
    enumerated = {lat.basis for lat, _ in zl.enumerate_invariant(200)}
    ok = classes == want and len(brute) == len(want) and listed == enumerated
    assert verdict(1, ok, f"{len(brute)} invariant HNF lattices of index <= 200, "
                          f"formula set {len(want)}, equal={classes == want}")


def test_criterion_02_counts(verdict):
    hs = ["SO3", "A5", "S4", "A4", "D4"]
    a = [count_full_classes(h, "preimage") for h in hs]
    b = [count_full_classes(h, "U2") for h in hs]
    ok = a == [1, 1, 2, 3, 4] and b == [1, 1, 2, 2, 2]
    assert verdict(2, ok, f"a(H) = {a}, b(H) = {b}")


def test_criterion_03_partition(verdict):
    rep = validate_partition(8)
    faults = {name: sorted(validate_partition(8, rule).kinds()) for name, rule in FAULTS.items()}
    detected = [name for name, kinds in faults.items() if kinds]
    ok = (rep.ok and set(rep.blocks) == set(BLOCK_IDS)
          and sum(rep.blocks.values()) == len(enumerate_subgroups(8)) and len(detected) >= 5)
    assert verdict(3, ok, f"M=8: {sum(rep.blocks.values())} classes, {len(rep.violations)} "
                          f"violations, {rep.pairs_checked} pairs; faults detected "
                          f"{len(detected)}/{len(FAULTS)}")


def _random_lattice(rng):
    rank = int(rng.integers(0, 3))
    return canonicalize([tuple(int(x) for x in rng.integers(-6, 7, 2)) for _ in range(rank)])


def _saturated_line(rng, lat):
    """A line of ``lat`` with free quotient: primitive coordinates in the basis."""
    while True:
        u, v = (int(x) for x in rng.integers(-5, 6, 2))
        if np.gcd(u, v) == 1:
            break
    coeffs = (u, v)[:lat.rank] if lat.rank == 2 else (1,)
    vec = tuple(sum(c * b[i] for c, b in zip(coeffs, lat.basis)) for i in range(2))
    return canonicalize([vec])


def test_criterion_04_duality(verdict):
    lats = [lat for lat, _ in zl.enumerate_invariant(100)]
    lats += [zl.ZERO] + [zl.edge_plus(k) for k in range(1, 11)] + [zl.edge_minus(k)
                                                                    for k in range(1, 11)]
    basis = {lat: [list(v) for v in lat.basis] for lat in lats}
    disagree = checked = 0
    for a in lats:
        for b in lats:
            checked += 1
            if contains(basis[a], basis[b]):
                want = snf_cofree(basis[a], basis[b])
            else:
                want = False
            disagree += zl.is_cofree_in(a, b) != want

    rng = np.random.default_rng(2024)
    order_bad = 0
    for _ in range(1000):
        c = _random_lattice(rng)
        while c.rank == 0:
            c = _random_lattice(rng)
        b = _saturated_line(rng, c)
        if rng.random() < 0.3:
            b = canonicalize([tuple(2 * x for x in b.basis[0])])
        a = zl.ZERO if rng.random() < 0.7 else b
        for x in (a, b, c):
            order_bad += not zl.is_cofree_in(x, x)
        if zl.is_cofree_in(a, b) and zl.is_cofree_in(b, c):
            order_bad += not zl.is_cofree_in(a, c)
        # the chain is cofree exactly when b is saturated in c
        order_bad += zl.is_cofree_in(b, c) != snf_cofree([list(v) for v in b.basis],
                                                         [list(v) for v in c.basis])

    inverse_bad = 0
    for m in range(1, 21):
        for n in range(1, 21):
            for fam in (1, 2):
                if fam == 2 and not zl.lambda2_legal(m, n):
                    continue
                cls = zl.classify(zl.make_lambda(fam, m, n))
                inverse_bad += (cls.family, cls.m, cls.n) != (f"Lambda{fam}", m, n)
    ok = disagree == 0 and order_bad == 0 and inverse_bad == 0
    assert verdict(4, ok, f"{checked} pairs vs SNF oracle: {disagree} disagreements; "
                          f"1000 triples: {order_bad} order failures; "
                          f"classify(make_lambda) failures: {inverse_bad}")


def test_criterion_05_normalizer_oracle(verdict):
    rows = normalizer_sweep(6, 6, 2)
    bad = [r for r in rows if not r["agree"]]
    assert verdict(5, not bad and len(rows) == 75,
                   f"{len(rows)} full descriptors (m <= 6, 2 <= n <= 6): {len(bad)} mismatches")


def test_criterion_06_fusion(verdict):
    stats = unitary_fusion_sample(10_000, 1e-6, seed=0)
    ks = enumerate_subgroups(6)
    rel = np.array([[fuse(a, b) for b in ks] for a in ks])
    r = rel.astype(int)
    equivalence = (rel.diagonal().all() and (rel == rel.T).all()
                   and not ((r @ r > 0) & ~rel).any())
    sizes = {}
    for h in ["SU2", "A5", "S4", "A4", "D4"]:
        for s in range(1, 7):
            members = [k for k in ks if isinstance(k, CentralProduct) and k.group == h
                       and k.s == s]
            sizes.setdefault(h, set()).add(len(fusion_classes(members)))
    want = {h: {count_full_classes("SO3" if h == "SU2" else h, "U2")} for h in sizes}
    ok = stats["violations"] == 0 and stats["tested"] > 9000 and equivalence and sizes == want
    assert verdict(6, ok, f"{stats['tested']} unitary samples: {stats['violations']} violations; "
                          f"fuse equivalence on {len(ks)} classes: {bool(equivalence)}; "
                          f"quotient sizes {dict((h, sorted(v)) for h, v in sizes.items())}")


KINDS = {
    "type0": (t0.random_type0, t0.mutate_type0, t0.validate_type0),
    "type1": (t1.random_type1, t1.mutate_type1, t1.validate_type1),
    "standard2d": (s2.random_standard2d, s2.mutate_standard2d, s2.validate_standard2d),
    "zero_dim": (zd.random_zero_dim, zd.mutate_zero_dim, zd.validate_zero_dim),
}


def test_criterion_07_models(verdict):
    summary = {}
    for kind, (make, mutate, validate) in KINDS.items():
        passed = rejected = 0
        for seed in range(N_OBJECTS):
            rng = np.random.default_rng(seed)
            x = make(rng)
            passed += validate(x).verdict == "pass"
            bad, _ = mutate(x, rng)
            rejected += validate(bad).verdict == "fail"
        summary[kind] = (passed, rejected)
    morph_bad = 0
    for seed in range(1000, 1000 + N_OBJECTS):
        f = morphism_case(seed)
        ker, inc = t1.kernel(f)
        cok, proj = t1.cokernel(f)
        morph_bad += bool(rank_nullity_failures(f, ker, cok)
                          or not composite_is_zero(f, inc) or not composite_is_zero(proj, f)
                          or not t1.validate_type1(ker).ok or not t1.validate_type1(cok).ok)
    ok = all(v == (N_OBJECTS, N_OBJECTS) for v in summary.values()) and morph_bad == 0
    text = ", ".join(f"{k} {p}/{N_OBJECTS} pass {r}/{N_OBJECTS} mutants rejected"
                     for k, (p, r) in summary.items())
    assert verdict(7, ok, f"{text}; {N_OBJECTS} morphisms, {morph_bad} kernel/cokernel failures")


def _relabel(x, labels):
    pts = tuple(t1.Type1Point(lab, p.module, p.hom, p.beta) for lab, p in zip(labels, x.points))
    return t1.Type1Object(x.V, pts, x.margin)


def test_criterion_08_restriction(verdict):
    x = _relabel(t1.random_type1(np.random.default_rng(7), group="S3", n_points=1),
                 ["D4x2C6[1]"])
    y = restrict_easy_block(x, "D4")
    labels = [p.label for p in y.points]
    same = len({str(p.module.to_json()) for p in y.points}) == 1
    d4_ok = (labels == ["D4x2C6[1]", "D4x2C6[2]", "D4x2C6[3]"] and same
             and t1.validate_type1(y).ok)
    s = _relabel(t1.random_type1(np.random.default_rng(8), n_points=2), ["S4x2C4", "S4x2C4[1]"])
    z = restrict_easy_block(s, "S4")
    s4_ok = ([p.label for p in z.points] == [p.label for p in s.points]
             and all(p.module.to_json() == q.module.to_json() for p, q in zip(s.points, z.points)))
    assert verdict(8, d4_ok and s4_ok, f"D4 non-canonical class -> {len(labels)} classes, "
                                       f"equal modules: {same}; S4 pointwise identity: {s4_ok}")


def test_criterion_09_burnside(verdict):
    bf = burnside_functions(8)
    checks = bf.check()
    assert verdict(9, all(checks.values()),
                   f"M=8, {len(bf.classes)} finite-Weyl classes: " +
                   ", ".join(f"{k}={v}" for k, v in checks.items()))


def test_criterion_10_flags(verdict):
    central_bad = other_bad = n_central = n_other = 0
    for f in enumerate_flags(6, "N"):
        g = flip(f)
        if f.central:
            n_central += 1
            if f.rank == 2:
                good = (f.ring, f.component, g.ring, g.component) == \
                    ("Q[c,c']", "C2", "Q[c,d']", "1")
            else:
                good = (f.ring, g.ring, g.component) == ("Q[c']", "Q[d']", "1")
            good = good and g.ring_map().get("d'") == "c'^2"
            central_bad += not good
        else:
            n_other += 1
            other_bad += (f.ring, f.component, f.generators) != (g.ring, g.component, g.generators)
    ok = central_bad == 0 and other_bad == 0 and n_central and n_other
    assert verdict(10, bool(ok), f"{n_central} central flags flip ({central_bad} bad), "
                                 f"{n_other} non-central flags unchanged ({other_bad} bad)")
