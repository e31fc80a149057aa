import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from u2model import lattice as zl
from u2model.estimators import BlockClassifier, BurnsideIdempotentTransformer, LatticeClassifier
from u2model.subgroups import AMBIENT, CentralProduct, Full, enumerate_subgroups
from u2model.validation import (check_ambient, check_descriptor, check_lattice,
                                check_random_state, check_truncation)


def test_lattice_classifier():
    X = [[[1, 1], [2, -2]], [[2, 0], [0, 2]], [[1, 0]], [], {"basis": [[3, -3]]}]
    clf = LatticeClassifier().fit(X)
    assert clf.predict(X).tolist() == ["Lambda1", "Lambda2", "NonInvariant", "Zero", "EdgeMinus"]
    assert clf.predict_params(X)[0] == ("Lambda1", 1, 2)
    assert clf.score(X, clf.predict(X)) == 1.0


def test_block_classifier_methods_agree():
    ks = enumerate_subgroups(4)
    a = BlockClassifier("tag").fit().predict(ks)
    b = BlockClassifier("projection").fit().predict([k.to_json() for k in ks])
    assert (a == b).all()
    with pytest.raises(ValueError):
        BlockClassifier("magic").fit()


def test_clone_and_params():
    est = clone(BlockClassifier(method="projection"))
    assert est.get_params() == {"method": "projection"}
    assert BurnsideIdempotentTransformer(truncation=3).get_params()["truncation"] == 3


def test_burnside_transformer_rows_are_indicators():
    ks = [Full(3, 4, "1s"), CentralProduct("D4", 2, 1), AMBIENT, CentralProduct("SU2", 2, 0)]
    t = BurnsideIdempotentTransformer(truncation=4).fit()
    out = t.transform(ks)
    assert out.shape == (4, 7)
    assert np.allclose(out.sum(axis=1), 1.0)
    names = list(t.get_feature_names_out())
    assert out[0, names.index("e_N")] == 1 and out[1, names.index("e_D4Z")] == 1
    assert out[3, names.index("e_U2")] == 1


def test_pipeline():
    pipe = make_pipeline(BurnsideIdempotentTransformer(truncation=2))
    assert pipe.fit_transform(enumerate_subgroups(2)).shape[1] == 7


def test_unfitted_raises():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        BlockClassifier().predict([AMBIENT])


def test_validation_helpers():
    assert check_truncation(3) == 3
    for bad in (0, -1, 2.5, "3", True):
        with pytest.raises(ValueError):
            check_truncation(bad)
    assert check_ambient("N") == "N"
    with pytest.raises(ValueError):
        check_ambient("SO3")
    assert check_descriptor({"kind": "ambient"}) == AMBIENT
    with pytest.raises(TypeError):
        check_descriptor(42)
    assert check_lattice([[2, 0], [0, 2]]) == zl.canonicalize([(2, 0), (0, 2)])
    with pytest.raises(ValueError):
        check_lattice([[1, 2, 3]])
    a, b = check_random_state(5), check_random_state(5)
    assert a.integers(1000) == b.integers(1000)
