"""scikit-learn style adapters over the classification code.

Nothing here is learned: ``fit`` only records the truncation and the label
set, so the adapters can sit in pipelines and grid searches next to real
estimators.  Inputs are sequences of descriptors (or their JSON dicts) and,
for lattices, bases.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import lattice as zl
from .blocks import BLOCK_IDS, block_id, lift, so3_block_of
from .subgroups import project
from .validation import check_descriptors, check_lattice, check_truncation

LATTICE_FAMILIES = ("Zero", "EdgePlus", "EdgeMinus", "Lambda1", "Lambda2", "NonInvariant")


class LatticeClassifier(ClassifierMixin, BaseEstimator):
    """Predicts the family (Zero, EdgePlus, ..., Lambda2) of each lattice basis."""

    def fit(self, X, y=None):
        self.classes_ = np.array(LATTICE_FAMILIES)
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return np.array([zl.classify(check_lattice(x)).family for x in X])

    def predict_params(self, X):
        """(family, m, n) triples."""
        out = []
        for x in X:
            c = zl.classify(check_lattice(x))
            out.append((c.family, c.m, c.n))
        return out


class BlockClassifier(ClassifierMixin, BaseEstimator):
    """Block id of each subgroup descriptor.

    ``method="tag"`` uses the descriptor rule, ``method="projection"`` the
    pullback of the SO(3) partition; the two agree on every descriptor.
    """

    def __init__(self, method: str = "tag"):
        self.method = method

    def fit(self, X=None, y=None):
        if self.method not in ("tag", "projection"):
            raise ValueError(f"method must be 'tag' or 'projection', got {self.method!r}")
        self.classes_ = np.array(BLOCK_IDS)
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        ks = check_descriptors(X)
        if self.method == "tag":
            return np.array([block_id(k) for k in ks])
        return np.array([lift(so3_block_of(project(k))) for k in ks])


class BurnsideIdempotentTransformer(TransformerMixin, BaseEstimator):
    """Values of the seven block idempotents on each descriptor, one column per block."""

    def __init__(self, truncation: int = 8):
        self.truncation = truncation

    def fit(self, X=None, y=None):
        from .blocks import burnside_functions
        check_truncation(self.truncation)
        self.functions_ = burnside_functions(self.truncation)
        self.blocks_ = np.array(BLOCK_IDS)
        return self

    def transform(self, X):
        check_is_fitted(self, "functions_")
        from .weyl import u2_class_key
        fns = self.functions_
        where = {key: i for i, key in enumerate(fns.keys)}
        rows = []
        for k in check_descriptors(X):
            i = where.get(u2_class_key(k))
            if i is None:
                # outside the truncation or infinite Weyl group: the indicator of the block
                rows.append([float(block_id(k) == b) for b in BLOCK_IDS])
            else:
                rows.append([float(fns.idempotents[b][i]) for b in BLOCK_IDS])
        return np.array(rows)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"e_{b}" for b in BLOCK_IDS], dtype=object)
