"""Finite-window, exact-arithmetic models: constructors, validators and JSON forms."""
from .flags import FlagData, enumerate_flags, flag_ring
from .report import Report
from .restrict import restrict_easy_block
from .standard2d import Standard2DObject, validate_standard2d
from .type0 import Type0Object, validate_type0
from .type1 import Type1Object, validate_type1
from .zerodim import ZeroDimObject, validate_zero_dim, zero_dim_object

KINDS = {
    "type0": (Type0Object, validate_type0),
    "type1": (Type1Object, validate_type1),
    "standard2d": (Standard2DObject, validate_standard2d),
    "zero_dim": (ZeroDimObject, validate_zero_dim),
}


def load_object(data: dict):
    """Parse a model object from its JSON form, dispatching on "kind"."""
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind not in KINDS:
        raise ValueError(f"unknown object kind {kind!r}; expected one of {sorted(KINDS)}")
    return KINDS[kind][0].from_json(data)


def validate_object(obj) -> Report:
    for cls, validate in KINDS.values():
        if isinstance(obj, cls):
            return validate(obj)
    raise TypeError(f"not a model object: {type(obj).__name__}")
