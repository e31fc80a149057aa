"""Subgroups of U(2), their seven-block partition, and finite algebraic models."""
from .blocks import block_of, validate_partition
from .lattice import DualLattice, classify, make_lambda
from .subgroups import enumerate_subgroups
from .weyl import fuse, normalizer, weyl

__version__ = "0.1.0"
