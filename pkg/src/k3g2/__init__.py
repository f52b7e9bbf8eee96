"""Commuting involution pairs on the K3 lattice and Betti numbers of the
G2 orbifold resolutions (S x T^3)/Gamma built from them."""

from .catalog import DataError, load_literature, load_nikulin
from .g2 import InvariantInput, admissible, closed_form, orbifold_betti, outcome
from .kernels import BACKEND
from .pairs import classify_pairs, invariant_tuples, kovalev_lee_admissible, simple_triples
from .tables import TableArtifact, betti_table, literature_diff
from .torus import AffineTorusMap, ConstructionCase, builtin_action, fixed_set

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AffineTorusMap",
    "ConstructionCase",
    "DataError",
    "InvariantInput",
    "TableArtifact",
    "admissible",
    "betti_table",
    "builtin_action",
    "classify_pairs",
    "closed_form",
    "fixed_set",
    "invariant_tuples",
    "kovalev_lee_admissible",
    "literature_diff",
    "load_literature",
    "load_nikulin",
    "orbifold_betti",
    "outcome",
    "simple_triples",
]
