"""Exact tree invariants and recovery of the trunk/twig profile from the subtree polynomial."""

from .csf import (
    PowerSumFunction,
    count_proper_colorings,
    csf,
    csf_edge_subsets,
    csf_fingerprint,
    csf_oracle,
)
from .enumeration import ScanReport, free_trees, prufer_oracle, scan
from .errors import ArborError, CapExceeded, InconsistentPoly, MalformedPoly
from .recovery import (
    RecoveredProfile,
    count_bounded_compositions,
    minimal_a_leaf_size,
    read_top,
    recover_profile,
)
from .subtree_poly import BivariatePoly, coefficient, subtree_poly_bruteforce, subtree_poly_fast
from .tree_core import Decomposition, Tree, canonical_code, decompose, degree_sequence, parse_tree

__version__ = "0.1.0"
