"""Permutation-group toolkit: relational complexity, base and height
statistics, computational non-binarity tests, and homogeneous digraphs."""

from .digraphs import Digraph
from .group import PermutationGroup, load_group
from .perm import Permutation, format_permutation, parse_permutation
from .relcomp import (
    TuplePair,
    is_binary,
    orbit_equivalent,
    relational_complexity,
    subtuple_complete,
)
from .stats import StatisticsReport, compute_statistics, height
from .structures import RelationalStructure

__all__ = [
    "Digraph",
    "PermutationGroup",
    "Permutation",
    "RelationalStructure",
    "StatisticsReport",
    "TuplePair",
    "compute_statistics",
    "format_permutation",
    "height",
    "is_binary",
    "load_group",
    "orbit_equivalent",
    "parse_permutation",
    "relational_complexity",
    "subtuple_complete",
]
