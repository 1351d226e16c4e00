"""Exact symbolic computations in the Hopf algebra of rooted trees."""

from .algebra import Element, Tensor, parse_element, parse_tensor
from .hopf import (
    antipode,
    coproduct,
    counit,
    is_primitive,
    iterated_coproduct,
    iterated_reduced,
    reduced_coproduct,
)
from .trees import (
    EMPTY,
    LEAF,
    Cut,
    Forest,
    ParseError,
    RootedTree,
    admissible_cuts,
    all_cuts,
    b_plus,
    canonicalize,
    count_forests,
    count_trees,
    enumerate_forests,
    enumerate_trees,
    ladder,
    parse_forest,
    parse_tree,
)

__version__ = "0.1.0"

__all__ = [
    "Element",
    "Tensor",
    "parse_element",
    "parse_tensor",
    "antipode",
    "coproduct",
    "counit",
    "is_primitive",
    "iterated_coproduct",
    "iterated_reduced",
    "reduced_coproduct",
    "EMPTY",
    "LEAF",
    "Cut",
    "Forest",
    "ParseError",
    "RootedTree",
    "admissible_cuts",
    "all_cuts",
    "b_plus",
    "canonicalize",
    "count_forests",
    "count_trees",
    "enumerate_forests",
    "enumerate_trees",
    "ladder",
    "parse_forest",
    "parse_tree",
]
