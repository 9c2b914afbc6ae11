"""Permutation-group substrate: permutations, stabilizer chains, groups and actions."""

from .factored import FactoredInteger, p_part
from .group import (
    PermGroup,
    build_chain,
    commutes_elementwise,
    conjugation_orbits,
    derived_series,
    derived_subgroup,
    enumerate_elements,
    is_normal,
    is_soluble,
    join,
    normal_closure,
    orbit_partition,
    p_part_element,
    pointwise_stabilizer,
    random_element,
)
from .hom import CosetHom, GroupHom, coset_action, identity_hom, induced_action, preimage, quotient
from .permutation import Permutation, permutation_algebra
from .chain import StabilizerChain

__all__ = [
    "CosetHom",
    "FactoredInteger",
    "GroupHom",
    "PermGroup",
    "Permutation",
    "StabilizerChain",
    "build_chain",
    "commutes_elementwise",
    "conjugation_orbits",
    "coset_action",
    "derived_series",
    "derived_subgroup",
    "enumerate_elements",
    "identity_hom",
    "induced_action",
    "is_normal",
    "is_soluble",
    "join",
    "normal_closure",
    "orbit_partition",
    "p_part",
    "p_part_element",
    "permutation_algebra",
    "pointwise_stabilizer",
    "preimage",
    "quotient",
    "random_element",
]
