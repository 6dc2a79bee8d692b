"""Finite precontact algebras, their point spaces, and the dualities between them."""

from .boolean_core import Algebra, BoolHom, Element, PointSet, all_homs, compose, identity, ultrafilters
from .dual_construction import (
    TwoPCS, canonical_2cs, canonical_2pcs, canonical_stone2, space_round_trip, verify_theorem,
)
from .duality import ecc_functors, two_map_census, verify_duality
from .errors import AxiomViolation, CapExceededError, InputError, WorkbenchError
from .extensions import extension_order, extension_poset, verify_extension_poset
from .finite_space import FiniteSpace, RegionAlgebra, TopPair, discrete, generate
from .points import canonical_adjacency, clans, grills
from .precontact import (
    AtomRelation, PrecontactRel, check_axioms, enumerate_contact_relations,
    enumerate_precontact_relations, precontact_from_pairs, rho_l, rho_s,
)
from .report import Check, Report

__all__ = [
    "Algebra", "BoolHom", "Element", "PointSet", "all_homs", "compose", "identity", "ultrafilters",
    "TwoPCS", "canonical_2cs", "canonical_2pcs", "canonical_stone2", "space_round_trip", "verify_theorem",
    "ecc_functors", "two_map_census", "verify_duality",
    "AxiomViolation", "CapExceededError", "InputError", "WorkbenchError",
    "extension_order", "extension_poset", "verify_extension_poset",
    "FiniteSpace", "RegionAlgebra", "TopPair", "discrete", "generate",
    "canonical_adjacency", "clans", "grills",
    "AtomRelation", "PrecontactRel", "check_axioms", "enumerate_contact_relations",
    "enumerate_precontact_relations", "precontact_from_pairs", "rho_l", "rho_s",
    "Check", "Report",
]
