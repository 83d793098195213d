"""Exact combinatorics of moduli spaces of tropical curves in Clemens complexes."""
from .balancing import BALANCED, UNBALANCED, UNKNOWN, Verdict, check_curve_balancing, is_balanced_at
from .canonical import canonical_form, isomorphic
from .complex import ClemensComplex, ComplexError, carrier, link_set, validate_complex
from .curves import (CombinatorialType, Edge, ParamTropCurve, degree, genus, is_simple, sigma,
                     simplify, type_of, validate_curve)
from .degeneration import Poset, build_poset, is_degeneration, precedes
from .density import SimpleDensity, induced_density, local_degree, uniform_density, validate_density
from .enumeration import enumerate_types
from .lp import Constraint, Polyhedron, lp_feasibility
from .newton import LaurentValuationData, NotInvertible, dominant_exponent
from .rational import INF
from .space import ModuliSpace, Stratum, build_moduli, stratum_of
from .strata import bounds, closure_polyhedron, extract_paths, is_good, stratum_polyhedron
from .subdivision import (LiftError, Subdivision, SubdivisionDatum, edgewise_subdivide, in_U,
                          project, refine_curve, validate_subdivision, xi_set)

__version__ = "0.1.0"

__all__ = [
    "BALANCED", "UNBALANCED", "UNKNOWN", "Verdict", "check_curve_balancing", "is_balanced_at",
    "canonical_form", "isomorphic",
    "ClemensComplex", "ComplexError", "carrier", "link_set", "validate_complex",
    "CombinatorialType", "Edge", "ParamTropCurve", "degree", "genus", "is_simple", "sigma",
    "simplify", "type_of", "validate_curve",
    "Poset", "build_poset", "is_degeneration", "precedes",
    "SimpleDensity", "induced_density", "local_degree", "uniform_density", "validate_density",
    "enumerate_types",
    "Constraint", "Polyhedron", "lp_feasibility",
    "LaurentValuationData", "NotInvertible", "dominant_exponent",
    "INF",
    "ModuliSpace", "Stratum", "build_moduli", "stratum_of",
    "bounds", "closure_polyhedron", "extract_paths", "is_good", "stratum_polyhedron",
    "LiftError", "Subdivision", "SubdivisionDatum", "edgewise_subdivide", "in_U", "project",
    "refine_curve", "validate_subdivision", "xi_set",
]
