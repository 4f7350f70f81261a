"""Two-variable adjunctions, Leibniz constructions and lifting properties on finite categories."""

from .finset import FINSET, CategoryError, FinMorphism, FinObject, FinSetCategory
from .poset import POSET, MonotoneMap, PosetCategory, PosetObject
from .thc import ThcInstance, cartesian_instance, verify_thc
from .leibniz import Square, phi, phi_r, psi, psi_r, pullback_lhom, pullback_rhom, pushout_product
from .lifting import Lift, LiftingProblem, check_tri_equivalence, has_lifting_property, solve_all
from .saturation import MorphismClass, Universe, check_closure_theorem, cosaturate, is_wfs, saturate

__all__ = [
    "FINSET", "CategoryError", "FinMorphism", "FinObject", "FinSetCategory",
    "POSET", "MonotoneMap", "PosetCategory", "PosetObject",
    "ThcInstance", "cartesian_instance", "verify_thc",
    "Square", "phi", "phi_r", "psi", "psi_r", "pullback_lhom", "pullback_rhom", "pushout_product",
    "Lift", "LiftingProblem", "check_tri_equivalence", "has_lifting_property", "solve_all",
    "MorphismClass", "Universe", "check_closure_theorem", "cosaturate", "is_wfs", "saturate",
]
