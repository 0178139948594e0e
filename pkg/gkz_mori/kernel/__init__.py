"""Exact linear algebra and polyhedral primitives."""

from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.hilbert import decompose, hilbert_basis
from gkz_mori.kernel.lp import FeasibilityResult, LinearConstraint, Relation, certificate_is_valid, lp_feasible
from gkz_mori.kernel.normal_forms import IntMatrix, NormalForms, hermite_smith

__all__ = [
    "FeasibilityResult",
    "IntMatrix",
    "LinearConstraint",
    "NormalForms",
    "RationalCone",
    "Relation",
    "certificate_is_valid",
    "decompose",
    "dual_cone",
    "hermite_smith",
    "hilbert_basis",
    "lp_feasible",
]
