"""Exact-arithmetic toolkit for the cubic-surface discriminant form.

The package reconstructs, from first principles and in exact arithmetic, the
data of the discriminant automorphic form on the symmetric space of the even
lattice A2 + A2(-1)^4: the 243-element discriminant group and its coset
types, the counting table behind the S-transformation, the explicit
eta-quotient solution of weight -3, and the weight/divisor data of the
resulting product expansion, including the order-3 symmetry that lets its
restriction to complex hyperbolic 4-space admit a cube root.
"""

from .lattice import (CosetType, DiscElement, DiscGroup, Lattice,
                      ClassificationError, UniformityError, TYPE_ORDER,
                      a2_gram, cubic_surface_lattice, direct_sum,
                      discriminant_group, norm_mod2, pairing_mod1, rescale,
                      smith_normal_form, type_of)
from .qseries import (EtaQuotientSpec, InversionError, PrecisionError,
                      QSeries, add, coefficient, eta_quotient, eta_series,
                      eval_complex, make_series, monomial, mul, one, power,
                      restrict_residue, scale, zero)
from .report import FAIL, INCONCLUSIVE, PASS, VerificationReport
from .weil import (CountTable, FVector, ReducedSMatrix, assemble_f,
                   check_S_numeric, check_T, check_eta_cube_identity,
                   check_proportionality, check_s_matrix_square,
                   check_triple_shift_identity, counting_table,
                   eta_cube_over_nine, eta_third_over_nine, reduce_s_matrix,
                   theta_eta_cube)
from .borcherds import (DivisorVector, OmegaIsometry, PrincipalPart,
                        SymmetryError, enumerate_divisor_vectors,
                        omega_isometry, omega_orbits, principal_part,
                        product_weight)

__version__ = "0.1.0"

__all__ = [
    "CosetType", "DiscElement", "DiscGroup", "Lattice",
    "ClassificationError", "UniformityError", "TYPE_ORDER",
    "a2_gram", "cubic_surface_lattice", "direct_sum", "discriminant_group",
    "norm_mod2", "pairing_mod1", "rescale", "smith_normal_form", "type_of",
    "EtaQuotientSpec", "InversionError", "PrecisionError", "QSeries",
    "add", "coefficient", "eta_quotient", "eta_series", "eval_complex",
    "make_series", "monomial", "mul", "one", "power", "restrict_residue",
    "scale", "zero",
    "FAIL", "INCONCLUSIVE", "PASS", "VerificationReport",
    "CountTable", "FVector", "ReducedSMatrix", "assemble_f",
    "check_S_numeric", "check_T", "check_eta_cube_identity",
    "check_proportionality", "check_s_matrix_square",
    "check_triple_shift_identity", "counting_table", "eta_cube_over_nine",
    "eta_third_over_nine", "reduce_s_matrix", "theta_eta_cube",
    "DivisorVector", "OmegaIsometry", "PrincipalPart", "SymmetryError",
    "enumerate_divisor_vectors", "omega_isometry", "omega_orbits",
    "principal_part", "product_weight",
]
