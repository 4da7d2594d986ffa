"""Exact Koszul homology, multitors and Serre intersection multiplicities."""

from .complexes import (
    FreeComplex,
    free_resolution,
    homology,
    koszul_complex,
    mapping_cone,
    tensor_complex,
)
from .groebner import (
    ModuleGB,
    groebner_basis,
    ideal_quotient,
    is_zero_dimensional,
    membership_with_lift,
    module_groebner,
    normal_form,
    quotient_dim,
    syzygy,
)
from .matrix import FreeMatrix, FreeVector
from .modmath import (
    INFINITE,
    ModuleMap,
    SubquotientModule,
    image_module,
    kernel_module,
    map_is_bijective,
    module_length,
    mult_injective,
    presentation,
    pullback,
    quotient_module,
    scale_submodule,
    submodule_equal,
    submodule_intersect,
    submodule_sum,
)
from .multitor import (
    Conclusion,
    VerifierReport,
    check_cor_regular,
    check_prop_affine,
    check_pullback_square,
    check_tor_independence,
    is_regular_sequence,
    multitor_hypersurfaces,
    scaled_cohomology_model,
    serre_multiplicity,
    tor_pair,
    verify_main_theorem_affine,
)
from .ring import GF, QQ, Field, Poly, PolyRing, monomial_cmp, parse_poly, poly_arith

__version__ = "0.1.0"
