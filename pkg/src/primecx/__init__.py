"""Exact prime and primary subcomplex computations over Z[1/u]."""

from .cech import build_cech, cech_subcomplex, check_dsquared, colon_over_z, is_primary_cech_subcomplex, is_prime_cech_subcomplex
from .complexes import (
    Complex,
    Subcomplex,
    annihilator_of_complex,
    construct_free_prime,
    is_maximal_subcomplex,
    is_primary_subcomplex,
    is_prime_subcomplex,
    is_pure_subcomplex,
    localize_complex,
    prime_avoidance,
    proper_indices,
    residual,
    saturate_subcomplex,
    scale_by_ideal,
    subcomplex_from_generators,
    tensor_complex_with_free,
    torsion_subcomplex,
    validate_complex,
    validate_subcomplex,
    zero_divisors_of_complex,
)
from .equivalence import equivalence_audit
from .modules import (
    FgModule,
    ModElem,
    ModuleMap,
    PrimenessReport,
    Submodule,
    Verdict,
    Witness,
    associated_primes,
    colon,
    intersect,
    is_primary_submodule,
    is_prime_submodule,
    quotient,
    saturate,
    smith_normal_form,
    torsion_submodule,
    zero_divisors,
)
from .ring import Ideal, RingCtx, factor_cap

__version__ = "0.1.0"
