"""Chain bundles over finite concrete categories.

The :mod:`chainbundles.core` kernel provides composition, exhaustive
mono/epi classification and image factorization; :mod:`chainbundles.bundles`
builds the category of chain bundles on top of any instance in
:mod:`chainbundles.instances`; :mod:`chainbundles.simplicial` produces
integer chain complexes from simplicial complexes.
"""

from .bundles import (
    ALL,
    AllHom,
    Assignment,
    BundleFactorization,
    BundleMorphism,
    ChainBundle,
    Explicit,
    bundle_morphism,
    compose_bundle_morphisms,
    extract_chains,
    factorize_bundle_morphism,
    identity_bundle_morphism,
    is_subbundle,
    kernel_of_bundle_morphism,
    cokernel_of_bundle_morphism,
    pair_morphisms,
    product_bundles,
    validate_bundle,
    validate_bundle_morphism,
)
from .core import (
    Category,
    Factorization,
    Morphism,
    MorphismClass,
    Universe,
    classify_morphism,
    compose,
    factorize,
    has_image,
    is_zero_object,
    subobject_leq,
)
from .functors import FunctorSpec, apply_functor_to_bundle, verify_universal_arrow
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "AllHom",
    "Assignment",
    "BundleFactorization",
    "BundleMorphism",
    "ChainBundle",
    "Explicit",
    "bundle_morphism",
    "compose_bundle_morphisms",
    "extract_chains",
    "factorize_bundle_morphism",
    "identity_bundle_morphism",
    "is_subbundle",
    "kernel_of_bundle_morphism",
    "cokernel_of_bundle_morphism",
    "pair_morphisms",
    "product_bundles",
    "validate_bundle",
    "validate_bundle_morphism",
    "Category",
    "Factorization",
    "Morphism",
    "MorphismClass",
    "Universe",
    "classify_morphism",
    "compose",
    "factorize",
    "has_image",
    "is_zero_object",
    "subobject_leq",
    "FunctorSpec",
    "apply_functor_to_bundle",
    "verify_universal_arrow",
    "Report",
]
