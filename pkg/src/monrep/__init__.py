"""Exact computations in monomorphism categories of quiver representations."""
from ._kernels import BACKEND
from .algebra import (
    Algebra,
    NotFiniteDimensional,
    Path,
    Quiver,
    ValidationError,
    ground_field,
    linear_quiver,
    monomial_quotient,
    nakayama_algebra,
    path_algebra,
    tensor_with_path_algebra,
    truncated_polynomial,
    validate_algebra,
)
from .amodule import (
    Module,
    ModuleMap,
    NoSolution,
    extend_along_mono,
    hom_basis,
    indec_injective,
    indec_projective,
    injective_envelope,
    is_isomorphic,
    projective_cover,
    regular_module,
    socle,
    top,
)
from .certificate import Certificate, CheckFailed, recheck
from .exactla import GF, QQ, Field
from .homcm import ext_dim, injective_dimension, mon_cm_check, perp_membership, projective_resolution
from .moninj import (
    InternalInjectivityFailure,
    NotMonic,
    indec_injectives_mon,
    injective_coresolution,
    injective_embedding,
    source_strip,
    strip_filtration,
)
from .quiverrep import (
    Representation,
    RepMorphism,
    adjunction_check,
    cok_i,
    delta,
    from_lambda_module,
    hom_rep_basis,
    is_monic,
    m_functor,
    m_i,
    to_lambda_module,
)
from .stablecat import (
    NotSelfInjective,
    cosyzygy,
    end_iso_check,
    is_self_injective,
    projective_injective_objects,
    stable_hom,
    t1_check,
)

__all__ = [
    "adjunction_check",
    "Algebra",
    "BACKEND",
    "Certificate",
    "CheckFailed",
    "cok_i",
    "cosyzygy",
    "delta",
    "end_iso_check",
    "ext_dim",
    "extend_along_mono",
    "Field",
    "from_lambda_module",
    "GF",
    "ground_field",
    "hom_basis",
    "hom_rep_basis",
    "indec_injective",
    "indec_injectives_mon",
    "indec_projective",
    "injective_coresolution",
    "injective_dimension",
    "injective_embedding",
    "injective_envelope",
    "InternalInjectivityFailure",
    "is_isomorphic",
    "is_monic",
    "is_self_injective",
    "linear_quiver",
    "m_functor",
    "m_i",
    "Module",
    "ModuleMap",
    "mon_cm_check",
    "monomial_quotient",
    "nakayama_algebra",
    "NoSolution",
    "NotFiniteDimensional",
    "NotMonic",
    "NotSelfInjective",
    "Path",
    "path_algebra",
    "perp_membership",
    "projective_cover",
    "projective_injective_objects",
    "projective_resolution",
    "QQ",
    "Quiver",
    "recheck",
    "regular_module",
    "RepMorphism",
    "Representation",
    "socle",
    "source_strip",
    "stable_hom",
    "strip_filtration",
    "t1_check",
    "tensor_with_path_algebra",
    "to_lambda_module",
    "top",
    "truncated_polynomial",
    "validate_algebra",
    "ValidationError",
]

__version__ = "0.1.0"
