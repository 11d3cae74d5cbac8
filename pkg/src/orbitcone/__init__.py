"""Coadjoint-orbit cone geometry for real matrix Lie algebras."""

from .catalog import (
    GOLDEN_ROWS,
    RepresentationSpec,
    golden_table,
    quaternionic_wf,
    representation,
    sopq_family,
    su21_branching_report,
    tensor_analysis,
    wavefront_of,
)
from .cones import (
    ConeDescription,
    ac_union_check,
    asymptotic_cone,
    cone_contains,
    cone_directions,
    cone_equal,
    cone_record,
    cone_union,
    conic_neighborhood_contains,
    dual_cone,
    exact_cone,
    polyhedral_cone,
    sampled_cone,
)
from .errors import OrbitConeError
from .induction import (
    CartanClass,
    SaturationResult,
    SubalgebraEmbedding,
    annihilator_cone,
    cartan_classes,
    cartan_signature,
    diagonal_embedding,
    induced_cone,
    lift_covector,
    make_embedding,
    pair_embedding,
    pullback_q,
    restriction_class_counts,
    restriction_lower_bound,
    saturation_is_full,
)
from .liealg import (
    AlgebraElement,
    Covector,
    ElementClass,
    MatrixLieAlgebra,
    ad_matrix,
    bracket,
    build_algebra,
    classify_batch,
    classify_element,
    coadjoint_ad,
    dual_basis_coords,
    exp_jacobian,
    group_orbit_step,
    identify_dual,
    identify_dual_inverse,
    matrix_coords,
    pairing,
)
from .orbits import (
    OrbitParam,
    canonical_density,
    density_ratio_F,
    euclidean_density,
    kks_form,
    orbit_dimension,
    orbit_family,
    orbit_invariants,
    orbit_sample,
    orbit_sum_sample,
    sl2_casimir,
    tangent_basis,
    union_family,
)
from .tempered import (
    BKCertificate,
    WeightSystem,
    bk_weak_containment,
    rho,
    split_abelian,
    weights_of_action,
)

__all__ = [
    "AlgebraElement",
    "BKCertificate",
    "CartanClass",
    "ConeDescription",
    "Covector",
    "ElementClass",
    "GOLDEN_ROWS",
    "MatrixLieAlgebra",
    "OrbitConeError",
    "OrbitParam",
    "RepresentationSpec",
    "SaturationResult",
    "SubalgebraEmbedding",
    "WeightSystem",
    "ac_union_check",
    "ad_matrix",
    "annihilator_cone",
    "asymptotic_cone",
    "bk_weak_containment",
    "bracket",
    "build_algebra",
    "canonical_density",
    "cartan_classes",
    "cartan_signature",
    "classify_batch",
    "classify_element",
    "coadjoint_ad",
    "cone_contains",
    "cone_directions",
    "cone_equal",
    "cone_record",
    "cone_union",
    "conic_neighborhood_contains",
    "density_ratio_F",
    "diagonal_embedding",
    "dual_basis_coords",
    "dual_cone",
    "euclidean_density",
    "exact_cone",
    "exp_jacobian",
    "golden_table",
    "group_orbit_step",
    "identify_dual",
    "identify_dual_inverse",
    "induced_cone",
    "kks_form",
    "lift_covector",
    "make_embedding",
    "matrix_coords",
    "orbit_dimension",
    "orbit_family",
    "orbit_invariants",
    "orbit_sample",
    "orbit_sum_sample",
    "pair_embedding",
    "pairing",
    "polyhedral_cone",
    "pullback_q",
    "quaternionic_wf",
    "representation",
    "restriction_class_counts",
    "restriction_lower_bound",
    "rho",
    "sampled_cone",
    "saturation_is_full",
    "sl2_casimir",
    "sopq_family",
    "split_abelian",
    "su21_branching_report",
    "tangent_basis",
    "tensor_analysis",
    "union_family",
    "wavefront_of",
    "weights_of_action",
]

__version__ = "0.1.0"
