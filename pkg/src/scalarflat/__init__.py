"""Scalar-flat toric Kahler metrics on non-compact weighted projective
spaces: exact weight arithmetic, singularity classification with resolution
trees, moment polytopes, the metric ansatz, numerical verification, ALE
asymptotics, and the four-dimensional dual-surface correspondence."""

from .ansatz import (AnsatzData, build_ansatz, calabi_profile,
                     flat_kahler_potential, kahler_potential, moment_map,
                     sigma_to_xi, x_to_sigma, xi_to_x)
from .asymptotics import (AleExpansion, ale_ray, ale_report,
                          closed_form_decay_coefficient, comparison_tails,
                          decay_fit, flat_image_moments, ricci_flat_test,
                          write_ray_csv, xi_growth_check)
from .polytope import (Facet, LabelledPolytope, facet_distance, lattice_index,
                       wps_polytope)
from .resolution import (ClassificationResult, ClassifierConfig,
                         ResolutionTree, candidate_lifts, classify,
                         euclid_overestimated, export_tree, tree_from_json,
                         tree_edges_consistent)
from .surface import (SurfaceData, bochner_dual, dual_normals, dual_polytope,
                      orthotoric_gram, polynomiality_check, surface_data)
from .verify import (CheckReport, abreu_scalar, boundary_check,
                     det_factorization, hessian_consistency,
                     positivity_check, run_checks, scalar_flat_check,
                     vandermonde_check)
from .weights import (CyclicGroupSpec, WeightVector, chart_group,
                      gamma_group, group_with_multiplicity, grouped_weights,
                      residues, singular_points, validate_weight_vector)

__version__ = "0.1.0"

__all__ = [
    "AleExpansion",
    "AnsatzData",
    "CheckReport",
    "ClassificationResult",
    "ClassifierConfig",
    "CyclicGroupSpec",
    "Facet",
    "LabelledPolytope",
    "ResolutionTree",
    "SurfaceData",
    "WeightVector",
    "abreu_scalar",
    "ale_ray",
    "ale_report",
    "bochner_dual",
    "boundary_check",
    "build_ansatz",
    "calabi_profile",
    "candidate_lifts",
    "chart_group",
    "classify",
    "closed_form_decay_coefficient",
    "comparison_tails",
    "decay_fit",
    "det_factorization",
    "dual_normals",
    "dual_polytope",
    "euclid_overestimated",
    "export_tree",
    "facet_distance",
    "flat_image_moments",
    "flat_kahler_potential",
    "gamma_group",
    "group_with_multiplicity",
    "grouped_weights",
    "hessian_consistency",
    "kahler_potential",
    "lattice_index",
    "moment_map",
    "orthotoric_gram",
    "polynomiality_check",
    "positivity_check",
    "residues",
    "ricci_flat_test",
    "run_checks",
    "scalar_flat_check",
    "sigma_to_xi",
    "singular_points",
    "surface_data",
    "tree_edges_consistent",
    "tree_from_json",
    "validate_weight_vector",
    "vandermonde_check",
    "wps_polytope",
    "write_ray_csv",
    "x_to_sigma",
    "xi_to_x",
]
