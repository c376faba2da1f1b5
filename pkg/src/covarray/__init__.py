"""Binary (and small q-ary) covering arrays: verification, equivalence,
constructions, weight normalization, bounds and exhaustive classification."""
from .bounds import (
    BoundResult,
    CertificateReport,
    KnownCanTable,
    all_bounds,
    best_lower_bound,
    can2,
    forced_column_profile,
    hilton_milner_bound,
    improved_lower_3,
    improved_lower_t,
    known_can_table,
    max_degree_strength2,
    replay_even_certificate,
    replay_odd_certificate,
    roux_lower,
    roux_upper_recursion_3,
    structure_window,
)
from .classify import (
    ClassificationResult,
    SearchConstraints,
    classify,
    column_universe,
    count_classes,
    default_constraints,
    max_degree_search,
)
from .constructions import (
    HypercubeSubset,
    fixed_matrix,
    hadamard_3ca_12x11,
    hypercube_c4_check,
    johnson_entringer,
    s_n_set,
    standard_maximal_2ca,
)
from .core import (
    CoverageReport,
    CoveringArray,
    ResidualSelector,
    RowDistanceStructure,
    column_metrics,
    is_covering,
    new_array,
    parse_ca,
    read_ca,
    residual,
    row_distance_structure,
    verify_coverage,
    weight_bounds,
    write_ca,
    format_ca,
)
from .equivalence import (
    CanonicalCertificate,
    EquivalenceOp,
    apply_op,
    apply_ops,
    are_equivalent,
    canonical_form,
    invariant_signature,
)
from .errors import CoveringArrayError
from .normalization import complete_matching, lift_except, lift_min_weight, lift_to_target
from .proofs import guided_uniqueness_24x12, nonexistence_14x16, nonexistence_48x13

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CertificateReport",
    "KnownCanTable",
    "all_bounds",
    "best_lower_bound",
    "can2",
    "forced_column_profile",
    "hilton_milner_bound",
    "improved_lower_3",
    "improved_lower_t",
    "known_can_table",
    "max_degree_strength2",
    "replay_even_certificate",
    "replay_odd_certificate",
    "roux_lower",
    "roux_upper_recursion_3",
    "structure_window",
    "ClassificationResult",
    "SearchConstraints",
    "classify",
    "column_universe",
    "count_classes",
    "default_constraints",
    "max_degree_search",
    "HypercubeSubset",
    "fixed_matrix",
    "hadamard_3ca_12x11",
    "hypercube_c4_check",
    "johnson_entringer",
    "s_n_set",
    "standard_maximal_2ca",
    "CoverageReport",
    "CoveringArray",
    "ResidualSelector",
    "RowDistanceStructure",
    "column_metrics",
    "is_covering",
    "new_array",
    "parse_ca",
    "read_ca",
    "residual",
    "row_distance_structure",
    "verify_coverage",
    "weight_bounds",
    "write_ca",
    "format_ca",
    "CanonicalCertificate",
    "EquivalenceOp",
    "apply_op",
    "apply_ops",
    "are_equivalent",
    "canonical_form",
    "invariant_signature",
    "CoveringArrayError",
    "complete_matching",
    "lift_except",
    "lift_min_weight",
    "lift_to_target",
    "guided_uniqueness_24x12",
    "nonexistence_14x16",
    "nonexistence_48x13",
]
