"""Exact distance geometry: Cayley-Menger determinants, embedding dimension,
cross-polytope flatness and the finite checks of the two-distance mapping
argument."""
from .cross_polytope import (
    CrossPolytopeSpec,
    FlatnessVerdict,
    NoSignChangeError,
    Verdict,
    antipode,
    classify_flatness,
    cross_distance_matrix,
    dn_closed_form,
    pentagon_cm_det,
    pentagon_distance_matrix,
    pentagon_flat_diagonal,
    pentagon_is_realizable,
    verify_eq3_identity,
    vertex_labels,
)
from .distance_core import (
    DistanceMatrixError,
    InertiaSignature,
    NotRealizableError,
    Realization,
    SquaredDistanceMatrix,
    cm_determinant,
    cm_matrix,
    determinant,
    embedding_dimension,
    exact,
    gram_matrix,
    inertia,
    realize_floating,
    simplex_volume_sq,
)
from .mapping_harness import (
    MappingScenario,
    Theorem2Report,
    cable_strut_passes,
    circumradius_sq,
    construction_distance_matrix,
    fold_distance_sq,
    theorem2_report,
    verify_bridge,
)

__version__ = "0.1.0"
