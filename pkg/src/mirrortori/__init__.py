"""Mirror partners of complex tori with singular period matrices.

Exact generalized-complex linear algebra, integer desingularizing shifts,
holomorphic bundle data with roots-of-unity transition unitaries, affine
Lagrangian mirror objects, and a numerically verified factor of
automorphy, with a CLI and randomized verification suites on top.
"""

from .exact import (QC, QCMat, rat, exact_det, exact_inverse, exact_rank,
                    smith_normal_form, hermite_column_basis,
                    SmithDecomposition)
from .gcs import (GCStructure, BFieldForm, gcs_from_complex_structure,
                  gcs_from_symplectic, gcs_from_complexified_symplectic,
                  b_field_transform, mirror_g24, mirror_g13,
                  check_mirror_relations, solve_mirror_tau,
                  NotPositiveDefinite, SingularT)
from .torus import (ComplexTorus, ComplexifiedSymplecticTorus, DeltaShift,
                    construct_delta, find_delta, mirror_partner,
                    delta_shift_transform, Biholomorphism, biholomorphism)
from .rootsofunity import MonomialMatrix, kron
from .bundles import (RankData, compute_rank, is_holomorphic,
                      curvature_02_part, UnitarySet, build_unitary_set,
                      pullback_unitaries, verify_pullback_cocycle,
                      BundleSpec, ConnectionData, pullback_connection,
                      ConstructionFailed)
from .fukaya import (AffineLagrangian, FukayaObject, check_fukaya_object,
                     mirror_object, canonical_form, PhaseData,
                     NotHolomorphic)
from .automorphy import (CurvatureFactor, curvature_factor, PairingTable,
                         im_pairings, GaugeTransform, gauge_transform,
                         automorphy_matrices, verify_intertwining,
                         classify_sets, IntertwiningReport, SetMembership,
                         ConditionViolated, ToleranceExceeded)

__version__ = "0.1.0"

__all__ = [
    "QC", "QCMat", "rat", "exact_det", "exact_inverse", "exact_rank",
    "smith_normal_form", "hermite_column_basis", "SmithDecomposition",
    "GCStructure", "BFieldForm", "gcs_from_complex_structure",
    "gcs_from_symplectic", "gcs_from_complexified_symplectic",
    "b_field_transform", "mirror_g24", "mirror_g13",
    "check_mirror_relations", "solve_mirror_tau",
    "NotPositiveDefinite", "SingularT",
    "ComplexTorus", "ComplexifiedSymplecticTorus", "DeltaShift",
    "construct_delta", "find_delta", "mirror_partner",
    "delta_shift_transform", "Biholomorphism", "biholomorphism",
    "MonomialMatrix", "kron",
    "RankData", "compute_rank", "is_holomorphic", "curvature_02_part",
    "UnitarySet", "build_unitary_set", "pullback_unitaries",
    "verify_pullback_cocycle", "BundleSpec", "ConnectionData",
    "pullback_connection", "ConstructionFailed",
    "AffineLagrangian", "FukayaObject", "check_fukaya_object",
    "mirror_object", "canonical_form", "PhaseData", "NotHolomorphic",
    "CurvatureFactor", "curvature_factor", "PairingTable", "im_pairings",
    "GaugeTransform", "gauge_transform", "automorphy_matrices",
    "verify_intertwining", "classify_sets", "IntertwiningReport",
    "SetMembership", "ConditionViolated", "ToleranceExceeded",
]
