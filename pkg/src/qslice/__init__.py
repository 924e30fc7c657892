"""Bound quivers, quadratic duals, trivial extensions, and higher slice
combinatorics over exact rationals."""

from .core import (
    Arrow,
    BoundQuiver,
    BoundsExceededError,
    GradedAutomorphism,
    Path,
    QuiverError,
    RefutationError,
    RelationElement,
    check_acyclic,
    check_nicely_graded,
    compose,
    idempotent,
    relation,
)
from .algebra import (
    GradedAlgebraView,
    MaximalPath,
    check_properly_graded,
    maximal_bound_paths,
)
from .duality import PairingWitness, SliceCertificate, n_slice_certify, quadratic_dual
from .extension import (
    NonQuadraticExtension,
    TrivialExtensionPresentation,
    build_trivial_extension,
    preprojective_algebra,
)
from .homology import (
    ClassificationReport,
    KoszulReport,
    LoewyMatrix,
    ResolutionStep,
    classify,
    koszul_type,
    loewy_matrix,
    minimal_resolution,
    spectral_radius,
)
from .zquiver import MarginError, ZWindow, build_window, connected_components
from .slices import (
    ar_quiver_preprojective,
    bound_quiver_isomorphic,
    companion,
    double_slice,
    hammock,
    is_complete_tau_slice,
    mutate_slice,
    slice_algebra,
    window_iso_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
