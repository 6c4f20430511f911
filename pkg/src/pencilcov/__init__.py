"""pencilcov: exact covariants of binary quartics and symmetric pencils.

Everything is exact rational (or algebraic-tower) arithmetic; numeric
fallbacks are explicit, certified, and flagged in their results.
"""

from .constants import FROZEN, CovariantConstants, constants_report, recalibrate
from .diagonalize import (
    Decision,
    DiagonalizationResult,
    PencilRoots,
    assemble_dual_basis,
    diagonalize,
    is_diagonalizable_over_Q,
    singular_member_linforms,
    split_det_form,
    symdiag3_check,
)
from .embedding import (
    MT3Witness,
    Unresolved,
    embed,
    mt3_delta,
    mt3_family,
    norm_cubic,
    norm_cubic_matches_family,
    rho3,
    verify_MT,
    verify_MT2,
    verify_MT3,
    verify_disc_preserving,
)
from .pencils import (
    Pencil,
    TernaryCubic,
    cubicovariant,
    det_form,
    hessian_cubic,
    is_decomposable,
    pair_discriminant,
    quad_covariants,
)
from .quartics import (
    Quartic,
    calibrate_syzygy,
    discriminant,
    f6,
    hessian,
    invariants_IJ,
    random_quartic,
)

__version__ = "0.1.0"

__all__ = [
    "CovariantConstants",
    "Decision",
    "DiagonalizationResult",
    "FROZEN",
    "MT3Witness",
    "Pencil",
    "PencilRoots",
    "Quartic",
    "TernaryCubic",
    "Unresolved",
    "assemble_dual_basis",
    "calibrate_syzygy",
    "constants_report",
    "cubicovariant",
    "det_form",
    "diagonalize",
    "discriminant",
    "embed",
    "f6",
    "hessian",
    "hessian_cubic",
    "invariants_IJ",
    "is_decomposable",
    "is_diagonalizable_over_Q",
    "mt3_delta",
    "mt3_family",
    "norm_cubic",
    "norm_cubic_matches_family",
    "pair_discriminant",
    "quad_covariants",
    "random_quartic",
    "recalibrate",
    "rho3",
    "singular_member_linforms",
    "split_det_form",
    "symdiag3_check",
    "verify_MT",
    "verify_MT2",
    "verify_MT3",
    "verify_disc_preserving",
    "__version__",
]
