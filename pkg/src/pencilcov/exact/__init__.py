"""Exact arithmetic layer: field towers, polynomials, matrices, binary forms."""

from .towers import (
    QQ,
    FieldElement,
    FieldTower,
    as_element,
    is_square_rational,
    norm_to_Q,
    sqrt_rational,
)
from .polynomials import (
    UniPoly,
    extend_by_root,
    poly_discriminant,
    rational_roots,
    roots_in_tower,
    sqrt_in_tower,
    sylvester_resultant,
)
from .matrices import Matrix, SymmetricMatrix, adjugate, det, kernel_basis, rank
from .forms import (
    BinaryForm,
    cubic_discriminant,
    div_linear,
    has_repeated_projective_root,
    poly_gcd,
    rational_linear_factors,
)

__all__ = [
    "QQ",
    "FieldElement",
    "FieldTower",
    "as_element",
    "is_square_rational",
    "norm_to_Q",
    "sqrt_rational",
    "UniPoly",
    "extend_by_root",
    "poly_discriminant",
    "rational_roots",
    "roots_in_tower",
    "sqrt_in_tower",
    "sylvester_resultant",
    "Matrix",
    "SymmetricMatrix",
    "adjugate",
    "det",
    "kernel_basis",
    "rank",
    "BinaryForm",
    "cubic_discriminant",
    "div_linear",
    "has_repeated_projective_root",
    "poly_gcd",
    "rational_linear_factors",
]
