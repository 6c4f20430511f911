"""Univariate polynomials and binary forms over Q."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilcov.exact import (
    BinaryForm,
    UniPoly,
    cubic_discriminant,
    div_linear,
    has_repeated_projective_root,
    poly_discriminant,
    poly_gcd,
    rational_linear_factors,
    rational_roots,
    sylvester_resultant,
)

small_fractions = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def poly_from(coeffs):
    return UniPoly([Fraction(c) for c in coeffs])


@given(
    a=st.lists(small_fractions, min_size=1, max_size=6),
    b=st.lists(small_fractions, min_size=1, max_size=4),
)
@settings(max_examples=60)
def test_divmod_reconstructs(a, b):
    p, q = poly_from(a), poly_from(b)
    if q.is_zero():
        with pytest.raises(ZeroDivisionError):
            p.divmod_poly(q)
        return
    quo, rem = p.divmod_poly(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@given(
    a=st.lists(small_fractions, min_size=2, max_size=4),
    b=st.lists(small_fractions, min_size=2, max_size=4),
    c=st.lists(small_fractions, min_size=1, max_size=3),
)
@settings(max_examples=40)
def test_gcd_divides_both(a, b, c):
    common = poly_from(c)
    p, q = poly_from(a) * common, poly_from(b) * common
    if p.is_zero() or q.is_zero():
        return
    g = poly_gcd(p, q)
    assert p.divmod_poly(g)[1].is_zero()
    assert q.divmod_poly(g)[1].is_zero()
    if not common.is_zero() and common.degree >= 1:
        assert g.degree >= common.degree


def test_rational_roots_with_multiplicity():
    # (3x + 1)(x - 2)^2
    p = poly_from([1, 3]) * poly_from([-2, 1]) * poly_from([-2, 1])
    assert sorted(rational_roots(p)) == [(Fraction(-1, 3), 1), (Fraction(2), 2)]


def test_rational_roots_skips_irrational_pairs():
    # (x^2 - 2)(x - 1)
    p = poly_from([-2, 0, 1]) * poly_from([-1, 1])
    assert rational_roots(p) == [(Fraction(1), 1)]


def test_resultant_vanishes_iff_common_root():
    p = poly_from([-1, 1]) * poly_from([3, 1])
    q = poly_from([-1, 1]) * poly_from([5, 2])
    assert sylvester_resultant(p, q) == 0
    r = poly_from([7, 1])
    assert sylvester_resultant(p, r) != 0


def test_poly_discriminant_quadratic():
    # b^2 - 4ac for ax^2 + bx + c, up to the standard normalization
    p = poly_from([-15, 2, 1])  # roots 3, -5
    assert poly_discriminant(p) == 64


def test_linear_factor_division_is_exact():
    form = BinaryForm(3, [1, -6, 11, -6])  # (x-y)(x-2y)(x-3y)
    quotient = div_linear(form, 1, 1)
    assert quotient == BinaryForm(2, [1, -5, 6])


def test_rational_linear_factors_full_split():
    form = BinaryForm(3, [1, -6, 11, -6])
    pairs, cofactor = rational_linear_factors(form)
    assert cofactor.degree == 0
    # (s, t) encodes the factor s x - t y, so roots sit at x/y = t/s.
    assert sorted(pairs) == [((1, 1), 1), ((1, 2), 1), ((1, 3), 1)]


def test_rational_linear_factors_y_factor_and_residual():
    # y * (x^2 - 2 y^2): one projective rational root at (0, 1)
    form = BinaryForm(3, [0, 1, 0, -2])
    pairs, cofactor = rational_linear_factors(form)
    assert pairs == [((0, 1), 1)]
    assert cofactor.degree == 2


def test_repeated_root_detection():
    assert has_repeated_projective_root(BinaryForm(3, [1, -2, 1, 0]))
    assert not has_repeated_projective_root(BinaryForm(3, [1, 0, -1, 0]))
    # double root at infinity: x y^2 has lead zeros >= 2 in y order
    assert has_repeated_projective_root(BinaryForm(3, [0, 0, 1, 0]))


def test_cubic_discriminant_matches_root_differences():
    # For (x - y)(x - 2y)(x - 3y): disc = prod (r_i - r_j)^2 = 4
    form = BinaryForm(3, [1, -6, 11, -6])
    assert cubic_discriminant(form) == 4
    # Repeated root kills it.
    assert cubic_discriminant(BinaryForm(3, [1, -2, 1, 0])) == 0


@given(
    roots=st.lists(
        st.integers(min_value=-6, max_value=6), min_size=3, max_size=3, unique=True
    )
)
@settings(max_examples=30)
def test_split_cubics_have_square_discriminants_scaled(roots):
    form = BinaryForm(1, [1, -roots[0]])
    for r in roots[1:]:
        form = form * BinaryForm(1, [1, -r])
    d = cubic_discriminant(form)
    expected = Fraction(1)
    for i in range(3):
        for j in range(i + 1, 3):
            expected *= (roots[i] - roots[j]) ** 2
    assert d == expected
