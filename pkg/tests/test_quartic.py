"""Covariants of binary quartics: Hessian, sextic, invariants, syzygy."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilcov.errors import NoSyzygyInShape
from pencilcov.quartics import (
    Quartic,
    calibrate_syzygy,
    discriminant,
    f6,
    hessian,
    invariants_IJ,
    random_quartic,
)

coeff = st.integers(min_value=-8, max_value=8)
quartics = st.tuples(coeff, coeff, coeff, coeff, coeff).map(lambda c: Quartic(*c))

gl2 = st.tuples(coeff, coeff, coeff, coeff).filter(
    lambda g: g[0] * g[3] - g[1] * g[2] != 0
)


def test_power_sum_fixture():
    F = Quartic(1, 0, 0, 0, 1)
    assert hessian(F).rational_coeffs() == [0, 0, 144, 0, 0]
    assert f6(F).rational_coeffs() == [0, 32, 0, 0, 0, -32, 0]
    I, J = invariants_IJ(F)
    assert (I, J) == (12, 0)
    assert discriminant(F) == 256


def test_single_monomial_fixture():
    # F = x^4 + x^3 y: H = -9 x^4, F6 = x^6, I = J = disc = 0.
    F = Quartic(1, 1, 0, 0, 0)
    assert hessian(F).rational_coeffs() == [-9, 0, 0, 0, 0]
    assert f6(F).rational_coeffs() == [1, 0, 0, 0, 0, 0, 0]
    I, J = invariants_IJ(F)
    assert I == 0 and J == 0
    assert discriminant(F) == 0


def test_repeated_root_kills_discriminant():
    # x^2 (x - y)(x + y)
    F = Quartic(1, 0, -1, 0, 0)
    assert discriminant(F) == 0
    I, J = invariants_IJ(F)
    assert (I, J) == (1, 2)


@given(F=quartics, g=gl2)
@settings(max_examples=40)
def test_hessian_is_a_covariant_of_weight_two(F, g):
    a, b, c, d = g
    det = a * d - b * c
    left = hessian(F.compose(a, b, c, d))
    right = hessian(F).compose(a, b, c, d).scale(Fraction(det) ** 2)
    assert left == right


@given(F=quartics, g=gl2)
@settings(max_examples=40)
def test_sextic_is_a_covariant_of_weight_three(F, g):
    a, b, c, d = g
    det = a * d - b * c
    left = f6(F.compose(a, b, c, d))
    right = f6(F).compose(a, b, c, d).scale(Fraction(det) ** 3)
    assert left == right


@given(F=quartics, g=gl2)
@settings(max_examples=40)
def test_invariant_weights_four_and_six(F, g):
    a, b, c, d = g
    det = Fraction(a * d - b * c)
    I0, J0 = invariants_IJ(F)
    I1, J1 = invariants_IJ(F.compose(a, b, c, d))
    assert I1 == det**4 * I0
    assert J1 == det**6 * J0


@given(F=quartics)
@settings(max_examples=60)
def test_syzygy_holds_pointwise(F):
    form = F.as_form()
    h = hessian(F)
    s6 = f6(F)
    I, J = invariants_IJ(F)
    lhs = s6 * s6
    rhs = (
        (h * h * h).scale(Fraction(-1, 729))
        + (form * form * h).scale(Fraction(16, 27) * I)
        + (form * form * form).scale(Fraction(-64, 27) * J)
    )
    assert lhs == rhs


def test_calibration_recovers_syzygy_constants():
    rng = random.Random(2024)
    samples = [random_quartic(rng) for _ in range(10)]
    c = calibrate_syzygy(samples, verify_count=50)
    assert c == (Fraction(-1, 729), Fraction(16, 27), Fraction(-64, 27))


def test_calibration_is_seed_independent():
    first = [random_quartic(random.Random(1)) for _ in range(10)]
    second = [random_quartic(random.Random(99)) for _ in range(10)]
    assert calibrate_syzygy(first, verify_count=20) == calibrate_syzygy(
        second, verify_count=20
    )


def test_degenerate_sample_set_is_rejected():
    # All-zero quartics cannot pin the constants down.
    with pytest.raises(NoSyzygyInShape):
        calibrate_syzygy([Quartic(0, 0, 0, 0, 0)] * 10, verify_count=5)
