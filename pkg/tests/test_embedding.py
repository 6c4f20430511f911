"""The quartic-to-pencil embedding and its verification sweeps."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilcov.embedding import (
    ANCHOR,
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
from pencilcov.errors import DegenerateFamily
from pencilcov.exact import Matrix
from pencilcov.pencils import cubicovariant, det_form
from pencilcov.quartics import Quartic, discriminant, random_quartic

coeff = st.integers(min_value=-6, max_value=6)
gl2 = st.tuples(coeff, coeff, coeff, coeff).filter(
    lambda g: g[0] * g[3] - g[1] * g[2] != 0
)


def test_embedded_pair_fixture():
    pair = embed(Quartic(1, 0, 0, 0, 1))
    assert pair.pencil.A == ANCHOR
    form = det_form(pair.pencil)
    assert form.rational_coeffs() == [Fraction(1, 4), 0, -1, 0]


def test_first_slot_is_shared_by_all_images():
    rng = random.Random(3)
    for _ in range(5):
        assert embed(random_quartic(rng)).pencil.A == ANCHOR


def test_sextic_identity_sweep():
    rng = random.Random(41)
    assert all(verify_MT(random_quartic(rng, -20, 20)) for _ in range(100))


def test_hessian_identity_sweep():
    rng = random.Random(41)
    assert all(verify_MT2(random_quartic(rng, -20, 20)) for _ in range(100))


def test_discriminant_preservation_sweep():
    rng = random.Random(41)
    assert all(verify_disc_preserving(random_quartic(rng, -20, 20)) for _ in range(100))


def test_discriminant_fixture_both_sides():
    from pencilcov.pencils import pair_discriminant

    F = Quartic(1, 0, 0, 0, 1)
    assert discriminant(F) == 256
    assert pair_discriminant(embed(F).pencil) == 256


@given(g=gl2, h=gl2)
@settings(max_examples=40)
def test_rho3_is_multiplicative(g, h):
    gm = Matrix([[g[0], g[1]], [g[2], g[3]]])
    hm = Matrix([[h[0], h[1]], [h[2], h[3]]])
    assert rho3(gm @ hm) == rho3(gm) @ rho3(hm)


@given(g=gl2)
@settings(max_examples=40)
def test_rho3_lands_in_special_linear_group(g):
    gm = Matrix([[g[0], g[1]], [g[2], g[3]]])
    assert rho3(gm).det() == 1


def test_family_delta_vanishes_only_at_origin():
    assert mt3_delta(0, 0) == 0
    for a in range(-5, 6):
        for b in range(-5, 6):
            if (a, b) != (0, 0):
                assert mt3_delta(a, b) != 0


def test_family_member_shape():
    fam = mt3_family(1, 1)
    assert fam.delta == 7
    assert fam.pencil.A[2, 2] == 2  # 3a - b
    assert fam.cubic.coefficient("x3") == 1
    assert fam.cubic.coefficient("xy2") == Fraction(-7, 3)


def test_norm_cubic_identity_on_a_grid():
    for c1 in range(-4, 5):
        for c2 in range(-4, 5):
            if (c1, c2) == (0, 0):
                continue
            assert norm_cubic_matches_family(c1, c2)


def test_norm_cubic_constant_term_structure():
    cubic = norm_cubic(1, 0)
    # c = c1^2 - c1 c2 + c2^2 = 1 here
    assert cubic.coefficient("x3") == 1
    assert cubic.coefficient("xy2") == -3


def test_equivalence_witness_is_exact():
    found, witness = verify_MT3(1, 1, 8)
    assert found and isinstance(witness, MT3Witness)
    fam = mt3_family(1, 1)
    lhs = cubicovariant(fam.pencil).compose(witness.transform)
    assert lhs == fam.cubic.scale(witness.ratio)
    assert witness.ratio == 8 * witness.det
    assert witness.transform.det() == witness.det


def test_witness_transform_is_primitive_integer():
    _, witness = verify_MT3(2, -1, 8)
    values = [x for row in witness.transform.rows for x in row]
    assert all(v.denominator == 1 for v in values)
    from math import gcd

    g = 0
    for v in values:
        g = gcd(g, abs(v.numerator))
    assert g == 1


def test_witness_search_is_deterministic():
    assert verify_MT3(-2, 2, 8) == verify_MT3(-2, 2, 8)


def test_degenerate_family_is_refused():
    with pytest.raises(DegenerateFamily):
        verify_MT3(0, 0, 8)


def test_empty_search_reports_unresolved():
    found, result = verify_MT3(1, 1, 0)
    assert not found and isinstance(result, Unresolved)
    assert result.search_bound == 0
