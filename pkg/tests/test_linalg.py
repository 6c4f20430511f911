"""Exact matrices: determinants, adjugates, kernels over Q and towers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilcov.exact import (
    QQ,
    Matrix,
    SymmetricMatrix,
    UniPoly,
    as_element,
    extend_by_root,
)

entries = st.integers(min_value=-9, max_value=9)


def square(n):
    return st.lists(
        st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(Matrix)


@given(m=square(3))
@settings(max_examples=60)
def test_adjugate_identity(m):
    n = 3
    product = m @ m.adjugate()
    expected = Matrix.identity(n).scale(m.det())
    assert product == expected
    assert m.adjugate() @ m == expected


@given(m=square(3), p=square(3))
@settings(max_examples=40)
def test_det_is_multiplicative(m, p):
    assert (m @ p).det() == m.det() * p.det()


@given(m=square(4))
@settings(max_examples=25)
def test_inverse_round_trip(m):
    if m.det() == 0:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
        return
    assert m @ m.inverse() == Matrix.identity(4)


@given(m=square(3))
@settings(max_examples=40)
def test_rank_plus_nullity(m):
    assert m.rank() + len(m.kernel_basis()) == 3
    for vec in m.kernel_basis():
        image = [
            sum(m[i, j] * vec[j] for j in range(3)) for i in range(3)
        ]
        assert all(x == 0 for x in image)


def test_kernel_of_rank_one_symmetric():
    m = Matrix([[1, 2, 3], [2, 4, 6], [3, 6, 9]])
    assert m.rank() == 1
    basis = m.kernel_basis()
    assert len(basis) == 2


def test_conjugation_matches_congruence():
    a = SymmetricMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    t = Matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    direct = t.transpose() @ a @ t
    assert a.conjugate_by(t) == direct


def test_symmetric_constructor_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymmetricMatrix([[1, 2], [3, 4]])


def test_non_square_rows_rejected():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_det_over_a_tower():
    K, r2 = extend_by_root(QQ, UniPoly([Fraction(-2), Fraction(0), Fraction(1)]))
    m = Matrix([[r2, as_element(1, K)], [as_element(1, K), r2]])
    assert m.det() == 1
    inv = m.inverse()
    assert m @ inv == Matrix([[as_element(1, K), as_element(0, K)],
                              [as_element(0, K), as_element(1, K)]])


def test_diagonal_and_identity_builders():
    d = Matrix.diagonal([2, 5, 7])
    assert d.det() == 70
    assert Matrix.identity(3).det() == 1
    assert Matrix.zero(2, 3).rank() == 0
