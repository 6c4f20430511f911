"""Seeded random generators used by the verification sweeps and the CLI.

Everything draws from a caller-supplied ``random.Random`` so a fixed seed
reproduces a sweep byte for byte.
"""

import random
from fractions import Fraction

from .exact import Matrix, SymmetricMatrix, has_repeated_projective_root
from .pencils import Pencil, det_form


def seeded(seed):
    """A fresh deterministic generator."""
    return random.Random(seed)


def integer_matrix(rng, n, lo, hi):
    return Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def integer_symmetric(rng, n, lo, hi):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return SymmetricMatrix(rows)


def invertible_matrix(rng, n, lo, hi):
    """Rejection-sampled integer matrix with nonzero determinant."""
    while True:
        m = integer_matrix(rng, n, lo, hi)
        if m.det() != 0:
            return m


def unimodular_matrix(rng, n, steps=12, shear_bound=2):
    """A det +-1 integer matrix built from random shears and swaps."""
    rows = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        kind = rng.randrange(3)
        if kind == 0:
            c = rng.randint(-shear_bound, shear_bound)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        elif kind == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return Matrix(rows)


def random_pencil(rng, n, lo, hi):
    return Pencil(integer_symmetric(rng, n, lo, hi), integer_symmetric(rng, n, lo, hi))


def diagonal_pencil(rng, n, lo, hi):
    a = Matrix.diagonal([rng.randint(lo, hi) for _ in range(n)])
    b = Matrix.diagonal([rng.randint(lo, hi) for _ in range(n)])
    return Pencil(SymmetricMatrix(a.rows), SymmetricMatrix(b.rows))


def nondegenerate_pencil(rng, n, lo, hi):
    """A random pencil whose determinant form is squarefree of full degree."""
    while True:
        pencil = random_pencil(rng, n, lo, hi)
        form = det_form(pencil)
        if form.is_zero():
            continue
        if form.coefficient(n).is_zero():
            continue
        if has_repeated_projective_root(form):
            continue
        return pencil


def distinct_ratio_instance(rng, n, lo, hi):
    """Diagonal values (s, t) with pairwise distinct finite ratios s_i/t_i."""
    while True:
        s = [rng.randint(lo, hi) for _ in range(n)]
        t = [rng.randint(lo, hi) for _ in range(n)]
        if any(x == 0 for x in t):
            continue
        ratios = {Fraction(a, b) for a, b in zip(s, t)}
        if len(ratios) == n:
            return s, t
