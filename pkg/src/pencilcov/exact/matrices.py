"""Exact dense linear algebra over Q and its extension towers.

Determinants dispatch on the coefficient field: fraction-free Bareiss on a
denominator-cleared integer copy when all entries are rational, recursive
cofactor expansion over extension towers (matrices here are tiny, so
asymptotics are irrelevant; exactness is everything).
"""

from fractions import Fraction
import math

from .towers import FieldElement

_RATIONAL = (int, Fraction)


def _normalize_entry(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, FieldElement)):
        return x
    raise TypeError(f"unsupported matrix entry {x!r}")


class Matrix:
    """Immutable dense matrix with Fraction or FieldElement entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_normalize_entry(x) for x in row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls(
            [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, n, m=None):
        m = n if m is None else m
        return cls([[Fraction(0)] * m for _ in range(n)])

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls(
            [[entries[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self):
        return Matrix(list(zip(*self.rows))) if self.rows else Matrix([])

    def is_rational(self):
        return all(isinstance(x, Fraction) for row in self.rows for x in row)

    def is_symmetric(self):
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def is_zero(self):
        return all(_is_zero(x) for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("matmul shape mismatch")
            cols = other.transpose().rows
            return Matrix(
                [[_dot(r, c) for c in cols] for r in self.rows]
            )
        # vector
        vec = list(other)
        if self.ncols != len(vec):
            raise ValueError("matvec shape mismatch")
        return [_dot(r, vec) for r in self.rows]

    def conjugate_by(self, t):
        """t^T * self * t for a change of basis t."""
        return t.transpose() @ self @ t

    def minor(self, i, j):
        return Matrix(
            [
                [x for jj, x in enumerate(row) if jj != j]
                for ii, row in enumerate(self.rows)
                if ii != i
            ]
        )

    def det(self):
        return det(self)

    def adjugate(self):
        return adjugate(self)

    def rank(self):
        return rank(self)

    def kernel_basis(self):
        return kernel_basis(self)

    def inverse(self):
        d = self.det()
        if _is_zero(d):
            raise ZeroDivisionError("matrix is singular")
        inv = _invert(d)
        return self.adjugate().scale(inv)

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.rows
        )
        return f"Matrix({body})"


class SymmetricMatrix(Matrix):
    """Square matrix constrained to be symmetric (a Gram matrix)."""

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_square():
            raise ValueError("symmetric matrix must be square")
        n = self.nrows
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("matrix is not symmetric")

    def quadratic_form(self, vec):
        """x^T M x for a coefficient vector x."""
        mv = self @ vec
        return _dot(list(vec), mv)


def _is_zero(x):
    if isinstance(x, Fraction):
        return x == 0
    return x.is_zero()


def _invert(x):
    if isinstance(x, Fraction):
        return 1 / x
    return x.inverse()


def _dot(r, c):
    acc = None
    for a, b in zip(r, c):
        term = a * b
        acc = term if acc is None else acc + term
    return acc if acc is not None else Fraction(0)


def _as_rows(m):
    if isinstance(m, Matrix):
        return [list(r) for r in m.rows]
    return [[_normalize_entry(x) for x in row] for row in m]


def det(m):
    """Exact determinant; Bareiss over Q, cofactor over towers."""
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if all(isinstance(x, Fraction) for r in rows for x in r):
        return _bareiss_det(rows)
    return _cofactor_det(rows)


def _bareiss_det(rows):
    n = len(rows)
    scale = Fraction(1)
    a = []
    for r in rows:
        lcm = 1
        for x in r:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scale *= lcm
        a.append([int(x * lcm) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], 1) / scale


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for i in range(n):
        c = rows[i][0]
        if _is_zero(c):
            continue
        sub = [r[1:] for ii, r in enumerate(rows) if ii != i]
        term = c * _cofactor_det(sub)
        if i % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return Fraction(0)
    return acc


def adjugate(m):
    """The adjugate M-dagger with M-dagger * M = det(M) * I exactly."""
    rows = _as_rows(m)
    n = len(rows)
    if n == 0:
        return Matrix([])
    if n == 1:
        return Matrix([[Fraction(1)]])
    mat = Matrix(rows)
    adj = []
    for i in range(n):
        adj_row = []
        for j in range(n):
            # adjugate = transpose of the cofactor matrix
            c = det(mat.minor(j, i))
            if (i + j) % 2:
                c = -c
            adj_row.append(c)
        adj.append(adj_row)
    return Matrix(adj)


def _eliminate(rows):
    """Row reduce in place over the entry field; returns pivot column list."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _invert(rows[r][c])
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nr):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return pivots


def rank(m):
    rows = _as_rows(m)
    if not rows:
        return 0
    return len(_eliminate(rows))


def kernel_basis(m):
    """Exact basis of the right null space; empty list when trivial."""
    rows = _as_rows(m)
    if not rows:
        return []
    nc = len(rows[0])
    pivots = _eliminate(rows)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * nc
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis
