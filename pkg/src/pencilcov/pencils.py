"""Pencils of symmetric matrices and their covariant forms.

A pencil is a pair (A, B) of symmetric n x n Gram matrices.  Its basic
covariants are the determinantal binary form det(Ax - By), the quadratic
covariants built from adjugate sandwiches, and (for n = 3) the cubicovariant,
a ternary cubic obtained as a Jacobian determinant.
"""

from fractions import Fraction

from .errors import DimensionError
from .exact import (
    QQ,
    BinaryForm,
    FieldElement,
    Matrix,
    SymmetricMatrix,
    cubic_discriminant,
)

#: Fixed scale on det_form making the pair discriminant match the quartic
#: discriminant through the standard embedding (disc(4*f) = 256*disc(f)).
DET_FORM_DISC_SCALE = Fraction(4)

#: Monomial order for ternary cubic coefficients, with their JSON keys.
TERNARY_MONOMIALS = (
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
)
TERNARY_KEYS = ("x3", "x2y", "x2z", "xy2", "xyz", "xz2", "y3", "y2z", "yz2", "z3")

_VAR_NAMES = ("x", "y", "z")


def _normalize_scalar(value):
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


# ---------------------------------------------------------------------------
# Sparse trivariate polynomials: {(i, j, k): coeff} with x^i y^j z^k.


def _tri_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        acc = out.get(mono)
        s = c if acc is None else acc + c
        if _is_zero_scalar(s):
            out.pop(mono, None)
        else:
            out[mono] = s
    return out


def _tri_scale(p, c):
    if _is_zero_scalar(c):
        return {}
    return {mono: v * c for mono, v in p.items()}


def _tri_mul(p, q):
    out = {}
    for (i1, j1, k1), c1 in p.items():
        for (i2, j2, k2), c2 in q.items():
            mono = (i1 + i2, j1 + j2, k1 + k2)
            term = c1 * c2
            acc = out.get(mono)
            s = term if acc is None else acc + term
            if _is_zero_scalar(s):
                out.pop(mono, None)
            else:
                out[mono] = s
    return out


def _tri_partial(p, axis):
    out = {}
    for mono, c in p.items():
        e = mono[axis]
        if e == 0:
            continue
        lowered = list(mono)
        lowered[axis] = e - 1
        out[tuple(lowered)] = c * e
    return out


def _is_zero_scalar(c):
    if isinstance(c, FieldElement):
        return c.is_zero()
    return c == 0


def _det3_tri(rows):
    """Determinant of a 3x3 matrix of sparse trivariate polynomials."""
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    out = _tri_mul(a, _tri_mul(e, i))
    out = _tri_add(out, _tri_scale(_tri_mul(a, _tri_mul(f, h)), -1))
    out = _tri_add(out, _tri_scale(_tri_mul(b, _tri_mul(d, i)), -1))
    out = _tri_add(out, _tri_mul(b, _tri_mul(f, g)))
    out = _tri_add(out, _tri_mul(c, _tri_mul(d, h)))
    out = _tri_add(out, _tri_scale(_tri_mul(c, _tri_mul(e, g)), -1))
    return out


def _quadratic_form_tri(gram):
    """x^T M x as a sparse trivariate polynomial, for 3x3 symmetric M."""
    out = {}
    for i in range(3):
        for j in range(3):
            c = gram[i, j]
            if _is_zero_scalar(c):
                continue
            mono = [0, 0, 0]
            mono[i] += 1
            mono[j] += 1
            key = tuple(mono)
            acc = out.get(key)
            s = c if acc is None else acc + c
            if _is_zero_scalar(s):
                out.pop(key, None)
            else:
                out[key] = s
    return out


class TernaryCubic:
    """Homogeneous cubic in x, y, z with ten exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(_normalize_scalar(c) for c in coeffs)
        if len(coeffs) != 10:
            raise ValueError("a ternary cubic has exactly 10 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TernaryCubic is immutable")

    @classmethod
    def zero(cls):
        return cls([0] * 10)

    @classmethod
    def from_dict(cls, d):
        """Build from a sparse {(i, j, k): coeff} exponent dictionary."""
        coeffs = []
        seen = dict(d)
        for mono in TERNARY_MONOMIALS:
            coeffs.append(seen.pop(mono, 0))
        leftovers = {m: c for m, c in seen.items() if not _is_zero_scalar(c)}
        if leftovers:
            raise ValueError(f"non-cubic monomials present: {sorted(leftovers)}")
        return cls(coeffs)

    def to_dict(self):
        return {
            mono: c
            for mono, c in zip(TERNARY_MONOMIALS, self.coeffs)
            if not _is_zero_scalar(c)
        }

    def coefficient(self, key):
        """Coefficient by JSON-style key ("x2y") or exponent triple."""
        if isinstance(key, str):
            return self.coeffs[TERNARY_KEYS.index(key)]
        return self.coeffs[TERNARY_MONOMIALS.index(tuple(key))]

    def evaluate(self, x, y, z):
        total = None
        for (i, j, k), c in zip(TERNARY_MONOMIALS, self.coeffs):
            term = c * x**i * y**j * z**k
            total = term if total is None else total + term
        return total

    def scale(self, c):
        return TernaryCubic([v * _normalize_scalar(c) for v in self.coeffs])

    def __add__(self, other):
        return TernaryCubic([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return TernaryCubic([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.scale(-1)

    def compose(self, T):
        """The cubic C(T v): substitute x_i -> sum_j T[i][j] v_j."""
        rows = T.rows if isinstance(T, Matrix) else [tuple(r) for r in T]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise DimensionError("composition needs a 3x3 matrix")
        lins = [
            {
                (1 if j == 0 else 0, 1 if j == 1 else 0, 1 if j == 2 else 0): _normalize_scalar(rows[i][j])
                for j in range(3)
                if not _is_zero_scalar(_normalize_scalar(rows[i][j]))
            }
            for i in range(3)
        ]
        acc = {}
        for (i, j, k), c in self.to_dict().items():
            term = {(0, 0, 0): c}
            for axis, e in ((0, i), (1, j), (2, k)):
                for _ in range(e):
                    term = _tri_mul(term, lins[axis])
            acc = _tri_add(acc, term)
        return TernaryCubic.from_dict(acc)

    def is_zero(self):
        return all(_is_zero_scalar(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TernaryCubic):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        parts = []
        for (i, j, k), c in zip(TERNARY_MONOMIALS, self.coeffs):
            if _is_zero_scalar(c):
                continue
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(_VAR_NAMES, (i, j, k))
                if e
            )
            cs = str(c)
            if cs == "1":
                text = mono
            elif cs == "-1":
                text = f"-{mono}"
            else:
                if isinstance(c, FieldElement) and any(op in cs[1:] for op in "+-"):
                    cs = f"({cs})"
                text = f"{cs}*{mono}"
            if parts and not text.startswith("-"):
                parts.append("+" + text)
            else:
                parts.append(text)
        return "".join(parts) if parts else "0"


class Pencil:
    """A pair (A, B) of symmetric n x n matrices over an exact field."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        A = A if isinstance(A, SymmetricMatrix) else SymmetricMatrix(_rows_of(A))
        B = B if isinstance(B, SymmetricMatrix) else SymmetricMatrix(_rows_of(B))
        if A.nrows != B.nrows:
            raise DimensionError("A and B must have the same dimension")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("Pencil is immutable")

    @property
    def n(self):
        return self.A.nrows

    def transform(self, T):
        """The congruent pencil (T^t A T, T^t B T)."""
        return Pencil(
            SymmetricMatrix(self.A.conjugate_by(T).rows),
            SymmetricMatrix(self.B.conjugate_by(T).rows),
        )

    def combine(self, a, b, c, d):
        """Replace (A, B) by (aA + bB, cA + dB)."""
        newA = self.A.scale(a) + self.B.scale(b)
        newB = self.A.scale(c) + self.B.scale(d)
        return Pencil(SymmetricMatrix(newA.rows), SymmetricMatrix(newB.rows))

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"Pencil(A={self.A.rows!r}, B={self.B.rows!r})"


def _rows_of(value):
    if isinstance(value, Matrix):
        return value.rows
    return [tuple(r) for r in value]


def det_form(pencil):
    """The binary n-ic det(Ax - By), exact, via interpolation."""
    n = pencil.n
    if n == 0:
        raise DimensionError("empty pencil")
    nodes = [Fraction(k) for k in range(n + 1)]
    values = [(pencil.A.scale(k) - pencil.B).det() for k in nodes]
    dehom = _lagrange_coefficients(nodes, values, n)
    return BinaryForm(n, list(reversed(dehom)), _tower_of(dehom))


def _lagrange_coefficients(nodes, values, degree):
    """Ascending coefficients of the unique poly of given degree bound."""
    coeffs = [Fraction(0)] * (degree + 1)
    for k, (xk, yk) in enumerate(zip(nodes, values)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == k:
                continue
            denom *= xk - xj
            nxt = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                nxt[p] += c * (-xj)
                nxt[p + 1] += c
            basis = nxt
        w = yk / denom
        for p, c in enumerate(basis):
            coeffs[p] = coeffs[p] + c * w
    return coeffs


def _tower_of(values):
    tower = QQ
    for v in values:
        if isinstance(v, FieldElement) and v.tower.height > tower.height:
            tower = v.tower
    return tower


def quad_covariants(pencil):
    """The adjugate-sandwich Gram pair (g_B, g_A).

    g_B is the Gram matrix of A*adj(B)*A and g_A that of B*adj(A)*B.
    """
    A, B = pencil.A, pencil.B
    gB = A @ B.adjugate() @ A
    gA = B @ A.adjugate() @ B
    return SymmetricMatrix(gB.rows), SymmetricMatrix(gA.rows)


def cubicovariant(pencil):
    """Jacobian determinant of (f_A, f_B, g_B) as a ternary cubic (n = 3)."""
    if pencil.n != 3:
        raise DimensionError("the cubicovariant is defined for 3x3 pencils")
    gB, _ = quad_covariants(pencil)
    f_a = _quadratic_form_tri(pencil.A)
    f_b = _quadratic_form_tri(pencil.B)
    f_g = _quadratic_form_tri(gB)
    rows = [
        [_tri_partial(f, axis) for axis in range(3)]
        for f in (f_a, f_b, f_g)
    ]
    return TernaryCubic.from_dict(_det3_tri(rows))


def hessian_cubic(cubic):
    """Determinant of the 3x3 second-derivative matrix of a ternary cubic."""
    p = cubic.to_dict()
    firsts = [_tri_partial(p, axis) for axis in range(3)]
    rows = [[_tri_partial(firsts[i], j) for j in range(3)] for i in range(3)]
    return TernaryCubic.from_dict(_det3_tri(rows))


def is_decomposable(cubic):
    """True iff the cubic's Hessian determinant is a scalar multiple of it.

    Zero cubics and cubics with identically vanishing Hessian (cones over
    at most two variables) count as decomposable.
    """
    if cubic.is_zero():
        return True
    hess = hessian_cubic(cubic)
    if hess.is_zero():
        return True
    pivot = next(i for i, c in enumerate(cubic.coeffs) if not _is_zero_scalar(c))
    ratio = hess.coeffs[pivot] / cubic.coeffs[pivot]
    return hess == cubic.scale(ratio)


def pair_discriminant(pencil):
    """disc of the rescaled determinantal cubic (n = 3 pencils)."""
    if pencil.n != 3:
        raise DimensionError("the pair discriminant is defined for 3x3 pencils")
    return cubic_discriminant(det_form(pencil).scale(DET_FORM_DISC_SCALE))
