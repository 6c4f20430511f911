"""Homogeneous binary forms and exact extraction of rational linear factors.

Coefficients are stored highest-x-power first: a form of degree d is
sum c_k x^k y^(d-k) with the list [c_d, ..., c_0].  Projective roots are the
coefficient pairs (s : t) of linear factors s*x - t*y, normalized to a
primitive integer pair whose first nonzero entry is positive.
"""

from fractions import Fraction
import math

from .towers import QQ, as_element
from .polynomials import UniPoly, rational_roots


class BinaryForm:
    """Dense homogeneous form in (x, y) of fixed degree."""

    __slots__ = ("degree", "coeffs", "tower")

    def __init__(self, degree, coeffs, tower=QQ):
        coeffs = [as_element(c, tower) for c in coeffs]
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree-{degree} form needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = tuple(coeffs)
        self.tower = tower

    @classmethod
    def zero(cls, degree, tower=QQ):
        return cls(degree, [0] * (degree + 1), tower)

    def coefficient(self, xpow):
        """Coefficient of x^xpow y^(degree - xpow)."""
        return self.coeffs[self.degree - xpow]

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, x, y):
        acc = as_element(0, self.tower)
        for k, c in enumerate(self.coeffs):
            xp = self.degree - k
            acc = acc + c * (x**xp) * (y**k)
        return acc

    def partial_x(self):
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant form")
        out = [
            (self.degree - k) * self.coeffs[k] for k in range(self.degree)
        ]
        return BinaryForm(self.degree - 1, out, self.tower)

    def partial_y(self):
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant form")
        out = [k * self.coeffs[k] for k in range(1, self.degree + 1)]
        return BinaryForm(self.degree - 1, out, self.tower)

    def scale(self, c):
        return BinaryForm(self.degree, [c * x for x in self.coeffs], self.tower)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(
            self.degree,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.tower,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        d = self.degree + other.degree
        out = [as_element(0, self.tower)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(d, out, self.tower)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def compose(self, a, b, c, d):
        """F(a*x + b*y, c*x + d*y) as a form of the same degree."""
        one = [as_element(1, self.tower)]
        first = [as_element(c_, self.tower) for c_ in (a, b)]
        second = [as_element(c_, self.tower) for c_ in (c, d)]

        def power(lin, k):
            out = one[:]
            for _ in range(k):
                nxt = [as_element(0, self.tower)] * (len(out) + 1)
                for i, u in enumerate(out):
                    nxt[i] = nxt[i] + u * lin[0]
                    nxt[i + 1] = nxt[i + 1] + u * lin[1]
                out = nxt
            return out

        total = [as_element(0, self.tower)] * (self.degree + 1)
        for k, coeff in enumerate(self.coeffs):
            xp = self.degree - k
            if coeff.is_zero():
                continue
            px = power(first, xp)
            py = power(second, k)
            conv = [as_element(0, self.tower)] * (self.degree + 1)
            for i, u in enumerate(px):
                for j, v in enumerate(py):
                    conv[i + j] = conv[i + j] + u * v
            for i in range(self.degree + 1):
                total[i] = total[i] + coeff * conv[i]
        return BinaryForm(self.degree, total, self.tower)

    def to_unipoly_in_x(self):
        """F(x, 1) as a univariate polynomial (ascending coefficients)."""
        return UniPoly(list(reversed(self.coeffs)), self.tower)

    def rational_coeffs(self):
        return [c.as_rational() for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            xp, yp = self.degree - k, k
            mono = ""
            if xp:
                mono += "x" if xp == 1 else f"x^{xp}"
            if yp:
                mono += ("*" if mono else "") + ("y" if yp == 1 else f"y^{yp}")
            cs = str(c)
            if mono and cs == "1":
                piece = mono
            elif mono and cs == "-1":
                piece = "-" + mono
            elif mono:
                piece = f"{cs}*{mono}" if "+" not in cs and "-" not in cs[1:] else f"({cs})*{mono}"
            else:
                piece = cs
            parts.append(piece if not parts else (piece if piece.startswith("-") else "+" + piece))
        return "".join(parts)


def _primitive_pair(s, t):
    """Scale a rational projective pair to coprime integers, first nonzero
    entry positive."""
    s, t = Fraction(s), Fraction(t)
    if s == 0 and t == 0:
        raise ValueError("(0 : 0) is not projective")
    den = math.lcm(s.denominator, t.denominator)
    si, ti = int(s * den), int(t * den)
    g = math.gcd(si, ti)
    si, ti = si // g, ti // g
    lead = si if si != 0 else ti
    if lead < 0:
        si, ti = -si, -ti
    return si, ti


def div_linear(form, s, t):
    """Exact quotient of a binary form by the linear factor s*x - t*y."""
    s = as_element(s, form.tower)
    t = as_element(t, form.tower)
    d = form.degree
    if d < 1:
        raise ValueError("cannot divide a constant form")
    quot = [as_element(0, form.tower)] * d
    if not s.is_zero():
        # (s x - t y) * sum q_k x^k y^(d-1-k): matching x^(k+1) y^(d-k-1)
        # gives s q_k - t q_(k+1) = c_(k+1), i.e. q_k = (c_(k+1) + t q_(k+1))/s
        sinv = s.inverse()
        prev = as_element(0, form.tower)  # q_d, out of range
        for k in range(d - 1, -1, -1):
            qk = (form.coefficient(k + 1) + t * prev) * sinv
            quot[d - 1 - k] = qk
            prev = qk
        rem = form.coefficient(0) + t * prev
        if not rem.is_zero():
            raise ValueError("linear form does not divide exactly")
    else:
        tinv = (-t).inverse()
        if not form.coefficient(d).is_zero():
            raise ValueError("linear form does not divide exactly")
        for k in range(d):
            quot[d - 1 - k] = form.coefficient(k) * tinv
    return BinaryForm(d - 1, quot, form.tower)


def rational_linear_factors(form):
    """All rational linear factors of a nonzero rational binary form.

    Returns (roots, cofactor) where roots is a sorted list of ((s, t), mult)
    with primitive integer pairs, and cofactor has no rational roots; the
    product of the factors (s*x - t*y)^mult times the cofactor reproduces the
    input exactly.
    """
    if form.is_zero():
        raise ValueError("zero form")
    coeffs = form.rational_coeffs()
    d = form.degree

    roots = []
    # multiplicity of the factor y, i.e. the root (0 : 1): leading x-powers absent
    m_y = 0
    while m_y <= d and coeffs[m_y] == 0:
        m_y += 1
    if m_y > 0:
        roots.append(((0, 1), m_y))

    dehom = list(reversed(coeffs))  # ascending in x at y = 1
    finite = rational_roots(dehom) if len(dehom) > 1 else []
    for r, mult in finite:
        roots.append((_primitive_pair(1, r), mult))

    cofactor = form
    for (s, t), mult in roots:
        for _ in range(mult):
            cofactor = div_linear(cofactor, s, t)
    roots.sort()
    return roots, cofactor


def has_repeated_projective_root(form):
    """True iff the form has a repeated root over the algebraic closure."""
    coeffs = form.rational_coeffs()
    d = form.degree
    lead_zeros = 0
    while lead_zeros <= d and coeffs[lead_zeros] == 0:
        lead_zeros += 1
    if lead_zeros > d:
        raise ValueError("zero form")
    if lead_zeros >= 2:
        return True
    f = UniPoly(list(reversed(coeffs)))
    g = poly_gcd(f, f.derivative())
    return g.degree >= 1


def poly_gcd(p, q):
    """Monic gcd of two univariate polynomials over a common tower."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def cubic_discriminant(form):
    """Discriminant of a degree-3 binary form (18abcd - 4b^3d + b^2c^2
    - 4ac^3 - 27a^2d^2)."""
    if form.degree != 3:
        raise ValueError("cubic discriminant needs degree 3")
    a, b, c, d = form.coeffs
    return (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )
