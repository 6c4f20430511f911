"""Binary quartics: Hessian and sextic covariants, invariants, syzygy.

The Hessian and the degree-6 covariant are implemented as frozen closed-form
expansions in the quartic's coefficients; independent derivative-based
constructions are provided alongside so tests can confirm the expansions
instead of trusting them.
"""

import random
from fractions import Fraction

from .errors import NoSyzygyInShape
from .exact import QQ, BinaryForm, as_element


class Quartic:
    """a4 x^4 + a3 x^3 y + a2 x^2 y^2 + a1 x y^3 + a0 y^4 over a tower."""

    __slots__ = ("a4", "a3", "a2", "a1", "a0", "tower")

    def __init__(self, a4, a3, a2, a1, a0, tower=QQ):
        self.tower = tower
        self.a4 = as_element(a4, tower)
        self.a3 = as_element(a3, tower)
        self.a2 = as_element(a2, tower)
        self.a1 = as_element(a1, tower)
        self.a0 = as_element(a0, tower)

    @classmethod
    def from_form(cls, form):
        if form.degree != 4:
            raise ValueError("need a degree-4 form")
        return cls(*form.coeffs, tower=form.tower)

    def coefficients(self):
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def as_form(self):
        return BinaryForm(4, list(self.coefficients()), self.tower)

    def compose(self, a, b, c, d):
        """The quartic F(a*x + b*y, c*x + d*y)."""
        return Quartic.from_form(self.as_form().compose(a, b, c, d))

    def is_zero(self):
        return all(c.is_zero() for c in self.coefficients())

    def __eq__(self, other):
        if not isinstance(other, Quartic):
            return NotImplemented
        return self.coefficients() == other.coefficients()

    def __hash__(self):
        return hash(self.coefficients())

    def __repr__(self):
        return f"Quartic({self.as_form()!r})"


def hessian(F):
    """The (unnormalized) Hessian covariant, a degree-4 form."""
    a4, a3, a2, a1, a0 = F.coefficients()
    return BinaryForm(
        4,
        [
            -9 * a3**2 + 24 * a2 * a4,
            -12 * a2 * a3 + 72 * a1 * a4,
            -12 * a2**2 + 18 * a1 * a3 + 144 * a0 * a4,
            -12 * a1 * a2 + 72 * a0 * a3,
            -9 * a1**2 + 24 * a0 * a2,
        ],
        F.tower,
    )


def hessian_from_second_partials(F):
    """det of the 2x2 second-derivative matrix; cross-check for hessian()."""
    form = F.as_form()
    fxx = form.partial_x().partial_x()
    fyy = form.partial_y().partial_y()
    fxy = form.partial_x().partial_y()
    return fxx * fyy - fxy * fxy


def f6(F):
    """The degree-6 covariant of a quartic."""
    a4, a3, a2, a1, a0 = F.coefficients()
    return BinaryForm(
        6,
        [
            a3**3 - 4 * a2 * a3 * a4 + 8 * a1 * a4**2,
            2 * (a2 * a3**2 - 4 * a2**2 * a4 + 2 * a1 * a3 * a4 + 16 * a0 * a4**2),
            5 * (a1 * a3**2 - 4 * a1 * a2 * a4 + 8 * a0 * a3 * a4),
            20 * (a0 * a3**2 - a1**2 * a4),
            -5 * (a1**2 * a3 - 4 * a0 * a2 * a3 + 8 * a0 * a1 * a4),
            -2 * (a1**2 * a2 - 4 * a0 * a2**2 + 2 * a0 * a1 * a3 + 16 * a0**2 * a4),
            -(a1**3 - 4 * a0 * a1 * a2 + 8 * a0**2 * a3),
        ],
        F.tower,
    )


def f6_from_jacobian(F):
    """(1/36) * Jacobian of (F, hessian(F)); cross-check for f6()."""
    form = F.as_form()
    h = hessian(F)
    jac = form.partial_x() * h.partial_y() - form.partial_y() * h.partial_x()
    return jac.scale(Fraction(1, 36))


def invariants_IJ(F):
    """The degree-2 and degree-3 invariants (I, J)."""
    a4, a3, a2, a1, a0 = F.coefficients()
    I = 12 * a4 * a0 - 3 * a3 * a1 + a2**2
    J = (
        72 * a4 * a2 * a0
        + 9 * a3 * a2 * a1
        - 27 * a4 * a1**2
        - 27 * a0 * a3**2
        - 2 * a2**3
    )
    return I, J


def discriminant(F):
    """disc(F) = (4 I^3 - J^2) / 27, normalized so disc(x^4 + y^4) = 256."""
    I, J = invariants_IJ(F)
    return (4 * I**3 - J * J) / 27


def random_quartic(rng, lo=-10, hi=10, tower=QQ):
    """Uniform integer-coefficient quartic from the given RNG."""
    return Quartic(*(rng.randint(lo, hi) for _ in range(5)), tower=tower)


def _syzygy_row_block(F):
    """Per-coefficient rows [H^3, I*F^2*H, J*F^3 | F6^2] for one quartic."""
    form = F.as_form()
    h = hessian(F)
    I, J = invariants_IJ(F)
    s6 = f6(F)
    h3 = h * h * h
    iffh = (form * form * h).scale(I)
    jfff = (form * form * form).scale(J)
    rhs = s6 * s6
    rows = []
    for k in range(13):
        rows.append(
            (
                [h3.coeffs[k], iffh.coeffs[k], jfff.coeffs[k]],
                rhs.coeffs[k],
            )
        )
    return rows


def calibrate_syzygy(samples, verify_count=1000, verify_seed=104729):
    """Recover (c1, c2, c3) with F6^2 = c1 H^3 + c2 I F^2 H + c3 J F^3.

    Solves the exact linear system over the sample quartics, then verifies
    the identity on a fresh deterministic sweep; NoSyzygyInShape if the
    system is inconsistent, underdetermined, or fails fresh verification.
    """
    rows = []
    for F in samples:
        rows.extend(_syzygy_row_block(F))

    solution = _solve_unique_3(rows)
    if solution is None:
        raise NoSyzygyInShape(
            "sample set does not pin down (c1, c2, c3) consistently"
        )
    c1, c2, c3 = (_as_fraction_if_possible(c) for c in solution)

    rng = random.Random(verify_seed)
    for _ in range(verify_count):
        F = random_quartic(rng)
        if not _syzygy_holds(F, c1, c2, c3):
            raise NoSyzygyInShape(
                "calibrated constants fail on a fresh sample"
            )
    return c1, c2, c3


def _as_fraction_if_possible(value):
    if isinstance(value, Fraction):
        return value
    if value.is_rational():
        return value.as_rational()
    return value


def _syzygy_holds(F, c1, c2, c3):
    form = F.as_form()
    h = hessian(F)
    I, J = invariants_IJ(F)
    s6 = f6(F)
    lhs = s6 * s6
    rhs = (h * h * h).scale(c1) + (form * form * h).scale(I * c2) + (
        form * form * form
    ).scale(J * c3)
    return lhs == rhs


def _solve_unique_3(rows):
    """Unique exact solution of rows of ([r1,r2,r3], rhs), or None."""
    mat = [list(r) + [rhs] for r, rhs in rows if any(x != 0 for x in r) or rhs != 0]
    if not mat:
        return None
    ncols = 4
    pivots = []
    r = 0
    for c in range(3):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < 3:
        return None
    for i in range(r, len(mat)):
        if any(x != 0 for x in mat[i]):
            return None  # inconsistent
    sol = [Fraction(0)] * 3
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols - 1]
    return tuple(sol)
