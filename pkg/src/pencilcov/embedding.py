"""The quartic-to-pencil embedding and executable theorem checks.

A binary quartic F maps to the pencil (A0, B_F) with A0 a fixed anchor
matrix.  Composing pencil covariants with the Veronese substitution
(x, y) -> (x^2, xy, y^2) recovers the quartic's own covariants up to frozen
scalars, and those identities are checked exactly here.  The module also
carries the two-parameter family of pencils whose cubicovariant is
equivalent to an explicit norm-type cubic, together with a certified search
for the equivalence witness.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateFamily, SingularInput
from .exact import (
    QQ,
    BinaryForm,
    FieldElement,
    Matrix,
    SymmetricMatrix,
    UniPoly,
    as_element,
    extend_by_root,
    rational_linear_factors,
    rational_roots,
)
from .pencils import (
    Pencil,
    TernaryCubic,
    _tower_of,
    cubicovariant,
    det_form,
    pair_discriminant,
    quad_covariants,
)
from .quartics import Quartic, discriminant, f6, hessian

#: Scalar matching the degree-6 covariant with the Veronese-restricted
#: cubicovariant: f6(F) = F6_SCALE * C3(x^2, xy, y^2).
F6_SCALE = Fraction(8)

#: Weights matching the Hessian with the Veronese-restricted quadratic
#: covariants: hessian(F) = HESSIAN_WEIGHTS[0] * g_B + HESSIAN_WEIGHTS[1] * g_A.
HESSIAN_WEIGHTS = (Fraction(96), Fraction(48))

#: Proportionality constant in the family equivalence: C3 o T = 8 det(T) G.
MT3_PROPORTION = Fraction(8)

#: The fixed first slot of every embedded pair.
ANCHOR = SymmetricMatrix(
    [
        [0, 0, Fraction(1, 2)],
        [0, -1, 0],
        [Fraction(1, 2), 0, 0],
    ]
)


@dataclass(frozen=True)
class EmbeddedPair:
    """A quartic together with its image pencil (ANCHOR, B_F)."""

    source: Quartic
    pencil: Pencil


def embed(F):
    """The pencil image of a quartic: A = ANCHOR, B = B_F."""
    a4, a3, a2, a1, a0 = F.coefficients()
    half = Fraction(1, 2)
    B = SymmetricMatrix(
        [
            [a4, a3 * half, 0],
            [a3 * half, a2, a1 * half],
            [0, a1 * half, a0],
        ]
    )
    return EmbeddedPair(source=F, pencil=Pencil(ANCHOR, B))


def veronese_sextic(cubic):
    """The binary sextic C(x^2, xy, y^2) of a ternary cubic C."""
    acc = [0] * 7  # indexed by the power of x
    for (i, j, k), c in cubic.to_dict().items():
        acc[2 * i + j] = acc[2 * i + j] + c
    return BinaryForm(6, list(reversed(acc)), _tower_of(acc))


def veronese_quartic(gram):
    """The binary quartic Q(x^2, xy, y^2) of a 3x3 quadratic form Q."""
    acc = [0] * 5
    for i in range(3):
        for j in range(3):
            p = 4 - i - j
            acc[p] = acc[p] + gram[i, j]
    return BinaryForm(4, list(reversed(acc)), _tower_of(acc))


def verify_MT(F):
    """Exact check: f6(F) equals 8 * C3 of the image pencil on the Veronese."""
    pair = embed(F)
    restricted = veronese_sextic(cubicovariant(pair.pencil))
    return f6(F) == restricted.scale(F6_SCALE)


def verify_MT2(F):
    """Exact check: hessian(F) = 96 * g_B + 48 * g_A on the Veronese."""
    pair = embed(F)
    gB, gA = quad_covariants(pair.pencil)
    rhs = veronese_quartic(gB).scale(HESSIAN_WEIGHTS[0]) + veronese_quartic(
        gA
    ).scale(HESSIAN_WEIGHTS[1])
    return hessian(F) == rhs


def verify_disc_preserving(F):
    """Exact check: disc(F) equals the pair discriminant of its image."""
    return discriminant(F) == pair_discriminant(embed(F).pencil)


def rho3(g):
    """Symmetric-square representation of an invertible 2x2 matrix.

    Multiplicative (rho3(gh) = rho3(g) rho3(h)) with determinant 1; the
    middle-coefficient action on binary quadratics written in the basis
    (x^2, xy, y^2).
    """
    rows = g.rows if isinstance(g, Matrix) else [tuple(r) for r in g]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("rho3 expects a 2x2 matrix")
    a11, a12 = rows[0]
    a21, a22 = rows[1]
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise SingularInput("rho3 needs an invertible matrix")
    inv = Fraction(1) / det
    return Matrix(
        [
            [a22 * a22 * inv, a21 * a22 * inv, a21 * a21 * inv],
            [2 * a12 * a22 * inv, (a11 * a22 + a12 * a21) * inv, 2 * a11 * a21 * inv],
            [a12 * a12 * inv, a11 * a12 * inv, a11 * a11 * inv],
        ]
    )


# ---------------------------------------------------------------------------
# The two-parameter family and its norm-type cubic.


def mt3_delta(a, b):
    """The family discriminant-root b^2 - 3ab + 9a^2 (zero only at (0,0))."""
    return b * b - 3 * a * b + 9 * a * a


@dataclass(frozen=True)
class MT3Family:
    """Pencil family member with its target cubic and delta invariant."""

    a: int
    b: int
    pencil: Pencil
    cubic: TernaryCubic
    delta: int


def mt3_family(a, b):
    """The displayed pencil (A_{a,b}, B_{a,b}) and cubic G_{a,b}."""
    A = SymmetricMatrix([[0, 0, 1], [0, -a, 0], [1, 0, 3 * a - b]])
    B = SymmetricMatrix([[0, 1, 0], [1, b, 0], [0, 0, -a]])
    d = Fraction(mt3_delta(a, b))
    third = d / 3
    cubic = TernaryCubic(
        [
            Fraction(1),  # x^3
            0,  # x^2 y
            0,  # x^2 z
            -third,  # x y^2
            -third,  # x y z
            -third,  # x z^2
            -d * (3 * a - 2 * b) / 27,  # y^3
            -d * (6 * a - b) / 9,  # y^2 z
            -d * (3 * a + b) / 9,  # y z^2
            d * (3 * a - 2 * b) / 27,  # z^3
        ]
    )
    return MT3Family(a=a, b=b, pencil=Pencil(A, B), cubic=cubic, delta=mt3_delta(a, b))


def norm_cubic(c1, c2):
    """The norm-type cubic of the (c1, c2) parametrization, in (x, y, z)."""
    c = Fraction(c1 * c1 - c1 * c2 + c2 * c2)
    return TernaryCubic(
        [
            Fraction(1),  # x^3
            0,
            0,
            -3 * c,  # x y^2
            3 * c,  # x y z
            -3 * c,  # x z^2
            c * (2 * c1 - c2),  # y^3
            -3 * c * (c1 + c2),  # y^2 z
            3 * c * (2 * c2 - c1),  # y z^2
            c * (2 * c1 - c2),  # z^3
        ]
    )


#: Variable substitution (x, y, z) -> (x, z, -y) written as a matrix.
SWAP_LAST_NEGATE_SECOND = Matrix([[1, 0, 0], [0, 0, 1], [0, -1, 0]])


def norm_cubic_matches_family(c1, c2):
    """Exact identity: G_{(c2, 3 c1)}(u, t, -s) = norm_cubic(c1, c2)(u, s, t)."""
    fam = mt3_family(c2, 3 * c1)
    return fam.cubic.compose(SWAP_LAST_NEGATE_SECOND) == norm_cubic(c1, c2)


# ---------------------------------------------------------------------------
# Certified equivalence search for the family.


@dataclass(frozen=True)
class MT3Witness:
    """A found equivalence: C3 o transform = ratio * G_{a,b} exactly.

    The transform is reported as its primitive integer representative; the
    identity is scale invariant (both sides pick up mu^3 under T -> mu T),
    so the scaling is pure normalization and ratio = 8 det(transform).
    """

    a: int
    b: int
    transform: Matrix
    det: Fraction
    ratio: Fraction


@dataclass(frozen=True)
class Unresolved:
    """Honest non-answer: no witness inside the searched region."""

    search_bound: int
    reason: str


def verify_MT3(a, b, search_bound):
    """Search for an invertible rational T with C3(pencil) o T = 8 det(T) G_{a,b}.

    Candidates come from the complete parametrization T = Lambda^{-1} diag(d)
    P_sigma M over the splitting field, enumerated by primitive integer
    coordinate vectors of max-norm up to search_bound.  Every invertible
    candidate gets the exact identity check; the first success is normalized
    to a primitive integer matrix and returned.

    Returns (True, MT3Witness) on success and (False, Unresolved) when the
    bounded search is exhausted; never a false negative claim.
    """
    if mt3_delta(a, b) == 0:
        raise DegenerateFamily(f"delta({a}, {b}) = 0")
    if search_bound <= 0:
        return False, Unresolved(search_bound, "empty search space")

    fam = mt3_family(a, b)
    cubic3 = cubicovariant(fam.pencil)

    K, roots = _splitting_data(fam)
    lam = _dual_line_stack(K, fam.pencil, roots)
    lam_inv = lam.inverse()
    m_rows = _family_linear_factors(K, fam, roots)
    if m_rows is None:
        return False, Unresolved(search_bound, "target cubic did not factor")

    deg = K.total_degree()
    theta_pows = [as_element(1, K)]
    if deg > 1:
        gen = K.gen()
        for _ in range(deg - 1):
            theta_pows.append(theta_pows[-1] * gen)

    lam_det = lam.det()
    m_det = Matrix([list(r) for r in m_rows]).det()

    # Per permutation sigma of the factor rows, T(d) = lam_inv diag(d) P_sigma M
    # is rational iff d's non-rational coordinates satisfy a linear system.
    sigma_families = []
    for sigma in itertools.permutations(range(3)):
        bases = [
            [
                [lam_inv[p, i] * m_rows[sigma[i]][q] for i in range(3)]
                for q in range(3)
            ]
            for p in range(3)
        ]
        basis = _rational_solution_basis(K, bases, theta_pows)
        if basis:
            # det(T(d)) = sign(sigma) * d1 d2 d3 * det(M) / det(Lambda)
            det_scale = _perm_sign(sigma) * m_det * _kinv(lam_det)
            sigma_families.append((sigma, bases, basis, det_scale))
    if not sigma_families:
        return False, Unresolved(search_bound, "no rational transformation family")

    for radius in range(1, search_bound + 1):
        for sigma, bases, basis, det_scale in sigma_families:
            for combo in _primitive_combos(len(basis), radius):
                witness = _try_combo(
                    K, bases, deg, basis, combo, det_scale, fam, cubic3,
                )
                if witness is not None:
                    return True, witness
    return False, Unresolved(
        search_bound, "no invertible transformation within the coordinate bound"
    )


def _splitting_data(fam):
    """The field K and the three projective root pairs of the det form."""
    form = det_form(fam.pencil)
    pairs, _ = rational_linear_factors(form)
    if sum(m for _, m in pairs) == 3:
        out = []
        for (s, t), mult in pairs:
            for _ in range(mult):
                out.append((as_element(s, QQ), as_element(t, QQ)))
        return QQ, out
    # Square discriminant leaves no partial splitting: adjoin one root and
    # produce the conjugates by deflation, using the rational square root
    # of the monic cubic's discriminant.
    a, b = Fraction(fam.a), Fraction(fam.b)
    f = UniPoly([Fraction(-1), -(3 * a - b) / a, b / a, Fraction(1)])
    K, theta = extend_by_root(QQ, f)
    c1 = as_element(f.coefficient(1), K)
    c2 = as_element(f.coefficient(2), K)
    q1 = c2 + theta
    q0 = c1 + theta * q1
    disc_residual = q1 * q1 - 4 * q0
    fprime = 3 * theta * theta + 2 * c2 * theta + c1
    sq = as_element(Fraction(fam.delta) / (a * a), K) / fprime
    if not (sq * sq - disc_residual).is_zero():
        raise ArithmeticError("discriminant square root mismatch")
    one = as_element(1, K)
    half = Fraction(1, 2)
    r2 = (-q1 + sq) * half
    r3 = (-q1 - sq) * half
    return K, [(theta, one), (r2, one), (r3, one)]


def _dual_line_stack(K, pencil, roots):
    """Rows ell_i = L_j x L_k from the singular members' adjugate lines."""
    A = _lift_matrix(pencil.A, K)
    B = _lift_matrix(pencil.B, K)
    lines = []
    for s, t in roots:
        member = A.scale(s) - B.scale(t)
        adj = member.adjugate()
        row = next(
            (adj.row(r) for r in range(3) if any(not _kzero(x) for x in adj.row(r))),
            None,
        )
        if row is None:
            raise ArithmeticError("singular member has vanishing adjugate")
        lines.append(row)
    ells = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        ells.append(_cross(lines[j], lines[k]))
    return Matrix(ells)


def _family_linear_factors(K, fam, roots):
    """Rows (1, -u_i, -v_{tau(i)}) with prod (x - u_i y - v_{tau(i)} z) = G."""
    a, b = fam.a, fam.b
    if K is QQ:
        dehom = UniPoly(
            [fam.cubic.coefficient((i, 3 - i, 0)) for i in range(4)]
        )
        found = rational_roots(dehom)
        us = [as_element(r, QQ) for r, mult in found for _ in range(mult)]
        if len(us) != 3:
            return None
    else:
        third = Fraction(b, 3)
        us = [s / t * a + third for s, t in roots]
    one = as_element(1, K)
    for u in us:
        val = fam.cubic.evaluate(u, one, 0 * one)
        if not _kzero(val):
            raise ArithmeticError("closed-form factor root failed to verify")
    vs = [-u for u in us]
    for tau in itertools.permutations(range(3)):
        rows = [(one, -us[i], -vs[tau[i]]) for i in range(3)]
        if _expand_product_matches(rows, fam.cubic):
            return rows
    return None


def _expand_product_matches(rows, cubic):
    """Exact expansion of prod_i (r_i . (x,y,z)) compared with the cubic."""
    prod = dict(_lin_dict(rows[0]))
    for row in rows[1:]:
        nxt = {}
        for e1, c1 in prod.items():
            for e2, c2 in _lin_dict(row).items():
                e = tuple(x + y for x, y in zip(e1, e2))
                acc = nxt.get(e)
                s = c1 * c2 if acc is None else acc + c1 * c2
                nxt[e] = s
        prod = nxt
    for mono, want in zip(
        (
            (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
            (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
        ),
        cubic.coeffs,
    ):
        got = prod.get(mono, 0)
        if not _kzero(got - want):
            return False
    return True


def _lin_dict(row):
    out = {}
    for axis, c in enumerate(row):
        if not _kzero(c):
            e = [0, 0, 0]
            e[axis] = 1
            out[tuple(e)] = c
    return out


def _rational_solution_basis(K, bases, theta_pows):
    """Kernel basis of the rationality constraints on d in T = L^-1 diag(d) P M."""
    deg = len(theta_pows)
    nunk = 3 * deg
    rows = []
    for p in range(3):
        for q in range(3):
            flats = [
                K.flatten((bases[p][q][i] * theta_pows[r]).raw)
                for i in range(3)
                for r in range(deg)
            ]
            for comp in range(1, deg):
                rows.append([f[comp] for f in flats])
    if not rows:
        return [
            [Fraction(1 if j == i else 0) for j in range(nunk)]
            for i in range(nunk)
        ]
    return Matrix(rows).kernel_basis()


def _perm_sign(sigma):
    sign = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


def _kinv(x):
    if isinstance(x, FieldElement):
        return x.inverse()
    return Fraction(1) / x


def _primitive_combos(dim, radius):
    """Integer vectors with max-norm exactly radius and content 1, in a
    fixed deterministic order."""
    for combo in itertools.product(range(-radius, radius + 1), repeat=dim):
        if max(abs(c) for c in combo) != radius:
            continue
        g = 0
        for c in combo:
            g = gcd(g, abs(c))
        if g == 1:
            yield combo


def _try_combo(K, bases, deg, basis, combo, det_scale, fam, cubic3):
    nunk = 3 * deg
    kv = [
        sum(Fraction(c) * basis[t][u] for t, c in enumerate(combo))
        for u in range(nunk)
    ]
    ds = [
        FieldElement(K, K.unflatten(kv[deg * i : deg * (i + 1)]))
        for i in range(3)
    ]
    # Cheap determinant precheck before assembling any matrix entries.
    det_elem = ds[0] * ds[1] * ds[2] * det_scale
    if _kzero(det_elem):
        return None
    if isinstance(det_elem, FieldElement):
        if not det_elem.is_rational():
            raise ArithmeticError("rational family produced irrational determinant")
        det_val = det_elem.as_rational()
    else:
        det_val = det_elem
    entries = [[None] * 3 for _ in range(3)]
    for p in range(3):
        for q in range(3):
            s = as_element(0, K)
            for i in range(3):
                s = s + ds[i] * bases[p][q][i]
            if not s.is_rational():
                raise ArithmeticError("kernel solution produced a non-rational entry")
            entries[p][q] = s.as_rational()
    # Two point evaluations reject almost every non-witness before the full
    # composition is expanded.
    scale = MT3_PROPORTION * det_val
    for point in ((1, 0, 0), (0, 1, 0)):
        image = tuple(
            sum(entries[p][q] * point[q] for q in range(3)) for p in range(3)
        )
        if cubic3.evaluate(*image) != scale * fam.cubic.evaluate(*point):
            return None
    T = Matrix(entries)
    if cubic3.compose(T) != fam.cubic.scale(scale):
        return None
    T_int, mu = _primitive_integer(entries)
    det_int = det_val * mu**3
    return MT3Witness(
        a=fam.a, b=fam.b, transform=T_int, det=det_int,
        ratio=MT3_PROPORTION * det_int,
    )


def _primitive_integer(entries):
    """Scale a rational matrix to primitive integers, first nonzero positive.

    Returns (matrix, mu) with matrix = mu * entries.
    """
    lcm_den = 1
    for row in entries:
        for x in row:
            lcm_den = lcm_den * x.denominator // gcd(lcm_den, x.denominator)
    content = 0
    for row in entries:
        for x in row:
            content = gcd(content, abs(x.numerator * (lcm_den // x.denominator)))
    mu = Fraction(lcm_den, content)
    for row in entries:
        for x in row:
            if x != 0:
                if x < 0:
                    mu = -mu
                break
        else:
            continue
        break
    return Matrix([[x * mu for x in row] for row in entries]), mu


def _lift_matrix(m, K):
    return Matrix([[as_element(x, K) for x in row] for row in m.rows])


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _kzero(x):
    if isinstance(x, FieldElement):
        return x.is_zero()
    return x == 0
