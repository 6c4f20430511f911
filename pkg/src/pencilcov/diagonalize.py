"""Simultaneous diagonalization of symmetric matrix pencils.

The exact pipeline factors the determinant form det(Ax - By), extracts a
linear form from the rank-one adjugate of each singular member, passes to
the dual basis of those forms, and reads the two diagonals off the
congruence.  Everything stays exact over Q or a small field tower; pencils
larger than 3x3 whose determinant form does not split over Q fall back to
a certified high-precision numeric routine.
"""

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import (
    DimensionError,
    NotIrreducible,
    RankDeficient,
    SingularStack,
    ZeroDetForm,
    ZeroRootCoordinate,
)
from .exact import (
    QQ,
    FieldElement,
    FieldTower,
    Matrix,
    UniPoly,
    as_element,
    extend_by_root,
    has_repeated_projective_root,
    poly_gcd,
    rational_linear_factors,
)
from .pencils import det_form

# Numeric fallback settings: working precision in bits and the certification
# threshold for off-diagonal residue, relative to the diagonal magnitude.
NUMERIC_PRECISION = 256
NUMERIC_RESIDUAL_BOUND = mp.mpf("1e-30")

NORMALIZATION_NOTE = (
    "dual kernel forms scaled to leading coefficient 1; "
    "columns sorted by projective root order"
)

VERDICT_YES = "yes"
VERDICT_NO = "no"
VERDICT_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PencilRoots:
    """Projective root data (s_i : t_i) of det(Ax - By).

    Exactly, det_form == scale * prod((s_i x - t_i y) ** mult_i).  The
    numeric fallback (exact=False) stores mpmath root coordinates instead,
    together with the certified error radius; rational coordinates stay
    exact Fractions even there.
    """

    tower: FieldTower
    roots: tuple
    multiplicities: tuple
    scale: Fraction
    exact: bool = True
    error: object = None

    def expanded_pairs(self):
        """Each root repeated by its multiplicity, in canonical order."""
        out = []
        for pair, mult in zip(self.roots, self.multiplicities):
            out.extend([pair] * mult)
        return out


@dataclass(frozen=True)
class DiagonalizationResult:
    """Outcome of the pipeline: U^t A U = diag(s), U^t B U = diag(t).

    U is an exact Matrix over ``tower`` when ``exact`` is true; the numeric
    fallback stores an mpmath matrix and the measured off-diagonal residue.
    """

    tower: FieldTower
    U: object
    s: tuple
    t: tuple
    normalization: str
    exact: bool = True
    residual: object = None


@dataclass(frozen=True)
class Decision:
    """Verdict of the rational-diagonalizability test, with witness."""

    verdict: str
    witness: object = None


def split_det_form(pencil):
    """Factor det(Ax - By) of a rational pencil into projective roots.

    Rational linear factors come out first.  A quadratic remainder is split
    by one adjunction and a cubic remainder by a stem adjunction followed by
    the residual quadratic (inside the stem field when it splits there, one
    more level otherwise).  For n > 3 a remainder that does not split over Q
    is delegated to the numeric root finder and the result is flagged
    non-exact.

    Raises ZeroDetForm when the determinant form vanishes identically.
    """
    form = det_form(pencil)
    if form.is_zero():
        raise ZeroDetForm(
            f"det(Ax - By) = 0 for the {pencil.n}x{pencil.n} pencil"
        )
    rational, cofactor = rational_linear_factors(form)
    pairs = [(Fraction(s), Fraction(t)) for (s, t), _ in rational]
    mults = [mult for _, mult in rational]
    deg = cofactor.degree
    rc = cofactor.rational_coeffs()
    if deg == 0:
        return _sorted_roots(QQ, pairs, mults, rc[0])
    if pencil.n > 3:
        return _numeric_roots(pairs, mults, cofactor)

    # cofactor has no rational roots, so its x-leading coefficient is nonzero
    if deg == 2:
        tower, theta = extend_by_root(
            QQ, UniPoly([rc[2] / rc[0], rc[1] / rc[0], Fraction(1)])
        )
        other = -(rc[1] / rc[0]) - theta
        pairs += [(Fraction(1), theta), (Fraction(1), other)]
        mults += [1, 1]
        return _sorted_roots(tower, pairs, mults, rc[0])

    p2, p1, p0 = rc[1] / rc[0], rc[2] / rc[0], rc[3] / rc[0]
    tower, theta = extend_by_root(QQ, UniPoly([p0, p1, p2, Fraction(1)]))
    q1 = p2 + theta
    q0 = p1 + theta * q1
    try:
        tower, second = extend_by_root(tower, UniPoly([q0, q1, 1], tower))
    except NotIrreducible as split:
        second = split.root
    theta = as_element(theta, tower)
    q1 = as_element(q1, tower)
    pairs += [
        (Fraction(1), theta),
        (Fraction(1), second),
        (Fraction(1), -q1 - second),
    ]
    mults += [1, 1, 1]
    return _sorted_roots(tower, pairs, mults, rc[0])


def singular_member_linforms(pencil, roots):
    """Rank-one adjugate forms L_i of the singular members t_i A - s_i B.

    One linear form per root counted with multiplicity, each scaled so its
    first nonzero coefficient is 1.  Raises RankDeficient(i) when member i
    has rank below n - 1, the repeated-root signature.
    """
    if not roots.exact:
        raise ValueError("numeric root sets carry no exact member forms")
    tower = roots.tower
    a = _lift_matrix(pencil.A, tower)
    b = _lift_matrix(pencil.B, tower)
    n = pencil.n
    forms = []
    for i, (s, t) in enumerate(roots.expanded_pairs()):
        member = a.scale(t) - b.scale(s)
        if member.rank() < n - 1:
            raise RankDeficient(i)
        adj = member.adjugate()
        row = next(r for r in adj.rows if any(not _is_zero(x) for x in r))
        forms.append(_normalize_leading(row))
    return forms


def assemble_dual_basis(linforms):
    """Dual forms: ell_i spans the kernel of the stack with row i deleted.

    Each ell_i is scaled so its first nonzero coefficient is 1.  Raises
    SingularStack when the stacked coefficient matrix is singular.
    """
    n = len(linforms)
    rows = [list(r) for r in linforms]
    if _is_zero(Matrix(rows).det()):
        raise SingularStack("stacked member forms are linearly dependent")
    if n == 1:
        return [(Fraction(1),)]
    duals = []
    for i in range(n):
        deleted = Matrix([r for j, r in enumerate(rows) if j != i])
        kernel = deleted.kernel_basis()
        if len(kernel) != 1:
            raise SingularStack(
                f"deleted-row stack #{i} has kernel dimension {len(kernel)}"
            )
        duals.append(_normalize_leading(kernel[0]))
    return duals


def diagonalize(pencil):
    """Simultaneously diagonalize a rational symmetric pencil.

    Returns a DiagonalizationResult whose congruence identities
    U^t A U = diag(s) and U^t B U = diag(t) are checked entrywise before
    returning, along with the per-column ratio match s_k : t_k against the
    corresponding root.  Degenerate inputs surface as ZeroDetForm,
    RankDeficient or SingularStack.
    """
    roots = split_det_form(pencil)
    if not roots.exact:
        return _diagonalize_numeric(pencil, roots)
    linforms = singular_member_linforms(pencil, roots)
    duals = assemble_dual_basis(linforms)
    tower = roots.tower
    u = Matrix([list(r) for r in duals]).inverse()
    a = _lift_matrix(pencil.A, tower)
    b = _lift_matrix(pencil.B, tower)
    diag_a = a.conjugate_by(u)
    diag_b = b.conjugate_by(u)
    n = pencil.n
    for m in (diag_a, diag_b):
        for i in range(n):
            for j in range(n):
                if i != j and not _is_zero(m[i, j]):
                    raise ArithmeticError(
                        f"off-diagonal residue at ({i}, {j})"
                    )
    s = tuple(diag_a[i, i] for i in range(n))
    t = tuple(diag_b[i, i] for i in range(n))
    for k, (root_s, root_t) in enumerate(roots.expanded_pairs()):
        if s[k] * root_t != t[k] * root_s:
            raise ArithmeticError(f"diagonal ratio mismatch in column {k}")
    return DiagonalizationResult(
        tower=tower, U=u, s=s, t=t, normalization=NORMALIZATION_NOTE
    )


def is_diagonalizable_over_Q(pencil):
    """Decide whether the pencil diagonalizes by a rational congruence.

    "yes" verdicts carry the witness DiagonalizationResult; "degenerate"
    covers identically-zero and repeated-root determinant forms, where the
    split-completely criterion is not asserted.
    """
    form = det_form(pencil)
    if form.is_zero():
        return Decision(VERDICT_DEGENERATE)
    if has_repeated_projective_root(form):
        return Decision(VERDICT_DEGENERATE)
    _, cofactor = rational_linear_factors(form)
    if cofactor.degree > 0:
        return Decision(VERDICT_NO)
    # distinct rational roots: the exact pipeline cannot fail
    return Decision(VERDICT_YES, diagonalize(pencil))


def symdiag3_check(pencil, record=None):
    """Verify the adjugate-pair identity on a nondegenerate 3x3 pencil.

    For each pair {i, j} with complementary index k, the adjugate of
    t_i t_j Adj(A) - s_i s_j Adj(B) must be rank one and match

        det(W)^2 * s_i s_j t_i t_j
            * (s_i t_k - s_k t_i) * (s_j t_k - s_k t_j) * outer(ell_k)

    up to sign, where (s, t) are the pipeline diagonals, ell the dual forms
    and W the stacked dual forms (so det(W)^2 = det(U)^-2).  When ``record``
    is a list it receives one {"pair", "sign", "rank_one"} entry per check.
    Returns the conjunction over the three pairs.

    Raises ZeroRootCoordinate when a diagonal entry vanishes (the scalar
    factor would be 0) and RankDeficient on repeated roots.
    """
    if pencil.n != 3:
        raise DimensionError("the adjugate-pair identity needs a 3x3 pencil")
    roots = split_det_form(pencil)
    linforms = singular_member_linforms(pencil, roots)
    duals = assemble_dual_basis(linforms)
    tower = roots.tower
    dual_stack = Matrix([list(r) for r in duals])
    stack_det = dual_stack.det()
    u = dual_stack.inverse()
    a = _lift_matrix(pencil.A, tower)
    b = _lift_matrix(pencil.B, tower)
    diag_a = a.conjugate_by(u)
    diag_b = b.conjugate_by(u)
    s = [diag_a[i, i] for i in range(3)]
    t = [diag_b[i, i] for i in range(3)]
    if any(_is_zero(x) for x in s + t):
        raise ZeroRootCoordinate(
            "a root coordinate vanishes; the pair formula degenerates"
        )
    adj_a = a.adjugate()
    adj_b = b.adjugate()
    prefactor = stack_det * stack_det
    verdict = True
    for k in range(3):
        i, j = (m for m in range(3) if m != k)
        operand = adj_a.scale(t[i] * t[j]) - adj_b.scale(s[i] * s[j])
        doubled = operand.adjugate()
        rank_one = doubled.rank() == 1
        sign = None
        if rank_one:
            scalar = (
                prefactor
                * s[i] * s[j] * t[i] * t[j]
                * (s[i] * t[k] - s[k] * t[i])
                * (s[j] * t[k] - s[k] * t[j])
            )
            ell = duals[k]
            target = Matrix(
                [[scalar * ell[p] * ell[q] for q in range(3)] for p in range(3)]
            )
            if doubled == target:
                sign = "+"
            elif doubled == -target:
                sign = "-"
        if record is not None:
            record.append({"pair": (i, j), "sign": sign, "rank_one": rank_one})
        verdict = verdict and sign is not None
    return verdict


def _sorted_roots(tower, pairs, mults, scale):
    lifted = []
    for s, t in pairs:
        lifted.append((_lift_coordinate(s, tower), _lift_coordinate(t, tower)))
    order = sorted(range(len(lifted)), key=lambda k: _root_key(*lifted[k]))
    return PencilRoots(
        tower=tower,
        roots=tuple(lifted[k] for k in order),
        multiplicities=tuple(mults[k] for k in order),
        scale=Fraction(scale),
    )


def _lift_coordinate(x, tower):
    if isinstance(x, FieldElement):
        return as_element(x, tower)
    return Fraction(x)


def _root_key(s, t):
    s_rational = not isinstance(s, FieldElement) or s.is_rational()
    t_rational = not isinstance(t, FieldElement) or t.is_rational()
    if s_rational and t_rational:
        sq = s.as_rational() if isinstance(s, FieldElement) else s
        tq = t.as_rational() if isinstance(t, FieldElement) else t
        if sq != 0:
            return (0, tq / sq, "")
        return (1, Fraction(0), "")
    return (2, Fraction(0), f"{s!r}|{t!r}")


def _lift_matrix(m, tower):
    if tower.height == 0:
        return Matrix(m.rows)
    return Matrix([[as_element(x, tower) for x in row] for row in m.rows])


def _is_zero(x):
    if isinstance(x, FieldElement):
        return x.is_zero()
    return x == 0


def _normalize_leading(row):
    lead = next(x for x in row if not _is_zero(x))
    inv = 1 / lead if isinstance(lead, Fraction) else lead.inverse()
    return tuple(inv * x for x in row)


def _squarefree_parts(poly):
    """Yun decomposition over Q: list of (squarefree factor, multiplicity)."""
    parts = []
    g = poly_gcd(poly, poly.derivative())
    w = _exact_quotient(poly, g)
    k = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        factor = _exact_quotient(w, y)
        if factor.degree > 0:
            parts.append((factor, k))
        w, g = y, _exact_quotient(g, y)
        k += 1
    return parts


def _exact_quotient(p, q):
    quotient, remainder = p.divmod_poly(q)
    if not remainder.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return quotient


def _numeric_roots(pairs, mults, cofactor):
    """Certified mpmath roots of the non-rational cofactor (n > 3 path)."""
    dehomogenized = cofactor.to_unipoly_in_x()
    with mp.workprec(NUMERIC_PRECISION):
        numeric = []
        worst = mp.mpf(0)
        for part, mult in _squarefree_parts(dehomogenized):
            coeffs = [_to_mpnum(c) for c in reversed(part.rational_coeffs())]
            found, err = mp.polyroots(
                coeffs, maxsteps=200, extraprec=NUMERIC_PRECISION // 2,
                error=True,
            )
            worst = max(worst, err)
            numeric.extend((root, mult, err) for root in found)
        for a in range(len(numeric)):
            for b in range(a + 1, len(numeric)):
                gap = abs(numeric[a][0] - numeric[b][0])
                if gap <= 10 * (numeric[a][2] + numeric[b][2]):
                    raise ArithmeticError(
                        "cannot certify the numeric roots as distinct"
                    )
        all_pairs = [(Fraction(s), Fraction(t)) for s, t in pairs]
        all_mults = list(mults)
        for root, mult, _ in numeric:
            all_pairs.append((Fraction(1), root))
            all_mults.append(mult)
        order = sorted(
            range(len(all_pairs)), key=lambda k: _numeric_key(*all_pairs[k])
        )
    scale = cofactor.rational_coeffs()[0]
    return PencilRoots(
        tower=QQ,
        roots=tuple(all_pairs[k] for k in order),
        multiplicities=tuple(all_mults[k] for k in order),
        scale=Fraction(scale),
        exact=False,
        error=worst,
    )


def _numeric_key(s, t):
    if isinstance(s, Fraction) and s == 0:
        return (1, 0.0, 0.0)
    ratio = complex(t) / complex(s)
    return (0, ratio.real, ratio.imag)


def _to_mpnum(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return x


def _diagonalize_numeric(pencil, roots):
    expanded = roots.expanded_pairs()
    for i, mult in enumerate(roots.multiplicities):
        if mult > 1:
            raise RankDeficient(i, "repeated root in the numeric fallback")
    n = pencil.n
    with mp.workprec(NUMERIC_PRECISION):
        a = mp.matrix([[_to_mpnum(Fraction(x)) for x in row] for row in pencil.A.rows])
        b = mp.matrix([[_to_mpnum(Fraction(x)) for x in row] for row in pencil.B.rows])
        columns = []
        for s, t in expanded:
            sv, tv = _to_mpnum(s), _to_mpnum(t)
            member = mp.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    member[i, j] = mp.mpc(tv * a[i, j] - sv * b[i, j])
            _, _, vt = mp.svd_c(member)
            vec = [mp.conj(vt[n - 1, q]) for q in range(n)]
            pivot = max(range(n), key=lambda q: abs(vec[q]))
            columns.append([v / vec[pivot] for v in vec])
        u = mp.matrix(n, n)
        for j, col in enumerate(columns):
            for i in range(n):
                u[i, j] = col[i]
        diag_a = u.T * a * u
        diag_b = u.T * b * u
        residual = mp.mpf(0)
        magnitude = mp.mpf(1)
        for m in (diag_a, diag_b):
            for i in range(n):
                magnitude = max(magnitude, abs(m[i, i]))
                for j in range(n):
                    if i != j:
                        residual = max(residual, abs(m[i, j]))
        if residual > NUMERIC_RESIDUAL_BOUND * magnitude:
            raise ArithmeticError(
                f"numeric diagonalization residual {residual} too large"
            )
        s = tuple(diag_a[i, i] for i in range(n))
        t = tuple(diag_b[i, i] for i in range(n))
    return DiagonalizationResult(
        tower=QQ,
        U=u,
        s=s,
        t=t,
        normalization="numeric fallback: columns scaled to unit max entry",
        exact=False,
        residual=residual,
    )
