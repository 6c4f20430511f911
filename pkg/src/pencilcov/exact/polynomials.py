"""Univariate polynomials over a field tower, and root machinery.

Rational root extraction is exact: candidate roots come from a high-precision
numeric solve followed by continued-fraction reconstruction, and every
candidate is verified (and deflated) in exact arithmetic before it is
reported.  A wrong candidate can therefore never leak out; precision only
ever affects completeness, and the working precision is chosen from the
coefficient sizes so that any true rational root survives reconstruction.
"""

from fractions import Fraction
import math

import mpmath as mp

from ..errors import NotIrreducible, UnsupportedDegree
from .towers import (
    QQ,
    FieldElement,
    FieldTower,
    as_element,
    is_square_rational,
    norm_to_Q,
    _rational_det,
)

_GEN_NAMES = ("t", "u", "v", "w", "r")


class UniPoly:
    """Dense univariate polynomial, ascending coefficients over a tower."""

    __slots__ = ("tower", "coeffs", "var")

    def __init__(self, coeffs, tower=QQ, var="x"):
        elems = [as_element(c, tower) for c in coeffs]
        while elems and elems[-1].is_zero():
            elems.pop()
        self.tower = tower
        self.coeffs = tuple(elems)
        self.var = var

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return not self.is_zero() and self.leading() == 1

    def monic(self):
        if self.is_monic():
            return self
        inv = self.leading().inverse()
        return UniPoly([c * inv for c in self.coeffs], self.tower, self.var)

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.tower.zero()

    def evaluate(self, x):
        acc = as_element(0, self.tower)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def derivative(self):
        return UniPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.tower, self.var
        )

    def map_tower(self, tower):
        return UniPoly([c.lift_to(tower) for c in self.coeffs], tower, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)],
            self.tower,
            self.var,
        )

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.tower, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.tower, self.var)
        out = [self.tower.zero() for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.tower, self.var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.tower == self.tower:
                return other
            if other.tower.is_prefix_of(self.tower):
                return other.map_tower(self.tower)
            raise TypeError("polynomials over unrelated towers")
        return UniPoly([other], self.tower, self.var)

    def divmod_poly(self, den):
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = den.leading().inverse()
        rem = list(self.coeffs)
        quot = [self.tower.zero()] * max(0, len(rem) - len(den.coeffs) + 1)
        while len(rem) >= len(den.coeffs):
            c = rem[-1] * lead_inv
            shift = len(rem) - len(den.coeffs)
            quot[shift] = quot[shift] + c
            for j, dc in enumerate(den.coeffs):
                rem[shift + j] = rem[shift + j] - c * dc
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return (
            UniPoly(quot, self.tower, self.var),
            UniPoly(rem, self.tower, self.var),
        )

    def __mod__(self, other):
        return self.divmod_poly(other)[1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self, self._coerce(other)
        return a.coeffs == b.coeffs

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if c.is_zero():
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = repr(c)
            if mono and cs == "1":
                piece = mono
            elif mono and cs == "-1":
                piece = "-" + mono
            elif mono:
                piece = f"({cs})*{mono}" if ("+" in cs or "-" in cs[1:]) else f"{cs}*{mono}"
            else:
                piece = cs
            parts.append(piece if not parts else (piece if piece.startswith("-") else "+" + piece))
        return "".join(parts)

    def rational_coeffs(self):
        """Coefficient list as Fractions; fails if any coefficient is not
        rational."""
        return [c.as_rational() for c in self.coeffs]


def _mpf_to_fraction(x):
    """Exact value of an mpf as a Fraction."""
    sign, man, exp, _ = x._mpf_
    # The mantissa is a gmpy2.mpz when mpmath runs on the gmpy backend;
    # force plain ints so no third-party integers hide inside Fractions.
    man = int(man)
    exp = int(exp)
    if man == 0:
        return Fraction(0)
    val = Fraction(man)
    if exp >= 0:
        val *= 1 << exp
    else:
        val /= 1 << (-exp)
    return -val if sign else val


def _as_fraction_list(poly_or_coeffs):
    if isinstance(poly_or_coeffs, UniPoly):
        return poly_or_coeffs.rational_coeffs()
    return [Fraction(c) for c in poly_or_coeffs]


def rational_roots(poly_or_coeffs):
    """All rational roots with multiplicities, as (root, multiplicity) pairs.

    Exactness contract: every reported root is verified by exact evaluation,
    and multiplicities come from exact deflation.  Roots are sorted.
    """
    coeffs = _as_fraction_list(poly_or_coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every rational as a root")
    if len(coeffs) == 1:
        return []

    found = {}
    # factor out x^k
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        found[Fraction(0)] = k
        coeffs = coeffs[k:]

    # clear denominators so the leading coefficient bounds denominators
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [c * lcm for c in coeffs]

    def deflate_all(cs, root):
        """Divide out (x - root) as often as it divides exactly."""
        mult = 0
        while len(cs) > 1:
            quot = [Fraction(0)] * (len(cs) - 1)
            quot[-1] = cs[-1]
            for i in range(len(cs) - 3, -1, -1):
                quot[i] = cs[i + 1] + root * quot[i + 1]
            rem = cs[0] + root * quot[0]
            if rem != 0:
                break
            cs = quot
            mult += 1
        return cs, mult

    work = [Fraction(c) for c in ints]
    if len(work) > 1:
        # numeric root finding wants simple roots: pass the squarefree part,
        # then read multiplicities off exact deflation of the original
        deriv = [k * c for k, c in enumerate(work)][1:]
        g = _fraction_gcd(work, deriv)
        sf = _fraction_exact_div(work, g) if len(g) > 1 else work
        lc = abs(work[-1].numerator)
        bound = max(int(lc), 4)
        dps = max(60, 2 * len(str(bound)) + 10 * len(work))
        for cand in _real_rational_candidates(sf, bound, dps):
            if cand in found:
                continue
            rest, mult = deflate_all(work, cand)
            if mult:
                found[cand] = found.get(cand, 0) + mult
                work = rest
    return sorted(found.items())


def _fraction_gcd(a, b):
    """Monic gcd of two Fraction coefficient lists (ascending)."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    r0, r1 = trim(list(a)), trim(list(b))
    while r1:
        # remainder of r0 by r1
        num = list(r0)
        inv = 1 / r1[-1]
        while len(num) >= len(r1):
            c = num[-1] * inv
            shift = len(num) - len(r1)
            for j in range(len(r1)):
                num[shift + j] -= c * r1[j]
            num.pop()
            trim(num)
        r0, r1 = r1, num
    if not r0:
        return []
    inv = 1 / r0[-1]
    return [c * inv for c in r0]


def _fraction_exact_div(num, den):
    """Exact quotient of Fraction coefficient lists (remainder must vanish)."""
    num = list(num)
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    inv = 1 / den[-1]
    while len(num) >= len(den):
        c = num[-1] * inv
        shift = len(num) - len(den)
        quot[shift] = c
        for j in range(len(den)):
            num[shift + j] -= c * den[j]
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    if num:
        raise ValueError("division was not exact")
    return quot


def _real_rational_candidates(coeffs, bound, dps):
    """Exactly-verified rational roots of a (squarefree) Fraction list."""

    def value(r):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * r + c
        return acc

    hits = []
    for working in (dps, 2 * dps):
        with mp.workdps(working):
            numeric = [
                mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in reversed(coeffs)
            ]
            try:
                roots = mp.polyroots(numeric, maxsteps=300, extraprec=120)
            except mp.libmp.NoConvergence:
                continue
            for r in roots:
                if abs(mp.im(r)) > mp.mpf(10) ** (-working // 3):
                    continue
                approx = _mpf_to_fraction(mp.re(r))
                cand = approx.limit_denominator(bound)
                if value(cand) == 0 and cand not in hits:
                    hits.append(cand)
        if hits:
            break
    return hits


def sylvester_resultant(p, q):
    """Resultant of two rational polynomials, by Sylvester determinant."""
    a = _as_fraction_list(p)
    b = _as_fraction_list(q)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return Fraction(0)
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _rational_det(rows)


def poly_discriminant(p):
    """Discriminant of a rational polynomial of degree >= 1."""
    a = _as_fraction_list(p)
    while a and a[-1] == 0:
        a.pop()
    n = len(a) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    dp = [k * a[k] for k in range(1, n + 1)]
    res = sylvester_resultant(a, dp)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / a[-1]


def next_generator_name(tower):
    used = set(tower.generator_names())
    for name in _GEN_NAMES:
        if name not in used:
            return name
    raise ValueError("tower too tall for the naming scheme")


def extend_by_root(tower, p):
    """Adjoin a root of p (degree 2 or 3, irreducible over the tower's top).

    Returns (new_tower, root).  Raises NotIrreducible carrying a root if p
    already has one in the current tower, UnsupportedDegree outside degrees
    {2, 3}.  Irreducibility over Q itself is certified exactly (non-square
    discriminant at degree 2, absence of rational roots at degree 3); over a
    proper extension level a field-norm certificate is used where it is
    conclusive, with a reconstruction search as the fallback detector.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p, tower)
    elif p.tower != tower:
        p = p.map_tower(tower)
    if p.degree not in (2, 3):
        raise UnsupportedDegree(f"cannot adjoin a root of degree {p.degree}")
    p = p.monic()

    if tower.height == 0:
        rc = p.rational_coeffs()
        if p.degree == 2:
            disc = rc[1] ** 2 - 4 * rc[2] * rc[0]
            if is_square_rational(disc):
                root = rational_roots(rc)[0][0]
                raise NotIrreducible(tower.from_rational(root))
        else:
            roots = rational_roots(rc)
            if roots:
                raise NotIrreducible(tower.from_rational(roots[0][0]))
    else:
        if p.degree == 2:
            b, a = p.coefficient(1), p.coefficient(2)
            disc = b * b - 4 * a * p.coefficient(0)
            if disc.is_zero():
                raise NotIrreducible(-b / (2 * a))
            if is_square_rational(norm_to_Q(disc)):
                # norm test inconclusive, look for an actual root; a
                # non-square norm would have certified irreducibility
                hits = roots_in_tower(p, tower)
                if hits:
                    raise NotIrreducible(hits[0])
        else:
            hits = roots_in_tower(p, tower)
            if hits:
                raise NotIrreducible(hits[0])

    name = next_generator_name(tower)
    minpoly_raw = tuple(c.raw for c in p.coeffs)
    bigger = tower.extend(name, minpoly_raw)
    return bigger, bigger.gen()


def roots_in_tower(p, tower, dps_schedule=(60, 140)):
    """Roots of p that lie in the tower, by embedding reconstruction.

    Every returned element is verified exactly (p(root) == 0); the search is
    numerically driven, so a miss at the configured precision is possible in
    principle but a false root is not.  Over Q this reduces to exact rational
    root extraction.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p, tower)
    elif p.tower != tower:
        if p.tower.is_prefix_of(tower):
            p = p.map_tower(tower)
        else:
            raise TypeError("polynomial tower mismatch")
    if p.degree < 1:
        return []
    if tower.height == 0:
        return [tower.from_rational(r) for r, _ in rational_roots(p.rational_coeffs())]

    m = tower.total_degree()
    results = []
    seen = set()
    for dps in dps_schedule:
        with mp.workdps(dps):
            embs = tower.embeddings(dps)
            basis_vals = []
            for j, emb in enumerate(embs):
                row = []
                for b in range(m):
                    unit = [Fraction(0)] * m
                    unit[b] = Fraction(1)
                    raw = tower.unflatten(unit)
                    row.append(tower._raw_numeric(tower.height, raw, emb))
                basis_vals.append(row)
            V = mp.matrix(basis_vals)
            per_emb_roots = []
            for j, emb in enumerate(embs):
                cs = [tower._raw_numeric(tower.height, c.raw, emb) for c in p.coeffs]
                try:
                    rts = mp.polyroots(list(reversed(cs)), maxsteps=300, extraprec=120)
                except mp.libmp.NoConvergence:
                    rts = []
                per_emb_roots.append(rts)
            if any(not r for r in per_emb_roots):
                continue
            bound = 10 ** max(6, dps // 3)
            for combo in _choice_product(per_emb_roots):
                rhs = mp.matrix([[c] for c in combo])
                try:
                    sol = mp.lu_solve(V, rhs)
                except ZeroDivisionError:
                    continue
                coords = []
                ok = True
                for v in sol:
                    if abs(mp.im(v)) > mp.mpf(10) ** (-dps // 4):
                        ok = False
                        break
                    coords.append(_mpf_to_fraction(mp.re(v)).limit_denominator(bound))
                if not ok:
                    continue
                cand = tower.element(tower.unflatten(coords))
                if cand.raw in seen:
                    continue
                if p.evaluate(cand).is_zero():
                    seen.add(cand.raw)
                    results.append(cand)
        if results:
            break
    return results


def _choice_product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _choice_product(lists[1:]):
            yield (head,) + tail


def sqrt_in_tower(elem):
    """A square root of elem inside its own tower, or None.

    The sign is fixed deterministically: the root whose first nonzero
    rational coordinate is positive.
    """
    tower = elem.tower
    if tower.height == 0:
        q = elem.as_rational()
        if not is_square_rational(q):
            return None
        from .towers import sqrt_rational

        return tower.from_rational(sqrt_rational(q))
    if elem.is_zero():
        return tower.zero()
    if not is_square_rational(norm_to_Q(elem)):
        # N(x^2) = N(x)^2, so a square always has a rational-square norm;
        # a non-square norm is a clean "no".
        return None
    p = UniPoly([-elem, as_element(0, tower), as_element(1, tower)], tower)
    hits = roots_in_tower(p, tower)
    if not hits:
        return None
    best = None
    for h in hits:
        coords = tower.flatten(h.raw)
        lead = next((c for c in coords if c != 0), Fraction(0))
        if lead > 0:
            best = h
            break
    return best if best is not None else hits[0]
