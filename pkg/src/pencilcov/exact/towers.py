"""Exact arithmetic in towers of simple algebraic extensions of Q.

A tower is a chain Q = K_0 < K_1 < ... < K_h where each K_d = K_{d-1}[g]/(m_d)
for a monic polynomial m_d over K_{d-1}.  Elements are polynomial residues:
a raw value at level 0 is a Fraction; a raw value at level d is a tuple of
exactly deg(m_d) raw values of level d-1 (coefficients of 1, g, g^2, ...).

Everything is immutable and exact.  Numeric embeddings into C (via mpmath)
exist only as a diagnostic side channel; no arithmetic ever rounds.
"""

from fractions import Fraction
import math

import mpmath as mp

_FRACTION_LIKE = (int, Fraction)


def is_square_rational(q):
    """True iff the rational q is a square in Q."""
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def sqrt_rational(q):
    """Exact square root of a rational square, as a Fraction."""
    q = Fraction(q)
    if not is_square_rational(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def _mpf_of(q):
    """Exact conversion Fraction -> mpf at current precision."""
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


class FieldTower:
    """A (possibly empty) tower of simple extensions over Q.

    levels: tuple of (generator_name, minpoly) pairs, where minpoly is an
    ascending, monic coefficient tuple whose entries are raw values of the
    level below.  The empty tower is Q itself.
    """

    def __init__(self, levels=()):
        self.levels = tuple(levels)
        self._degrees = tuple(len(m) - 1 for _, m in self.levels)
        for d in self._degrees:
            if d < 1:
                raise ValueError("minimal polynomial must have positive degree")
        self._embed_cache = {}

    # -- structure ---------------------------------------------------------

    @property
    def height(self):
        return len(self.levels)

    @property
    def degrees(self):
        return self._degrees

    def total_degree(self):
        out = 1
        for d in self._degrees:
            out *= d
        return out

    def generator_names(self):
        return tuple(name for name, _ in self.levels)

    def extend(self, name, minpoly_raw):
        """New tower with one more level; minpoly_raw is ascending and monic,
        coefficients raw values of the current top level."""
        if name in self.generator_names():
            raise ValueError(f"generator name {name!r} already used")
        return FieldTower(self.levels + ((name, tuple(minpoly_raw)),))

    def is_prefix_of(self, other):
        return self.levels == other.levels[: self.height]

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        if not self.levels:
            return "FieldTower(Q)"
        return "FieldTower(Q; " + ", ".join(self.describe_levels()) + ")"

    def describe_levels(self):
        """Human/JSON form of the minimal polynomials, e.g. 't^2-2'."""
        out = []
        for d in range(1, self.height + 1):
            name, m = self.levels[d - 1]
            terms = []
            for k in range(len(m) - 1, -1, -1):
                c = m[k]
                if self._is_zero(d - 1, c):
                    continue
                cs = self._raw_str(d - 1, c)
                if k == 0:
                    terms.append(cs if not terms else self._signed(cs))
                else:
                    mono = name if k == 1 else f"{name}^{k}"
                    if cs == "1":
                        piece = mono
                    elif cs == "-1":
                        piece = "-" + mono
                    else:
                        piece = f"{self._paren(cs)}*{mono}"
                    terms.append(piece if not terms else self._signed(piece))
            out.append("".join(terms) if terms else "0")
        return out

    @staticmethod
    def _signed(s):
        return s if s.startswith("-") else "+" + s

    @staticmethod
    def _paren(s):
        if s.startswith("-") or "+" in s or "*" in s or "-" in s[1:]:
            return f"({s})"
        return s

    # -- raw value plumbing --------------------------------------------------

    def _zero(self, d):
        if d == 0:
            return Fraction(0)
        return tuple(self._zero(d - 1) for _ in range(self._degrees[d - 1]))

    def _one(self, d):
        if d == 0:
            return Fraction(1)
        return (self._one(d - 1),) + tuple(
            self._zero(d - 1) for _ in range(self._degrees[d - 1] - 1)
        )

    def _const(self, d, q):
        if d == 0:
            return Fraction(q)
        return (self._const(d - 1, q),) + tuple(
            self._zero(d - 1) for _ in range(self._degrees[d - 1] - 1)
        )

    def _is_zero(self, d, x):
        if d == 0:
            return x == 0
        return all(self._is_zero(d - 1, c) for c in x)

    def _add(self, d, x, y):
        if d == 0:
            return x + y
        return tuple(self._add(d - 1, a, b) for a, b in zip(x, y))

    def _neg(self, d, x):
        if d == 0:
            return -x
        return tuple(self._neg(d - 1, c) for c in x)

    def _sub(self, d, x, y):
        return self._add(d, x, self._neg(d, y))

    def _scale(self, d, q, x):
        """Multiply a level-d raw by a Fraction."""
        if d == 0:
            return q * x
        return tuple(self._scale(d - 1, q, c) for c in x)

    def _mul(self, d, x, y):
        if d == 0:
            return x * y
        deg = self._degrees[d - 1]
        prod = [self._zero(d - 1) for _ in range(2 * deg - 1)]
        for i, xi in enumerate(x):
            if self._is_zero(d - 1, xi):
                continue
            for j, yj in enumerate(y):
                if self._is_zero(d - 1, yj):
                    continue
                prod[i + j] = self._add(d - 1, prod[i + j], self._mul(d - 1, xi, yj))
        return self._reduce(d, prod)

    def _reduce(self, d, coeffs):
        """Reduce a coefficient list (level d-1 entries) modulo minpoly d."""
        deg = self._degrees[d - 1]
        m = self.levels[d - 1][1]
        work = list(coeffs)
        for i in range(len(work) - 1, deg - 1, -1):
            c = work[i]
            if self._is_zero(d - 1, c):
                continue
            # minpoly is monic: x^deg = -(m[0] + ... + m[deg-1] x^(deg-1))
            for j in range(deg):
                work[i - deg + j] = self._sub(
                    d - 1, work[i - deg + j], self._mul(d - 1, c, m[j])
                )
        work = work[:deg]
        while len(work) < deg:
            work.append(self._zero(d - 1))
        return tuple(work)

    def _pow(self, d, x, k):
        out = self._one(d)
        base = x
        while k:
            if k & 1:
                out = self._mul(d, out, base)
            base = self._mul(d, base, base)
            k >>= 1
        return out

    # polynomial helpers over the level-d coefficient field, used by _inv.
    # Polynomials here are plain lists of level-d raws, ascending.

    def _ptrim(self, d, p):
        while p and self._is_zero(d, p[-1]):
            p.pop()
        return p

    def _pdivmod(self, d, num, den):
        num = self._ptrim(d, list(num))
        den = self._ptrim(d, list(den))
        if not den:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = self._inv(d, den[-1])
        quot = [self._zero(d) for _ in range(max(0, len(num) - len(den) + 1))]
        rem = num
        while len(rem) >= len(den):
            c = self._mul(d, rem[-1], lead_inv)
            shift = len(rem) - len(den)
            quot[shift] = self._add(d, quot[shift], c)
            for j in range(len(den)):
                rem[shift + j] = self._sub(d, rem[shift + j], self._mul(d, c, den[j]))
            self._ptrim(d, rem)
        return quot, rem

    def _pxgcd(self, d, a, b):
        """Extended gcd of coefficient-list polynomials over level d."""
        r0, r1 = list(a), list(b)
        s0, s1 = [self._one(d)], []
        t0, t1 = [], [self._one(d)]
        self._ptrim(d, r0), self._ptrim(d, r1)
        while r1:
            q, r = self._pdivmod(d, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(d, s0, self._pmul(d, q, s1))
            t0, t1 = t1, self._psub(d, t0, self._pmul(d, q, t1))
        return r0, s0, t0

    def _pmul(self, d, a, b):
        if not a or not b:
            return []
        out = [self._zero(d) for _ in range(len(a) + len(b) - 1)]
        for i, ai in enumerate(a):
            if self._is_zero(d, ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = self._add(d, out[i + j], self._mul(d, ai, bj))
        return self._ptrim(d, out)

    def _psub(self, d, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self._zero(d)
            y = b[i] if i < len(b) else self._zero(d)
            out.append(self._sub(d, x, y))
        return self._ptrim(d, out)

    def _inv(self, d, x):
        if d == 0:
            if x == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / Fraction(x)
        if self._is_zero(d, x):
            raise ZeroDivisionError("division by zero in extension field")
        m = list(self.levels[d - 1][1])
        g, u, _ = self._pxgcd(d - 1, list(x), m)
        if len(g) != 1:
            raise ZeroDivisionError(
                "non-invertible residue; minimal polynomial is not irreducible"
            )
        ginv = self._inv(d - 1, g[0])
        scaled = [self._mul(d - 1, ginv, c) for c in u]
        return self._reduce(d, scaled)

    # -- element construction ------------------------------------------------

    def zero(self):
        return FieldElement(self, self._zero(self.height))

    def one(self):
        return FieldElement(self, self._one(self.height))

    def from_rational(self, q):
        return FieldElement(self, self._const(self.height, Fraction(q)))

    def element(self, raw):
        return FieldElement(self, raw)

    def gen(self, level=None):
        """The generator of the given level (default: the top one), as an
        element of this tower."""
        if self.height == 0:
            raise ValueError("Q has no generators")
        if level is None:
            level = self.height
        raw = self._zero(self.height)
        raw = self._set_gen(self.height, level, raw)
        return FieldElement(self, raw)

    def _set_gen(self, d, level, raw):
        if d == level:
            lst = list(raw)
            lst[1] = self._one(d - 1)
            return tuple(lst)
        lst = list(raw)
        lst[0] = self._set_gen(d - 1, level, lst[0])
        return tuple(lst)

    def lift_raw(self, raw, from_height):
        """Embed a raw value of a prefix tower into this tower."""
        out = raw
        for d in range(from_height, self.height):
            pad = tuple(self._zero(d) for _ in range(self._degrees[d] - 1))
            out = (out,) + pad
        return out

    # -- printing ------------------------------------------------------------

    def _raw_str(self, d, x):
        if d == 0:
            return str(x)
        name = self.levels[d - 1][0]
        terms = []
        for k, c in enumerate(x):
            if self._is_zero(d - 1, c):
                continue
            cs = self._raw_str(d - 1, c)
            if k == 0:
                piece = cs
            else:
                mono = name if k == 1 else f"{name}^{k}"
                if cs == "1":
                    piece = mono
                elif cs == "-1":
                    piece = "-" + mono
                else:
                    piece = f"{self._paren(cs)}*{mono}"
            terms.append(piece if not terms else self._signed(piece))
        return "".join(terms) if terms else "0"

    # -- numeric embeddings ----------------------------------------------------

    def embeddings(self, dps=60):
        """All complex embeddings of the tower at the given precision, as
        tuples of generator values (one per level), deterministically ordered."""
        key = dps
        if key in self._embed_cache:
            return self._embed_cache[key]
        with mp.workdps(dps):
            embs = [()]
            for d in range(1, self.height + 1):
                m = self.levels[d - 1][1]
                nxt = []
                for emb in embs:
                    # minpoly raws include the (monic) leading coefficient
                    coeffs = [self._raw_numeric(d - 1, c, emb) for c in m]
                    # mp.polyroots wants descending order
                    roots = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=80)
                    roots = sorted(roots, key=lambda r: (mp.re(r), mp.im(r)))
                    for r in roots:
                        nxt.append(emb + (r,))
                embs = nxt
        self._embed_cache[key] = embs
        return embs

    def _raw_numeric(self, d, x, emb):
        if d == 0:
            return _mpf_of(x)
        g = emb[d - 1]
        acc = mp.mpf(0)
        for c in reversed(x):
            acc = acc * g + self._raw_numeric(d - 1, c, emb)
        return acc

    # -- rational coordinates over Q -------------------------------------------

    def flatten(self, raw):
        """Coordinates of a raw value in the Q-basis of products of generator
        powers (top generator's power is the major index)."""
        return self._flatten(self.height, raw)

    def _flatten(self, d, x):
        if d == 0:
            return [Fraction(x)]
        out = []
        for c in x:
            out.extend(self._flatten(d - 1, c))
        return out

    def unflatten(self, coords):
        raw, rest = self._unflatten(self.height, list(coords))
        if rest:
            raise ValueError("coordinate vector too long")
        return raw

    def _unflatten(self, d, coords):
        if d == 0:
            return Fraction(coords[0]), coords[1:]
        comps = []
        for _ in range(self._degrees[d - 1]):
            c, coords = self._unflatten(d - 1, coords)
            comps.append(c)
        return tuple(comps), coords


class FieldElement:
    """An element of a FieldTower: immutable, exact, with operator sugar.

    Mixed arithmetic coerces ints, Fractions, and elements of prefix towers
    upward automatically.
    """

    __slots__ = ("tower", "raw")

    def __init__(self, tower, raw):
        self.tower = tower
        self.raw = raw

    # coercion helpers

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.tower == self.tower:
                return self, other
            if other.tower.is_prefix_of(self.tower):
                lifted = self.tower.lift_raw(other.raw, other.tower.height)
                return self, FieldElement(self.tower, lifted)
            if self.tower.is_prefix_of(other.tower):
                lifted = other.tower.lift_raw(self.raw, self.tower.height)
                return FieldElement(other.tower, lifted), other
            raise TypeError("elements of unrelated field towers")
        if isinstance(other, _FRACTION_LIKE):
            return self, self.tower.from_rational(other)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower._add(a.tower.height, a.raw, b.raw))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, self.tower._neg(self.tower.height, self.raw))

    def __sub__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower._sub(a.tower.height, a.raw, b.raw))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower._mul(a.tower.height, a.raw, b.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        binv = b.tower._inv(b.tower.height, b.raw)
        return FieldElement(a.tower, a.tower._mul(a.tower.height, a.raw, binv))

    def __rtruediv__(self, other):
        inv = self.inverse()
        return inv.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.tower, self.tower._pow(self.tower.height, self.raw, k))

    def inverse(self):
        return FieldElement(self.tower, self.tower._inv(self.tower.height, self.raw))

    def __eq__(self, other):
        if isinstance(other, _FRACTION_LIKE):
            other = self.tower.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        a, b = self._pair(other)
        return a.raw == b.raw

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_rational())
        return hash((self.tower, self.raw))

    def __bool__(self):
        return not self.tower._is_zero(self.tower.height, self.raw)

    def is_zero(self):
        return not self

    def is_rational(self):
        coords = self.tower.flatten(self.raw)
        return all(c == 0 for c in coords[1:])

    def as_rational(self):
        coords = self.tower.flatten(self.raw)
        if any(c != 0 for c in coords[1:]):
            raise ValueError(f"{self} is not rational")
        return coords[0]

    def lift_to(self, tower):
        if self.tower == tower:
            return self
        if not self.tower.is_prefix_of(tower):
            raise TypeError("can only lift along a tower prefix")
        return FieldElement(tower, tower.lift_raw(self.raw, self.tower.height))

    def numeric(self, dps=60, embedding=0):
        emb = self.tower.embeddings(dps)[embedding]
        with mp.workdps(dps):
            return self.tower._raw_numeric(self.tower.height, self.raw, emb)

    def __repr__(self):
        return self.tower._raw_str(self.tower.height, self.raw)


QQ = FieldTower(())


def as_element(value, tower):
    """Coerce an int/Fraction/FieldElement into the given tower."""
    if isinstance(value, FieldElement):
        return value.lift_to(tower)
    return tower.from_rational(value)


def norm_to_Q(elem):
    """Field norm N_{K/Q} of a tower element, as a Fraction.

    Computed as the determinant of multiplication-by-elem acting on the
    Q-vector space underlying the tower.
    """
    tower = elem.tower
    m = tower.total_degree()
    cols = []
    for j in range(m):
        unit = [Fraction(0)] * m
        unit[j] = Fraction(1)
        basis_raw = tower.unflatten(unit)
        prod = tower._mul(tower.height, elem.raw, basis_raw)
        cols.append(tower.flatten(prod))
    # determinant of the m x m rational matrix whose columns are cols
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    return _rational_det(rows)


def _rational_det(rows):
    """Plain fraction Gaussian determinant; used only for norm matrices."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            f = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return det
