"""JSON-friendly encoding of the package's exact objects.

Rationals travel as "p/q" (or bare "p") strings, matrices as row-major
arrays, field elements as coefficient arrays tagged with the tower's
generator names.  ``dumps`` fixes the byte-level layout so repeated runs
emit identical files.
"""

import json
import re
from fractions import Fraction

from mpmath import mp

from .errors import ParseError
from .exact import FieldElement, Matrix, SymmetricMatrix
from .pencils import TERNARY_KEYS, TERNARY_MONOMIALS, Pencil, TernaryCubic
from .quartics import Quartic

_RATIONAL_RE = re.compile(r"\A(-?\d+)(?:/(-?\d+))?\Z")

#: Decimal digits kept when a numeric (non-exact) entry is written out.
NUMERIC_DIGITS = 25


def format_rational(value):
    """'p/q' for a non-integer rational, plain 'p' otherwise."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text, position=None):
    """Fraction from 'p/q' or 'p'; ParseError on anything else."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", position)
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ParseError(f"malformed rational {text!r}", position)
    num = int(match.group(1))
    den = match.group(2)
    if den is None:
        return Fraction(num)
    den = int(den)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", position)
    return Fraction(num, den)


def element_to_json(value):
    """A rational string, a tagged coefficient array, or a numeric string.

    Field elements become {"generators": [...], "coefficients": [...]} with
    the coefficient nest mirroring the tower levels; mpmath numbers become
    decimal strings (a {"re", "im"} pair when the imaginary part survives).
    """
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    if isinstance(value, FieldElement):
        if value.is_rational():
            return format_rational(value.as_rational())
        return {
            "generators": list(value.tower.generator_names()),
            "coefficients": _raw_to_json(value.raw),
        }
    if isinstance(value, mp.mpc):
        if value.imag == 0:
            return mp.nstr(value.real, NUMERIC_DIGITS)
        return {
            "re": mp.nstr(value.real, NUMERIC_DIGITS),
            "im": mp.nstr(value.imag, NUMERIC_DIGITS),
        }
    if isinstance(value, mp.mpf):
        return mp.nstr(value, NUMERIC_DIGITS)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _raw_to_json(raw):
    if isinstance(raw, Fraction):
        return format_rational(raw)
    return [_raw_to_json(part) for part in raw]


def matrix_to_lists(m):
    """Row-major nested lists of serialized entries."""
    if isinstance(m, mp.matrix):
        return [
            [element_to_json(m[i, j]) for j in range(m.cols)]
            for i in range(m.rows)
        ]
    return [[element_to_json(entry) for entry in row] for row in m.rows]


def parse_matrix(data, n=None, position=None):
    """A rational Matrix from row-major nested lists."""
    if not isinstance(data, list) or not data:
        raise ParseError("matrix must be a non-empty array of rows", position)
    rows = []
    for i, row in enumerate(data):
        where = f"{position or 'matrix'}[{i}]"
        if not isinstance(row, list) or len(row) != len(data):
            raise ParseError("matrix must be square", where)
        rows.append([parse_rational(x, f"{where}[{j}]") for j, x in enumerate(row)])
    if n is not None and len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}", position)
    return Matrix(rows)


def quartic_to_dict(F):
    """{"quartic": [a4 .. a0]} with string coefficients, highest power first."""
    return {"quartic": [format_rational(_rational(c)) for c in F.coefficients()]}


def quartic_from_dict(data):
    coeffs = data.get("quartic") if isinstance(data, dict) else None
    if not isinstance(coeffs, list) or len(coeffs) != 5:
        raise ParseError('expected {"quartic": [a4, a3, a2, a1, a0]}')
    return Quartic(*(parse_rational(c, f"quartic[{i}]") for i, c in enumerate(coeffs)))


def pencil_to_dict(pencil):
    """{"n": n, "A": rows, "B": rows} with rational string entries."""
    return {
        "n": pencil.n,
        "A": matrix_to_lists(pencil.A),
        "B": matrix_to_lists(pencil.B),
    }


def pencil_from_dict(data):
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise ParseError('expected {"n": ..., "A": [[...]], "B": [[...]]}')
    a = parse_matrix(data["A"], data.get("n"), "A")
    b = parse_matrix(data["B"], data.get("n"), "B")
    try:
        return Pencil(SymmetricMatrix(a.rows), SymmetricMatrix(b.rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cubic_to_dict(cubic):
    """Nonzero coefficients keyed by monomial ("x3", "x2y", ...)."""
    names = dict(zip(TERNARY_MONOMIALS, TERNARY_KEYS))
    return {
        names[mono]: element_to_json(value)
        for mono, value in cubic.to_dict().items()
    }


def cubic_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("expected a monomial-keyed object")
    exponents = dict(zip(TERNARY_KEYS, TERNARY_MONOMIALS))
    sparse = {}
    for key, value in data.items():
        if key not in exponents:
            raise ParseError(f"unknown cubic monomial {key!r}")
        sparse[exponents[key]] = parse_rational(value, key)
    return TernaryCubic.from_dict(sparse)


def form_to_list(form):
    """Binary form coefficients as strings, highest power of x first."""
    return [element_to_json(c) for c in form.coeffs]


def tower_to_json(tower):
    """The defining polynomials, one string per level (empty for plain Q)."""
    return tower.describe_levels()


def dumps(payload):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _rational(value):
    if isinstance(value, Fraction):
        return value
    return value.as_rational()
