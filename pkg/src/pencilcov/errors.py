"""Structured errors shared across the library.

Every failure mode that a caller can act on gets its own class; anything
else is a plain ValueError/TypeError from the offending operation.
"""


class PencilcovError(Exception):
    """Base class for all library-specific errors."""


class ParseError(PencilcovError):
    """Malformed input text (rationals, JSON payloads)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class NotIrreducible(PencilcovError):
    """A polynomial handed to extend_by_root has a root in the base field.

    Carries that root so the caller can deflate and retry.
    """

    def __init__(self, root, message="polynomial has a root in the base field"):
        super().__init__(message)
        self.root = root


class UnsupportedDegree(PencilcovError):
    """Exact extension path only handles degree 2 and 3 adjunctions."""


class DimensionError(PencilcovError):
    """Operation requires a specific pencil dimension (usually n = 3)."""


class ZeroDetForm(PencilcovError):
    """det(Ax - By) vanishes identically; the pencil is degenerate."""


class RankDeficient(PencilcovError):
    """A singular pencil member has rank < n-1 (repeated-root situation)."""

    def __init__(self, index, message=None):
        if message is None:
            message = f"pencil member #{index} has rank below n-1"
        super().__init__(message)
        self.index = index


class SingularStack(PencilcovError):
    """The stacked linear-form matrix is singular; no dual basis exists."""


class ZeroRootCoordinate(PencilcovError):
    """A root coordinate s_i or t_i is zero where the adjugate-pair formula
    needs all of them nonzero."""


class NoSyzygyInShape(PencilcovError):
    """The syzygy ansatz F6^2 = c1*H^3 + c2*I*F^2*H + c3*J*F^3 admits no
    consistent rational solution on the given samples."""


class DegenerateFamily(PencilcovError):
    """The (a,b) family parameter hits delta = 0."""


class SingularInput(PencilcovError):
    """A matrix argument that must be invertible is singular."""
