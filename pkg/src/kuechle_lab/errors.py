"""Exception hierarchy.

Two families matter to callers: :class:`InvalidInput` (the caller handed in
something outside an operation's contract) and :class:`InvariantViolation`
(a computed object failed a structural check that should hold by theory).
The CLI maps them to exit codes 2 and 1.
"""


class KuechleError(Exception):
    """Base class for all library errors."""


class InvalidInput(KuechleError, ValueError):
    pass


class InvariantViolation(KuechleError, AssertionError):
    pass


# scalars
class ZeroVector(InvalidInput):
    pass


class ZeroForm(InvalidInput):
    """The binary form vanishes identically (pencil line inside the discriminant)."""


class FieldMismatch(InvalidInput):
    pass


# linalg
class NotSkew(InvalidInput):
    pass


class AmbientMismatch(InvalidInput):
    pass


class DegenerateForm(InvalidInput):
    pass


# pencils
class NotSmooth(InvalidInput):
    pass


class NotLagrangian(InvalidInput):
    pass


class BadDimension(InvalidInput):
    pass


class LineNotInKernel(InvalidInput):
    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"line {index} is not contained in kernel K_{index}")


class TooLarge(InvalidInput):
    pass


class DegenerateQuadric(InvalidInput):
    pass


# trivectors
class BadCharacteristic(InvalidInput):
    pass


# complete quadrics
class NotOnY(InvalidInput):
    pass


class Unclassifiable(InvariantViolation):
    pass


class RankNotThree(InvariantViolation):
    pass


class NotUnique(KuechleError):
    def __init__(self, dim):
        self.dim = dim
        super().__init__(f"invariant quadric space has dimension {dim}, expected 1")


class NoAnnihilator(InvariantViolation):
    pass


# chow
class RingMismatch(InvalidInput):
    pass


class DegreeMismatch(InvalidInput):
    pass


class BadCodim(InvalidInput):
    pass
