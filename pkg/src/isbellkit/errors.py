"""Exception hierarchy.

Every error raised on bad data derives from :class:`IsbellError`; the CLI
prints the class name verbatim and exits with status 1.
"""


class IsbellError(ValueError):
    """Base class for data errors."""


class ShapeMismatch(IsbellError):
    pass


class ZeroDiagonalViolation(IsbellError):
    def __init__(self, point, value):
        self.point = point
        self.value = value
        super().__init__(f"d({point},{point}) = {value} != 0")


class TriangleViolation(IsbellError):
    def __init__(self, x, y, z, lhs, rhs):
        self.x, self.y, self.z = x, y, z
        super().__init__(
            f"d({x},{y}) + d({y},{z}) = {lhs} < {rhs} = d({x},{z})")


class InvalidValue(IsbellError):
    """A value outside [0, inf] (negative or NaN)."""


class Expansive(IsbellError):
    def __init__(self, x, x2, before, after):
        self.x, self.x2 = x, x2
        super().__init__(
            f"map is expansive on ({x},{x2}): {before} < {after}")


class UnknownPoint(IsbellError, KeyError):
    def __str__(self):
        return f"unknown point {self.args[0]!r}"


class BaseMismatch(IsbellError):
    pass


class LengthMismatch(IsbellError):
    pass


class RoleViolation(IsbellError):
    """A table does not satisfy the presheaf/copresheaf inequality."""


class NotFixed(IsbellError):
    def __init__(self, point, deviation):
        self.point = point
        self.deviation = deviation
        super().__init__(
            f"not a fixed point: RL(f) differs at {point!r} by {deviation}")


class InternalInconsistency(IsbellError):
    pass


class NoWitness(IsbellError):
    pass


class NotClassical(IsbellError):
    pass


class NotInAim(IsbellError):
    pass


class NotTight(IsbellError):
    pass


class NotShort(IsbellError):
    """A diagram is not a short map into its target."""


class BudgetExceeded(IsbellError):
    pass


class UnknownTheorem(IsbellError, KeyError):
    def __str__(self):
        return f"unknown theorem {self.args[0]!r}"


class UnsupportedShape(IsbellError):
    pass
